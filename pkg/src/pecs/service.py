"""HTTP/JSON binding of the engine.

Every endpoint delegates to the library modules; nothing here re-implements
scoring, grammar, or task generation. Attempts in particular are evaluated
server side: the client sends what the learner did (card tapped, strip
built, option chosen) and the task parameters, the server regenerates the
task from its seed and decides correctness and stars itself. A UI can then
render stars without ever being trusted to compute them.

Auth is a Bearer token from POST /login. Tokens live in memory only, so a
restart signs everyone out without touching learner data.
"""

from __future__ import annotations

import json
from importlib import resources
from typing import Any

from fastapi import Depends, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import activities, grammar, learners
from .catalog import Card, add_custom_card, query_cards
from .errors import AuthFailed, NotLinked, PecsError, UnknownLearner
from .store import DEFAULT_DECK_ID, Store

_ERROR_STATUS = {
    "AuthFailed": 401,
    "NotLinked": 403,
    "UnknownLearner": 404,
    "UnknownDeck": 404,
    "UnknownCardId": 404,
    "DuplicateCardId": 409,
    "UsernameTaken": 409,
    "TooManyRequests": 429,
}


def _error_body(code: str, detail: str) -> dict:
    return {"error": {"code": code, "detail": detail}}


def _card_obj(card: Card) -> dict:
    return card.to_obj()


# ---------------------------------------------------------------- request models


class RegisterBody(BaseModel):
    username: str
    password: str
    account_role: str
    demographics: dict[str, Any] = Field(default_factory=dict)
    linked_ids: list[str] = Field(default_factory=list)


class LoginBody(BaseModel):
    username: str
    password: str


class CardBody(BaseModel):
    id: str
    word: str
    category: str
    role: str
    picture: str
    audio: str | None = None


class AddCardBody(BaseModel):
    card: CardBody
    deck_id: str = DEFAULT_DECK_ID


class StripBody(BaseModel):
    card_ids: list[str]
    deck_id: str = DEFAULT_DECK_ID


class DifferentiateBody(BaseModel):
    category: str
    n_options: int = 3
    seed: int
    deck_id: str = DEFAULT_DECK_ID


class QaBody(BaseModel):
    seed: int
    phase: int | None = None
    deck_id: str = DEFAULT_DECK_ID


class TaskRef(BaseModel):
    category: str | None = None
    n_options: int = 3
    phase: int | None = None
    seed: int


class AttemptBody(BaseModel):
    activity: str
    learner_id: str | None = None
    deck_id: str = DEFAULT_DECK_ID
    card_id: str | None = None
    card_ids: list[str] | None = None
    task: TaskRef | None = None
    chosen: str | None = None
    chosen_index: int | None = None


class SettingsBody(BaseModel):
    background_theme: str


class MessageBody(BaseModel):
    to: str
    body: str


# --------------------------------------------------------------------- the app


def create_app(store: Store) -> FastAPI:
    app = FastAPI(title="pecs", docs_url=None, redoc_url=None, openapi_url=None)
    app.state.store = store

    @app.exception_handler(PecsError)
    async def _pecs_error(request: Request, exc: PecsError):
        status = _ERROR_STATUS.get(exc.code, 400)
        return JSONResponse(status_code=status, content=_error_body(exc.code, str(exc)))

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content=_error_body("MalformedRequest", str(exc)))

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(status_code=400, content=_error_body("MalformedRequest", str(exc)))

    def require_learner(request: Request) -> str:
        header = request.headers.get("authorization") or ""
        scheme, _, token = header.partition(" ")
        if scheme.lower() != "bearer" or not token.strip():
            raise AuthFailed("missing bearer token")
        return store.resolve_token(token.strip())

    def _guard_view(viewer_id: str, subject_id: str) -> None:
        # can_view raises UnknownLearner for ids that do not exist at all.
        if not store.can_view(viewer_id, subject_id):
            raise NotLinked(f"no qualifying link between {viewer_id} and {subject_id}")

    # ------------------------------------------------------------------- auth

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok"}

    @app.post("/register", status_code=201)
    async def register(body: RegisterBody):
        profile = store.register(
            username=body.username,
            password=body.password,
            account_role=body.account_role,
            demographics=body.demographics,
            linked_ids=body.linked_ids,
        )
        return {"learner": profile.to_public()}

    @app.post("/login")
    async def login(body: LoginBody):
        session = store.authenticate(body.username, body.password)
        profile = store.get_profile(session.learner_id)
        return {
            "token": session.token,
            "expires_at": session.expires_at,
            "learner": profile.to_public(),
        }

    @app.post("/logout")
    async def logout(request: Request, learner_id: str = Depends(require_learner)):
        header = request.headers.get("authorization") or ""
        store.logout(header.partition(" ")[2].strip())
        return {"ok": True}

    @app.get("/me")
    async def me(learner_id: str = Depends(require_learner)):
        return {"learner": store.get_profile(learner_id).to_public()}

    # ------------------------------------------------------------------ decks

    @app.get("/decks")
    async def list_decks(learner_id: str = Depends(require_learner)):
        with store._lock:
            decks = [
                {
                    "deck_id": deck_id,
                    "format_version": store.decks[deck_id].format_version,
                    "card_count": len(store.decks[deck_id].cards),
                }
                for deck_id in sorted(store.decks)
            ]
        return {"decks": decks}

    @app.get("/cards")
    async def list_cards(
        learner_id: str = Depends(require_learner),
        category: str | None = None,
        role: str | None = None,
        deck: str = DEFAULT_DECK_ID,
    ):
        found = query_cards(store.get_deck(deck), category=category, role=role)
        return {"deck_id": deck, "cards": [_card_obj(c) for c in found]}

    @app.post("/cards", status_code=201)
    async def add_card(body: AddCardBody, learner_id: str = Depends(require_learner)):
        deck = store.get_deck(body.deck_id)
        card = Card(
            id=body.card.id,
            word=body.card.word,
            category=body.card.category,
            role=body.card.role,
            picture_ref=body.card.picture,
            audio_ref=body.card.audio,
        )
        store.replace_deck(body.deck_id, add_custom_card(deck, card))
        return {"deck_id": body.deck_id, "card": _card_obj(card)}

    # ---------------------------------------------------------------- grammar

    @app.post("/strips/validate")
    async def validate_strip(body: StripBody, learner_id: str = Depends(require_learner)):
        deck = store.get_deck(body.deck_id)
        verdict = grammar.validate_strip(deck, body.card_ids)
        return {
            "status": verdict.status,
            "invalid_position": verdict.invalid_position,
            "reason": verdict.reason,
            "text": grammar.render_strip_text(deck, list(body.card_ids)),
            "audio": grammar.audio_sequence(deck, list(body.card_ids)),
        }

    @app.get("/predict")
    async def predict(
        learner_id: str = Depends(require_learner),
        prefix: str = "",
        k: int = Query(default=3, ge=1),
        deck: str = DEFAULT_DECK_ID,
        learner: str | None = None,
    ):
        subject = learner or learner_id
        _guard_view(learner_id, subject)
        deck_obj = store.get_deck(deck)
        card_ids = [p for p in prefix.split(",") if p] if prefix else []
        with store._lock:
            model = store.usage_models.get(subject)
            if model is None:
                raise UnknownLearner(subject)
            ranked = grammar.predict_next(deck_obj, card_ids, model, k)
        by_id = deck_obj.by_id()
        return {"suggestions": [_card_obj(by_id[cid]) for cid in ranked]}

    # ------------------------------------------------------------------ tasks

    def _task_response(deck_id: str, task: activities.DiscriminationTask) -> dict:
        by_id = store.get_deck(deck_id).by_id()
        return {
            "task_id": task.task_id,
            "category": task.category,
            "n_options": task.n_options,
            "seed": task.seed,
            "target": _card_obj(by_id[task.target]),
            "options": [_card_obj(by_id[cid]) for cid in task.options],
        }

    @app.post("/tasks/differentiate")
    async def make_differentiate(body: DifferentiateBody, learner_id: str = Depends(require_learner)):
        task = activities.gen_discrimination_task(
            store.get_deck(body.deck_id), body.category, body.n_options, body.seed
        )
        return {"deck_id": body.deck_id, **_task_response(body.deck_id, task)}

    @app.post("/tasks/qa")
    async def make_qa(body: QaBody, learner_id: str = Depends(require_learner)):
        phase = body.phase if body.phase is not None else store.get_profile(learner_id).current_phase
        deck = store.get_deck(body.deck_id)
        question = activities.gen_question(deck, phase, body.seed)
        by_id = deck.by_id()
        return {
            "deck_id": body.deck_id,
            "question_id": question.question_id,
            "prompt_text": question.prompt_text,
            "prompt_card": _card_obj(by_id[question.prompt_card]),
            "options": [_card_obj(by_id[cid]) for cid in question.options],
            "phase": phase,
            "seed": question.seed,
        }

    # --------------------------------------------------------------- attempts

    def _missing(field: str, activity: str):
        return ValueError(f"'{field}' is required for a {activity} attempt")

    @app.post("/attempts", status_code=201)
    async def post_attempt(body: AttemptBody, learner_id: str = Depends(require_learner)):
        subject = body.learner_id or learner_id
        _guard_view(learner_id, subject)
        deck = store.get_deck(body.deck_id)
        extra: dict[str, Any] = {}

        if body.activity == "SINGLE_WORD":
            if body.card_id is None:
                raise _missing("card_id", body.activity)
            tap = activities.record_single_word_tap(deck, body.card_id)
            card = deck.by_id()[body.card_id]
            descriptor = {
                "kind": "tap",
                "deck_id": body.deck_id,
                "card_id": tap.card_id,
                "category": card.category,
            }
            response = {"card_id": tap.card_id}
            correct, stars, feedback = True, 0, ""
            extra["tap"] = {"card_id": tap.card_id, "word": tap.word, "audio": tap.audio_ref}

        elif body.activity == "PECS_BOOK":
            if body.card_ids is None:
                raise _missing("card_ids", body.activity)
            result = activities.evaluate_strip_submission(deck, body.card_ids)
            descriptor = {"kind": "strip", "deck_id": body.deck_id}
            response = {"card_ids": list(body.card_ids)}
            correct, stars, feedback = result.correct, result.stars_awarded, result.feedback_text
            extra["text"] = grammar.render_strip_text(deck, list(body.card_ids))

        elif body.activity == "DIFFERENTIATE":
            if body.task is None or body.task.category is None:
                raise _missing("task.category", body.activity)
            if body.chosen is None:
                raise _missing("chosen", body.activity)
            task = activities.gen_discrimination_task(
                deck, body.task.category, body.task.n_options, body.task.seed
            )
            result = activities.evaluate_discrimination(deck, task, body.chosen)
            descriptor = {
                "kind": "match",
                "deck_id": body.deck_id,
                "category": task.category,
                "n_options": task.n_options,
                "seed": task.seed,
                "target": task.target,
            }
            response = {"chosen": body.chosen}
            correct, stars, feedback = result.correct, result.stars_awarded, result.feedback_text

        elif body.activity == "QA":
            if body.task is None or body.task.phase is None:
                raise _missing("task.phase", body.activity)
            if body.chosen_index is None:
                raise _missing("chosen_index", body.activity)
            question = activities.gen_question(deck, body.task.phase, body.task.seed)
            result = activities.evaluate_answer(question, body.chosen_index)
            correct_card = deck.by_id()[question.options[question.correct_index]]
            descriptor = {
                "kind": "question",
                "deck_id": body.deck_id,
                "phase": body.task.phase,
                "seed": body.task.seed,
                "prompt": question.prompt_text,
                "category": correct_card.category,
            }
            response = {"chosen_index": body.chosen_index}
            correct, stars, feedback = result.correct, result.stars_awarded, result.feedback_text

        else:
            raise ValueError(f"activity must be one of {list(activities.ACTIVITIES)}")

        attempt, report, advanced, phase = store.record_attempt(
            learner_id=subject,
            activity=body.activity,
            prompt_descriptor=json.dumps(descriptor, sort_keys=True),
            response=json.dumps(response, sort_keys=True),
            correct=correct,
            stars_awarded=stars,
        )
        return {
            "attempt_id": attempt.attempt_id,
            "activity": attempt.activity,
            "correct": attempt.correct,
            "stars_awarded": attempt.stars_awarded,
            "feedback_text": feedback,
            "timestamp": attempt.timestamp,
            "phase_advanced": advanced,
            "current_phase": phase,
            "star_total": report.star_total,
            **extra,
        }

    # ------------------------------------------------------ progress, settings

    @app.get("/progress/{subject_id}")
    async def progress(subject_id: str, learner_id: str = Depends(require_learner)):
        _guard_view(learner_id, subject_id)
        report = store.progress_chart(subject_id)
        return {"progress": report.to_obj()}

    @app.put("/settings/{subject_id}")
    async def put_settings(
        subject_id: str, body: SettingsBody, learner_id: str = Depends(require_learner)
    ):
        _guard_view(learner_id, subject_id)
        profile = store.update_settings(subject_id, body.background_theme)
        return {"learner": profile.to_public()}

    # --------------------------------------------------------------- messages

    @app.post("/messages", status_code=201)
    async def post_message(body: MessageBody, learner_id: str = Depends(require_learner)):
        message = store.send_message(learner_id, body.to, body.body)
        return {"message": message.to_obj()}

    @app.get("/messages")
    async def get_messages(
        learner_id: str = Depends(require_learner),
        peer: str = Query(...),
        since: int | None = None,
    ):
        found = store.list_messages(learner_id, peer, since)
        return {"messages": [m.to_obj() for m in found]}

    # ----------------------------------------------------------------- assets

    assets_dir = resources.files("pecs.data") / "assets"
    try:
        assets_path = str(assets_dir)
    except TypeError:
        assets_path = None
    if assets_path and assets_dir.is_dir():
        app.mount("/assets", StaticFiles(directory=assets_path), name="assets")

    return app
