"""File-backed application state: decks, accounts, the attempt ledger, usage
models, and messages.

Persistence is a single canonical JSON snapshot plus an append-only attempt
log next to it:

* every non-attempt mutation (registration, settings, custom cards, links,
  messages, phase resets) rewrites the snapshot atomically (temp file,
  fsync, rename);
* attempts are appended to ``<store>.log`` as one JSON line each and folded
  into the snapshot every ``snapshot_every`` attempts or at the next
  non-attempt mutation.

Loading reads the snapshot and replays any log entries newer than it. A torn
final log line (the signature of a mid-write kill) is ignored; replaying an
attempt re-derives everything downstream of it (usage-model training and
phase advancement use the attempt's own timestamp), so a reload always
reconstructs the same state.

The snapshot is canonical: fixed key order per object, learners sorted by
id, so saving a freshly loaded store reproduces the file byte for byte.
All timestamps are server-assigned UTC milliseconds, nudged forward when
needed so they strictly increase.
"""

from __future__ import annotations

import json
import os
import secrets
import tempfile
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from . import learners
from .catalog import Deck, export_deck, load_deck, reference_deck
from .errors import (
    AuthFailed,
    BodyTooLong,
    EmptyBody,
    InconsistentAttempt,
    InvalidLink,
    MalformedSnapshot,
    NotLinked,
    PecsError,
    TooManyRequests,
    UnknownDeck,
    UnknownLearner,
    UsernameTaken,
    VersionUnsupported,
)
from .grammar import UsageModel, make_strip, update_usage_model
from .learners import (
    ActivityAttempt,
    LearnerProfile,
    PhaseEntry,
    ProgressReport,
    Settings,
)

STORE_FORMAT_VERSION = 1
DEFAULT_DECK_ID = "reference"
MAX_MESSAGE_LEN = 2000

SESSION_TTL_MS = 24 * 60 * 60 * 1000
DEFAULT_REQUEST_CAP = 1_000_000


@dataclass(frozen=True)
class Message:
    message_id: str
    from_learner_id: str
    to_learner_id: str
    body: str
    sent_at: int

    def to_obj(self) -> dict:
        return {
            "message_id": self.message_id,
            "from_learner_id": self.from_learner_id,
            "to_learner_id": self.to_learner_id,
            "body": self.body,
            "sent_at": self.sent_at,
        }


@dataclass
class Session:
    token: str
    learner_id: str
    expires_at: int
    request_count: int = 0


def _canon(value):
    """Recursively sort dict keys inside free-form JSON subtrees."""
    if isinstance(value, dict):
        return {k: _canon(value[k]) for k in sorted(value)}
    if isinstance(value, list):
        return [_canon(v) for v in value]
    return value


def _attempt_to_obj(attempt: ActivityAttempt) -> dict:
    return {
        "attempt_id": attempt.attempt_id,
        "learner_id": attempt.learner_id,
        "activity": attempt.activity,
        "prompt_descriptor": attempt.prompt_descriptor,
        "response": attempt.response,
        "correct": attempt.correct,
        "stars_awarded": attempt.stars_awarded,
        "timestamp": attempt.timestamp,
    }


def _attempt_from_obj(obj: dict) -> ActivityAttempt:
    try:
        return ActivityAttempt(
            attempt_id=obj["attempt_id"],
            learner_id=obj["learner_id"],
            activity=obj["activity"],
            prompt_descriptor=obj["prompt_descriptor"],
            response=obj["response"],
            correct=bool(obj["correct"]),
            stars_awarded=int(obj["stars_awarded"]),
            timestamp=int(obj["timestamp"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedSnapshot(f"bad attempt record: {exc}") from exc


def _usage_model_to_obj(model: UsageModel) -> dict:
    nested: dict[str, dict[str, int]] = {}
    for (prev, nxt), count in model.bigram.items():
        nested.setdefault(prev, {})[nxt] = count
    return {
        "unigram": {k: model.unigram[k] for k in sorted(model.unigram)},
        "bigram": {p: {n: row[n] for n in sorted(row)} for p, row in sorted(nested.items())},
    }


def _usage_model_from_obj(obj: dict) -> UsageModel:
    try:
        unigram = {str(k): int(v) for k, v in obj.get("unigram", {}).items()}
        bigram = {
            (str(prev), str(nxt)): int(count)
            for prev, row in obj.get("bigram", {}).items()
            for nxt, count in row.items()
        }
    except (AttributeError, TypeError, ValueError) as exc:
        raise MalformedSnapshot(f"bad usage model: {exc}") from exc
    return UsageModel(unigram=unigram, bigram=bigram)


def _profile_to_obj(profile: LearnerProfile) -> dict:
    return {
        "learner_id": profile.learner_id,
        "username": profile.username,
        "password_digest": profile.password_digest,
        "account_role": profile.account_role,
        "demographics": _canon(profile.demographics),
        "current_phase": profile.current_phase,
        "settings": {"background_theme": profile.settings.background_theme},
        "created_at": profile.created_at,
        "linked_ids": sorted(profile.linked_ids),
        "phase_history": [
            {"phase": e.phase, "entered_at": e.entered_at} for e in profile.phase_history
        ],
    }


def _profile_from_obj(obj: dict) -> LearnerProfile:
    try:
        return LearnerProfile(
            learner_id=obj["learner_id"],
            username=obj["username"],
            password_digest=obj["password_digest"],
            account_role=obj["account_role"],
            demographics=obj.get("demographics", {}),
            current_phase=int(obj["current_phase"]),
            settings=Settings(background_theme=obj["settings"]["background_theme"]),
            created_at=int(obj["created_at"]),
            linked_ids=list(obj.get("linked_ids", [])),
            phase_history=[
                PhaseEntry(phase=int(e["phase"]), entered_at=int(e["entered_at"]))
                for e in obj.get("phase_history", [])
            ],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedSnapshot(f"bad profile record: {exc}") from exc


def _message_from_obj(obj: dict) -> Message:
    try:
        return Message(
            message_id=obj["message_id"],
            from_learner_id=obj["from_learner_id"],
            to_learner_id=obj["to_learner_id"],
            body=obj["body"],
            sent_at=int(obj["sent_at"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedSnapshot(f"bad message record: {exc}") from exc


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=path.name + ".", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


class Store:
    """Owns all mutable application state behind a single lock.

    The lock serializes writers (which also keeps each learner's mutations
    ordered) and gives readers consistent snapshots. Sessions are in-memory
    only: a restart invalidates tokens but loses nothing else.
    """

    def __init__(
        self,
        path: str | Path | None = None,
        *,
        advance_window: int = learners.ADVANCE_WINDOW,
        advance_min_accuracy: float = learners.ADVANCE_MIN_ACCURACY,
        request_cap: int = DEFAULT_REQUEST_CAP,
        snapshot_every: int = 100,
        now_fn=None,
    ):
        self._lock = threading.RLock()
        self.path = Path(path) if path is not None else None
        self.advance_window = advance_window
        self.advance_min_accuracy = advance_min_accuracy
        self.request_cap = request_cap
        self.snapshot_every = snapshot_every
        self._now_fn = now_fn or (lambda: int(time.time() * 1000))
        self._last_ts = 0

        self.decks: dict[str, Deck] = {}
        self.profiles: dict[str, LearnerProfile] = {}
        self.ledgers: dict[str, list[ActivityAttempt]] = {}
        self.usage_models: dict[str, UsageModel] = {}
        self.messages: list[Message] = []

        self._sessions: dict[str, Session] = {}
        self._username_index: dict[str, str] = {}
        self._learner_seq = 0
        self._attempt_seq = 0
        self._message_seq = 0
        self._pending_log_entries = 0

    # ------------------------------------------------------------------ time

    def _next_ts(self) -> int:
        ts = max(self._now_fn(), self._last_ts + 1)
        self._last_ts = ts
        return ts

    # ------------------------------------------------------------------ decks

    def seed_reference_deck(self) -> None:
        with self._lock:
            if DEFAULT_DECK_ID not in self.decks:
                self.decks[DEFAULT_DECK_ID] = reference_deck()

    def add_deck(self, deck_id: str, deck: Deck) -> None:
        with self._lock:
            self.decks[deck_id] = deck
            self._save_if_persistent()

    def get_deck(self, deck_id: str = DEFAULT_DECK_ID) -> Deck:
        with self._lock:
            deck = self.decks.get(deck_id)
            if deck is None:
                raise UnknownDeck(deck_id)
            return deck

    def replace_deck(self, deck_id: str, deck: Deck) -> None:
        """Swap in a new deck value (custom-card additions land here)."""
        with self._lock:
            if deck_id not in self.decks:
                raise UnknownDeck(deck_id)
            self.decks[deck_id] = deck
            self._save_if_persistent()

    # --------------------------------------------------------------- accounts

    def register(
        self,
        username: str,
        password: str,
        account_role: str,
        demographics: dict | None = None,
        linked_ids: list[str] | None = None,
    ) -> LearnerProfile:
        if account_role not in learners.ACCOUNT_ROLES:
            raise ValueError(f"account_role must be one of {learners.ACCOUNT_ROLES}")
        if not username:
            raise ValueError("username must be non-empty")
        learners.check_password_strength(password)
        with self._lock:
            if username in self._username_index:
                raise UsernameTaken(username)
            # Vet requested links up front so a bad one cannot leave a
            # half-registered account behind.
            new_is_adult = account_role != "CHILD"
            for other_id in linked_ids or []:
                other = self.profiles.get(other_id)
                if other is None:
                    raise UnknownLearner(other_id)
                if other.is_adult() == new_is_adult:
                    raise InvalidLink("links connect a child account to a therapist or parent")
            self._learner_seq += 1
            now = self._next_ts()
            profile = LearnerProfile(
                learner_id=f"u{self._learner_seq:06d}",
                username=username,
                password_digest=learners.hash_password(password),
                account_role=account_role,
                demographics=dict(demographics or {}),
                current_phase=1,
                settings=Settings(),
                created_at=now,
                phase_history=[PhaseEntry(phase=1, entered_at=now)],
            )
            self.profiles[profile.learner_id] = profile
            self.ledgers[profile.learner_id] = []
            self.usage_models[profile.learner_id] = UsageModel.empty()
            self._username_index[username] = profile.learner_id
            for other_id in linked_ids or []:
                self._link(profile.learner_id, other_id)
            self._save_if_persistent()
            return profile

    def get_profile(self, learner_id: str) -> LearnerProfile:
        with self._lock:
            profile = self.profiles.get(learner_id)
            if profile is None:
                raise UnknownLearner(learner_id)
            return profile

    def authenticate(self, username: str, password: str) -> Session:
        """Uniform failure: a wrong password and an unknown user are indistinguishable."""
        with self._lock:
            learner_id = self._username_index.get(username)
            profile = self.profiles.get(learner_id) if learner_id else None
            if profile is None or not learners.verify_password(profile.password_digest, password):
                raise AuthFailed("invalid credentials")
            session = Session(
                token=secrets.token_urlsafe(24),
                learner_id=profile.learner_id,
                expires_at=self._next_ts() + SESSION_TTL_MS,
            )
            self._sessions[session.token] = session
            return session

    def logout(self, token: str) -> None:
        with self._lock:
            self._sessions.pop(token, None)

    def resolve_token(self, token: str) -> str:
        with self._lock:
            session = self._sessions.get(token)
            if session is None or session.expires_at <= self._now_fn():
                self._sessions.pop(token, None)
                raise AuthFailed("missing, unknown, or expired token")
            session.request_count += 1
            if session.request_count > self.request_cap:
                raise TooManyRequests("per-token request cap exceeded")
            return session.learner_id

    # ------------------------------------------------------------------ links

    def _link(self, a_id: str, b_id: str) -> None:
        pa = self.profiles.get(a_id)
        pb = self.profiles.get(b_id)
        if pa is None:
            raise UnknownLearner(a_id)
        if pb is None:
            raise UnknownLearner(b_id)
        if pa.is_adult() == pb.is_adult():
            raise InvalidLink("links connect a child account to a therapist or parent")
        if b_id not in pa.linked_ids:
            pa.linked_ids.append(b_id)
        if a_id not in pb.linked_ids:
            pb.linked_ids.append(a_id)

    def link(self, child_id: str, adult_id: str) -> None:
        with self._lock:
            self._link(child_id, adult_id)
            self._save_if_persistent()

    def _children_of(self, profile: LearnerProfile) -> set[str]:
        return {
            lid
            for lid in profile.linked_ids
            if lid in self.profiles and self.profiles[lid].account_role == "CHILD"
        }

    def can_exchange(self, a_id: str, b_id: str) -> bool:
        """Direct child-adult link, or two adults sharing a linked child."""
        pa = self.get_profile(a_id)
        pb = self.get_profile(b_id)
        if b_id in pa.linked_ids:
            return True
        if pa.is_adult() and pb.is_adult():
            return bool(self._children_of(pa) & self._children_of(pb))
        return False

    def can_view(self, requester_id: str, subject_id: str) -> bool:
        """Progress and settings: yourself, or a linked adult of the subject."""
        if requester_id == subject_id:
            return True
        requester = self.get_profile(requester_id)
        subject = self.get_profile(subject_id)
        return requester.is_adult() and requester_id in subject.linked_ids

    # --------------------------------------------------------------- attempts

    def record_attempt(
        self,
        learner_id: str,
        activity: str,
        prompt_descriptor: str,
        response: str,
        correct: bool,
        stars_awarded: int,
    ) -> tuple[ActivityAttempt, ProgressReport, bool, int]:
        """Append one attempt; returns (attempt, report, advanced, new_phase)."""
        with self._lock:
            if learner_id not in self.profiles:
                raise UnknownLearner(learner_id)
            self._attempt_seq += 1
            attempt = ActivityAttempt(
                attempt_id=f"a{self._attempt_seq:08d}",
                learner_id=learner_id,
                activity=activity,
                prompt_descriptor=prompt_descriptor,
                response=response,
                correct=correct,
                stars_awarded=stars_awarded,
                timestamp=self._next_ts(),
            )
            try:
                learners.check_attempt_consistency(attempt)
            except InconsistentAttempt:
                self._attempt_seq -= 1
                raise
            advanced, new_phase = self._apply_attempt(attempt)
            self._append_log(attempt)
            report = self.progress_chart(learner_id)
            return attempt, report, advanced, new_phase

    def _apply_attempt(self, attempt: ActivityAttempt) -> tuple[bool, int]:
        """Ledger append plus everything derived from it; shared with log replay."""
        ledger = self.ledgers[attempt.learner_id]
        ledger.append(attempt)
        if attempt.activity == "PECS_BOOK" and attempt.correct:
            self._train_usage_model(attempt)
        return self._check_phase_advancement(attempt.learner_id, as_of_ts=attempt.timestamp)

    def _train_usage_model(self, attempt: ActivityAttempt) -> None:
        try:
            response = json.loads(attempt.response)
            descriptor = json.loads(attempt.prompt_descriptor)
        except json.JSONDecodeError:
            return
        card_ids = response.get("card_ids")
        deck = self.decks.get(descriptor.get("deck_id", DEFAULT_DECK_ID))
        if not card_ids or deck is None:
            return
        try:
            strip = make_strip(deck, card_ids)
        except PecsError:
            return  # a hand-edited log line must not block loading
        if strip.state.is_valid:
            model = self.usage_models.get(attempt.learner_id, UsageModel.empty())
            self.usage_models[attempt.learner_id] = update_usage_model(model, strip)

    def _check_phase_advancement(self, learner_id: str, *, as_of_ts: int) -> tuple[bool, int]:
        profile = self.profiles[learner_id]
        due = learners.advancement_due(
            profile,
            self.ledgers[learner_id],
            window=self.advance_window,
            min_accuracy=self.advance_min_accuracy,
        )
        if due and profile.current_phase < learners.MAX_PHASE:
            profile.current_phase += 1
            profile.phase_history.append(
                PhaseEntry(phase=profile.current_phase, entered_at=as_of_ts)
            )
            return True, profile.current_phase
        return False, profile.current_phase

    def check_phase_advancement(self, learner_id: str) -> tuple[bool, int]:
        with self._lock:
            if learner_id not in self.profiles:
                raise UnknownLearner(learner_id)
            return self._check_phase_advancement(learner_id, as_of_ts=self._next_ts())

    def reset_phase(self, learner_id: str, phase: int) -> LearnerProfile:
        """Explicit therapist reset; the one sanctioned way a phase can go down."""
        if phase not in (1, 2, 3, 4):
            raise ValueError("phase must be 1..4")
        with self._lock:
            profile = self.get_profile(learner_id)
            profile.current_phase = phase
            profile.phase_history.append(PhaseEntry(phase=phase, entered_at=self._next_ts()))
            self._save_if_persistent()
            return profile

    def progress_chart(self, learner_id: str) -> ProgressReport:
        with self._lock:
            profile = self.get_profile(learner_id)
            return learners.build_progress_report(profile, self.ledgers[learner_id])

    def update_settings(self, learner_id: str, background_theme: str) -> LearnerProfile:
        learners.check_theme(background_theme)
        with self._lock:
            profile = self.get_profile(learner_id)
            profile.settings.background_theme = background_theme
            self._save_if_persistent()
            return profile

    # --------------------------------------------------------------- messages

    def send_message(self, from_id: str, to_id: str, body: str) -> Message:
        if not body:
            raise EmptyBody("message body is empty")
        if len(body) > MAX_MESSAGE_LEN:
            raise BodyTooLong(f"message body over {MAX_MESSAGE_LEN} characters")
        with self._lock:
            if not self.can_exchange(from_id, to_id):
                raise NotLinked(f"no qualifying link between {from_id} and {to_id}")
            self._message_seq += 1
            message = Message(
                message_id=f"m{self._message_seq:08d}",
                from_learner_id=from_id,
                to_learner_id=to_id,
                body=body,
                sent_at=self._next_ts(),
            )
            self.messages.append(message)
            self._save_if_persistent()
            return message

    def list_messages(self, learner_id: str, peer_id: str, since: int | None = None) -> list[Message]:
        with self._lock:
            if not self.can_exchange(learner_id, peer_id):
                raise NotLinked(f"no qualifying link between {learner_id} and {peer_id}")
            pair = {learner_id, peer_id}
            found = [
                m
                for m in self.messages
                if {m.from_learner_id, m.to_learner_id} == pair
                and (since is None or m.sent_at > since)
            ]
            return sorted(found, key=lambda m: (m.sent_at, m.message_id))

    # ------------------------------------------------------------ persistence

    def snapshot_document(self) -> str:
        """Canonical snapshot text: stable ordering end to end."""
        with self._lock:
            doc = {
                "format_version": STORE_FORMAT_VERSION,
                "decks": {
                    deck_id: json.loads(export_deck(self.decks[deck_id]))
                    for deck_id in sorted(self.decks)
                },
                "profiles": {
                    lid: _profile_to_obj(self.profiles[lid]) for lid in sorted(self.profiles)
                },
                "ledgers": {
                    lid: [_attempt_to_obj(a) for a in self.ledgers[lid]]
                    for lid in sorted(self.ledgers)
                },
                "usage_models": {
                    lid: _usage_model_to_obj(self.usage_models[lid])
                    for lid in sorted(self.usage_models)
                },
                "messages": [m.to_obj() for m in self.messages],
            }
            return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"

    def save(self, path: str | Path | None = None) -> Path:
        """Atomically write the snapshot and truncate the folded attempt log."""
        with self._lock:
            target = Path(path) if path is not None else self.path
            if target is None:
                raise ValueError("no store path configured")
            _atomic_write(target, self.snapshot_document())
            log = _log_path(target)
            if log.exists():
                log.write_text("", encoding="utf-8")
            self._pending_log_entries = 0
            return target

    def _save_if_persistent(self) -> None:
        if self.path is not None:
            self.save()

    def _append_log(self, attempt: ActivityAttempt) -> None:
        if self.path is None:
            return
        line = json.dumps(_attempt_to_obj(attempt), ensure_ascii=False)
        log = _log_path(self.path)
        log.parent.mkdir(parents=True, exist_ok=True)
        with open(log, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        self._pending_log_entries += 1
        if self._pending_log_entries >= self.snapshot_every:
            self.save()

    def close(self) -> None:
        with self._lock:
            if self.path is not None and self._pending_log_entries:
                self.save()

    # --------------------------------------------------------------- loading

    @classmethod
    def load_document(cls, document: str, path: str | Path | None = None, **kwargs) -> "Store":
        """Rebuild a store from snapshot text (no log replay)."""
        try:
            obj = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedSnapshot(f"invalid JSON: {exc}") from exc
        if not isinstance(obj, dict):
            raise MalformedSnapshot("snapshot must be a JSON object")
        version = obj.get("format_version")
        if not isinstance(version, int) or version < 1:
            raise MalformedSnapshot("format_version must be a positive integer")
        if version > STORE_FORMAT_VERSION:
            raise VersionUnsupported(
                f"snapshot format {version} is newer than supported {STORE_FORMAT_VERSION}"
            )
        required = {"format_version", "decks", "profiles", "ledgers", "usage_models", "messages"}
        missing = required - set(obj)
        if missing:
            raise MalformedSnapshot(f"snapshot missing keys {sorted(missing)}")

        store = cls(path, **kwargs)
        try:
            for deck_id, deck_obj in obj["decks"].items():
                store.decks[deck_id] = load_deck(deck_obj)
            for lid, profile_obj in obj["profiles"].items():
                profile = _profile_from_obj(profile_obj)
                store.profiles[lid] = profile
                store._username_index[profile.username] = lid
            for lid, records in obj["ledgers"].items():
                if lid not in store.profiles:
                    raise MalformedSnapshot(f"ledger for unknown learner {lid}")
                store.ledgers[lid] = [_attempt_from_obj(r) for r in records]
            for lid, model_obj in obj["usage_models"].items():
                if lid not in store.profiles:
                    raise MalformedSnapshot(f"usage model for unknown learner {lid}")
                store.usage_models[lid] = _usage_model_from_obj(model_obj)
            store.messages = [_message_from_obj(m) for m in obj["messages"]]
        except AttributeError as exc:
            raise MalformedSnapshot(f"bad snapshot structure: {exc}") from exc
        for lid in store.profiles:
            store.ledgers.setdefault(lid, [])
            store.usage_models.setdefault(lid, UsageModel.empty())
        store._restore_counters()
        return store

    @classmethod
    def load(cls, path: str | Path, **kwargs) -> "Store":
        """Read the snapshot, then replay attempts logged after it."""
        path = Path(path)
        text = path.read_text(encoding="utf-8")
        store = cls.load_document(text, path, **kwargs)
        store._replay_log(_log_path(path))
        return store

    @classmethod
    def open(cls, path: str | Path, **kwargs) -> "Store":
        """Load an existing store, or create a fresh one seeded with the reference deck."""
        path = Path(path)
        if path.exists():
            return cls.load(path, **kwargs)
        store = cls(path, **kwargs)
        store.seed_reference_deck()
        store.save()
        return store

    def _restore_counters(self) -> None:
        for ledger in self.ledgers.values():
            for attempt in ledger:
                self._attempt_seq = max(self._attempt_seq, _seq_of(attempt.attempt_id))
                self._last_ts = max(self._last_ts, attempt.timestamp)
        for message in self.messages:
            self._message_seq = max(self._message_seq, _seq_of(message.message_id))
            self._last_ts = max(self._last_ts, message.sent_at)
        for profile in self.profiles.values():
            self._learner_seq = max(self._learner_seq, _seq_of(profile.learner_id))
            self._last_ts = max(self._last_ts, profile.created_at)
            for entry in profile.phase_history:
                self._last_ts = max(self._last_ts, entry.entered_at)

    def _replay_log(self, log: Path) -> None:
        if not log.exists():
            return
        raw_lines = log.read_text(encoding="utf-8").splitlines()
        entries: list[dict] = []
        for i, line in enumerate(raw_lines):
            if not line.strip():
                continue
            try:
                entries.append(json.loads(line))
            except json.JSONDecodeError as exc:
                # A torn final line is the expected trace of a mid-write kill.
                if any(l.strip() for l in raw_lines[i + 1:]):
                    raise MalformedSnapshot(f"corrupt attempt log at line {i + 1}") from exc
                break
        replayed = 0
        for entry in entries:
            attempt = _attempt_from_obj(entry)
            if _seq_of(attempt.attempt_id) <= self._attempt_seq:
                continue  # already folded into the snapshot
            learners.check_attempt_consistency(attempt)
            if attempt.learner_id not in self.profiles:
                raise MalformedSnapshot(f"logged attempt for unknown learner {attempt.learner_id}")
            self._apply_attempt(attempt)
            self._attempt_seq = _seq_of(attempt.attempt_id)
            self._last_ts = max(self._last_ts, attempt.timestamp)
            replayed += 1
        self._pending_log_entries = replayed


def _seq_of(entity_id: str) -> int:
    digits = "".join(ch for ch in entity_id if ch.isdigit())
    return int(digits) if digits else 0


def _log_path(path: Path) -> Path:
    return Path(str(path) + ".log")
