"""The four learning activities: single-word taps, sentence-book submission,
differentiate (drag-match), and question/answer.

Task generation is a pure function of (deck, parameters, seed): the seeded
stream in :mod:`pecs.rng` draws the target, the distractors, and the option
shuffle in that fixed order, so the same inputs rebuild the identical task in
any process. Evaluation awards one star per correct act and attaches feedback
whenever the act was wrong.
"""

from __future__ import annotations

from dataclasses import dataclass

from .catalog import CATEGORY_ROLES, Card, Deck, query_cards
from .errors import (
    ChoiceNotInOptions,
    IndexOutOfRange,
    InsufficientCards,
    UnknownCardId,
)
from .grammar import INCOMPLETE, validate_strip
from .rng import SplitMix64

ACTIVITIES = ("SINGLE_WORD", "PECS_BOOK", "DIFFERENTIATE", "QA")

QA_PROMPT = "What do you want?"
QA_OPTION_COUNT = 3


@dataclass(frozen=True)
class DiscriminationTask:
    """Pick the card matching the target from dissimilar options."""

    task_id: str
    target: str
    options: tuple[str, ...]
    seed: int
    category: str
    n_options: int


@dataclass(frozen=True)
class Question:
    """Three-option question; exactly one option is right."""

    question_id: str
    prompt_text: str
    prompt_card: str
    options: tuple[str, str, str]
    correct_index: int
    seed: int


@dataclass(frozen=True)
class EvaluationResult:
    correct: bool
    stars_awarded: int
    feedback_text: str


@dataclass(frozen=True)
class TapEvent:
    """What the UI needs after a single-word tap: the cue to play and the word."""

    card_id: str
    audio_ref: str | None
    word: str


def _evaluation(correct: bool, wrong_feedback: str) -> EvaluationResult:
    if correct:
        return EvaluationResult(correct=True, stars_awarded=1, feedback_text="Well done!")
    return EvaluationResult(correct=False, stars_awarded=0, feedback_text=wrong_feedback)


def gen_discrimination_task(
    deck: Deck, target_category: str, n_options: int, seed: int
) -> DiscriminationTask:
    """Seeded drag-match task: one target from the category, distractors from outside it.

    Draw order (fixed for reproducibility): target choice, distractor sample,
    option shuffle.
    """
    if not 2 <= n_options <= 6:
        raise ValueError("n_options must be between 2 and 6")
    in_category = query_cards(deck, category=target_category)
    outside = [card for card in deck.cards if card.category != target_category]
    if not in_category:
        raise InsufficientCards(f"no cards in category '{target_category}'")
    if len(outside) < n_options - 1:
        raise InsufficientCards(
            f"need {n_options - 1} cards outside '{target_category}', deck has {len(outside)}"
        )
    rng = SplitMix64(seed)
    target = rng.choice(in_category)
    distractors = rng.sample(outside, n_options - 1)
    options = [target, *distractors]
    rng.shuffle(options)
    return DiscriminationTask(
        task_id=f"dt-{target_category.lower()}-{n_options}-{seed}",
        target=target.id,
        options=tuple(card.id for card in options),
        seed=seed,
        category=target_category,
        n_options=n_options,
    )


def evaluate_discrimination(deck: Deck, task: DiscriminationTask, chosen: str) -> EvaluationResult:
    """Correct iff the chosen card is the target; wrong picks name the target word."""
    if chosen not in task.options:
        raise ChoiceNotInOptions(chosen)
    target_card = deck.find(task.target)
    if target_card is None:
        raise UnknownCardId(task.target)
    return _evaluation(
        chosen == task.target,
        f"Try again - find the {target_card.word}",
    )


def gen_question(deck: Deck, phase: int, seed: int) -> Question:
    """Seeded three-option question.

    The prompt is the Phase IV request question; the prompt card shows the
    correct option's picture. Options come from the NOUN/ACTION pool, so
    same-category distractors are possible (that is the intended difficulty).
    """
    if phase not in (1, 2, 3, 4):
        raise ValueError("phase must be 1..4")
    pool = [card for card in deck.cards if card.role in ("NOUN", "ACTION")]
    if len(pool) < QA_OPTION_COUNT:
        raise InsufficientCards(
            f"need {QA_OPTION_COUNT} noun or action cards, deck has {len(pool)}"
        )
    rng = SplitMix64(seed)
    correct = rng.choice(pool)
    others = rng.sample([card for card in pool if card.id != correct.id], QA_OPTION_COUNT - 1)
    options = [correct, *others]
    rng.shuffle(options)
    return Question(
        question_id=f"qa-{phase}-{seed}",
        prompt_text=QA_PROMPT,
        prompt_card=correct.id,
        options=tuple(card.id for card in options),
        correct_index=options.index(correct),
        seed=seed,
    )


def evaluate_answer(question: Question, chosen_index: int) -> EvaluationResult:
    if not 0 <= chosen_index < QA_OPTION_COUNT:
        raise IndexOutOfRange(f"chosen_index {chosen_index} not in 0..{QA_OPTION_COUNT - 1}")
    return _evaluation(
        chosen_index == question.correct_index,
        "Not quite. Try again!",
    )


def evaluate_strip_submission(deck: Deck, card_ids) -> EvaluationResult:
    """Sentence-book submission: a star for a complete sentence, feedback otherwise."""
    verdict = validate_strip(deck, card_ids)
    if verdict.is_valid:
        return _evaluation(True, "")
    if verdict.status == INCOMPLETE:
        return _evaluation(False, "Sentence not finished")
    return _evaluation(False, f"Check card {verdict.invalid_position + 1}")


def record_single_word_tap(deck: Deck, card_id: str) -> TapEvent:
    """Look up the tapped card's cue and word. Taps are never wrong and earn no stars."""
    card = deck.find(card_id)
    if card is None:
        raise UnknownCardId(card_id)
    return TapEvent(card_id=card.id, audio_ref=card.audio_ref, word=card.word)


def category_for_role(role: str) -> list[str]:
    """Categories whose cards may carry ``role`` (used by task pickers)."""
    return [cat for cat, roles in CATEGORY_ROLES.items() if role in roles]
