"""Sentence-strip grammar, strip rendering, audio sequencing, and next-card prediction.

Strips are validated against a small request grammar over card roles:

    sentence     = STARTER VERB (ACTION | noun-phrase)
    noun-phrase  = ADJECTIVE* NOUN (PREPOSITION noun-phrase)?

with at most 6 cards on a strip. The grammar is regular, so validation walks
a six-state machine and classifies the strip as:

    VALID       the whole sequence is a sentence
    INCOMPLETE  a proper prefix of some sentence that still fits in 6 cards
    INVALID     neither; the verdict carries the first position where no
                sentence can continue

A sequence that already forms a sentence is VALID even if it could be
extended further (e.g. with a prepositional phrase).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import Card, Deck
from .errors import PrefixNotExtendable, StripNotValid, StripTooLong, UnknownCardId

MAX_STRIP_LEN = 6

VALID = "VALID"
INCOMPLETE = "INCOMPLETE"
INVALID = "INVALID"

# Machine states while consuming a strip left to right.
_START, _NEED_VERB, _NEED_OBJECT, _IN_NP, _AFTER_NOUN, _AFTER_ACTION = range(6)

_TRANSITIONS: dict[tuple[int, str], int] = {
    (_START, "STARTER"): _NEED_VERB,
    (_NEED_VERB, "VERB"): _NEED_OBJECT,
    (_NEED_OBJECT, "ACTION"): _AFTER_ACTION,
    (_NEED_OBJECT, "ADJECTIVE"): _IN_NP,
    (_NEED_OBJECT, "NOUN"): _AFTER_NOUN,
    (_IN_NP, "ADJECTIVE"): _IN_NP,
    (_IN_NP, "NOUN"): _AFTER_NOUN,
    (_AFTER_NOUN, "PREPOSITION"): _IN_NP,
}

_ACCEPTING = frozenset({_AFTER_NOUN, _AFTER_ACTION})

# Fewest cards that can still complete a sentence from each state.
_MIN_TO_FINISH = {
    _START: 3,
    _NEED_VERB: 2,
    _NEED_OBJECT: 1,
    _IN_NP: 1,
    _AFTER_NOUN: 0,
    _AFTER_ACTION: 0,
}


@dataclass(frozen=True)
class StripVerdict:
    """Validation outcome for one card sequence."""

    status: str
    invalid_position: int | None = None
    reason: str | None = None

    @property
    def is_valid(self) -> bool:
        return self.status == VALID


@dataclass(frozen=True)
class SentenceStrip:
    """Ordered card sequence plus its current grammar verdict.

    Construct through :func:`make_strip` so the stored state can never go
    stale relative to the card sequence.
    """

    card_ids: tuple[str, ...]
    state: StripVerdict


def _resolve(deck: Deck, card_ids) -> list[Card]:
    index = deck.by_id()
    cards = []
    for card_id in card_ids:
        card = index.get(card_id)
        if card is None:
            raise UnknownCardId(card_id)
        cards.append(card)
    return cards


def _extension_ok(state: int, role: str, length_after: int) -> int | None:
    """Next state if ``role`` keeps the strip on a path to a sentence, else None."""
    nxt = _TRANSITIONS.get((state, role))
    if nxt is None:
        return None
    if nxt in _ACCEPTING:
        return nxt
    if length_after + _MIN_TO_FINISH[nxt] > MAX_STRIP_LEN:
        return None
    return nxt


def validate_strip(deck: Deck, card_ids) -> StripVerdict:
    """Classify a card sequence as VALID, INCOMPLETE, or INVALID.

    INVALID verdicts report the first position at which the sequence stopped
    being a prefix of any sentence (including running out of room under the
    6-card cap), so the UI has a concrete card to highlight.
    """
    card_ids = list(card_ids)
    if len(card_ids) > MAX_STRIP_LEN:
        raise StripTooLong(f"strip has {len(card_ids)} cards (max {MAX_STRIP_LEN})")
    cards = _resolve(deck, card_ids)
    state = _START
    for i, card in enumerate(cards):
        nxt = _extension_ok(state, card.role, i + 1)
        if nxt is None:
            return StripVerdict(
                INVALID,
                invalid_position=i,
                reason=f"card {i + 1} ('{card.word}') cannot continue the sentence",
            )
        state = nxt
    if state in _ACCEPTING:
        return StripVerdict(VALID)
    return StripVerdict(INCOMPLETE)


def make_strip(deck: Deck, card_ids) -> SentenceStrip:
    """Build a SentenceStrip with its verdict computed from the deck."""
    ids = tuple(card_ids)
    return SentenceStrip(card_ids=ids, state=validate_strip(deck, ids))


def render_strip_text(deck: Deck, strip: SentenceStrip | list | tuple) -> str:
    """Space-joined card words in strip order, valid or not."""
    card_ids = strip.card_ids if isinstance(strip, SentenceStrip) else strip
    return " ".join(card.word for card in _resolve(deck, card_ids))


def audio_sequence(deck: Deck, strip: SentenceStrip | list | tuple) -> list[str]:
    """Audio refs in strip order, skipping silent cards. Playback is the UI's job."""
    card_ids = strip.card_ids if isinstance(strip, SentenceStrip) else strip
    return [card.audio_ref for card in _resolve(deck, card_ids) if card.audio_ref]


@dataclass(frozen=True)
class UsageModel:
    """Per-learner card usage counts: unigrams and adjacent-pair bigrams."""

    unigram: dict[str, int] = field(default_factory=dict)
    bigram: dict[tuple[str, str], int] = field(default_factory=dict)

    @classmethod
    def empty(cls) -> "UsageModel":
        return cls()

    def total(self) -> int:
        return sum(self.unigram.values())


def update_usage_model(model: UsageModel, strip: SentenceStrip) -> UsageModel:
    """Train on one completed sentence; returns a new model, input untouched."""
    if not strip.state.is_valid:
        raise StripNotValid("only VALID strips train the usage model")
    unigram = dict(model.unigram)
    bigram = dict(model.bigram)
    for card_id in strip.card_ids:
        unigram[card_id] = unigram.get(card_id, 0) + 1
    for prev, nxt in zip(strip.card_ids, strip.card_ids[1:]):
        bigram[(prev, nxt)] = bigram.get((prev, nxt), 0) + 1
    return UsageModel(unigram=unigram, bigram=bigram)


def _legal_roles(deck: Deck, prefix: list[str]) -> set[str]:
    """Roles that extend the prefix toward some sentence within the cap."""
    cards = _resolve(deck, prefix)
    state = _START
    for i, card in enumerate(cards):
        state = _extension_ok(state, card.role, i + 1)
        assert state is not None  # caller validated the prefix as INCOMPLETE
    return {
        role
        for role in ("STARTER", "VERB", "ACTION", "ADJECTIVE", "NOUN", "PREPOSITION")
        if _extension_ok(state, role, len(cards) + 1) is not None
    }


def predict_next(deck: Deck, prefix, model: UsageModel, k: int) -> list[str]:
    """Rank the cards that can legally extend ``prefix``, best first.

    Scores use Laplace-smoothed bigram frequency:

        score(c) = (bigram(last, c) + 1) / (unigram(last) + |candidates|)

    and for the empty prefix, smoothed unigram frequency:

        score(c) = (unigram(c) + 1) / (total + |candidates|)

    Smoothing keeps an untrained model rankable; ties break by descending
    unigram count, then ascending card id, so the order is deterministic.
    """
    if k < 1:
        raise ValueError("k must be a positive integer")
    prefix = list(prefix)
    verdict = validate_strip(deck, prefix)
    if verdict.status != INCOMPLETE:
        raise PrefixNotExtendable(f"prefix is {verdict.status}; nothing useful to suggest")
    roles = _legal_roles(deck, prefix)
    candidates = [card for card in deck.cards if card.role in roles]
    if not candidates:
        return []
    n = len(candidates)
    if prefix:
        last = prefix[-1]
        denom = model.unigram.get(last, 0) + n
        def score(card: Card) -> float:
            return (model.bigram.get((last, card.id), 0) + 1) / denom
    else:
        denom = model.total() + n
        def score(card: Card) -> float:
            return (model.unigram.get(card.id, 0) + 1) / denom
    ranked = sorted(
        candidates,
        key=lambda card: (-score(card), -model.unigram.get(card.id, 0), card.id),
    )
    return [card.id for card in ranked[:k]]
