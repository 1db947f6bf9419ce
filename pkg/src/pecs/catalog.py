"""Picture-card vocabulary: cards, decks, and the JSON interchange format.

A deck groups cards into the eight picture categories plus the Core function
words. Each category is tied to the grammar roles its cards may carry:

    Animals, Food, Fruits, Vegetables, Shapes  ->  NOUN
    Colours, Emotions                          ->  ADJECTIVE
    Motions                                    ->  ACTION
    Core                                       ->  STARTER | VERB | PREPOSITION

Decks are immutable values: loading validates everything up front, and
mutation (adding a custom card) returns a new deck.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from importlib import resources

from .errors import (
    DuplicateCardId,
    MalformedDocument,
    RoleCategoryMismatch,
    UnknownCategory,
    VersionUnsupported,
)

DECK_FORMAT_VERSION = 1

CATEGORIES = (
    "Animals", "Food", "Colours", "Shapes",
    "Fruits", "Emotions", "Motions", "Vegetables", "Core",
)

ROLES = ("STARTER", "VERB", "ACTION", "ADJECTIVE", "NOUN", "PREPOSITION")

CATEGORY_ROLES: dict[str, frozenset[str]] = {
    "Animals": frozenset({"NOUN"}),
    "Food": frozenset({"NOUN"}),
    "Fruits": frozenset({"NOUN"}),
    "Vegetables": frozenset({"NOUN"}),
    "Shapes": frozenset({"NOUN"}),
    "Colours": frozenset({"ADJECTIVE"}),
    "Emotions": frozenset({"ADJECTIVE"}),
    "Motions": frozenset({"ACTION"}),
    "Core": frozenset({"STARTER", "VERB", "PREPOSITION"}),
}

# Canonical key order for a serialized card.
_CARD_KEYS = ("id", "word", "category", "role", "picture", "audio")


def _check_asset_path(card_id: str, name: str, value: str) -> None:
    if value.startswith(("/", "\\")):
        raise MalformedDocument(f"card '{card_id}': {name} must be a relative path")
    if ".." in value.replace("\\", "/").split("/"):
        raise MalformedDocument(f"card '{card_id}': {name} must not traverse upward")


@dataclass(frozen=True)
class Card:
    """One picture card: a word, its category, its grammar role, and asset refs.

    ``audio_ref`` may be None; a card without a recorded cue stays tappable
    but silent.
    """

    id: str
    word: str
    category: str
    role: str
    picture_ref: str
    audio_ref: str | None = None

    def __post_init__(self):
        if not self.id:
            raise MalformedDocument("card id must be non-empty")
        if not self.word:
            raise MalformedDocument(f"card '{self.id}': word must be non-empty")
        if self.category not in CATEGORY_ROLES:
            raise UnknownCategory(f"card '{self.id}': unknown category '{self.category}'")
        if self.role not in CATEGORY_ROLES[self.category]:
            allowed = "|".join(sorted(CATEGORY_ROLES[self.category]))
            raise RoleCategoryMismatch(
                f"card '{self.id}': role '{self.role}' not allowed for "
                f"category {self.category} (expects {allowed})"
            )
        if not self.picture_ref:
            raise MalformedDocument(f"card '{self.id}': picture ref must be non-empty")
        _check_asset_path(self.id, "picture", self.picture_ref)
        if self.audio_ref is not None:
            if not self.audio_ref:
                raise MalformedDocument(f"card '{self.id}': audio ref must be non-empty or null")
            _check_asset_path(self.id, "audio", self.audio_ref)

    def to_obj(self) -> dict:
        """Interchange-format dict with keys in canonical order."""
        return {
            "id": self.id,
            "word": self.word,
            "category": self.category,
            "role": self.role,
            "picture": self.picture_ref,
            "audio": self.audio_ref,
        }


@dataclass(frozen=True)
class Deck:
    """Immutable ordered card collection with pairwise-distinct ids."""

    format_version: int = DECK_FORMAT_VERSION
    cards: tuple[Card, ...] = ()

    def __post_init__(self):
        if not isinstance(self.format_version, int) or self.format_version < 1:
            raise MalformedDocument("format_version must be a positive integer")
        seen: set[str] = set()
        for card in self.cards:
            if card.id in seen:
                raise DuplicateCardId(card.id)
            seen.add(card.id)

    def by_id(self) -> dict[str, Card]:
        return {card.id: card for card in self.cards}

    def find(self, card_id: str) -> Card | None:
        for card in self.cards:
            if card.id == card_id:
                return card
        return None


def phase3_ready(deck: Deck) -> bool:
    """True when the deck can seed sentence building: a STARTER and a VERB exist."""
    roles = {card.role for card in deck.cards}
    return "STARTER" in roles and "VERB" in roles


def _card_from_obj(obj) -> Card:
    if not isinstance(obj, dict):
        raise MalformedDocument("card entry must be an object")
    extra = set(obj) - set(_CARD_KEYS)
    if extra:
        raise MalformedDocument(
            f"card '{obj.get('id', '?')}': unknown keys {sorted(extra)}"
        )
    for key in ("id", "word", "category", "role", "picture"):
        if not isinstance(obj.get(key), str):
            raise MalformedDocument(f"card '{obj.get('id', '?')}': '{key}' must be a string")
    audio = obj.get("audio")
    if audio is not None and not isinstance(audio, str):
        raise MalformedDocument(f"card '{obj['id']}': 'audio' must be a string or null")
    return Card(
        id=obj["id"],
        word=obj["word"],
        category=obj["category"],
        role=obj["role"],
        picture_ref=obj["picture"],
        audio_ref=audio,
    )


def load_deck(document: str | bytes | dict) -> Deck:
    """Parse and validate a deck interchange document.

    Accepts the raw JSON text (or an already-parsed object) and returns a
    fully validated Deck. Loading is lossless: exporting the result yields
    the canonical form of the input.
    """
    if isinstance(document, (str, bytes)):
        try:
            obj = json.loads(document)
        except json.JSONDecodeError as exc:
            raise MalformedDocument(f"invalid JSON: {exc}") from exc
    else:
        obj = document
    if not isinstance(obj, dict):
        raise MalformedDocument("deck document must be a JSON object")
    extra = set(obj) - {"format_version", "cards"}
    if extra:
        raise MalformedDocument(f"unknown top-level keys {sorted(extra)}")
    version = obj.get("format_version")
    if not isinstance(version, int) or version < 1:
        raise MalformedDocument("format_version must be a positive integer")
    if version > DECK_FORMAT_VERSION:
        raise VersionUnsupported(f"deck format_version {version} is newer than {DECK_FORMAT_VERSION}")
    raw_cards = obj.get("cards")
    if not isinstance(raw_cards, list):
        raise MalformedDocument("'cards' must be a list")
    return Deck(format_version=version, cards=tuple(_card_from_obj(c) for c in raw_cards))


def export_deck(deck: Deck) -> str:
    """Serialize to the canonical interchange form.

    Canonical means: two-space indentation, card fields in the fixed order
    id, word, category, role, picture, audio, cards in deck order, and a
    trailing newline. Two structurally equal decks always serialize to
    identical bytes.
    """
    obj = {
        "format_version": deck.format_version,
        "cards": [card.to_obj() for card in deck.cards],
    }
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def canonicalize_deck_document(document: str | bytes | dict) -> str:
    """Canonical form of any valid deck document."""
    return export_deck(load_deck(document))


def add_custom_card(deck: Deck, card: Card) -> Deck:
    """New deck with ``card`` appended; the input deck is untouched."""
    if any(existing.id == card.id for existing in deck.cards):
        raise DuplicateCardId(card.id)
    return replace(deck, cards=deck.cards + (card,))


def query_cards(deck: Deck, category: str | None = None, role: str | None = None) -> list[Card]:
    """Cards matching all supplied filters, in deck order.

    An unknown filter value simply matches nothing.
    """
    return [
        card
        for card in deck.cards
        if (category is None or card.category == category)
        and (role is None or card.role == role)
    ]


def reference_deck() -> Deck:
    """The bundled starter vocabulary: 8 categories plus the Core words."""
    text = resources.files("pecs.data").joinpath("reference_deck.json").read_text("utf-8")
    return load_deck(text)
