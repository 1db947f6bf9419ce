"""Regenerate the bundled reference deck in canonical form.

Run from the repo root:

    PYTHONPATH=src python scripts/make_reference_deck.py
"""

from __future__ import annotations

import pathlib

from pecs.catalog import Card, Deck, export_deck

WORDS: list[tuple[str, str, str]] = [
    # word, category, role
    ("I", "Core", "STARTER"),
    ("want", "Core", "VERB"),
    ("like", "Core", "VERB"),
    ("see", "Core", "VERB"),
    ("with", "Core", "PREPOSITION"),
    ("on", "Core", "PREPOSITION"),
    ("dog", "Animals", "NOUN"),
    ("cat", "Animals", "NOUN"),
    ("bird", "Animals", "NOUN"),
    ("fish", "Animals", "NOUN"),
    ("food", "Food", "NOUN"),
    ("bread", "Food", "NOUN"),
    ("pizza", "Food", "NOUN"),
    ("rice", "Food", "NOUN"),
    ("red", "Colours", "ADJECTIVE"),
    ("blue", "Colours", "ADJECTIVE"),
    ("green", "Colours", "ADJECTIVE"),
    ("yellow", "Colours", "ADJECTIVE"),
    ("circle", "Shapes", "NOUN"),
    ("square", "Shapes", "NOUN"),
    ("triangle", "Shapes", "NOUN"),
    ("star", "Shapes", "NOUN"),
    ("apple", "Fruits", "NOUN"),
    ("orange", "Fruits", "NOUN"),
    ("banana", "Fruits", "NOUN"),
    ("grapes", "Fruits", "NOUN"),
    ("happy", "Emotions", "ADJECTIVE"),
    ("sad", "Emotions", "ADJECTIVE"),
    ("angry", "Emotions", "ADJECTIVE"),
    ("scared", "Emotions", "ADJECTIVE"),
    ("to run", "Motions", "ACTION"),
    ("to jump", "Motions", "ACTION"),
    ("to walk", "Motions", "ACTION"),
    ("to swim", "Motions", "ACTION"),
    ("carrot", "Vegetables", "NOUN"),
    ("potato", "Vegetables", "NOUN"),
    ("tomato", "Vegetables", "NOUN"),
    ("onion", "Vegetables", "NOUN"),
]


def card_id(word: str) -> str:
    return word.lower().replace(" ", "-")


def build() -> Deck:
    cards = tuple(
        Card(
            id=card_id(word),
            word=word,
            category=category,
            role=role,
            picture_ref=f"pictures/{card_id(word)}.svg",
            audio_ref=f"audio/{card_id(word)}.wav",
        )
        for word, category, role in WORDS
    )
    return Deck(cards=cards)


if __name__ == "__main__":
    out = pathlib.Path(__file__).resolve().parents[1] / "src" / "pecs" / "data" / "reference_deck.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(export_deck(build()), encoding="utf-8")
    print(f"wrote {out} ({len(WORDS)} cards)")
