"""Picture-card communication trainer.

A card catalog with a sentence-strip grammar, four learning activities,
phase-based progression, next-card prediction, and an HTTP service with
file-backed persistence.
"""

from .catalog import (
    CATEGORIES,
    CATEGORY_ROLES,
    ROLES,
    Card,
    Deck,
    add_custom_card,
    canonicalize_deck_document,
    export_deck,
    load_deck,
    query_cards,
    reference_deck,
)
from .errors import PecsError
from .grammar import (
    INCOMPLETE,
    INVALID,
    MAX_STRIP_LEN,
    VALID,
    SentenceStrip,
    StripVerdict,
    UsageModel,
    audio_sequence,
    make_strip,
    predict_next,
    render_strip_text,
    update_usage_model,
    validate_strip,
)
from .store import Store

__version__ = "0.1.0"

__all__ = [
    "CATEGORIES",
    "CATEGORY_ROLES",
    "ROLES",
    "Card",
    "Deck",
    "INCOMPLETE",
    "INVALID",
    "MAX_STRIP_LEN",
    "PecsError",
    "SentenceStrip",
    "Store",
    "StripVerdict",
    "UsageModel",
    "VALID",
    "add_custom_card",
    "audio_sequence",
    "canonicalize_deck_document",
    "export_deck",
    "load_deck",
    "make_strip",
    "predict_next",
    "query_cards",
    "reference_deck",
    "render_strip_text",
    "update_usage_model",
    "validate_strip",
]
