"""Error types shared across the deck, grammar, activity, learner, and service layers.

Every error carries a machine-readable ``code`` (the class name) that the HTTP
layer returns verbatim, so clients can switch on it without parsing messages.
"""

from __future__ import annotations


class PecsError(Exception):
    """Base class for all domain errors."""

    code = "PecsError"

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        cls.code = cls.__name__

    def __init__(self, detail: str = ""):
        super().__init__(detail)
        self.detail = detail


# --- deck / card errors ---

class MalformedDocument(PecsError):
    """Deck document is syntactically broken or violates a field invariant."""


class DuplicateCardId(PecsError):
    """Two cards in the same deck share an id."""


class UnknownCategory(PecsError):
    """Card names a category outside the fixed category set."""


class RoleCategoryMismatch(PecsError):
    """Card's grammar role is not allowed for its category."""


class UnknownDeck(PecsError):
    """No deck registered under the requested id."""


# --- sentence strip errors ---

class UnknownCardId(PecsError):
    """Strip or request references a card id the deck does not contain."""


class StripTooLong(PecsError):
    """Strip exceeds the 6-card cap."""


class PrefixNotExtendable(PecsError):
    """Prediction asked for a prefix that is already VALID or INVALID."""


class StripNotValid(PecsError):
    """Usage-model training requires a VALID strip."""


# --- activity errors ---

class InsufficientCards(PecsError):
    """Deck cannot supply enough cards for the requested task."""


class ChoiceNotInOptions(PecsError):
    """Chosen card id is not one of the task's options."""


class IndexOutOfRange(PecsError):
    """Chosen answer index is outside 0..2."""


# --- learner / account errors ---

class UsernameTaken(PecsError):
    """Registration username already exists."""


class WeakPassword(PecsError):
    """Password shorter than the minimum length."""


class AuthFailed(PecsError):
    """Uniform authentication failure (unknown user, bad password, bad token)."""


class UnknownLearner(PecsError):
    """No learner registered under the requested id."""


class InconsistentAttempt(PecsError):
    """Attempt's stars_awarded does not follow from its correctness."""


class UnknownTheme(PecsError):
    """Settings update names a theme outside the theme set."""


class InvalidLink(PecsError):
    """Account links must connect a child to a therapist or parent."""


# --- messaging errors ---

class NotLinked(PecsError):
    """Requester has no qualifying link to the other account."""


class EmptyBody(PecsError):
    """Message body is empty."""


class BodyTooLong(PecsError):
    """Message body exceeds 2000 characters."""


# --- persistence / service errors ---

class MalformedSnapshot(PecsError):
    """Store snapshot cannot be parsed or fails structural checks."""


class VersionUnsupported(PecsError):
    """Document or snapshot was written by a newer format version."""


class TooManyRequests(PecsError):
    """Per-token request cap exceeded."""
