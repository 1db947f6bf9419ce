"""Learner accounts, the phase progression rules, attempt ledger arithmetic,
and progress reports.

Everything here is pure bookkeeping over profile/ledger values; the stateful
registry that owns the data lives in :mod:`pecs.store`. Phase advancement is
windowed: once a learner has enough recent accuracy in the current phase's
gate activity, the phase steps up by one, and it never steps down except
through an explicit therapist reset.
"""

from __future__ import annotations

import hashlib
import hmac
import json
import secrets
from dataclasses import dataclass, field

from .errors import InconsistentAttempt, UnknownTheme, WeakPassword

ACCOUNT_ROLES = ("CHILD", "THERAPIST", "PARENT")
THEMES = ("LIGHT", "DARK", "HIGH_CONTRAST")
ACTIVITIES = ("SINGLE_WORD", "PECS_BOOK", "DIFFERENTIATE", "QA")

MIN_PASSWORD_LEN = 8
MAX_PHASE = 4

# Which activity gates each phase, and the activity unlocked at each phase.
PHASE_GATE_ACTIVITY = {1: "SINGLE_WORD", 2: "DIFFERENTIATE", 3: "PECS_BOOK"}
ACTIVITY_MIN_PHASE = {"SINGLE_WORD": 1, "DIFFERENTIATE": 2, "PECS_BOOK": 3, "QA": 4}

# Defaults for the advancement window; the store accepts overrides so
# therapists can tune them per deployment.
ADVANCE_WINDOW = 10
ADVANCE_MIN_ACCURACY = 0.8

_PBKDF2_ITERATIONS = 60_000


def hash_password(password: str, *, iterations: int = _PBKDF2_ITERATIONS) -> str:
    """Salted PBKDF2-SHA256 digest; the plaintext is never stored anywhere."""
    salt = secrets.token_bytes(16)
    digest = hashlib.pbkdf2_hmac("sha256", password.encode("utf-8"), salt, iterations)
    return f"pbkdf2-sha256${iterations}${salt.hex()}${digest.hex()}"


def verify_password(stored: str, password: str) -> bool:
    try:
        scheme, iterations, salt_hex, digest_hex = stored.split("$")
        if scheme != "pbkdf2-sha256":
            return False
        candidate = hashlib.pbkdf2_hmac(
            "sha256", password.encode("utf-8"), bytes.fromhex(salt_hex), int(iterations)
        )
        return hmac.compare_digest(candidate.hex(), digest_hex)
    except (ValueError, TypeError):
        return False


def check_password_strength(password: str) -> None:
    if len(password) < MIN_PASSWORD_LEN:
        raise WeakPassword(f"password must be at least {MIN_PASSWORD_LEN} characters")


def check_theme(theme: str) -> None:
    if theme not in THEMES:
        raise UnknownTheme(f"theme '{theme}' not one of {'/'.join(THEMES)}")


@dataclass
class Settings:
    background_theme: str = "LIGHT"


@dataclass(frozen=True)
class PhaseEntry:
    phase: int
    entered_at: int


@dataclass
class LearnerProfile:
    """One account: credentials, phase state, settings, and adult/child links."""

    learner_id: str
    username: str
    password_digest: str
    account_role: str
    demographics: dict = field(default_factory=dict)
    current_phase: int = 1
    settings: Settings = field(default_factory=Settings)
    created_at: int = 0
    linked_ids: list[str] = field(default_factory=list)
    phase_history: list[PhaseEntry] = field(default_factory=list)

    def is_adult(self) -> bool:
        return self.account_role in ("THERAPIST", "PARENT")

    def unlocked_activities(self) -> list[str]:
        return [a for a in ACTIVITIES if ACTIVITY_MIN_PHASE[a] <= self.current_phase]

    def to_public(self) -> dict:
        """API view of the profile; the password digest never leaves the store."""
        return {
            "learner_id": self.learner_id,
            "username": self.username,
            "account_role": self.account_role,
            "demographics": self.demographics,
            "current_phase": self.current_phase,
            "settings": {"background_theme": self.settings.background_theme},
            "created_at": self.created_at,
            "linked_ids": sorted(self.linked_ids),
        }


@dataclass(frozen=True)
class ActivityAttempt:
    """One interaction event in the append-only ledger."""

    attempt_id: str
    learner_id: str
    activity: str
    prompt_descriptor: str
    response: str
    correct: bool
    stars_awarded: int
    timestamp: int


@dataclass(frozen=True)
class ProgressReport:
    learner_id: str
    star_total: int
    per_activity: dict[str, dict]
    per_category_stars: dict[str, int]
    phase_history: list[PhaseEntry]
    current_phase: int

    def to_obj(self) -> dict:
        return {
            "learner_id": self.learner_id,
            "star_total": self.star_total,
            "per_activity": self.per_activity,
            "per_category_stars": self.per_category_stars,
            "phase_history": [
                {"phase": e.phase, "entered_at": e.entered_at} for e in self.phase_history
            ],
            "current_phase": self.current_phase,
        }


def check_attempt_consistency(attempt: ActivityAttempt) -> None:
    """Stars must follow from correctness.

    Single-word taps are a listening exercise: they are always correct and
    never award a star. Every other activity awards exactly one star per
    correct act.
    """
    if attempt.activity not in ACTIVITIES:
        raise InconsistentAttempt(f"unknown activity '{attempt.activity}'")
    if attempt.stars_awarded not in (0, 1):
        raise InconsistentAttempt("stars_awarded must be 0 or 1")
    if attempt.activity == "SINGLE_WORD":
        if not attempt.correct or attempt.stars_awarded != 0:
            raise InconsistentAttempt("single-word taps are always correct and starless")
    elif attempt.stars_awarded != (1 if attempt.correct else 0):
        raise InconsistentAttempt("stars_awarded must be 1 exactly when correct")


def descriptor_category(attempt: ActivityAttempt) -> str | None:
    """Category recorded in the attempt's prompt descriptor, if any."""
    try:
        obj = json.loads(attempt.prompt_descriptor)
    except (json.JSONDecodeError, TypeError):
        return None
    value = obj.get("category") if isinstance(obj, dict) else None
    return value if isinstance(value, str) else None


def build_progress_report(profile: LearnerProfile, attempts: list[ActivityAttempt]) -> ProgressReport:
    """Recompute the whole report from the raw ledger (nothing cached)."""
    star_total = 0
    per_activity = {a: {"attempts": 0, "correct": 0, "accuracy": 0.0} for a in ACTIVITIES}
    per_category: dict[str, int] = {}
    for attempt in attempts:
        star_total += attempt.stars_awarded
        row = per_activity[attempt.activity]
        row["attempts"] += 1
        row["correct"] += int(attempt.correct)
        if attempt.stars_awarded:
            category = descriptor_category(attempt)
            if category:
                per_category[category] = per_category.get(category, 0) + attempt.stars_awarded
    for row in per_activity.values():
        row["accuracy"] = row["correct"] / row["attempts"] if row["attempts"] else 0.0
    return ProgressReport(
        learner_id=profile.learner_id,
        star_total=star_total,
        per_activity=per_activity,
        per_category_stars=dict(sorted(per_category.items())),
        phase_history=list(profile.phase_history),
        current_phase=profile.current_phase,
    )


def advancement_due(
    profile: LearnerProfile,
    attempts: list[ActivityAttempt],
    *,
    window: int = ADVANCE_WINDOW,
    min_accuracy: float = ADVANCE_MIN_ACCURACY,
) -> bool:
    """True when the learner qualifies to step from the current phase to the next.

    Requires at least ``window`` attempts in the current phase's gate
    activity, with accuracy over the most recent ``window`` of them at or
    above ``min_accuracy``. Phase 4 is terminal.
    """
    gate = PHASE_GATE_ACTIVITY.get(profile.current_phase)
    if gate is None:
        return False
    gated = [a for a in attempts if a.activity == gate]
    if len(gated) < window:
        return False
    recent = gated[-window:]
    correct = sum(1 for a in recent if a.correct)
    return correct / window >= min_accuracy
