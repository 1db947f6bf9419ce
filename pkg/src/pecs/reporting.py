"""Progress exports: a delimited attempt history and rendered charts.

The CSV is one row per attempt with a running star total, so a spreadsheet
can recheck every number the figures show. Figures are written as PNG files
(no display server needed) and cover the three things a therapist scans
for: stars over time, accuracy per activity, and where the stars came from.
"""

from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import learners
from .learners import ActivityAttempt, LearnerProfile

CSV_COLUMNS = (
    "attempt_id",
    "timestamp",
    "activity",
    "category",
    "correct",
    "stars_awarded",
    "star_total",
)


def report_rows(profile: LearnerProfile, attempts: list[ActivityAttempt]) -> list[dict]:
    rows = []
    running = 0
    for attempt in attempts:
        running += attempt.stars_awarded
        rows.append(
            {
                "attempt_id": attempt.attempt_id,
                "timestamp": attempt.timestamp,
                "activity": attempt.activity,
                "category": learners.descriptor_category(attempt) or "",
                "correct": "yes" if attempt.correct else "no",
                "stars_awarded": attempt.stars_awarded,
                "star_total": running,
            }
        )
    return rows


def write_report_csv(fh, profile: LearnerProfile, attempts: list[ActivityAttempt]) -> None:
    writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in report_rows(profile, attempts):
        writer.writerow(row)


def render_report_figures(
    out_dir: str | Path, profile: LearnerProfile, attempts: list[ActivityAttempt]
) -> list[Path]:
    """Write the three progress charts into ``out_dir``; returns the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report = learners.build_progress_report(profile, attempts)
    written = []

    fig, ax = plt.subplots(figsize=(8, 4.5))
    totals = [0]
    for attempt in attempts:
        totals.append(totals[-1] + attempt.stars_awarded)
    ax.step(range(len(totals)), totals, where="post", color="#f2a900", linewidth=2)
    ax.set_xlabel("attempts")
    ax.set_ylabel("stars")
    ax.set_title(f"{profile.username}: stars over time (phase {report.current_phase})")
    ax.grid(True, alpha=0.3)
    path = out / f"{profile.learner_id}_stars_timeline.png"
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(8, 4.5))
    names = list(report.per_activity)
    accuracy = [report.per_activity[a]["accuracy"] for a in names]
    counts = [report.per_activity[a]["attempts"] for a in names]
    bars = ax.bar(names, accuracy, color="#4a90d9")
    for bar, n in zip(bars, counts):
        ax.text(
            bar.get_x() + bar.get_width() / 2,
            bar.get_height() + 0.02,
            f"n={n}",
            ha="center",
            fontsize=9,
        )
    ax.set_ylim(0, 1.1)
    ax.set_ylabel("accuracy")
    ax.set_title(f"{profile.username}: accuracy by activity")
    path = out / f"{profile.learner_id}_activity_accuracy.png"
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(8, 4.5))
    categories = list(report.per_category_stars)
    stars = [report.per_category_stars[c] for c in categories]
    if categories:
        ax.barh(categories, stars, color="#7bb661")
        ax.invert_yaxis()
    else:
        ax.text(0.5, 0.5, "no starred attempts yet", ha="center", va="center")
        ax.set_axis_off()
    ax.set_xlabel("stars")
    ax.set_title(f"{profile.username}: stars by category")
    path = out / f"{profile.learner_id}_category_stars.png"
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    return written
