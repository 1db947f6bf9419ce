"""Command line front door: run the service, manage decks, pull reports.

The store file defaults to ``pecs_store.json`` in the working directory;
``--store`` or the PECS_STORE environment variable points elsewhere.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .catalog import canonicalize_deck_document, export_deck, load_deck
from .errors import PecsError
from .store import DEFAULT_DECK_ID, Store

_STORE_OPTION = click.option(
    "--store",
    "store_path",
    envvar="PECS_STORE",
    default="pecs_store.json",
    show_default=True,
    help="Path of the store file (env: PECS_STORE).",
)


@click.group()
def main():
    """Picture-card communication trainer: service, decks, and reports."""


@main.command()
@click.option("--port", default=8000, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@_STORE_OPTION
def serve(port: int, host: str, store_path: str):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    store = Store.open(store_path)
    click.echo(f"store: {store_path}", err=True)
    try:
        uvicorn.run(create_app(store), host=host, port=port, log_level="info")
    finally:
        store.close()


@main.command()
@click.argument("deck_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--deck-id", default=DEFAULT_DECK_ID, show_default=True)
@_STORE_OPTION
def ingest(deck_file: str, deck_id: str, store_path: str):
    """Load a deck document into the store (replacing the deck id if present)."""
    try:
        deck = load_deck(Path(deck_file).read_text(encoding="utf-8"))
    except PecsError as exc:
        raise click.ClickException(f"{exc.code}: {exc}")
    store = Store.open(store_path)
    try:
        store.decks[deck_id] = deck
        store.save()
    finally:
        store.close()
    click.echo(f"ingested {len(deck.cards)} cards as deck '{deck_id}'")


@main.command()
@click.option("--deck-id", default=DEFAULT_DECK_ID, show_default=True)
@click.option("--out", "out_file", type=click.Path(dir_okay=False), default=None)
@_STORE_OPTION
def export(deck_id: str, out_file: str | None, store_path: str):
    """Write a deck in canonical interchange form to stdout or a file."""
    store = Store.open(store_path)
    try:
        document = export_deck(store.get_deck(deck_id))
    except PecsError as exc:
        raise click.ClickException(f"{exc.code}: {exc}")
    finally:
        store.close()
    if out_file:
        Path(out_file).write_text(document, encoding="utf-8")
        click.echo(f"wrote {out_file}", err=True)
    else:
        sys.stdout.write(document)


@main.command()
@click.argument("deck_file", type=click.Path(exists=True, dir_okay=False))
def canonicalize(deck_file: str):
    """Reprint a deck document in canonical form (no store involved)."""
    try:
        sys.stdout.write(canonicalize_deck_document(Path(deck_file).read_text(encoding="utf-8")))
    except PecsError as exc:
        raise click.ClickException(f"{exc.code}: {exc}")


@main.command()
@click.option("--learner", "learner_id", required=True)
@click.option(
    "--out-dir",
    type=click.Path(file_okay=False),
    default=None,
    help="Also render progress charts (PNG) next to the CSV in this directory.",
)
@_STORE_OPTION
def report(learner_id: str, out_dir: str | None, store_path: str):
    """Print a learner's attempt history as CSV; optionally render charts."""
    from .reporting import render_report_figures, write_report_csv

    store = Store.open(store_path)
    try:
        profile = store.get_profile(learner_id)
        attempts = store.ledgers[learner_id]
        if out_dir:
            out = Path(out_dir)
            out.mkdir(parents=True, exist_ok=True)
            csv_path = out / f"{learner_id}_attempts.csv"
            with open(csv_path, "w", encoding="utf-8", newline="") as fh:
                write_report_csv(fh, profile, attempts)
            figures = render_report_figures(out, profile, attempts)
            for path in [csv_path, *figures]:
                click.echo(f"wrote {path}")
        else:
            write_report_csv(sys.stdout, profile, attempts)
    except PecsError as exc:
        raise click.ClickException(f"{exc.code}: {exc}")
    finally:
        store.close()


@main.command("reset-phase")
@click.option("--learner", "learner_id", required=True)
@click.option("--phase", required=True, type=click.IntRange(1, 4))
@_STORE_OPTION
def reset_phase(learner_id: str, phase: int, store_path: str):
    """Set a learner's phase directly (therapist override)."""
    store = Store.open(store_path)
    try:
        profile = store.reset_phase(learner_id, phase)
    except PecsError as exc:
        raise click.ClickException(f"{exc.code}: {exc}")
    finally:
        store.close()
    click.echo(f"{learner_id} is now in phase {profile.current_phase}")


@main.command()
@click.option("--child", "child_id", required=True)
@click.option("--adult", "adult_id", required=True)
@_STORE_OPTION
def link(child_id: str, adult_id: str, store_path: str):
    """Link a child account with a therapist or parent account."""
    store = Store.open(store_path)
    try:
        store.link(child_id, adult_id)
    except PecsError as exc:
        raise click.ClickException(f"{exc.code}: {exc}")
    finally:
        store.close()
    click.echo(f"linked {child_id} <-> {adult_id}")


if __name__ == "__main__":
    main()
