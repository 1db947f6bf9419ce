import csv
import io
import json

from pecs.reporting import CSV_COLUMNS, render_report_figures, report_rows, write_report_csv
from pecs.store import Store


def store_with_history():
    store = Store()
    store.seed_reference_deck()
    therapist = store.register("tess", "password-10", "THERAPIST")
    child = store.register("kiddo", "password-10", "CHILD", linked_ids=[therapist.learner_id])
    for i in range(6):
        store.record_attempt(
            learner_id=child.learner_id,
            activity="SINGLE_WORD",
            prompt_descriptor=json.dumps({"kind": "tap", "category": "Fruits"}),
            response=json.dumps({"card_id": "apple"}),
            correct=True,
            stars_awarded=0,
        )
    for correct in (True, True, False):
        store.record_attempt(
            learner_id=child.learner_id,
            activity="DIFFERENTIATE",
            prompt_descriptor=json.dumps({"kind": "match", "category": "Animals"}),
            response=json.dumps({"chosen": "dog"}),
            correct=correct,
            stars_awarded=int(correct),
        )
    return store, child.learner_id


def test_rows_carry_a_running_star_total():
    store, child_id = store_with_history()
    rows = report_rows(store.get_profile(child_id), store.ledgers[child_id])
    assert len(rows) == 9
    assert [r["star_total"] for r in rows] == [0, 0, 0, 0, 0, 0, 1, 2, 2]
    assert rows[-1]["activity"] == "DIFFERENTIATE"
    assert rows[-1]["category"] == "Animals"
    assert rows[-1]["correct"] == "no"


def test_csv_matches_ledger():
    store, child_id = store_with_history()
    buffer = io.StringIO()
    write_report_csv(buffer, store.get_profile(child_id), store.ledgers[child_id])
    parsed = list(csv.DictReader(io.StringIO(buffer.getvalue())))
    assert len(parsed) == 9
    assert list(parsed[0]) == list(CSV_COLUMNS)
    ledger = store.ledgers[child_id]
    assert [r["attempt_id"] for r in parsed] == [a.attempt_id for a in ledger]
    assert int(parsed[-1]["star_total"]) == sum(a.stars_awarded for a in ledger)


def test_figures_are_written_as_png(tmp_path):
    store, child_id = store_with_history()
    paths = render_report_figures(tmp_path, store.get_profile(child_id), store.ledgers[child_id])
    assert len(paths) == 3
    for path in paths:
        assert path.exists()
        assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_figures_survive_an_empty_ledger(tmp_path):
    store = Store()
    store.seed_reference_deck()
    learner = store.register("new", "password-10", "CHILD")
    paths = render_report_figures(tmp_path, learner, [])
    assert all(p.exists() for p in paths)
