import pytest

from pecs.catalog import Deck, reference_deck

# The ten-card deck used by the exhaustive grammar sweep and several oracles:
# one STARTER, two VERBs, one ACTION, two ADJECTIVEs, three NOUNs, one
# PREPOSITION. Ten cards keeps the full length-<=4 space at 11,111 sequences.
SMALL_DECK_IDS = ("i", "want", "like", "to-run", "red", "happy", "apple", "food", "dog", "with")


@pytest.fixture(scope="session")
def deck() -> Deck:
    return reference_deck()


@pytest.fixture(scope="session")
def small_deck(deck) -> Deck:
    by_id = deck.by_id()
    return Deck(cards=tuple(by_id[cid] for cid in SMALL_DECK_IDS))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    reports = []
    for key in ("passed", "failed", "error"):
        reports.extend(terminalreporter.stats.get(key, []))
    acceptance = [
        r for r in reports if getattr(r, "when", "call") == "call" and "test_acceptance" in r.nodeid
    ]
    if not acceptance:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for report in sorted(acceptance, key=lambda r: r.nodeid):
        status = "PASS" if report.passed else "FAIL"
        terminalreporter.write_line(f"{status}  {report.nodeid.split('::')[-1]}")
