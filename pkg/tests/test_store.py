"""Store behavior: accounts, links, messaging, attempt flow, persistence."""

import json
import os
import signal
import subprocess
import sys
import time

import pytest

from pecs.errors import (
    AuthFailed,
    BodyTooLong,
    EmptyBody,
    InconsistentAttempt,
    InvalidLink,
    MalformedSnapshot,
    NotLinked,
    TooManyRequests,
    UnknownDeck,
    UnknownLearner,
    UsernameTaken,
    VersionUnsupported,
    WeakPassword,
)
from pecs.rng import SplitMix64
from pecs.store import DEFAULT_DECK_ID, Store


def fresh_store(**kwargs) -> Store:
    store = Store(**kwargs)
    store.seed_reference_deck()
    return store


def family(store):
    therapist = store.register("tess", "password-10", "THERAPIST")
    child = store.register("kiddo", "password-10", "CHILD", linked_ids=[therapist.learner_id])
    return therapist, child


def tap(store, learner_id, card_id="apple", deck_id=DEFAULT_DECK_ID):
    return store.record_attempt(
        learner_id=learner_id,
        activity="SINGLE_WORD",
        prompt_descriptor=json.dumps({"kind": "tap", "deck_id": deck_id, "card_id": card_id}),
        response=json.dumps({"card_id": card_id}),
        correct=True,
        stars_awarded=0,
    )


def graded(store, learner_id, activity, correct, category="Fruits", deck_id=DEFAULT_DECK_ID, card_ids=None):
    descriptor = {"kind": "match", "deck_id": deck_id, "category": category}
    response = {"chosen": "apple"}
    if card_ids is not None:
        descriptor = {"kind": "strip", "deck_id": deck_id}
        response = {"card_ids": card_ids}
    return store.record_attempt(
        learner_id=learner_id,
        activity=activity,
        prompt_descriptor=json.dumps(descriptor),
        response=json.dumps(response),
        correct=correct,
        stars_awarded=1 if correct else 0,
    )


# ------------------------------------------------------------------- accounts


def test_register_assigns_sequential_ids():
    store = fresh_store()
    a = store.register("one", "password-10", "CHILD")
    b = store.register("two", "password-10", "PARENT")
    assert (a.learner_id, b.learner_id) == ("u000001", "u000002")
    assert a.current_phase == 1
    assert a.phase_history[0].phase == 1


def test_register_rejects_duplicate_username():
    store = fresh_store()
    store.register("same", "password-10", "CHILD")
    with pytest.raises(UsernameTaken):
        store.register("same", "password-10", "PARENT")


def test_register_rejects_weak_password():
    store = fresh_store()
    with pytest.raises(WeakPassword):
        store.register("u", "short", "CHILD")


def test_register_validates_links_before_creating():
    store = fresh_store()
    store.register("kid1", "password-10", "CHILD")
    with pytest.raises(InvalidLink):
        store.register("kid2", "password-10", "CHILD", linked_ids=["u000001"])
    # the failed registration left nothing behind
    store.register("kid2", "password-10", "CHILD")
    assert store.get_profile("u000002").username == "kid2"


def test_login_logout_cycle():
    store = fresh_store()
    store.register("tess", "password-10", "THERAPIST")
    session = store.authenticate("tess", "password-10")
    assert store.resolve_token(session.token) == "u000001"
    store.logout(session.token)
    with pytest.raises(AuthFailed):
        store.resolve_token(session.token)


def test_bad_credentials_fail_uniformly():
    store = fresh_store()
    store.register("tess", "password-10", "THERAPIST")
    with pytest.raises(AuthFailed) as wrong_pw:
        store.authenticate("tess", "password-11")
    with pytest.raises(AuthFailed) as no_user:
        store.authenticate("nobody", "password-11")
    # identical message: no probing for which usernames exist
    assert str(wrong_pw.value) == str(no_user.value)


def test_expired_token_rejected():
    clock = [1_000_000]
    store = fresh_store(now_fn=lambda: clock[0])
    store.register("tess", "password-10", "THERAPIST")
    session = store.authenticate("tess", "password-10")
    clock[0] += 25 * 60 * 60 * 1000  # a day and an hour later
    with pytest.raises(AuthFailed):
        store.resolve_token(session.token)


def test_request_cap_yields_too_many_requests():
    store = fresh_store(request_cap=3)
    store.register("tess", "password-10", "THERAPIST")
    session = store.authenticate("tess", "password-10")
    for _ in range(3):
        store.resolve_token(session.token)
    with pytest.raises(TooManyRequests):
        store.resolve_token(session.token)


# ---------------------------------------------------------------------- links


def test_links_are_mutual():
    store = fresh_store()
    therapist, child = family(store)
    assert child.learner_id in store.get_profile(therapist.learner_id).linked_ids
    assert therapist.learner_id in store.get_profile(child.learner_id).linked_ids


def test_link_requires_child_adult_pair():
    store = fresh_store()
    store.register("kid1", "password-10", "CHILD")
    store.register("kid2", "password-10", "CHILD")
    store.register("t1", "password-10", "THERAPIST")
    store.register("p1", "password-10", "PARENT")
    with pytest.raises(InvalidLink):
        store.link("u000001", "u000002")  # child-child
    with pytest.raises(InvalidLink):
        store.link("u000003", "u000004")  # adult-adult
    store.link("u000001", "u000003")  # child-therapist is fine


def test_adults_sharing_a_child_can_exchange():
    store = fresh_store()
    therapist, child = family(store)
    parent = store.register("papa", "password-10", "PARENT", linked_ids=[child.learner_id])
    assert store.can_exchange(therapist.learner_id, parent.learner_id)
    assert store.can_exchange(child.learner_id, therapist.learner_id)

    stranger = store.register("other", "password-10", "PARENT")
    assert not store.can_exchange(therapist.learner_id, stranger.learner_id)
    assert not store.can_exchange(child.learner_id, stranger.learner_id)


# ------------------------------------------------------------------- messages


def test_message_round_trip():
    store = fresh_store()
    therapist, child = family(store)
    sent = store.send_message(therapist.learner_id, child.learner_id, "Great job today")
    assert sent.message_id == "m00000001"
    listed = store.list_messages(child.learner_id, therapist.learner_id)
    assert [m.body for m in listed] == ["Great job today"]


def test_message_both_directions_ascending():
    store = fresh_store()
    therapist, child = family(store)
    store.send_message(therapist.learner_id, child.learner_id, "one")
    store.send_message(child.learner_id, therapist.learner_id, "two")
    store.send_message(therapist.learner_id, child.learner_id, "three")
    listed = store.list_messages(therapist.learner_id, child.learner_id)
    assert [m.body for m in listed] == ["one", "two", "three"]
    stamps = [m.sent_at for m in listed]
    assert stamps == sorted(stamps)


def test_message_since_filters_strictly_newer():
    store = fresh_store()
    therapist, child = family(store)
    store.send_message(therapist.learner_id, child.learner_id, "one")
    last = store.send_message(therapist.learner_id, child.learner_id, "two")
    assert store.list_messages(child.learner_id, therapist.learner_id, since=last.sent_at) == []
    older = store.list_messages(child.learner_id, therapist.learner_id, since=last.sent_at - 1)
    assert [m.body for m in older] == ["two"]


def test_message_listing_matches_brute_force():
    store = fresh_store()
    therapist, child = family(store)
    parent = store.register("papa", "password-10", "PARENT", linked_ids=[child.learner_id])
    everyone = [therapist.learner_id, child.learner_id, parent.learner_id]
    rng = SplitMix64(321)
    for i in range(60):
        sender = rng.choice(everyone)
        receiver = rng.choice([x for x in everyone if x != sender])
        store.send_message(sender, receiver, f"note {i}")
    for a in everyone:
        for b in everyone:
            if a == b:
                continue
            expected = sorted(
                (
                    m
                    for m in store.messages
                    if {m.from_learner_id, m.to_learner_id} == {a, b}
                ),
                key=lambda m: m.sent_at,
            )
            got = store.list_messages(a, b)
            assert [m.message_id for m in got] == [m.message_id for m in expected]


def test_message_requires_link():
    store = fresh_store()
    _, child = family(store)
    stranger = store.register("stranger", "password-10", "PARENT")
    with pytest.raises(NotLinked):
        store.send_message(stranger.learner_id, child.learner_id, "hi")


def test_message_body_limits():
    store = fresh_store()
    therapist, child = family(store)
    with pytest.raises(EmptyBody):
        store.send_message(therapist.learner_id, child.learner_id, "")
    with pytest.raises(BodyTooLong):
        store.send_message(therapist.learner_id, child.learner_id, "x" * 2001)
    store.send_message(therapist.learner_id, child.learner_id, "x" * 2000)


# ------------------------------------------------------------------- attempts


def test_attempt_ids_and_timestamps_increase():
    store = fresh_store()
    _, child = family(store)
    first, _, _, _ = tap(store, child.learner_id)
    second, _, _, _ = tap(store, child.learner_id)
    assert first.attempt_id < second.attempt_id
    assert first.timestamp < second.timestamp


def test_inconsistent_attempt_rejected_and_sequence_unchanged():
    store = fresh_store()
    _, child = family(store)
    with pytest.raises(InconsistentAttempt):
        store.record_attempt(
            learner_id=child.learner_id,
            activity="QA",
            prompt_descriptor="{}",
            response="{}",
            correct=True,
            stars_awarded=0,
        )
    attempt, _, _, _ = tap(store, child.learner_id)
    assert attempt.attempt_id == "a00000001"


def test_attempt_for_unknown_learner():
    store = fresh_store()
    with pytest.raises(UnknownLearner):
        tap(store, "u009999")


def test_correct_strip_trains_usage_model():
    store = fresh_store()
    _, child = family(store)
    graded(store, child.learner_id, "PECS_BOOK", True, card_ids=["i", "want", "food"])
    model = store.usage_models[child.learner_id]
    assert model.unigram == {"i": 1, "want": 1, "food": 1}
    assert model.bigram == {("i", "want"): 1, ("want", "food"): 1}


def test_failed_strip_does_not_train():
    store = fresh_store()
    _, child = family(store)
    graded(store, child.learner_id, "PECS_BOOK", False, card_ids=["i", "want"])
    assert store.usage_models[child.learner_id].total() == 0


def test_phase_advances_on_gate_accuracy():
    store = fresh_store()
    _, child = family(store)
    for _ in range(9):
        _, _, advanced, phase = tap(store, child.learner_id)
        assert not advanced and phase == 1
    _, _, advanced, phase = tap(store, child.learner_id)
    assert advanced and phase == 2
    history = store.get_profile(child.learner_id).phase_history
    assert [e.phase for e in history] == [1, 2]


def test_phase_never_drops_from_attempts():
    store = fresh_store()
    _, child = family(store)
    for _ in range(10):
        tap(store, child.learner_id)
    for _ in range(30):
        graded(store, child.learner_id, "DIFFERENTIATE", False)
    assert store.get_profile(child.learner_id).current_phase == 2


def test_reset_phase_is_the_sanctioned_down_path():
    store = fresh_store()
    _, child = family(store)
    for _ in range(10):
        tap(store, child.learner_id)
    assert store.get_profile(child.learner_id).current_phase == 2
    store.reset_phase(child.learner_id, 1)
    profile = store.get_profile(child.learner_id)
    assert profile.current_phase == 1
    assert [e.phase for e in profile.phase_history] == [1, 2, 1]


def test_progress_chart_recounts():
    store = fresh_store()
    _, child = family(store)
    for _ in range(10):
        tap(store, child.learner_id)
    graded(store, child.learner_id, "DIFFERENTIATE", True)
    graded(store, child.learner_id, "DIFFERENTIATE", False)
    report = store.progress_chart(child.learner_id)
    assert report.star_total == 1
    assert report.per_activity["SINGLE_WORD"]["attempts"] == 10
    assert report.per_category_stars == {"Fruits": 1}


def test_settings_update_and_validation():
    from pecs.errors import UnknownTheme

    store = fresh_store()
    _, child = family(store)
    store.update_settings(child.learner_id, "HIGH_CONTRAST")
    assert store.get_profile(child.learner_id).settings.background_theme == "HIGH_CONTRAST"
    with pytest.raises(UnknownTheme):
        store.update_settings(child.learner_id, "SPARKLES")


def test_can_view_rules():
    store = fresh_store()
    therapist, child = family(store)
    stranger = store.register("stranger", "password-10", "PARENT")
    assert store.can_view(child.learner_id, child.learner_id)
    assert store.can_view(therapist.learner_id, child.learner_id)
    assert not store.can_view(stranger.learner_id, child.learner_id)
    # children do not browse their adults' data
    assert not store.can_view(child.learner_id, therapist.learner_id)


# ---------------------------------------------------------------- persistence


def populated_store(path=None) -> Store:
    store = fresh_store(path=path) if path is None else Store(path)
    store.seed_reference_deck()
    therapist, child = family(store)
    for _ in range(10):
        tap(store, child.learner_id)
    graded(store, child.learner_id, "PECS_BOOK", True, card_ids=["i", "want", "food"])
    graded(store, child.learner_id, "DIFFERENTIATE", True)
    graded(store, child.learner_id, "DIFFERENTIATE", False)
    store.send_message(therapist.learner_id, child.learner_id, "hello")
    store.update_settings(child.learner_id, "DARK")
    return store


def test_snapshot_round_trip_is_byte_identical(tmp_path):
    path = tmp_path / "store.json"
    store = populated_store(path)
    store.save()
    first = path.read_text(encoding="utf-8")
    reloaded = Store.load(path)
    reloaded.save()
    assert path.read_text(encoding="utf-8") == first


def test_loaded_store_behaves_identically(tmp_path):
    path = tmp_path / "store.json"
    store = populated_store(path)
    store.save()
    reloaded = Store.load(path)
    assert reloaded.progress_chart("u000002").to_obj() == store.progress_chart("u000002").to_obj()
    assert reloaded.usage_models["u000002"].unigram == store.usage_models["u000002"].unigram
    session = reloaded.authenticate("kiddo", "password-10")
    assert reloaded.resolve_token(session.token) == "u000002"


def test_log_replay_restores_unsnapshotted_attempts(tmp_path):
    path = tmp_path / "store.json"
    store = Store(path, snapshot_every=10_000)  # keep attempts in the log only
    store.seed_reference_deck()
    _, child = family(store)
    for _ in range(5):
        tap(store, child.learner_id)
    graded(store, child.learner_id, "PECS_BOOK", True, card_ids=["i", "want", "apple"])
    # no close(): simulates a process that stopped without folding the log

    reloaded = Store.load(path)
    report = reloaded.progress_chart(child.learner_id)
    assert report.per_activity["SINGLE_WORD"]["attempts"] == 5
    assert report.star_total == 1
    assert reloaded.usage_models[child.learner_id].unigram["want"] == 1
    # ids continue after the replayed tail, no collisions
    next_attempt, _, _, _ = tap(reloaded, child.learner_id)
    assert next_attempt.attempt_id == "a00000007"


def test_torn_log_tail_is_ignored(tmp_path):
    path = tmp_path / "store.json"
    store = Store(path, snapshot_every=10_000)
    store.seed_reference_deck()
    _, child = family(store)
    for _ in range(3):
        tap(store, child.learner_id)
    log = tmp_path / "store.json.log"
    with open(log, "a", encoding="utf-8") as fh:
        fh.write('{"attempt_id": "a0000')  # the write a crash cut short

    reloaded = Store.load(path)
    assert reloaded.progress_chart(child.learner_id).per_activity["SINGLE_WORD"]["attempts"] == 3


def test_corrupt_mid_log_line_is_an_error(tmp_path):
    path = tmp_path / "store.json"
    store = Store(path, snapshot_every=10_000)
    store.seed_reference_deck()
    _, child = family(store)
    tap(store, child.learner_id)
    log = tmp_path / "store.json.log"
    lines = log.read_text(encoding="utf-8").splitlines()
    lines.insert(0, "{broken")
    log.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with pytest.raises(MalformedSnapshot):
        Store.load(path)


def test_malformed_snapshot_rejected(tmp_path):
    path = tmp_path / "store.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(MalformedSnapshot):
        Store.load(path)
    path.write_text('{"format_version": 1}', encoding="utf-8")
    with pytest.raises(MalformedSnapshot):
        Store.load(path)


def test_future_version_rejected(tmp_path):
    path = tmp_path / "store.json"
    store = populated_store(path)
    store.save()
    obj = json.loads(path.read_text(encoding="utf-8"))
    obj["format_version"] = 99
    path.write_text(json.dumps(obj), encoding="utf-8")
    with pytest.raises(VersionUnsupported):
        Store.load(path)


def test_open_creates_then_reopens(tmp_path):
    path = tmp_path / "store.json"
    store = Store.open(path)
    assert DEFAULT_DECK_ID in store.decks
    store.register("tess", "password-10", "THERAPIST")
    again = Store.open(path)
    assert "u000001" in again.profiles


def test_sessions_do_not_survive_restart(tmp_path):
    path = tmp_path / "store.json"
    store = Store.open(path)
    store.register("tess", "password-10", "THERAPIST")
    session = store.authenticate("tess", "password-10")
    reloaded = Store.open(path)
    with pytest.raises(AuthFailed):
        reloaded.resolve_token(session.token)


_CRASH_WRITER = """
import json, sys, time
from pecs.store import Store

path = sys.argv[1]
store = Store.open(path, snapshot_every=7)
therapist = store.register("tess", "password-10", "THERAPIST")
child = store.register("kiddo", "password-10", "CHILD", linked_ids=[therapist.learner_id])
print("ready", flush=True)
i = 0
while True:
    i += 1
    correct = (i % 10) != 0
    store.record_attempt(
        learner_id=child.learner_id,
        activity="DIFFERENTIATE",
        prompt_descriptor=json.dumps({"kind": "match", "category": "Fruits"}),
        response=json.dumps({"chosen": "apple"}),
        correct=correct,
        stars_awarded=1 if correct else 0,
    )
"""


def test_kill_mid_write_never_corrupts(tmp_path):
    """SIGKILL the writer at awkward moments; the store must always reopen."""
    path = tmp_path / "store.json"
    for round_no, pause in enumerate([0.05, 0.11, 0.23]):
        proc = subprocess.Popen(
            [sys.executable, "-c", _CRASH_WRITER, str(path)],
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
            text=True,
        )
        try:
            assert proc.stdout.readline().strip() == "ready"
            time.sleep(pause)
        finally:
            proc.kill()
            proc.wait()
        # fresh store each round: the writer registers its own accounts
        store = Store.open(path)
        report = store.progress_chart("u000002")
        recount = sum(a.stars_awarded for a in store.ledgers["u000002"])
        assert report.star_total == recount
        for a, b in zip(store.ledgers["u000002"], store.ledgers["u000002"][1:]):
            assert a.timestamp < b.timestamp
        store.close()
        path.unlink()
        log = tmp_path / "store.json.log"
        if log.exists():
            log.unlink()
