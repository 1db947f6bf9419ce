"""The four activities: seeded generation sweeps, evaluation, and feedback."""

import json

import pytest

from pecs.activities import (
    QA_OPTION_COUNT,
    QA_PROMPT,
    evaluate_answer,
    evaluate_discrimination,
    evaluate_strip_submission,
    gen_discrimination_task,
    gen_question,
    record_single_word_tap,
)
from pecs.catalog import CATEGORIES
from pecs.errors import (
    ChoiceNotInOptions,
    IndexOutOfRange,
    InsufficientCards,
    UnknownCardId,
)


# ------------------------------------------------------------- discrimination


def test_task_shape(deck):
    task = gen_discrimination_task(deck, "Fruits", 3, seed=7)
    assert task.n_options == 3
    assert len(task.options) == 3
    assert len(set(task.options)) == 3
    assert task.target in task.options
    assert task.category == "Fruits"


def test_target_in_category_distractors_outside(deck):
    by_id = deck.by_id()
    for seed in range(50):
        task = gen_discrimination_task(deck, "Animals", 4, seed=seed)
        assert by_id[task.target].category == "Animals"
        for option in task.options:
            if option != task.target:
                assert by_id[option].category != "Animals"


def test_same_seed_same_task(deck):
    a = gen_discrimination_task(deck, "Shapes", 3, seed=123)
    b = gen_discrimination_task(deck, "Shapes", 3, seed=123)
    assert a == b


def test_different_seeds_vary(deck):
    tasks = {gen_discrimination_task(deck, "Shapes", 3, seed=s).options for s in range(30)}
    assert len(tasks) > 1


def test_n_options_bounds(deck):
    for bad in (1, 7, 0, -2):
        with pytest.raises(ValueError):
            gen_discrimination_task(deck, "Fruits", bad, seed=1)


def test_insufficient_cards(deck):
    with pytest.raises(InsufficientCards):
        gen_discrimination_task(deck, "NoSuchCategory", 3, seed=1)


def test_discrimination_sweep_invariants(deck):
    """1000 seeded tasks: option count, distinctness, cross-category distractors."""
    by_id = deck.by_id()
    categories = [c for c in CATEGORIES if c != "Core"]
    for seed in range(1000):
        category = categories[seed % len(categories)]
        task = gen_discrimination_task(deck, category, 3, seed=seed)
        assert len(task.options) == 3
        assert len(set(task.options)) == 3
        assert task.target in task.options
        assert by_id[task.target].category == category
        assert sum(1 for o in task.options if by_id[o].category == category) == 1


def test_discrimination_sweep_is_deterministic(deck):
    categories = [c for c in CATEGORIES if c != "Core"]

    def run():
        out = []
        for seed in range(1000):
            task = gen_discrimination_task(deck, categories[seed % len(categories)], 3, seed=seed)
            out.append(json.dumps({"id": task.task_id, "options": list(task.options)}))
        return "\n".join(out).encode()

    assert run() == run()


def test_evaluate_discrimination(deck):
    task = gen_discrimination_task(deck, "Fruits", 3, seed=11)
    right = evaluate_discrimination(deck, task, task.target)
    assert right.correct and right.stars_awarded == 1
    assert right.feedback_text == "Well done!"

    wrong_choice = next(o for o in task.options if o != task.target)
    wrong = evaluate_discrimination(deck, task, wrong_choice)
    assert not wrong.correct and wrong.stars_awarded == 0
    assert deck.by_id()[task.target].word in wrong.feedback_text


def test_evaluate_discrimination_rejects_outside_choice(deck):
    task = gen_discrimination_task(deck, "Fruits", 3, seed=11)
    with pytest.raises(ChoiceNotInOptions):
        evaluate_discrimination(deck, task, "i")


# ------------------------------------------------------------------ questions


def test_question_shape(deck):
    question = gen_question(deck, phase=4, seed=5)
    assert question.prompt_text == QA_PROMPT
    assert len(question.options) == QA_OPTION_COUNT
    assert len(set(question.options)) == QA_OPTION_COUNT
    assert 0 <= question.correct_index < QA_OPTION_COUNT
    assert question.options[question.correct_index] == question.prompt_card


def test_question_sweep_invariants(deck):
    for seed in range(1000):
        question = gen_question(deck, phase=4, seed=seed)
        assert len(set(question.options)) == 3
        assert question.options[question.correct_index] == question.prompt_card
        # exactly one option is the prompted card
        assert question.options.count(question.prompt_card) == 1


def test_question_sweep_is_deterministic(deck):
    def run():
        out = []
        for seed in range(1000):
            q = gen_question(deck, phase=4, seed=seed)
            out.append(json.dumps({"id": q.question_id, "options": list(q.options), "i": q.correct_index}))
        return "\n".join(out).encode()

    assert run() == run()


def test_question_phase_bounds(deck):
    for bad in (0, 5):
        with pytest.raises(ValueError):
            gen_question(deck, phase=bad, seed=1)


def test_evaluate_answer(deck):
    question = gen_question(deck, phase=4, seed=9)
    right = evaluate_answer(question, question.correct_index)
    assert right.correct and right.stars_awarded == 1

    wrong_index = (question.correct_index + 1) % 3
    wrong = evaluate_answer(question, wrong_index)
    assert not wrong.correct and wrong.stars_awarded == 0
    assert wrong.feedback_text


def test_evaluate_answer_index_bounds(deck):
    question = gen_question(deck, phase=4, seed=9)
    for bad in (-1, 3, 10):
        with pytest.raises(IndexOutOfRange):
            evaluate_answer(question, bad)


# ------------------------------------------------------------------- the rest


def test_strip_submission_outcomes(deck):
    star = evaluate_strip_submission(deck, ["i", "want", "food"])
    assert star.correct and star.stars_awarded == 1

    unfinished = evaluate_strip_submission(deck, ["i", "want"])
    assert not unfinished.correct and unfinished.stars_awarded == 0
    assert "finished" in unfinished.feedback_text.lower()

    broken = evaluate_strip_submission(deck, ["i", "want", "to-run", "food"])
    assert not broken.correct
    assert "4" in broken.feedback_text  # points at the offending card


def test_single_word_tap(deck):
    event = record_single_word_tap(deck, "apple")
    assert event.card_id == "apple"
    assert event.word == "apple"
    assert event.audio_ref == "audio/apple.wav"


def test_single_word_tap_unknown_card(deck):
    with pytest.raises(UnknownCardId):
        record_single_word_tap(deck, "ghost")
