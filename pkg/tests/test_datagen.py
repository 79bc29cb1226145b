import numpy as np
import pytest

from model import validate
from services.datagen import (
    GROUPED_PATTERNS,
    PATTERN_NAMES,
    GroupScenario,
    builtin,
    gen_grouped,
    gen_identical,
    gen_uniform,
    generate,
    pattern_availability,
    pattern_interest,
)


def test_interest_pattern():
    values = pattern_interest("descending", 10)
    assert values[0] == 1.0
    assert values[-1] == 0.001953125
    np.testing.assert_array_equal(values[1:], values[:-1] / 2)
    np.testing.assert_array_equal(pattern_interest("ascending", 10), values[::-1])
    assert pattern_interest("descending", 1).tolist() == [1.0]


def test_availability_pattern():
    values = pattern_availability("descending", 15)
    np.testing.assert_allclose(values[:3], [1.0, 0.9945218953682733, 0.9781476007338057], rtol=0, atol=1e-15)
    assert values[-1] == pytest.approx(0.10452846326765346, abs=1e-15)
    np.testing.assert_array_equal(pattern_availability("ascending", 15), values[::-1])
    assert pattern_availability("descending", 1).tolist() == [1.0]


@pytest.mark.parametrize(
    "call",
    [
        lambda: pattern_interest("descending", 0),
        lambda: pattern_interest("sideways", 3),
        lambda: pattern_availability("descending", 0),
        lambda: pattern_availability("descending", 16),
    ],
)
def test_pattern_argument_errors(call):
    with pytest.raises(ValueError):
        call()


def test_uniform_is_reproducible_and_in_range():
    first = gen_uniform(10, 10, 10, seed=42)
    second = gen_uniform(10, 10, 10, seed=42)
    assert first == second
    assert first.interest.min() >= 0 and first.interest.max() < 1
    assert first.availability.min() >= 0 and first.availability.max() < 1
    assert gen_uniform(10, 10, 10, seed=43) != first
    assert validate(first) == []


def test_uniform_stream_is_pcg64_top_bits():
    raw = np.random.PCG64(7).random_raw(2 * 3 + 2 * 4)
    expected = (raw >> np.uint64(11)).astype(float) * 2.0**-53
    instance = gen_uniform(2, 3, 4, seed=7)
    np.testing.assert_array_equal(instance.interest.ravel(), expected[:6])
    np.testing.assert_array_equal(instance.availability.ravel(), expected[6:])


def test_uniform_rejects_more_talks_than_slots():
    with pytest.raises(ValueError):
        gen_uniform(3, 4, 3, seed=1)


def test_balanced_segregated_availability():
    instance = gen_grouped(GROUPED_PATTERNS["seg-avail-balanced"])
    a1, a2 = pattern_availability("descending", 15), pattern_availability("ascending", 15)
    v1 = pattern_interest("descending", 10)
    for p in range(10):
        np.testing.assert_array_equal(instance.availability[p], a1 if p < 5 else a2)
        np.testing.assert_array_equal(instance.interest[p], v1)
    assert validate(instance) == []


def test_imbalanced_segregated_interest():
    instance = gen_grouped(GROUPED_PATTERNS["seg-interest-imbalanced"])
    v1, v2 = pattern_interest("descending", 10), pattern_interest("ascending", 10)
    a1 = pattern_availability("descending", 15)
    for p in range(10):
        np.testing.assert_array_equal(instance.interest[p], v1 if p < 7 else v2)
        np.testing.assert_array_equal(instance.availability[p], a1)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"split": 0},
        {"split": 10},
        {"interest_mode": "segregated", "availability_mode": "segregated"},
        {"interest_mode": "identical-V1", "availability_mode": "identical-A1"},
        {"sizes": (10, 16, 15)},
    ],
)
def test_group_scenario_invariants(kwargs):
    with pytest.raises(ValueError):
        GroupScenario(**kwargs)


def test_grouped_rows_within_a_group_are_interchangeable():
    instance = gen_grouped(GROUPED_PATTERNS["seg-avail-imbalanced"])
    rows = np.hstack([instance.interest, instance.availability])
    assert len(np.unique(rows[:7], axis=0)) == 1
    assert len(np.unique(rows[7:], axis=0)) == 1


def test_builtins():
    table1 = builtin("table1")
    assert table1.interest.tolist() == [[1.0], [1.0]]
    assert table1.availability.tolist() == [[1.0, 0.49, 0.0], [0.0, 0.49, 1.0]]
    table2 = builtin("table2")
    assert table2.interest.tolist() == [[1.0, 0.5]]
    assert table2.availability.tolist() == [[1.0, 0.75, 0.8]]
    table3 = builtin("table3")
    assert table3.interest.tolist() == [[1.0, 0.7], [1.0, 0.7]]
    assert table3.availability.tolist() == [[1.0, 1.0, 0.0, 0.2], [1.0, 0.0, 1.0, 0.2]]
    assert table3.labels.talks == ("t1", "t2")


def test_unknown_builtin():
    with pytest.raises(ValueError):
        builtin("table4")


@pytest.mark.parametrize("case", ["availability", "interest", "both"])
def test_identical_cases(case):
    instance = gen_identical(4, 3, 5, seed=2, identical=case)
    same_interest = np.all(instance.interest == instance.interest[0])
    same_availability = np.all(instance.availability == instance.availability[0])
    assert same_interest == (case in ("interest", "both"))
    assert same_availability == (case in ("availability", "both"))


@pytest.mark.parametrize("pattern", PATTERN_NAMES)
def test_every_pattern_generates_a_valid_instance(pattern):
    assert validate(generate(pattern, seed=3)) == []


def test_generate_sizes():
    instance = generate("uniform", 3, 4, 6, seed=1)
    assert (instance.participant_count, instance.talk_count, instance.slot_count) == (3, 4, 6)
    instance = generate("seg-avail-balanced", n=8)
    assert (instance.participant_count, instance.talk_count, instance.slot_count) == (10, 8, 15)
    with pytest.raises(ValueError):
        generate("zigzag")


@pytest.mark.parametrize(
    "pattern, sizes",
    [
        ("uniform", (0, 3, 3)),
        ("uniform", (2, 0, 3)),
        ("identical-both", (2, 3, 0)),
        ("seg-avail-balanced", (0, None, None)),
        ("seg-interest-balanced", (None, 0, None)),
    ],
)
def test_explicit_zero_size_is_rejected(pattern, sizes):
    with pytest.raises(ValueError):
        generate(pattern, *sizes, seed=1)
