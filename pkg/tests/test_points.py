import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fullgroup_lab import (
    AdmissibilityViolation,
    ExplicitPoint,
    FullShiftSpec,
    MechanicalPoint,
    PeriodicPoint,
    SpecMismatch,
    SturmianSpec,
    SubstitutionFixedPoint,
    SubstitutionSpec,
    ToeplitzPoint,
    ToeplitzSpec,
    UnresolvableHole,
    canonical_point,
    factors,
    find_cylinder_position,
    is_periodic_window,
    substitution_iterate,
    toeplitz_word,
)


def test_fibonacci_fixed_point_center_window(fib_spec, fib_point):
    # oracle: iterate psi^2 on both seeds and read off the junction
    word = substitution_iterate(fib_spec.rules_dict, "a", 4)
    expected = word[-2:] + word[:3]
    got = fib_point.window(0, 2)
    assert got == expected == "baaba"
    assert got in factors(fib_spec, 5)


def test_fixed_point_rejects_bad_seeds(fib_spec):
    with pytest.raises(SpecMismatch):
        SubstitutionFixedPoint(fib_spec, left="b", right="b", power=2)  # "bb" inadmissible


def test_periodic_point_phase():
    p = PeriodicPoint("ab")
    assert p.window(0, 1) == "bab"
    assert PeriodicPoint("ab", phase=1).window(0, 1) == "aba"


def test_mechanical_point_deep_window_admissible():
    spec = SturmianSpec((1,))
    p = MechanicalPoint(spec, 0)
    w = p.window(10**4, 3)
    assert len(w) == 7
    assert w in factors(spec, 7)


def test_mechanical_matches_substitution_fixed_point(fib_spec, fib_point):
    p = MechanicalPoint(SturmianSpec((1,)), 0)
    assert p.window(0, 40) == fib_point.window(0, 40)


def test_mechanical_intercept_shifts_reading_frame():
    spec = SturmianSpec((1,))
    base = MechanicalPoint(spec, 0)
    shifted = MechanicalPoint(spec, 7)
    assert shifted.window(0, 5) == base.window(7, 5)


def test_mechanical_swap_letters():
    plain = MechanicalPoint(SturmianSpec((1,)), 0)
    swapped = MechanicalPoint(SturmianSpec((1,), swap_letters=True), 0)
    table = str.maketrans("ab", "ba")
    assert swapped.window(0, 10) == plain.window(0, 10).translate(table)


@settings(max_examples=50, deadline=None)
@given(
    st.integers(min_value=-300, max_value=300),
    st.integers(min_value=0, max_value=12),
    st.integers(min_value=1, max_value=10),
)
def test_window_nesting_and_shift_compatibility(center, radius, extra):
    p = MechanicalPoint(SturmianSpec((1, 2)), 0)
    inner = p.window(center, radius)
    outer = p.window(center, radius + extra)
    assert outer[extra : extra + len(inner)] == inner
    # moving the center right by one drops a letter on the left
    assert p.window(center + 1, radius) == p.window(center, radius + 1)[2:]


def test_sturmian_random_slope_windows_admissible():
    spec = SturmianSpec((3, 1, 2))
    p = MechanicalPoint(spec, 0, validate=True)
    for center in (-50, -7, 0, 13, 101):
        w = p.window(center, 6)
        assert w in factors(spec, 13)


def test_toeplitz_point_right_half_matches_one_sided_word():
    spec = ToeplitzSpec("a*ab*a")
    p = ToeplitzPoint(spec, 0, validate=True)
    assert p.letters(0, 40) == toeplitz_word("a*ab*a", 40)
    assert p.window(-10, 5) in factors(spec, 11)


def test_toeplitz_point_anchor_shifts():
    spec = ToeplitzSpec("a*ab*a")
    base = ToeplitzPoint(spec, 0)
    moved = ToeplitzPoint(spec, 6)
    assert moved.window(0, 8) == base.window(6, 8)


def test_toeplitz_permanent_hole_rejected():
    with pytest.raises(UnresolvableHole):
        ToeplitzPoint(ToeplitzSpec("ab*b*"), 0)


def test_nonprimitive_fixed_point_windows(fib_spec):
    spec = SubstitutionSpec.from_rules({"a": "aba", "b": "bb"}, "a")
    p = SubstitutionFixedPoint(spec, validate=True)
    w = p.window(0, 10)
    assert len(w) == 21
    assert w in factors(spec, 21)


def test_explicit_point_layout():
    p = ExplicitPoint("b", "", "ab")
    assert p.window(0, 4) == "bbbbababa"
    assert p.letters(-3, 0) == "bbb"
    assert p.letters(0, 4) == "abab"


def test_explicit_point_with_center_word():
    p = ExplicitPoint("ab", "ccc", "ba")
    assert p.letters(0, 3) == "ccc"
    assert p.letters(-4, 0) == "abab"
    assert p.letters(3, 7) == "baba"


def test_is_periodic_window_examples(fib_point):
    assert is_periodic_window(PeriodicPoint("ab"), 5) == 2
    assert is_periodic_window(PeriodicPoint("a"), 3) == 1
    assert is_periodic_window(fib_point, 50) is None


def test_is_periodic_window_needs_four_repetitions():
    # period 3 with a window of length 11 shows < 4 repetitions
    assert is_periodic_window(PeriodicPoint("aab"), 5) is None
    assert is_periodic_window(PeriodicPoint("aab"), 6) == 3


def test_admissibility_guard_fires():
    p = PeriodicPoint("b", spec=SubstitutionSpec.from_rules({"a": "ab", "b": "a"}, "a"),
                      validate=True)
    with pytest.raises(AdmissibilityViolation):
        p.window(0, 1)  # "bbb" is not a golden-ratio factor


def test_canonical_points_per_family(fib_spec):
    assert canonical_point(fib_spec).window(0, 3)
    assert canonical_point(SturmianSpec((1,))).window(0, 3)
    assert canonical_point(ToeplitzSpec("a*ab*a")).window(0, 3)
    assert canonical_point(FullShiftSpec(("a", "b"))).window(0, 1) == "bab"
    from fullgroup_lab import ExplicitSpec

    with pytest.raises(SpecMismatch):
        canonical_point(ExplicitSpec(("a", "b"), ("bb",)))


def test_find_cylinder_position(fib_spec, fib_point):
    for word in sorted(factors(fib_spec, 5)):
        c = find_cylinder_position(fib_point, word)
        assert fib_point.window(c, 2) == word


def test_window_cache_thread_safety(fib_point):
    results = []

    def worker():
        results.append(fib_point.window(-100, 150))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(results)) == 1


def test_window_negative_radius_rejected(fib_point):
    with pytest.raises(ValueError):
        fib_point.window(0, -1)
