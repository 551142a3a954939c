import random

import pytest

from fullgroup_lab import (
    FullShiftSpec,
    GeneratorSet,
    IncompleteTable,
    NotInvertible,
    PeriodicPoint,
    ResourceLimit,
    SpecMismatch,
    ball,
    compose,
    element_from_dict,
    equals,
    evaluate,
    factors,
    fibonacci_generators,
    find_cylinder_position,
    from_table,
    identity,
    inverse,
    is_constant_on_cylinder,
    is_constant_on_depth,
    language_table,
)
from fullgroup_lab.cocycles import _refined


@pytest.fixture(scope="module")
def abg(fib_gens):
    return fib_gens["alpha"], fib_gens["beta"], fib_gens["gamma"]


# --- identity ------------------------------------------------------------------


def test_identity_element(fib_spec, fib_point):
    e = identity(fib_spec)
    assert e.depth == 0 and e.max_shift == 0
    assert set(e.table.values()) == {0}
    assert evaluate(e, fib_point, 17) == 0


def test_identity_laws(fib_spec, abg):
    e = identity(fib_spec)
    for g in abg:
        assert compose(e, g) == g
        assert compose(g, e) == g


# --- from_table ----------------------------------------------------------------


def test_from_table_accepts_branch_table(fib_spec, abg):
    alpha, _, _ = abg
    rebuilt = from_table(fib_spec, 2, dict(alpha.table))
    assert rebuilt == alpha


def test_from_table_shift_on_full_shift():
    fs = FullShiftSpec(("a", "b"))
    tau = from_table(fs, 0, {"a": 1, "b": 1})
    point = PeriodicPoint("ab", spec=fs)
    assert all(evaluate(tau, point, j) == 1 for j in range(-5, 5))
    assert inverse(tau).table == {"a": -1, "b": -1}


def test_from_table_collision_not_invertible():
    # two one-letter cylinders map onto the same configuration
    fs = FullShiftSpec(("a", "b"))
    with pytest.raises(NotInvertible):
        from_table(fs, 0, {"a": 1, "b": 0})


def test_from_table_requires_total_table(fib_spec):
    words = sorted(factors(fib_spec, 3))
    partial = {w: 0 for w in words[:-1]}
    with pytest.raises(IncompleteTable):
        from_table(fib_spec, 1, partial)
    extra = {w: 0 for w in words} | {"bbb": 0}
    with pytest.raises(IncompleteTable):
        from_table(fib_spec, 1, extra)


def test_element_dict_round_trip(fib_spec, abg):
    alpha, _, _ = abg
    doc = alpha.to_dict()
    assert element_from_dict(fib_spec, doc) == alpha


# --- evaluate ------------------------------------------------------------------


def test_gamma_piecewise_values(fib_spec, fib_point, abg):
    _, _, gamma = abg
    at_b = find_cylinder_position(fib_point, "aba")     # x_0 = b
    before_b = find_cylinder_position(fib_point, "baa")  # x_{-1} = b
    assert evaluate(gamma, fib_point, at_b) == 1
    assert evaluate(gamma, fib_point, before_b) == -1


def test_alpha_at_baa_window(fib_point, abg):
    alpha, _, _ = abg
    # window x_{-2} x_{-1} x_0 = "baa" fires the +1 branch (x_{-1} x_0 = aa)
    pos = find_cylinder_position(fib_point, "baaba")
    assert fib_point.window(pos, 2)[:3] == "baa"
    assert evaluate(alpha, fib_point, pos) == 1


# --- compose / inverse ----------------------------------------------------------


def test_compose_alpha_beta_on_baa(fib_spec, fib_point, abg):
    alpha, beta, _ = abg
    ab = compose(alpha, beta)
    pos = find_cylinder_position(fib_point, "baa")
    # oracle: apply beta, then alpha at the shifted position
    k_beta = evaluate(beta, fib_point, pos)
    k_alpha = evaluate(alpha, fib_point, pos + k_beta)
    assert k_beta == 1 and k_alpha == 1
    assert evaluate(ab, fib_point, pos) == k_alpha + k_beta == 2


def test_generators_are_involutions(fib_spec, abg):
    e = identity(fib_spec)
    for g in abg:
        assert compose(g, g) == e
        assert inverse(g) == g


def test_inverse_of_product(abg):
    alpha, beta, _ = abg
    assert inverse(compose(alpha, beta)) == compose(beta, alpha)


def test_inverse_of_identity(fib_spec):
    e = identity(fib_spec)
    assert inverse(e) == e


def test_compose_requires_same_spec(fib_spec, abg):
    fs = FullShiftSpec(("a", "b"))
    tau = from_table(fs, 0, {"a": 1, "b": 1})
    with pytest.raises(SpecMismatch):
        compose(abg[0], tau)


# --- canonical form and equality -------------------------------------------------


def test_constant_zero_table_canonicalizes_to_identity(fib_spec):
    table = {w: 0 for w in factors(fib_spec, 7)}
    g = from_table(fib_spec, 3, table)
    assert g == identity(fib_spec)
    assert g.depth == 0


def test_equals_matches_operator_eq(fib_spec, abg):
    alpha, beta, gamma = abg
    e = identity(fib_spec)
    assert equals(compose(alpha, alpha), e)
    assert not equals(alpha, beta)
    pairs = [(alpha, alpha), (alpha, beta), (compose(alpha, beta), compose(alpha, beta)),
             (compose(alpha, beta), compose(beta, alpha)), (gamma, e)]
    for g, h in pairs:
        assert equals(g, h) == (g == h)


def test_refinement_preserves_semantics(fib_spec, abg):
    _, _, gamma = abg
    refined = _refined(gamma, 4)
    assert set(refined) == factors(fib_spec, 9)
    rebuilt = from_table(fib_spec, 4, refined)
    assert rebuilt == gamma
    assert rebuilt.depth == gamma.depth == 1


# --- builtin generators -----------------------------------------------------------


def test_generator_depths_and_shifts(fib_gens):
    assert fib_gens.max_depth == 2
    assert fib_gens.max_shift == 1
    assert fib_gens["gamma"].depth == 1
    assert fib_gens["alpha"].depth == 2
    assert fib_gens.is_inverse_closed()


def test_generators_distinct(abg):
    assert len(set(abg)) == 3


def test_generators_match_piecewise_rules(fib_point, abg):
    alpha, beta, gamma = abg

    def oracle(two, x, pos):
        w = x.window(pos, 2)
        if w[1:3] == two:
            return 1
        if w[0:2] == two:
            return -1
        return 0

    def oracle_gamma(x, pos):
        w = x.window(pos, 1)
        if w[1] == "b":
            return 1
        if w[0] == "b":
            return -1
        return 0

    for pos in range(-15, 15):
        assert evaluate(alpha, fib_point, pos) == oracle("aa", fib_point, pos)
        assert evaluate(beta, fib_point, pos) == oracle("ba", fib_point, pos)
        assert evaluate(gamma, fib_point, pos) == oracle_gamma(fib_point, pos)


def test_builtin_generators_reject_other_specs():
    with pytest.raises(SpecMismatch):
        fibonacci_generators(FullShiftSpec(("a", "b")))


# --- balls -----------------------------------------------------------------------


def test_ball_radius_zero(fib_spec, fib_gens):
    b = ball(fib_gens, 0)
    assert set(b) == {identity(fib_spec)} and b[identity(fib_spec)] == 0


def test_ball_radius_one(fib_spec, fib_gens, abg):
    b = ball(fib_gens, 1)
    assert set(b) == {identity(fib_spec), *abg}
    assert sorted(b.values()) == [0, 1, 1, 1]


def test_ball_shift_bound(fib_gens):
    for g, length in ball(fib_gens, 5).items():
        assert g.max_shift <= fib_gens.max_shift * max(length, 0)


def test_ball_resource_limit(fib_gens):
    with pytest.raises(ResourceLimit):
        ball(fib_gens, 6, cap=20)


def test_ball_word_lengths_are_geodesic(fib_gens, abg):
    alpha, beta, gamma = abg
    b = ball(fib_gens, 3)
    assert b[compose(alpha, beta)] == 2
    assert b[compose(alpha, alpha)] == 0


# --- constancy predicates ----------------------------------------------------------


def test_is_constant_on_depth(fib_spec, abg):
    alpha, _, gamma = abg
    e = identity(fib_spec)
    assert is_constant_on_depth(e, 0)
    assert not is_constant_on_depth(alpha, 0)
    assert not is_constant_on_depth(alpha, 1)
    assert is_constant_on_depth(alpha, 2)
    assert is_constant_on_depth(gamma, 1)
    assert is_constant_on_depth(alpha, alpha.depth + 3)


def test_is_constant_on_cylinder(fib_spec, abg):
    alpha, _, _ = abg
    # alpha's shift is fully determined by x_{-2} x_{-1} x_0; any cylinder
    # pinning those letters is constant, shorter ones need not be
    assert is_constant_on_cylinder(alpha, "baaba")
    assert not is_constant_on_cylinder(alpha, "aba")
    assert is_constant_on_cylinder(alpha, "ababa")


# --- group laws and the cocycle rule -----------------------------------------------


def test_group_axioms_on_sampled_triples(fib_spec, fib_gens):
    rng = random.Random(7)
    elements = list(ball(fib_gens, 4))
    e = identity(fib_spec)
    for _ in range(40):
        g, h, k = (rng.choice(elements) for _ in range(3))
        assert compose(compose(g, h), k) == compose(g, compose(h, k))
        assert compose(g, inverse(g)) == e
        assert compose(inverse(g), g) == e


def test_cocycle_rule_pointwise(fib_gens, fib_point):
    rng = random.Random(11)
    elements = list(ball(fib_gens, 4))
    for _ in range(25):
        g, h = rng.choice(elements), rng.choice(elements)
        gh = compose(g, h)
        for pos in rng.sample(range(-60, 60), 10):
            kh = evaluate(h, fib_point, pos)
            assert evaluate(gh, fib_point, pos) == evaluate(g, fib_point, pos + kh) + kh


def test_composition_depth_bound(fib_gens):
    rng = random.Random(3)
    elements = list(ball(fib_gens, 4))
    for _ in range(40):
        g, h = rng.choice(elements), rng.choice(elements)
        assert compose(g, h).depth <= g.depth + h.depth + h.max_shift


# --- coupling property (small instance; the acceptance suite is exhaustive) ---------


def test_coupling_small(fib_spec, fib_gens, fib_point):
    atoms = [g for _, g in fib_gens.elements]
    l0 = fib_gens.max_depth
    for depth in range(1, 9):
        for word in sorted(factors(fib_spec, 2 * depth + 1)):
            witness = find_cylinder_position(fib_point, word)
            stack = [(identity(fib_spec), 0, 0)]
            while stack:
                g, length, running_max = stack.pop()
                if length:
                    if running_max <= depth - l0:
                        assert is_constant_on_cylinder(g, word)
                if length < 5:
                    for s in atoms:
                        prod = compose(s, g)
                        offset = abs(evaluate(prod, fib_point, witness))
                        stack.append((prod, length + 1, max(running_max, offset)))
