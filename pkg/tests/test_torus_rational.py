import random
from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crosstile.torus_rational import (
    CircleFunction,
    ExponentialPolynomial,
    TorusPoint,
    WeightedPeriodicPointSet,
    class_levels,
    convolve_atoms,
    eliminate_symbols,
    format_point,
    parse_point,
    rational_classes,
    split_by_classes,
    vandermonde_criterion,
    vandermonde_witness,
    verify_torus_tiling,
    zero_set_rational,
)

th1 = TorusPoint.symbol(1)
th2 = TorusPoint.symbol(2)


def pt(x):
    return TorusPoint(Q(x))


# --- points ----------------------------------------------------------------------

def test_point_normalisation():
    p = TorusPoint(Q(7, 3))
    assert p.rational == Q(1, 3)
    assert (th1 - th1).is_rational
    assert (th1 + Q(5, 4)).rational == Q(1, 4)


def test_floats_rejected():
    with pytest.raises(TypeError):
        TorusPoint(0.5)


@pytest.mark.parametrize("text", ["1/3", "0 + 1*th1", "1/4 - 1/2*th2 + 1*th1", "th3", "-th1 + 2/3"])
def test_parse_format_round_trip(text):
    p = parse_point(text)
    assert parse_point(format_point(p)) == p


def test_parse_errors():
    for bad in ["", "1/3 +", "2 th1", "0.5", "th", "1/3 1/4"]:
        with pytest.raises(ValueError):
            parse_point(bad)


def test_rational_classes_examples():
    pts = [pt(0), pt(Q(1, 3)), pt(Q(1, 2)), th1, th1 + Q(1, 4)]
    classes = rational_classes(pts)
    assert [set(c) for c in classes] == [{pt(0), pt(Q(1, 3)), pt(Q(1, 2))}, {th1, th1 + Q(1, 4)}]
    assert len(rational_classes([pt(0), pt(Q(1, 5))])) == 1
    assert len(rational_classes([th1, th2, th1 + th2])) == 3


def test_mixed_periods_rejected():
    with pytest.raises(ValueError):
        rational_classes([pt(0), TorusPoint(Q(0), (), Q(2))])


@st.composite
def symbolic_points(draw):
    syms = draw(st.lists(st.tuples(st.integers(1, 3), st.integers(-2, 2)), max_size=2))
    return TorusPoint(Q(draw(st.integers(0, 11)), 12), tuple((k, Q(c)) for k, c in syms))


@given(st.lists(symbolic_points(), max_size=10))
def test_rational_classes_partition(points):
    classes = rational_classes(points)
    flat = [p for c in classes for p in c]
    assert sorted(flat, key=TorusPoint.sort_key) == sorted(points, key=TorusPoint.sort_key)
    for c in classes:
        assert all(c[0].rationally_equivalent(p) for p in c)
    for c1 in classes:
        for c2 in classes:
            if c1 is not c2:
                assert not c1[0].rationally_equivalent(c2[0])


# --- exponential polynomials -------------------------------------------------------

def test_zero_set_examples():
    f = ExponentialPolynomial.from_pairs([(pt(0), 1), (pt(Q(1, 2)), 1)])
    assert zero_set_rational(f) == {1}
    g = ExponentialPolynomial.from_pairs([(pt(Q(3 * j, 15)), 1) for j in range(5)])
    assert zero_set_rational(g, modulus=15) == frozenset(range(15)) - {0, 5, 10}
    assert zero_set_rational(g) == {1, 2, 3, 4}
    with pytest.raises(ValueError):
        zero_set_rational(g, modulus=7)
    h = ExponentialPolynomial.from_pairs([(pt(Q(2, 7)), Q(3, 5))])
    assert zero_set_rational(h) == frozenset()


def test_zero_set_complex_coefficients():
    # i e(n/4) + 1 vanishes when e(n/4) = i, i.e. n = 1 (mod 4)
    f = ExponentialPolynomial.from_pairs([(pt(Q(1, 4)), (0, 1)), (pt(0), 1)])
    assert zero_set_rational(f) == {1}


def test_irrational_frequency_refused():
    f = ExponentialPolynomial.from_pairs([(th1, 1)])
    with pytest.raises(ValueError):
        zero_set_rational(f)


def test_repeated_frequency_rejected():
    with pytest.raises(ValueError):
        ExponentialPolynomial.from_pairs([(pt(0), 1), (pt(1), 2)])


def test_zero_set_agrees_with_float_evaluation():
    rng = random.Random(7)
    for _ in range(200):
        P = rng.randint(1, 64)
        freqs = rng.sample(range(P), min(P, rng.randint(1, 8)))
        f = ExponentialPolynomial.from_pairs([(pt(Q(k, P)), rng.randint(-5, 5) or 1) for k in freqs])
        zs = zero_set_rational(f)
        per = f.period()
        for n in range(per):
            v = abs(f.evaluate(n))
            assert (v < 1e-6) if n in zs else (v > 1e-3)


def test_classes_of_exponential_polynomial():
    f = ExponentialPolynomial.from_pairs([(pt(0), 1), (th1, 2), (th1 + Q(1, 2), 3)])
    parts = f.classes()
    assert [len(p.terms) for p in parts] == [1, 2]


# --- Vandermonde ---------------------------------------------------------------------

def test_vandermonde_examples():
    assert vandermonde_criterion([1], [0])
    w = vandermonde_witness([0, 0], [Q(1, 3), Q(2, 3)])
    assert w.exact and w.forced_zero and w.system_satisfied


def test_vandermonde_nonzero_values_leave_residual():
    rng = random.Random(3)
    for _ in range(30):
        ts = rng.sample([Q(k, 12) for k in range(12)], 3)
        xs = [Q(rng.choice([-3, -2, -1, 1, 2, 3])) for _ in range(3)]
        w = vandermonde_witness(xs, ts)
        assert w.forced_zero
        assert not w.system_satisfied


def test_vandermonde_repeated_base_rejected():
    with pytest.raises(ValueError):
        vandermonde_witness([1, 1], [Q(1, 4), Q(5, 4)])


def test_vandermonde_numeric_fallback():
    w = vandermonde_witness([1.0, 0.0], [complex(2, 0), complex(0, 1)])
    assert not w.exact and w.forced_zero and not w.system_satisfied


# --- circle functions and torus tilings ------------------------------------------------

def test_circle_function_basics():
    F = CircleFunction.indicator([(Q(3, 4), Q(5, 4))])
    assert F(0) == 1 and F(Q(1, 2)) == 0 and F(Q(7, 8)) == 1
    assert F.integral() == Q(1, 2)
    G = F.rotate(Q(1, 4))
    assert G(0) == 1 and G(Q(1, 2)) == 0 and G.integral() == Q(1, 2)


def test_three_thirds_tile_the_circle():
    F = CircleFunction.indicator([(0, Q(1, 3))])
    tau = WeightedPeriodicPointSet.from_rationals([(0, 1), (Q(1, 3), 1), (Q(2, 3), 1)])
    r = verify_torus_tiling(F, tau)
    assert r.is_tiling and r.level == 1


def test_non_tiling_reports_the_cell():
    F = CircleFunction.indicator([(0, Q(1, 2))])
    tau = WeightedPeriodicPointSet.from_rationals([(0, 1), (Q(1, 4), 1)])
    r = verify_torus_tiling(F, tau)
    assert not r.is_tiling
    assert ((Q(1, 4), Q(1, 2)), 2) in r.violations


def test_double_delta_constant_iff_f_constant():
    tau = WeightedPeriodicPointSet.from_rationals([(0, 2)])
    assert verify_torus_tiling(CircleFunction.constant(3), tau).is_tiling
    assert not verify_torus_tiling(CircleFunction.indicator([(0, Q(1, 2))]), tau).is_tiling


def test_irrational_atoms_refused():
    tau = WeightedPeriodicPointSet(Q(1), ((th1, 1),))
    with pytest.raises(ValueError):
        verify_torus_tiling(CircleFunction.constant(1), tau)


def test_point_set_invariants():
    with pytest.raises(ValueError):
        WeightedPeriodicPointSet.from_rationals([(0, 1), (1, 1)])
    with pytest.raises(ValueError):
        WeightedPeriodicPointSet.from_rationals([(0, 0)])


def test_split_examples():
    tau = WeightedPeriodicPointSet.from_rationals([(0, 1), (Q(1, 2), 2)])
    assert split_by_classes(tau) == [tau]
    tau2 = WeightedPeriodicPointSet(Q(1), ((pt(0), 1), (th1, 1)))
    assert [len(p.atoms) for p in split_by_classes(tau2)] == [1, 1]


def test_two_class_instance_levels():
    # half-interval tile, one rational pair and its irrational translate
    F = CircleFunction.indicator([(0, Q(1, 2))])
    tau = WeightedPeriodicPointSet(Q(1), ((pt(0), 1), (pt(Q(1, 2)), 1), (th1, 1), (th1 + Q(1, 2), 1)))
    levels = class_levels(F, tau)
    assert len(levels) == 2
    assert [c.report.level for c in levels] == [1, 1]
    assert levels[1].shift == th1


def test_two_class_instance_on_a_finer_lattice():
    # period 1/3: the atoms 0 and 1/2 reduce to 0 and 1/6
    z = Q(1, 3)
    F = CircleFunction.indicator([(0, Q(1, 6))], z)
    atoms = [TorusPoint(0, (), z), TorusPoint(Q(1, 2), (), z),
             TorusPoint(0, ((1, 1),), z), TorusPoint(Q(1, 2), ((1, 1),), z)]
    tau = WeightedPeriodicPointSet(z, tuple((a, 1) for a in atoms))
    levels = class_levels(F, tau)
    assert [c.report.level for c in levels] == [1, 1]


def test_eliminate_symbols_requires_single_class():
    tau = WeightedPeriodicPointSet(Q(1), ((pt(0), 1), (th1, 1)))
    with pytest.raises(ValueError):
        eliminate_symbols(tau)


@st.composite
def rational_tilings(draw):
    den = draw(st.integers(1, 12))
    starts = draw(st.lists(st.integers(0, den - 1), min_size=1, max_size=3))
    lengths = draw(st.lists(st.integers(1, den), min_size=len(starts), max_size=len(starts)))
    F = CircleFunction.indicator([(Q(s, den), Q(s + l, den)) for s, l in zip(starts, lengths)])
    offs = draw(st.lists(st.integers(0, 2 * den - 1), min_size=1, max_size=4, unique=True))
    tau = WeightedPeriodicPointSet.from_rationals([(Q(o, 2 * den), 1) for o in offs])
    return F, tau, den


@given(rational_tilings(), st.integers(0, 23))
def test_rotation_invariance(data, k):
    F, tau, den = data
    t = Q(k, 24)
    rotated = WeightedPeriodicPointSet.from_rationals([(p.rational + t, w) for p, w in tau.atoms])
    a = verify_torus_tiling(F, tau)
    b = verify_torus_tiling(F.rotate(t), rotated)
    assert a.is_tiling == b.is_tiling and a.level == b.level


@given(rational_tilings())
def test_convolution_matches_pointwise_sum(data):
    F, tau, den = data
    G = convolve_atoms(F, [(p.rational, w) for p, w in tau.atoms])
    for k in range(4 * den):
        x = Q(2 * k + 1, 8 * den)
        assert G(x) == sum(w * F(x - p.rational) for p, w in tau.atoms)


@given(st.lists(symbolic_points(), max_size=8, unique=True))
def test_split_preserves_atoms(points):
    tau = WeightedPeriodicPointSet(Q(1), tuple((p, i + 1) for i, p in enumerate(points)))
    parts = split_by_classes(tau)
    merged = sorted((a for part in parts for a in part.atoms), key=lambda a: a[0].sort_key())
    assert tuple(merged) == tau.atoms
