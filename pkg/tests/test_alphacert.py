import random
from fractions import Fraction

import pytest

from realcert import alphacert, exact
from realcert.alphacert import ConjPairs, FullReal, Outcome
from realcert.errors import DimensionMismatch, NotAnApproximateSolution, SingularJacobian
from realcert.exact import GaussianRational as G
from realcert.polysys import BlockStructure, Polynomial, PolynomialSystem
from realcert.reference import ILLUSTRATIVE_P1, ILLUSTRATIVE_P2, illustrative_system, sqrt2_system

from conftest import rand_fraction, rand_gaussian


def _x():
    return Polynomial.variable(1, 0)


def _pt(*vals):
    return tuple(G.coerce(v) for v in vals)


def _sqrt_bracket_within(r, lo_ref, hi_ref):
    lo, hi = exact.sqrt_bracket(r, 64)
    return lo_ref <= lo and hi <= hi_ref


# -- Newton step, beta, gamma ---------------------------------------------------


def test_newton_step_examples():
    f = sqrt2_system()
    assert alphacert.newton_step(f, _pt(2)) == _pt(Fraction(3, 2))
    lin = PolynomialSystem([3 * _x() - 1])
    assert alphacert.newton_step(lin, _pt(Fraction(1, 3))) == _pt(Fraction(1, 3))
    out = alphacert.newton_step(f, _pt(Fraction(7, 5)))
    assert out[0].im == 0


def test_newton_step_singular():
    with pytest.raises(SingularJacobian):
        alphacert.newton_step(sqrt2_system(), _pt(0))


def test_dimension_checks():
    f, _ = illustrative_system()
    with pytest.raises(DimensionMismatch):
        alphacert.newton_step(f, _pt(1, 2))
    rect = PolynomialSystem([_x(), _x() - 1], nvars=1)
    with pytest.raises(DimensionMismatch):
        alphacert.beta_sq(rect, _pt(1))


def test_beta_examples():
    f = sqrt2_system()
    lin = PolynomialSystem([_x() - 5])
    assert alphacert.beta_sq(lin, _pt(5)) == 0
    assert alphacert.beta_sq(f, _pt(Fraction(3, 2))) == Fraction(1, 144)


def test_beta_at_illustrative_points():
    f, _ = illustrative_system()
    b1 = alphacert.beta_sq(f, ILLUSTRATIVE_P1)
    b2 = alphacert.beta_sq(f, ILLUSTRATIVE_P2)
    assert _sqrt_bracket_within(b1, Fraction(2045, 10**11), Fraction(2055, 10**11))
    assert _sqrt_bracket_within(b2, Fraction(1465, 10**11), Fraction(1475, 10**11))


def test_gamma_examples():
    lin = PolynomialSystem([_x()])
    assert alphacert.gamma_sq_upper(lin, _pt(Fraction(2, 7))) >= 0
    f = sqrt2_system()
    assert alphacert.gamma_sq_upper(f, _pt(Fraction(3, 2))) >= Fraction(1, 9)
    g, _ = illustrative_system()
    bound = alphacert.gamma_sq_upper(g, ILLUSTRATIVE_P1)
    assert 0 < bound < 10**10


def test_gamma_dominates_closed_form_for_quadratics():
    rng = random.Random(30)
    checked = 0
    while checked < 200:
        a, b, c = (rand_fraction(rng, 50) for _ in range(3))
        if a == 0:
            continue
        x0 = rand_gaussian(rng, 50)
        deriv = 2 * a * x0 + b
        if deriv.is_zero():
            continue
        f = PolynomialSystem([a * _x() ** 2 + b * _x() + c])
        true_gamma_sq = (G(a) / deriv).abs_sq()
        assert alphacert.gamma_sq_upper(f, (x0,)) >= true_gamma_sq
        checked += 1


def test_alpha_is_beta_times_gamma():
    f, _ = illustrative_system()
    data = alphacert.analyze(f, ILLUSTRATIVE_P2)
    assert data.alpha_sq_upper == data.beta_sq * data.gamma_sq_upper
    b = data.bounds()
    assert b.alpha_sq_upper == b.beta_sq * b.gamma_sq_upper


def test_rounded_newton_point_matches_oracle():
    f, _ = illustrative_system()
    rng = random.Random(31)
    for _ in range(20):
        x = tuple(z + G(rand_fraction(rng, 10**6) / 10**6) for z in ILLUSTRATIVE_P1)
        data = alphacert.analyze(f, x, with_gamma=False)
        for bits in (1, 17, 64):
            assert data.newton_point_rounded(bits) == exact.dyadic_round_vector(data.newton_point(), bits)


# -- the alpha test and same-root test ---------------------------------------------


def test_approximate_solution_examples():
    lin = PolynomialSystem([_x() - 5])
    assert alphacert.is_approximate_solution(lin, _pt(5))[0]
    f, _ = illustrative_system()
    assert alphacert.is_approximate_solution(f, ILLUSTRATIVE_P1)[0]
    assert alphacert.is_approximate_solution(f, ILLUSTRATIVE_P2)[0]
    ok, b = alphacert.is_approximate_solution(sqrt2_system(), _pt(10))
    assert not ok
    assert b.beta_sq == Fraction(98, 20) ** 2


def test_threshold_is_safe():
    # T < (13 - 3 sqrt 17)/4  <=>  3 sqrt 17 < 13 - 4T  <=>  153 < (13 - 4T)^2 with 13 - 4T > 0
    t = alphacert.APPROX_THRESHOLD
    assert 13 - 4 * t > 0 and 153 < (13 - 4 * t) ** 2


def test_same_root_examples():
    f = sqrt2_system()
    x = _pt(Fraction(577, 408))
    assert alphacert.same_root(f, x, x)
    assert not alphacert.same_root(f, x, _pt(Fraction(-577, 408)))
    assert alphacert.same_root(f, x, alphacert.newton_step(f, x))


def test_certify_coordinate_nonreal():
    f, _ = illustrative_system()
    assert not alphacert.certify_coordinate_nonreal(sqrt2_system(), _pt(Fraction(577, 408)), 0)
    assert alphacert.certify_coordinate_nonreal(f, ILLUSTRATIVE_P1, 3)
    assert not any(alphacert.certify_coordinate_nonreal(f, ILLUSTRATIVE_P2, j) for j in range(5))


def test_certify_distinct():
    f = sqrt2_system()
    x = _pt(Fraction(577, 408))
    assert not alphacert.certify_distinct(f, x, x)
    assert not alphacert.certify_distinct(f, x, alphacert.newton_step(f, x))
    assert alphacert.certify_distinct(f, x, _pt(Fraction(-577, 408)))


# -- invariant sets -----------------------------------------------------------------


def test_delta_examples():
    f, bs = illustrative_system()
    assert alphacert.delta_sq(_pt(1, 2, 3, 4, 5), FullReal(5)) == 0
    d = alphacert.delta_sq(ILLUSTRATIVE_P1, FullReal(5))
    assert _sqrt_bracket_within(d, Fraction(345, 1000), Fraction(355, 1000))
    d = alphacert.delta_sq(ILLUSTRATIVE_P1, ConjPairs(bs))
    assert _sqrt_bracket_within(d, Fraction(8875, 10**12), Fraction(8885, 10**12))
    d = alphacert.delta_sq(ILLUSTRATIVE_P2, FullReal(5))
    assert _sqrt_bracket_within(d, Fraction(7975, 10**12), Fraction(7985, 10**12))
    with pytest.raises(DimensionMismatch):
        alphacert.delta_sq(_pt(1, 2), FullReal(3))


def test_delta_full_real_zero_iff_real():
    rng = random.Random(32)
    for _ in range(200):
        real = rng.random() < 0.5
        x = tuple(rand_gaussian(rng, real=real) for _ in range(4))
        assert (alphacert.delta_sq(x, FullReal(4)) == 0) == all(z.im == 0 for z in x)


def test_projection_examples():
    bs = BlockStructure(1, 0, 1, 1, 1, 1)
    V = ConjPairs(bs)
    x = _pt(G(0, 1), G(1, 1), G(1, -1))
    assert alphacert.project_onto_V(x, V) == _pt(0, G(1, 1), G(1, -1))
    v = _pt(3, G(2, 5), G(2, -5))
    assert alphacert.project_onto_V(v, V) == v
    y = _pt(G(1, 2), G(3, -4))
    assert alphacert.project_onto_V(y, FullReal(2)) == _pt(1, 3)


def _random_member(rng, bs):
    v = [rand_gaussian(rng, real=True) for _ in range(bs.m + bs.k * bs.q)]
    c = [rand_gaussian(rng) for _ in range(bs.l * bs.q)]
    return tuple(v + c + [z.conj() for z in c])


def test_projection_optimality():
    rng = random.Random(33)
    for bs in (BlockStructure(3, 0, 1, 1, 1, 2), BlockStructure(2, 1, 2, 2, 2, 2)):
        V = ConjPairs(bs)
        for _ in range(10):
            x = tuple(rand_gaussian(rng) for _ in range(bs.nvars))
            d = alphacert.delta_sq(x, V)
            p = alphacert.project_onto_V(x, V)
            assert alphacert.in_V(p, V)
            assert exact.norm_sq(exact.sub(x, p)) == d
            for _ in range(100):
                v = _random_member(rng, bs)
                assert exact.norm_sq(exact.sub(x, v)) >= d


def test_newton_invariance_on_conjugate_pair_set():
    f, bs = illustrative_system()
    V = ConjPairs(bs)
    rng = random.Random(34)
    done = 0
    while done < 500:
        v = _random_member(rng, bs)
        try:
            n = alphacert.newton_step(f, v)
        except SingularJacobian:
            continue
        assert all(z.im == 0 for z in n[:3])
        assert n[4] == n[3].conj()
        done += 1


def test_conjugation_equivariance():
    f, _ = illustrative_system()
    rng = random.Random(35)
    for _ in range(100):
        x = tuple(rand_gaussian(rng) for _ in range(5))
        try:
            n = alphacert.newton_step(f, x)
        except SingularJacobian:
            continue
        assert alphacert.newton_step(f, exact.conj_vector(x)) == exact.conj_vector(n)


def test_scaling_invariance():
    f, _ = illustrative_system()
    rng = random.Random(36)
    for _ in range(100):
        x = tuple(rand_gaussian(rng) for _ in range(5))
        c = rand_gaussian(rng)
        if c.is_zero():
            continue
        try:
            n = alphacert.newton_step(f, x)
        except SingularJacobian:
            continue
        assert alphacert.newton_step(f.scaled(c), x) == n
        assert alphacert.beta_sq(f.scaled(c), x) == alphacert.beta_sq(f, x)


# -- the Certify loop ---------------------------------------------------------------


def test_certify_illustrative_points():
    f, bs = illustrative_system()
    assert alphacert.certify_in_V(f, ILLUSTRATIVE_P1, FullReal(5)).outcome is Outcome.NOT_IN_V
    assert alphacert.certify_in_V(f, ILLUSTRATIVE_P2, FullReal(5)).outcome is Outcome.IN_V
    assert alphacert.certify_in_V(f, ILLUSTRATIVE_P1, ConjPairs(bs)).outcome is Outcome.IN_V
    # P2 is real but its c and d coordinates differ, so its root is not in V
    assert alphacert.certify_in_V(f, ILLUSTRATIVE_P2, ConjPairs(bs)).outcome is Outcome.NOT_IN_V


def test_certify_with_rounding_agrees():
    f, bs = illustrative_system()
    for x, V, expected in (
        (ILLUSTRATIVE_P1, FullReal(5), Outcome.NOT_IN_V),
        (ILLUSTRATIVE_P2, FullReal(5), Outcome.IN_V),
        (ILLUSTRATIVE_P1, ConjPairs(bs), Outcome.IN_V),
    ):
        assert alphacert.certify_in_V(f, x, V, round_bits=64).outcome is expected


def test_certify_rejects_non_approximate_input():
    with pytest.raises(NotAnApproximateSolution):
        alphacert.certify_in_V(sqrt2_system(), _pt(10), FullReal(1))


def _undecided_case():
    # root 7/100 + 12i/100; at 12i/100 neither test fires, one Newton step lands on the root
    c = G(Fraction(7, 100), Fraction(12, 100))
    return PolynomialSystem([_x() - c]), _pt(G(0, Fraction(12, 100)))


def test_certify_iterates_then_decides():
    f, x = _undecided_case()
    rep = alphacert.certify_in_V(f, x, FullReal(1))
    assert rep.outcome is Outcome.NOT_IN_V
    assert rep.iterations == 1 and len(rep.trace) == 2
    first = rep.trace[0]
    assert first.approximate() and not first.excludes() and not first.includes()


def test_certify_unresolved_after_max_iters():
    f, x = _undecided_case()
    rep = alphacert.certify_in_V(f, x, FullReal(1), max_iters=0)
    assert rep.outcome is Outcome.UNRESOLVED
    assert not rep.resolved


def test_outcome_exclusivity_on_perturbed_points():
    f, bs = illustrative_system()
    rng = random.Random(37)
    for _ in range(20):
        base = rng.choice((ILLUSTRATIVE_P1, ILLUSTRATIVE_P2))
        eps = Fraction(1, 10 ** rng.randint(7, 12))
        x = tuple(z + G(rand_fraction(rng) * eps, rand_fraction(rng) * eps) for z in base)
        for V in (FullReal(5), ConjPairs(bs)):
            rep = alphacert.certify_report(f, x, V)
            decided = [b for b in rep.trace if b.excludes() or b.includes()]
            assert all(not (b.excludes() and b.includes()) for b in rep.trace)
            if rep.resolved:
                assert len(decided) == 1 and decided[0] is rep.trace[-1]


def test_certify_report_failure_modes():
    f = sqrt2_system()
    assert alphacert.certify_report(f, _pt(0), FullReal(1)).outcome is Outcome.SINGULAR
    rep = alphacert.certify_report(f, _pt(10), FullReal(1))
    assert rep.outcome is Outcome.UNRESOLVED and "approximate" in rep.note
    assert alphacert.certify_report(f, _pt(Fraction(577, 408)), None).outcome is Outcome.APPROX_ONLY


# -- refinement -----------------------------------------------------------------------


def test_refine_examples():
    lin = PolynomialSystem([_x() - Fraction(2, 3)])
    assert alphacert.refine(lin, _pt(Fraction(2, 3)), 3) == _pt(Fraction(2, 3))
    f = sqrt2_system()
    x = _pt(Fraction(3, 2))
    assert alphacert.refine(f, x, 2) == _pt(Fraction(577, 408))
    assert alphacert.refine(f, x, 3) == _pt(Fraction(665857, 470832))
    r = alphacert.refine(f, x, 3, round_bits=256)
    assert (2**256) % r[0].re.denominator == 0
    assert alphacert.is_approximate_solution(f, r)[0]


def test_refine_keeps_approximate_solutions():
    f, _ = illustrative_system()
    for x in (ILLUSTRATIVE_P1, ILLUSTRATIVE_P2):
        y = alphacert.refine(f, x, 2, round_bits=128)
        ok, b = alphacert.is_approximate_solution(f, y)
        assert ok and b.beta_sq < Fraction(1, 10**40)
