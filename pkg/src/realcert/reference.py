"""Reference systems, points and curves used by the tests and the CLI demos."""
from __future__ import annotations

from fractions import Fraction

from .exact import GaussianRational as G
from .polysys import PolynomialSystem, Polynomial, assemble_structured


def _vars(n):
    return [Polynomial.variable(n, i) for i in range(n)]


def illustrative_parts() -> tuple[PolynomialSystem, PolynomialSystem]:
    """g(a) = |a|^2 - 1 and the two-polynomial block p(a, c)."""
    a1, a2, a3 = _vars(3)
    g = PolynomialSystem([a1**2 + a2**2 + a3**2 - 1], ["a1", "a2", "a3"])
    a1, a2, a3, c = _vars(4)
    p1 = a1 + (1 - c**2) * (a2 * c + a3 * c**2)
    p2 = a1 * (3 * c**2 - 1) + a2 * (2 * c**5 - 4 * c**3 + 2 * c - 1)
    p = PolynomialSystem([p1, p2], ["a1", "a2", "a3", "c"])
    return g, p


def illustrative_system():
    """The 5x5 system [g(a); p(a,c); p(a,d)] and its structure (3,0,1,1,1,2)."""
    g, p = illustrative_parts()
    f, bs = assemble_structured(g, p, 0, 1)
    return PolynomialSystem(f.polys, ["a1", "a2", "a3", "c", "d"]), bs


def _q(num, den):
    return Fraction(num, den)


ILLUSTRATIVE_P1 = (
    G(_q(1543, 8003), _q(1, 530485174)),
    G(_q(-34488, 50521), _q(-1, 190996265)),
    G(_q(32768, 46489), _q(-1, 310964547)),
    G(_q(6713, 18120), _q(4777, 19088)),
    G(_q(6713, 18120), _q(-4538, 18133)),
)

ILLUSTRATIVE_P2 = (
    G(_q(18245, 111912), _q(-1, 772703930)),
    G(_q(15244, 38793), _q(-1, 307556791)),
    G(_q(27099, 29944), _q(-1, 155308656)),
    G(_q(-44817, 40271), _q(-1, 372454657)),
    G(_q(8603, 8149), _q(1, 608134511)),
)


def sqrt2_system() -> PolynomialSystem:
    (x,) = _vars(1)
    return PolynomialSystem([x**2 - 2], ["x"])


# Curves as (quadric, cubic) dictionaries from homogeneous exponents (x0,x1,x2,x3).

CURVE_16_7 = (
    {(2, 0, 0, 0): 1, (1, 0, 0, 1): 1, (0, 1, 1, 0): -1},
    # x0 x2 (x0 + x1 + x3) - x3 (x1^2 - x2^2 + x3^2)
    {(2, 0, 1, 0): 1, (1, 1, 1, 0): 1, (1, 0, 1, 1): 1, (0, 2, 0, 1): -1, (0, 0, 2, 1): 1, (0, 0, 0, 3): -1},
)

_SEGRE = {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1}

CURVE_C1 = (
    _SEGRE,
    {
        (k): Fraction(v, 100)
        for k, v in {
            (3, 0, 0, 0): 25,
            (2, 1, 0, 0): -24,
            (2, 0, 1, 0): -89,
            (2, 0, 0, 1): -55,
            (0, 3, 0, 0): -14,
            (0, 2, 1, 0): -31,
            (0, 1, 1, 1): 86,
            (0, 0, 2, 1): 74,
            (0, 0, 1, 2): -45,
            (0, 0, 0, 3): -62,
        }.items()
    },
)

CURVE_C2 = (
    _SEGRE,
    {
        (k): Fraction(v, 100)
        for k, v in {
            (3, 0, 0, 0): 89,
            (2, 1, 0, 0): -41,
            (1, 2, 0, 0): -87,
            (1, 0, 2, 0): -26,
            (0, 2, 1, 0): -25,
            (0, 2, 0, 1): 42,
            (0, 1, 2, 0): 56,
            (0, 0, 3, 0): 87,
            (0, 0, 1, 2): -67,
            (0, 0, 0, 3): -42,
        }.items()
    },
)
