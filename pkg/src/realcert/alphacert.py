"""Smale alpha-theory certificates and Newton-invariant sets.

Every inequality is evaluated on squared quantities so the whole test stays
in exact rational arithmetic:

* approximate solution:  16 alpha^2 < T^2, T = 0.157670 < (13 - 3 sqrt 17)/4
* same associated root:  10^4 alpha^2 < 9  and  400 |x-y|^2 gamma^2 < 1
* root outside V:        delta^2 > 4 beta^2
* root inside V:         10^4 alpha^2 < 9  and  400 delta^2 gamma^2 < 1

gamma is replaced by the rational upper bound

    gamma^2 <= D^3 mu^2 / (4 (1 + |x|^2)),
    mu^2 = max(1, |f|_W^2 * |Df(x)^-1 Diag(d_i (1+|x|^2)^(d_i-1))^(1/2)|_F^2),

where D is the largest degree and the Frobenius norm over-estimates the
operator norm.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from gmpy2 import mpz

from . import exact
from .errors import DimensionMismatch, NotAnApproximateSolution, SingularJacobian, SingularMatrix
from .exact import GaussianRational, ONE, ZERO, norm_sq
from .polysys import BlockStructure, PolynomialSystem

APPROX_THRESHOLD = Fraction(157670, 10**6)
_APPROX_THRESHOLD_SQ = APPROX_THRESHOLD * APPROX_THRESHOLD

DEFAULT_MAX_ITERS = 8
DEFAULT_ROUND_BITS = 256


class Outcome(str, enum.Enum):
    IN_V = "InV"
    NOT_IN_V = "NotInV"
    APPROX_ONLY = "ApproxSolutionOnly"
    UNRESOLVED = "Unresolved"
    SINGULAR = "SingularJacobian"

    def __str__(self):
        return self.value


# -- invariant sets -------------------------------------------------------------


@dataclass(frozen=True)
class FullReal:
    """V = R^n."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("FullReal needs n >= 1")

    @property
    def dim(self) -> int:
        return self.n

    def describe(self) -> str:
        return f"R^{self.n}"


@dataclass(frozen=True)
class ConjPairs:
    """Real a- and b-blocks, each d-block the conjugate of its c-block."""

    structure: BlockStructure

    def __post_init__(self):
        problems = self.structure.arithmetic_problems()
        if problems:
            raise ValueError("invalid block structure: " + "; ".join(problems))

    @property
    def dim(self) -> int:
        return self.structure.nvars

    def describe(self) -> str:
        s = self.structure
        return f"conj-pairs(m={s.m},k={s.k},l={s.l},q={s.q})"


InvariantSetSpec = Union[FullReal, ConjPairs]


def _check_dim(x, V: InvariantSetSpec):
    if len(x) != V.dim:
        raise DimensionMismatch(f"point has {len(x)} coordinates, invariant set lives in dimension {V.dim}")


def _pair_ranges(bs: BlockStructure):
    m, q, k, l = bs.m, bs.q, bs.k, bs.l  # noqa: E741
    real = list(range(m + k * q))
    pairs = []
    for j in range(l):
        c0 = m + (k + j) * q
        d0 = m + (k + l + j) * q
        pairs.extend(zip(range(c0, c0 + q), range(d0, d0 + q)))
    return real, pairs


def delta_sq(x: Sequence[GaussianRational], V: InvariantSetSpec) -> Fraction:
    """Squared distance from x to V."""
    _check_dim(x, V)
    if isinstance(V, FullReal):
        return sum((z.im * z.im for z in x), Fraction(0))
    real, pairs = _pair_ranges(V.structure)
    total = sum((x[i].im * x[i].im for i in real), Fraction(0))
    half = Fraction(0)
    for ci, di in pairs:
        # |c - conj d|^2, counted for both the c and d entries, times 1/4
        half += (x[ci] - x[di].conj()).abs_sq()
    return total + half / 2


def project_onto_V(x: Sequence[GaussianRational], V: InvariantSetSpec) -> tuple[GaussianRational, ...]:
    """Closest point of V to x."""
    _check_dim(x, V)
    if isinstance(V, FullReal):
        return exact.real_part(x)
    real, pairs = _pair_ranges(V.structure)
    out = list(x)
    for i in real:
        out[i] = GaussianRational(x[i].re)
    for ci, di in pairs:
        c, d = x[ci], x[di]
        mid = GaussianRational((c.re + d.re) / 2, (c.im - d.im) / 2)
        out[ci] = mid
        out[di] = mid.conj()
    return tuple(out)


def in_V(x: Sequence[GaussianRational], V: InvariantSetSpec) -> bool:
    return delta_sq(x, V) == 0


# -- bounds -------------------------------------------------------------------


@dataclass(frozen=True)
class CertBounds:
    beta_sq: Fraction
    gamma_sq_upper: Fraction
    alpha_sq_upper: Fraction
    delta_sq: Fraction | None = None

    def approximate(self) -> bool:
        return 16 * self.alpha_sq_upper < _APPROX_THRESHOLD_SQ

    def strong(self) -> bool:
        """100 alpha < 3, the premise of the same-root and in-V tests."""
        return 10**4 * self.alpha_sq_upper < 9

    def excludes(self) -> bool:
        return self.delta_sq is not None and self.delta_sq > 4 * self.beta_sq

    def includes(self) -> bool:
        return self.delta_sq is not None and self.strong() and 400 * self.delta_sq * self.gamma_sq_upper < 1


class NewtonData:
    """Everything alpha theory needs at one point, from a single elimination.

    The elimination result stays in fraction-free form; column 0 is the
    Newton correction Df(x)^-1 f(x) and columns 1..n (when present) are the
    columns of Df(x)^-1.
    """

    def __init__(self, x, solution: exact.FractionFreeSolution, gamma_sq_upper: Fraction | None):
        self.x = x
        self.solution = solution
        self.beta_sq = Fraction(solution.column_norm_sq_numerator(0), solution.det_norm)
        self.gamma_sq_upper = gamma_sq_upper
        self._correction = None

    @property
    def alpha_sq_upper(self) -> Fraction:
        return self.beta_sq * self.gamma_sq_upper

    @property
    def correction(self):
        if self._correction is None:
            self._correction = self.solution.column(0)
        return self._correction

    def newton_point(self):
        return exact.sub(self.x, self.correction)

    def newton_point_rounded(self, bits: int):
        """dyadic_round(N_f(x), bits) computed without normalizing N_f(x)."""
        sol = self.solution
        dr, di, dn = sol.dr, sol.di, mpz(sol.det_norm)
        scale_ = 1 << bits
        out = []
        for z, a, b in zip(self.x, sol.yr[0], sol.yi[0]):
            cr = a * dr + b * di  # correction = (cr + ci i) / dn
            ci = b * dr - a * di
            out.append(
                GaussianRational(
                    Fraction(_round_half_up(z.re, cr, dn, scale_), scale_),
                    Fraction(_round_half_up(z.im, ci, dn, scale_), scale_),
                )
            )
        return tuple(out)

    def bounds(self, delta: Fraction | None = None) -> CertBounds:
        return CertBounds(self.beta_sq, self.gamma_sq_upper, self.alpha_sq_upper, delta)


def _round_half_up(v: Fraction, c: int, dn: int, scale_: int) -> int:
    # floor((v - c/dn) * scale + 1/2)
    p, q = v.numerator, v.denominator
    num = 2 * scale_ * (p * dn - c * q) + q * dn
    return int(num // (2 * q * dn))


def _require_square(f: PolynomialSystem, x):
    if not f.is_square():
        raise DimensionMismatch(f"system is {len(f)}x{f.nvars}, certification needs a square system")
    if len(x) != f.nvars:
        raise DimensionMismatch(f"point has {len(x)} coordinates, system has {f.nvars} variables")


def _solve(jac, columns) -> exact.FractionFreeSolution:
    try:
        return exact.solve_fraction_free(jac, columns)
    except SingularMatrix as exc:
        raise SingularJacobian(str(exc)) from None


def analyze(f: PolynomialSystem, x, with_gamma: bool = True) -> NewtonData:
    _require_square(f, x)
    x = exact.vector(x)
    values, jac = f.evaluate_with_jacobian(x)
    n = len(x)
    columns = [values]
    if with_gamma:
        columns += [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    sol = _solve(jac, columns)
    gamma = _gamma_bound(f, x, sol) if with_gamma else None
    return NewtonData(x, sol, gamma)


def _gamma_bound(f: PolynomialSystem, x, sol: exact.FractionFreeSolution) -> Fraction:
    degrees = f.degrees
    D = max(degrees)
    weyl = f.weyl_norm_sq()  # raises DegreeZeroPolynomial
    s = 1 + norm_sq(x)
    # |Df^-1 Delta|_F^2 = sum_j d_j s^(d_j - 1) |column j of Df^-1|^2
    by_degree: dict[int, int] = {}
    for j, d in enumerate(degrees):
        by_degree[d] = by_degree.get(d, 0) + sol.column_norm_sq_numerator(j + 1)
    frob = sum((d * s ** (d - 1) * total for d, total in by_degree.items()), Fraction(0)) / sol.det_norm
    mu_sq = max(Fraction(1), weyl * frob)
    return D**3 * mu_sq / (4 * s)


def newton_step(f: PolynomialSystem, x):
    """N_f(x) = x - Df(x)^-1 f(x); raises SingularJacobian instead of returning x."""
    _require_square(f, x)
    x = exact.vector(x)
    values, jac = f.evaluate_with_jacobian(x)
    return exact.sub(x, _solve(jac, [values]).column(0))


def beta_sq(f: PolynomialSystem, x) -> Fraction:
    return analyze(f, x, with_gamma=False).beta_sq


def gamma_sq_upper(f: PolynomialSystem, x) -> Fraction:
    return analyze(f, x).gamma_sq_upper


def is_approximate_solution(f: PolynomialSystem, x) -> tuple[bool, CertBounds]:
    """Alpha test; False means "not certified", never "certified not a root"."""
    data = analyze(f, x)
    b = data.bounds()
    return b.approximate(), b


def same_root(f: PolynomialSystem, x, y) -> bool:
    data = analyze(f, x)
    if len(y) != len(data.x):
        raise DimensionMismatch("points differ in dimension")
    dist = norm_sq(exact.sub(data.x, exact.vector(y)))
    return data.bounds().strong() and 400 * dist * data.gamma_sq_upper < 1


def certify_coordinate_nonreal(f: PolynomialSystem, x, j: int, beta: Fraction | None = None) -> bool:
    """True when coordinate j of the associated root is certainly nonreal."""
    if beta is None:
        beta = beta_sq(f, x)
    im = GaussianRational.coerce(x[j]).im
    return im * im > 4 * beta


def certify_distinct(
    f: PolynomialSystem,
    x,
    y,
    coords: Sequence[int] | None = None,
    beta_x: Fraction | None = None,
    beta_y: Fraction | None = None,
    bits: int = 64,
) -> bool:
    """True when the associated roots of x and y differ on ``coords``."""
    if len(x) != len(y):
        raise DimensionMismatch("points differ in dimension")
    if coords is None:
        coords = range(len(x))
    if beta_x is None:
        beta_x = beta_sq(f, x)
    if beta_y is None:
        beta_y = beta_sq(f, y)
    dist = sum(((GaussianRational.coerce(x[i]) - GaussianRational.coerce(y[i])).abs_sq() for i in coords), Fraction(0))
    if not dist:
        return False
    lo, _ = exact.sqrt_bracket(dist, bits)
    _, rx = exact.sqrt_bracket(4 * beta_x, bits)
    _, ry = exact.sqrt_bracket(4 * beta_y, bits)
    return lo > rx + ry


def refine(f: PolynomialSystem, x, iters: int, round_bits: int | None = None):
    """Apply ``iters`` Newton steps, optionally rounding each iterate to 2^-round_bits."""
    x = exact.vector(x)
    for _ in range(iters):
        if round_bits:
            x = analyze(f, x, with_gamma=False).newton_point_rounded(round_bits)
        else:
            x = newton_step(f, x)
    return x


# -- the Certify loop -----------------------------------------------------------


@dataclass
class CertReport:
    outcome: Outcome
    trace: list[CertBounds] = field(default_factory=list)
    iterations: int = 0
    point: tuple = ()
    note: str = ""

    @property
    def bounds(self) -> CertBounds | None:
        return self.trace[-1] if self.trace else None

    @property
    def resolved(self) -> bool:
        return self.outcome in (Outcome.IN_V, Outcome.NOT_IN_V)


def certify_in_V(
    f: PolynomialSystem,
    x,
    V: InvariantSetSpec,
    max_iters: int = DEFAULT_MAX_ITERS,
    round_bits: int | None = None,
) -> CertReport:
    """Decide whether the root associated with x lies in V.

    The input must pass the alpha test.  Each round tests delta > 2 beta
    (root outside V) and then 100 alpha < 3 with 20 delta gamma < 1 (root in
    V); otherwise x moves to N_f(x).  With ``round_bits`` the new iterate is
    rounded to a dyadic grid whose resolution doubles every round; a rounded
    point is used only when it is itself certified to share the root of the
    exact Newton iterate, otherwise the exact iterate is kept.
    """
    _check_dim(x, V)
    data = analyze(f, x)
    trace: list[CertBounds] = []
    bits = round_bits
    it = 0
    while True:
        b = data.bounds(delta_sq(data.x, V))
        trace.append(b)
        if it == 0 and not b.approximate():
            raise NotAnApproximateSolution(
                f"16 alpha^2 = {float(16 * b.alpha_sq_upper):.3e} is not below T^2 = {float(_APPROX_THRESHOLD_SQ):.6f}"
            )
        excluded, included = b.excludes(), b.includes()
        if excluded and included:
            raise AssertionError("root certified both inside and outside V; the certificate is inconsistent")
        if excluded:
            return CertReport(Outcome.NOT_IN_V, trace, it, data.x)
        if included:
            return CertReport(Outcome.IN_V, trace, it, data.x)
        if it >= max_iters:
            return CertReport(Outcome.UNRESOLVED, trace, it, data.x, note=f"undecided after {it} Newton steps")
        it += 1
        if bits:
            data = _rounded_step(f, data, bits) or analyze(f, data.newton_point())
            bits *= 2
        else:
            data = analyze(f, data.newton_point())


def _rounded_step(f: PolynomialSystem, prev: NewtonData, bits: int) -> NewtonData | None:
    y = prev.newton_point_rounded(bits)
    try:
        data = analyze(f, y)
    except SingularJacobian:
        return None
    dist = norm_sq(exact.sub(y, prev.newton_point()))
    if data.bounds().strong() and 400 * dist * data.gamma_sq_upper < 1:
        return data
    return None


def certify_report(
    f: PolynomialSystem,
    x,
    V: InvariantSetSpec | None,
    max_iters: int = DEFAULT_MAX_ITERS,
    round_bits: int | None = None,
) -> CertReport:
    """Like :func:`certify_in_V` but every failure mode becomes an outcome.

    With ``V=None`` only the alpha test runs (outcome ApproxSolutionOnly).
    """
    x = exact.vector(x)
    try:
        if V is None:
            ok, b = is_approximate_solution(f, x)
            if ok:
                return CertReport(Outcome.APPROX_ONLY, [b], 0, x)
            return CertReport(Outcome.UNRESOLVED, [b], 0, x, note="not certified as an approximate solution")
        return certify_in_V(f, x, V, max_iters=max_iters, round_bits=round_bits)
    except SingularJacobian as exc:
        return CertReport(Outcome.SINGULAR, [], 0, x, note=str(exc))
    except NotAnApproximateSolution as exc:
        data = analyze(f, x)
        delta = delta_sq(x, V) if V is not None else None
        return CertReport(Outcome.UNRESOLVED, [data.bounds(delta)], 0, x, note=f"not an approximate solution: {exc}")
