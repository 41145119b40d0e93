"""Exact scalars, vectors and matrices over the Gaussian rationals Q(i).

Rationals are :class:`fractions.Fraction`, which is always normalized
(lowest terms, positive denominator, zero is 0/1).  Vectors are tuples of
:class:`GaussianRational` and matrices are tuples of row tuples, so every
value is immutable once built.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from gmpy2 import mpz

from .errors import DimensionMismatch, NegativeInput, SingularMatrix

Rational = Fraction


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, float):
        # exact binary value of the float
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


class GaussianRational:
    """Complex number re + im*i with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            return cls(Fraction(value.real), Fraction(value.imag))
        return cls(value)

    @classmethod
    def from_complex(cls, value: complex) -> "GaussianRational":
        return cls(Fraction(value.real), Fraction(value.imag))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return self == GaussianRational.from_complex(other)
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        n = other.abs_sq()
        if not n:
            raise ZeroDivisionError("division by zero Gaussian rational")
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational((a * c + b * d) / n, (b * c - a * d) / n)

    def __rtruediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (ONE / self) ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _coerce_or_none(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    if isinstance(value, complex):
        return GaussianRational.from_complex(value)
    return None


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)

CVector = tuple  # tuple[GaussianRational, ...]
CMatrix = tuple  # tuple[tuple[GaussianRational, ...], ...]


def vector(values: Iterable) -> CVector:
    return tuple(GaussianRational.coerce(v) for v in values)


def matrix(rows: Iterable[Iterable]) -> CMatrix:
    out = tuple(vector(r) for r in rows)
    if out and len({len(r) for r in out}) != 1:
        raise DimensionMismatch("ragged matrix rows")
    return out


def identity(n: int) -> CMatrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def shape(a: CMatrix) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def conj_vector(v: Sequence[GaussianRational]) -> CVector:
    return tuple(z.conj() for z in v)


def conj_matrix(a: CMatrix) -> CMatrix:
    return tuple(conj_vector(r) for r in a)


def add(u, v) -> CVector:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v) -> CVector:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths {len(u)} and {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v) -> CVector:
    c = GaussianRational.coerce(c)
    return tuple(c * z for z in v)


def real_part(v) -> CVector:
    return tuple(GaussianRational(z.re) for z in v)


def imag_part(v) -> CVector:
    return tuple(GaussianRational(z.im) for z in v)


def norm_sq(v: Sequence[GaussianRational]) -> Fraction:
    """Squared Euclidean norm, sum of |v_i|^2, as an exact rational."""
    total = Fraction(0)
    for z in v:
        total += z.re * z.re + z.im * z.im
    return total


def mat_vec(a: CMatrix, v: Sequence[GaussianRational]) -> CVector:
    if a and len(a[0]) != len(v):
        raise DimensionMismatch(f"matrix has {len(a[0])} columns, vector has {len(v)}")
    out = []
    for row in a:
        acc = ZERO
        for x, y in zip(row, v):
            acc = acc + x * y
        out.append(acc)
    return tuple(out)


def mat_mul(a: CMatrix, b: CMatrix) -> CMatrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch("inner dimensions differ")
    cols = list(zip(*b))
    return tuple(tuple(_dot(row, col) for col in cols) for row in a)


def _dot(u, v):
    acc = ZERO
    for x, y in zip(u, v):
        acc = acc + x * y
    return acc


def transpose(a: CMatrix) -> CMatrix:
    return tuple(zip(*a))


def common_denominator(values: Iterable[GaussianRational]) -> int:
    den = 1
    for z in values:
        den = math.lcm(den, z.re.denominator, z.im.denominator)
    return den


# -- fraction-free elimination over Z[i] ------------------------------------


def _gauss_int_row(row: Sequence[GaussianRational]) -> tuple[list, list]:
    # elimination runs on GMP integers; results are converted back to int
    den = common_denominator(row)
    re = [mpz(z.re.numerator * (den // z.re.denominator)) for z in row]
    im = [mpz(z.im.numerator * (den // z.im.denominator)) for z in row]
    return re, im


def _exact_div(nr: int, ni: int, cr: int, ci: int, cn: int) -> tuple[int, int]:
    # (nr + ni i) / (cr + ci i) with cn = cr^2 + ci^2, known to be exact
    if ci == 0:
        return nr // cr, ni // cr
    return (nr * cr + ni * ci) // cn, (ni * cr - nr * ci) // cn


def _bareiss(mr: list[list[int]], mi: list[list[int]], n: int) -> None:
    """In-place Bareiss elimination of the first n columns of an n-row matrix.

    On return rows are upper triangular in those columns and mr/mi[n-1][n-1]
    is the determinant of the row-permuted integer matrix.
    """
    ncols = len(mr[0])
    pr, pi, pn = 1, 0, 1
    for k in range(n):
        best, best_size = -1, None
        for i in range(k, n):
            ar, ai = mr[i][k], mi[i][k]
            if ar or ai:
                size = max(abs(ar), abs(ai)).bit_length()
                if best_size is None or size < best_size:
                    best, best_size = i, size
        if best < 0:
            raise SingularMatrix(f"no nonzero pivot in column {k}")
        if best != k:
            mr[k], mr[best] = mr[best], mr[k]
            mi[k], mi[best] = mi[best], mi[k]
        kr, ki = mr[k], mi[k]
        qr, qi = kr[k], ki[k]
        for i in range(k + 1, n):
            rr, ri = mr[i], mi[i]
            ar, ai = rr[k], ri[k]
            if not ar and not ai:
                # row already reduced in this column; still rescale by q/prev
                for j in range(k + 1, ncols):
                    xr, xi = rr[j], ri[j]
                    nr = qr * xr - qi * xi
                    ni = qr * xi + qi * xr
                    rr[j], ri[j] = _exact_div(nr, ni, pr, pi, pn)
                continue
            for j in range(k + 1, ncols):
                xr, xi = rr[j], ri[j]
                yr, yi = kr[j], ki[j]
                nr = (qr * xr - qi * xi) - (ar * yr - ai * yi)
                ni = (qr * xi + qi * xr) - (ar * yi + ai * yr)
                rr[j], ri[j] = _exact_div(nr, ni, pr, pi, pn)
            rr[k] = ri[k] = 0
        pr, pi = qr, qi
        pn = pr * pr + pi * pi


class FractionFreeSolution:
    """Solutions of A X = B kept as Gaussian integers over one common divisor.

    Column c of X equals ``(yr[c][i] + yi[c][i] i) / (dr + di i)``.  The
    integers may be GMP integers; the accessors below return plain ints.
    """

    __slots__ = ("dr", "di", "yr", "yi")

    def __init__(self, dr, di, yr, yi):
        self.dr, self.di, self.yr, self.yi = dr, di, yr, yi

    @property
    def det_norm(self) -> int:
        return int(self.dr * self.dr + self.di * self.di)

    def column_norm_sq_numerator(self, c: int) -> int:
        """|det|^2 * ||x_c||^2, an exact integer."""
        return int(sum((a * a + b * b for a, b in zip(self.yr[c], self.yi[c])), mpz(0)))

    def column(self, c: int) -> CVector:
        dr, di = self.dr, self.di
        dn = self.det_norm
        return tuple(
            GaussianRational(Fraction(int(a * dr + b * di), dn), Fraction(int(b * dr - a * di), dn))
            for a, b in zip(self.yr[c], self.yi[c])
        )

    def columns(self) -> list[CVector]:
        return [self.column(c) for c in range(len(self.yr))]


def solve_fraction_free(a: CMatrix, b_columns: Sequence[Sequence[GaussianRational]]) -> FractionFreeSolution:
    """Bareiss elimination over Z[i] for several right-hand sides."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise DimensionMismatch("coefficient matrix must be square")
    r = len(b_columns)
    for col in b_columns:
        if len(col) != n:
            raise DimensionMismatch(f"right-hand side has length {len(col)}, expected {n}")
    if n == 0:
        return FractionFreeSolution(1, 0, [[] for _ in range(r)], [[] for _ in range(r)])
    mr, mi = [], []
    for i in range(n):
        row = list(a[i]) + [col[i] for col in b_columns]
        re, im = _gauss_int_row(row)
        mr.append(re)
        mi.append(im)
    _bareiss(mr, mi, n)
    dr, di = mr[n - 1][n - 1], mi[n - 1][n - 1]
    all_yr, all_yi = [], []
    for c in range(r):
        col = n + c
        yr = [0] * n
        yi = [0] * n
        for i in range(n - 1, -1, -1):
            br, bi = mr[i][col], mi[i][col]
            nr = dr * br - di * bi
            ni = dr * bi + di * br
            rowr, rowi = mr[i], mi[i]
            for j in range(i + 1, n):
                ur, ui = rowr[j], rowi[j]
                if ur or ui:
                    nr -= ur * yr[j] - ui * yi[j]
                    ni -= ur * yi[j] + ui * yr[j]
            ur, ui = rowr[i], rowi[i]
            yr[i], yi[i] = _exact_div(nr, ni, ur, ui, ur * ur + ui * ui)
        all_yr.append(yr)
        all_yi.append(yi)
    return FractionFreeSolution(dr, di, all_yr, all_yi)


def solve_linear_many(a: CMatrix, b_columns: Sequence[Sequence[GaussianRational]]) -> list[CVector]:
    """Solve A X = B exactly for several right-hand sides at once.

    ``b_columns`` is a sequence of right-hand-side vectors; the result is the
    list of corresponding solution vectors.
    """
    return solve_fraction_free(a, b_columns).columns()


def solve_linear(a: CMatrix, b: Sequence[GaussianRational]) -> CVector:
    """Exact solution x of A x = b by fraction-free elimination.

    Raises :class:`SingularMatrix` when A is singular.
    """
    return solve_linear_many(a, [b])[0]


def inverse(a: CMatrix) -> CMatrix:
    n = len(a)
    cols = solve_linear_many(a, [[ONE if i == j else ZERO for i in range(n)] for j in range(n)])
    return tuple(zip(*cols))


# -- square roots and rounding ----------------------------------------------


def sqrt_bracket(r, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Dyadic bracket lo <= sqrt(r) <= hi with hi - lo <= 2**-bits * max(1, hi).

    The bracket is also tight relative to sqrt(r) when r is small, so tiny
    quantities keep ``bits`` significant bits.
    """
    r = _as_fraction(r)
    if bits < 1:
        raise ValueError("bits must be positive")
    if r < 0:
        raise NegativeInput(f"square root of negative rational {r}")
    if r == 0:
        return Fraction(0), Fraction(0)
    p, q = r.numerator, r.denominator
    # extra bits so that the bracket is relatively tight for small r
    log2_sqrt = (p.bit_length() - q.bit_length()) // 2
    k = bits + max(0, -log2_sqrt) + 2
    s = math.isqrt((p << (2 * k)) // q)
    lo = Fraction(s, 1 << k)
    if lo * lo == r:
        return lo, lo
    return lo, Fraction(s + 1, 1 << k)


def dyadic_round_rational(x, bits: int) -> Fraction:
    x = _as_fraction(x)
    scale_ = 1 << bits
    # floor(x * 2^bits + 1/2)
    n = (2 * x.numerator * scale_ + x.denominator) // (2 * x.denominator)
    return Fraction(n, scale_)


def dyadic_round(z, bits: int) -> GaussianRational:
    """Nearest complex dyadic with denominators dividing 2**bits (half-up)."""
    if bits < 1:
        raise ValueError("bits must be positive")
    z = GaussianRational.coerce(z)
    return GaussianRational(dyadic_round_rational(z.re, bits), dyadic_round_rational(z.im, bits))


def dyadic_round_vector(v: Sequence[GaussianRational], bits: int) -> CVector:
    return tuple(dyadic_round(z, bits) for z in v)


def to_decimal(r, digits: int = 20, rounding: str = "down") -> str:
    """Scientific-notation string of r with ``digits`` significant digits.

    ``rounding`` is "down" (toward -inf) or "up" (toward +inf), so a pair of
    calls renders a certified enclosure of r.
    """
    r = _as_fraction(r)
    if r == 0:
        return "0"
    if rounding not in ("down", "up"):
        raise ValueError("rounding must be 'down' or 'up'")
    neg = r < 0
    a = -r if neg else r
    # for negative values directed rounding flips on the magnitude
    mag_up = (rounding == "up") != neg
    e = _floor_log10(a)
    shift = digits - 1 - e
    scaled = a * (Fraction(10) ** shift)
    m = math.floor(scaled) if not mag_up else math.ceil(scaled)
    if m >= 10 ** digits:
        m //= 10
        e += 1
    ds = int_to_str(m).rjust(digits, "0")
    body = ds[0] + ("." + ds[1:] if digits > 1 else "")
    return f"{'-' if neg else ''}{body}e{e:+d}"


def _floor_log10(a: Fraction) -> int:
    e = mpz(a.numerator).num_digits(10) - mpz(a.denominator).num_digits(10)
    while Fraction(10) ** e > a:
        e -= 1
    while Fraction(10) ** (e + 1) <= a:
        e += 1
    return e


def int_to_str(n: int) -> str:
    """Decimal text of n, without the interpreter's digit limit."""
    return str(mpz(n))


def parse_int(token: str) -> int:
    """Inverse of :func:`int_to_str`; raises ValueError on malformed tokens."""
    try:
        return int(mpz(token.strip(), 10))
    except (TypeError, ValueError):
        raise ValueError(f"invalid integer {token!r}") from None


def parse_rational(token: str) -> Fraction:
    """Read ``p/q`` or ``p``; q must be positive."""
    num, _, den = token.partition("/")
    d = parse_int(den) if den else 1
    if d <= 0:
        raise ValueError(f"non-positive denominator in {token!r}")
    return Fraction(parse_int(num), d)


def format_rational(r) -> str:
    r = _as_fraction(r)
    return f"{int_to_str(r.numerator)}/{int_to_str(r.denominator)}"
