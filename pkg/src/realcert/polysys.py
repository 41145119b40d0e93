"""Sparse multivariate polynomials over Q(i) and structured systems.

A :class:`Polynomial` maps exponent tuples to nonzero Gaussian-rational
coefficients.  A :class:`PolynomialSystem` is an ordered list of polynomials
in a shared set of variables; it evaluates values and Jacobians exactly.

The structured systems handled here have the block shape

    f(a, b_1..b_k, c_1..c_l, d_1..d_l) = [g(a); p(a, b_i); p(a, c_j); p(a, d_j)]

with a in C^m, every other block in C^q, g: C^m -> C^u and p: C^(m+q) -> C^w.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import exact
from .errors import DegreeZeroPolynomial, DimensionMismatch, ParseError, StructureArithmetic
from .exact import GaussianRational, ZERO, common_denominator

Exponent = tuple  # tuple[int, ...]


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables."""

    __slots__ = ("nvars", "terms", "_degree", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, object] | Iterable[tuple[Exponent, object]] = ()):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, GaussianRational] = {}
        for exp, coef in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise DimensionMismatch(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            coef = GaussianRational.coerce(coef)
            acc[exp] = acc[exp] + coef if exp in acc else coef
        self.nvars = nvars
        self.terms = {e: c for e, c in acc.items() if not c.is_zero()}
        self._degree = max((sum(e) for e in self.terms), default=-1)
        self._hash = None

    @classmethod
    def constant(cls, nvars: int, value) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Polynomial":
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): 1})

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return self._degree

    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[int]:
        """Indices of variables that appear with a positive exponent."""
        used = set()
        for exp in self.terms:
            used.update(i for i, e in enumerate(exp) if e)
        return used

    def has_real_coefficients(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def _check(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise DimensionMismatch(f"polynomials in {self.nvars} and {other.nvars} variables")

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return self + Polynomial.constant(self.nvars, other)
        self._check(other)
        return Polynomial(self.nvars, list(self.terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = GaussianRational.coerce(other)
            return Polynomial(self.nvars, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: list[tuple[Exponent, GaussianRational]] = []
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out.append((tuple(a + b for a, b in zip(e1, e2)), c1 * c2))
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Polynomial.constant(self.nvars, 1)
        for _ in range(k):
            result = result * self
        return result

    def derivative(self, index: int) -> "Polynomial":
        out = {}
        for exp, coef in self.terms.items():
            e = exp[index]
            if e:
                new = list(exp)
                new[index] = e - 1
                out[tuple(new)] = coef * e
        return Polynomial(self.nvars, out)

    def rename(self, mapping: Sequence[int], nvars: int) -> "Polynomial":
        """Move variable i to index ``mapping[i]`` in an ``nvars``-variable ring."""
        if len(mapping) != self.nvars:
            raise DimensionMismatch("mapping must cover every variable")
        out = {}
        for exp, coef in self.terms.items():
            new = [0] * nvars
            for i, e in enumerate(exp):
                if e:
                    new[mapping[i]] += e
            out[tuple(new)] = coef
        return Polynomial(nvars, out)

    def evaluate(self, x: Sequence) -> GaussianRational:
        if len(x) != self.nvars:
            raise DimensionMismatch(f"point has {len(x)} coordinates, polynomial has {self.nvars} variables")
        x = [GaussianRational.coerce(v) for v in x]
        total = ZERO
        for exp, coef in self.terms.items():
            term = coef
            for xi, e in zip(x, exp):
                if e:
                    term = term * xi ** e
            total = total + term
        return total

    def weyl_norm_sq(self) -> Fraction:
        """Bombieri-Weyl norm squared of the homogenization to this degree."""
        d = self.degree
        if d < 1:
            raise DegreeZeroPolynomial("Weyl norm needs degree >= 1")
        fd = math.factorial(d)
        total = Fraction(0)
        for exp, coef in self.terms.items():
            w = math.factorial(d - sum(exp))
            for e in exp:
                w *= math.factorial(e)
            total += coef.abs_sq() * Fraction(w, fd)
        return total

    def sorted_terms(self) -> list[tuple[Exponent, GaussianRational]]:
        # graded reverse order: highest total degree first, then lexicographic
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def __repr__(self):
        return f"Polynomial({self.nvars}, {len(self.terms)} terms, degree {self.degree})"

    def to_string(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for exp, coef in self.sorted_terms():
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, exp) if e)
            c = f"({coef})"
            parts.append(f"{c}*{mono}" if mono else c)
        return " + ".join(parts)


class _Compiled:
    """Integer form of a polynomial: value = S / (den * D**degree) for a point
    whose coordinates share the common denominator D."""

    __slots__ = ("degree", "den", "terms")

    def __init__(self, poly: Polynomial):
        self.degree = max(poly.degree, 0)
        self.den = common_denominator(poly.terms.values())
        self.terms = []
        for exp, c in poly.terms.items():
            cr = c.re.numerator * (self.den // c.re.denominator)
            ci = c.im.numerator * (self.den // c.im.denominator)
            sparse = tuple((i, e) for i, e in enumerate(exp) if e)
            self.terms.append((cr, ci, sparse, self.degree - sum(exp)))


class _PointTables:
    """Memoized Gaussian-integer powers of a point's scaled coordinates."""

    def __init__(self, x: Sequence[GaussianRational]):
        self.D = common_denominator(x)
        D = self.D
        self.base = [
            (z.re.numerator * (D // z.re.denominator), z.im.numerator * (D // z.im.denominator)) for z in x
        ]
        self.powers = [[(1, 0), b] for b in self.base]
        self.dpow = [1, D]

    def power(self, i: int, e: int) -> tuple[int, int]:
        table = self.powers[i]
        while len(table) <= e:
            ar, ai = table[-1]
            br, bi = self.base[i]
            table.append((ar * br - ai * bi, ar * bi + ai * br))
        return table[e]

    def dpower(self, e: int) -> int:
        table = self.dpow
        while len(table) <= e:
            table.append(table[-1] * self.D)
        return table[e]

    def numerator(self, comp: _Compiled) -> tuple[int, int]:
        sr = si = 0
        for cr, ci, sparse, defect in comp.terms:
            mr, mi = cr, ci
            for i, e in sparse:
                pr, pi = self.power(i, e)
                mr, mi = mr * pr - mi * pi, mr * pi + mi * pr
            if defect:
                dp = self.dpower(defect)
                mr *= dp
                mi *= dp
            sr += mr
            si += mi
        return sr, si

    def value(self, comp: _Compiled) -> GaussianRational:
        sr, si = self.numerator(comp)
        den = comp.den * self.dpower(comp.degree)
        return GaussianRational(Fraction(sr, den), Fraction(si, den))


class PolynomialSystem:
    """Ordered polynomials in a common list of named variables."""

    def __init__(self, polys: Sequence[Polynomial], names: Sequence[str] | None = None, nvars: int | None = None):
        polys = tuple(polys)
        if nvars is None:
            if polys:
                nvars = polys[0].nvars
            elif names is not None:
                nvars = len(names)
            else:
                raise ValueError("cannot infer the variable count of an empty system")
        for i, p in enumerate(polys):
            if p.nvars != nvars:
                raise DimensionMismatch(f"polynomial {i} has {p.nvars} variables, expected {nvars}")
        if names is None:
            names = [f"x{i + 1}" for i in range(nvars)]
        if len(names) != nvars:
            raise DimensionMismatch(f"{len(names)} names for {nvars} variables")
        self.polys = polys
        self.names = tuple(names)
        self.nvars = nvars
        self._compiled = None
        self._jac_compiled = None
        self._weyl = None

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __getitem__(self, i):
        return self.polys[i]

    def __eq__(self, other):
        if not isinstance(other, PolynomialSystem):
            return NotImplemented
        return self.nvars == other.nvars and self.polys == other.polys

    def __hash__(self):
        return hash((self.nvars, self.polys))

    def __repr__(self):
        return f"PolynomialSystem({len(self.polys)} polynomials, {self.nvars} variables, degrees {self.degrees})"

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(p.degree for p in self.polys)

    def is_square(self) -> bool:
        return len(self.polys) == self.nvars

    def has_real_coefficients(self) -> bool:
        return all(p.has_real_coefficients() for p in self.polys)

    def __add__(self, other: "PolynomialSystem") -> "PolynomialSystem":
        if len(self) != len(other) or self.nvars != other.nvars:
            raise DimensionMismatch("systems differ in shape")
        return PolynomialSystem([p + q for p, q in zip(self.polys, other.polys)], self.names)

    def scaled(self, c) -> "PolynomialSystem":
        return PolynomialSystem([p * c for p in self.polys], self.names)

    def _ensure_compiled(self):
        if self._compiled is None:
            self._compiled = [_Compiled(p) for p in self.polys]
        return self._compiled

    def _ensure_jacobian(self):
        if self._jac_compiled is None:
            self._jac_compiled = [[_Compiled(p.derivative(j)) for j in range(self.nvars)] for p in self.polys]
        return self._jac_compiled

    def _tables(self, x) -> _PointTables:
        if len(x) != self.nvars:
            raise DimensionMismatch(f"point has {len(x)} coordinates, system has {self.nvars} variables")
        return _PointTables([GaussianRational.coerce(v) for v in x])

    def evaluate(self, x: Sequence) -> tuple[GaussianRational, ...]:
        """Exact f(x)."""
        tables = self._tables(x)
        return tuple(tables.value(c) for c in self._ensure_compiled())

    def jacobian(self, x: Sequence) -> tuple[tuple[GaussianRational, ...], ...]:
        """Exact Df(x); derivative polynomials are built once and reused."""
        tables = self._tables(x)
        return tuple(tuple(tables.value(c) for c in row) for row in self._ensure_jacobian())

    def evaluate_with_jacobian(self, x: Sequence):
        tables = self._tables(x)
        values = tuple(tables.value(c) for c in self._ensure_compiled())
        jac = tuple(tuple(tables.value(c) for c in row) for row in self._ensure_jacobian())
        return values, jac

    def weyl_norm_sq(self) -> Fraction:
        """Sum of the Bombieri-Weyl norms squared of all component polynomials."""
        if self._weyl is None:
            self._weyl = sum((p.weyl_norm_sq() for p in self.polys), Fraction(0))
        return self._weyl


def evaluate(f: PolynomialSystem, x) -> tuple[GaussianRational, ...]:
    return f.evaluate(x)


def jacobian(f: PolynomialSystem, x):
    return f.jacobian(x)


def weyl_norm_sq(f: PolynomialSystem) -> Fraction:
    return f.weyl_norm_sq()


# -- block structure ----------------------------------------------------------


@dataclass(frozen=True)
class BlockStructure:
    """Block counts (m, k, l, q, u, w) of a structured system."""

    m: int
    k: int
    l: int  # noqa: E741
    q: int
    u: int
    w: int

    def __post_init__(self):
        for name in ("m", "k", "l", "q", "u", "w"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def nblocks(self) -> int:
        return self.k + 2 * self.l

    @property
    def nvars(self) -> int:
        return self.m + self.nblocks * self.q

    @property
    def npolys(self) -> int:
        return self.u + self.nblocks * self.w

    def arithmetic_problems(self) -> list[str]:
        problems = []
        if self.u > self.m:
            problems.append(f"u = {self.u} exceeds m = {self.m}")
        if self.nvars != self.npolys:
            problems.append(
                f"m + (k+2l)q = {self.nvars} differs from u + (k+2l)w = {self.npolys}"
            )
        return problems

    def is_consistent(self) -> bool:
        return not self.arithmetic_problems()

    def block_slices(self) -> dict[str, list[range]]:
        """Variable index ranges of the a-block and every b, c and d block."""
        m, q = self.m, self.q
        starts = [m + j * q for j in range(self.nblocks)]
        ranges = [range(s, s + q) for s in starts]
        return {
            "a": [range(0, m)],
            "b": ranges[: self.k],
            "c": ranges[self.k : self.k + self.l],
            "d": ranges[self.k + self.l :],
        }

    @classmethod
    def parse(cls, text: str, u: int | None = None, w: int | None = None) -> "BlockStructure":
        parts = [int(t) for t in text.replace(" ", "").split(",") if t]
        if len(parts) == 6:
            return cls(*parts)
        if len(parts) != 4:
            raise ValueError("structure must be m,k,l,q or m,k,l,q,u,w")
        if u is None or w is None:
            raise ValueError("u and w are required when only m,k,l,q are given")
        return cls(*parts, u, w)

    @classmethod
    def infer(cls, f: PolynomialSystem, m: int, k: int, l: int, q: int) -> "BlockStructure":  # noqa: E741
        """Complete (m, k, l, q) from the shape of f.

        u is taken as the count of leading polynomials using only the first
        m variables (capped so that the rest splits into k+2l equal blocks).
        """
        nb = k + 2 * l
        n = len(f)
        if nb == 0:
            return cls(m, k, l, q, n, 0)
        lead = 0
        for p in f.polys:
            if p.variables() <= set(range(m)) and lead < min(m, n):
                lead += 1
            else:
                break
        for u in range(lead, -1, -1):
            if (n - u) % nb == 0:
                return cls(m, k, l, q, u, (n - u) // nb)
        return cls(m, k, l, q, 0, n // nb)


@dataclass
class ValidationReport:
    ok: bool
    checks: list[tuple[str, bool, str]] = field(default_factory=list)
    first_offending: int | None = None

    def render(self) -> str:
        lines = [f"structure: {'PASS' if self.ok else 'FAIL'}"]
        for name, passed, message in self.checks:
            lines.append(f"  [{'pass' if passed else 'FAIL'}] {name}: {message}")
        if self.first_offending is not None:
            lines.append(f"  first offending polynomial: {self.first_offending}")
        return "\n".join(lines)


def _block_mapping(bs: BlockStructure, block: int) -> list[int]:
    """Index map from the (a, y) variables of p to the variables of block ``block``."""
    start = bs.m + block * bs.q
    return list(range(bs.m)) + list(range(start, start + bs.q))


def validate_block_structure(f: PolynomialSystem, bs: BlockStructure) -> ValidationReport:
    """Check that f has the repeated-block shape described by ``bs``."""
    report = ValidationReport(ok=True)

    def fail(name, message, index=None):
        report.ok = False
        report.checks.append((name, False, message))
        if index is not None and report.first_offending is None:
            report.first_offending = index

    problems = bs.arithmetic_problems()
    if problems:
        fail("counts", "; ".join(problems))
    else:
        report.checks.append(("counts", True, f"u <= m and {bs.nvars} = {bs.npolys}"))

    if f.nvars != bs.nvars or len(f) != bs.npolys:
        fail(
            "shape",
            f"system is {len(f)}x{f.nvars}, structure implies {bs.npolys}x{bs.nvars}",
        )
        return report
    report.checks.append(("shape", True, f"{len(f)} polynomials in {f.nvars} variables"))

    a_vars = set(range(bs.m))
    bad = next((i for i in range(bs.u) if not f[i].variables() <= a_vars), None)
    if bad is None:
        report.checks.append(("g-block", True, f"first {bs.u} polynomials use only a-variables"))
    else:
        fail("g-block", f"polynomial {bad} uses variables outside the a-block", bad)

    nb = bs.nblocks
    if nb and bs.w:
        # template: block 0 expressed in the (a, y) variables of p
        inverse = {v: i for i, v in enumerate(_block_mapping(bs, 0))}
        template = []
        ok = True
        for r in range(bs.w):
            idx = bs.u + r
            used = f[idx].variables()
            if not used <= set(inverse):
                fail("p-blocks", f"polynomial {idx} uses variables outside its block", idx)
                ok = False
                break
            template.append(_restrict(f[idx], inverse, bs.m + bs.q))
        if ok:
            for j in range(1, nb):
                mapping = _block_mapping(bs, j)
                for r in range(bs.w):
                    idx = bs.u + j * bs.w + r
                    expected = template[r].rename(mapping, f.nvars)
                    if f[idx] != expected:
                        fail("p-blocks", f"polynomial {idx} is not the block-{j} copy of polynomial {bs.u + r}", idx)
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            report.checks.append(("p-blocks", True, f"{nb} identical copies of a {bs.w}-polynomial block"))
    return report


def _restrict(poly: Polynomial, inverse: Mapping[int, int], nvars: int) -> Polynomial:
    out = {}
    for exp, coef in poly.terms.items():
        new = [0] * nvars
        for i, e in enumerate(exp):
            if e:
                new[inverse[i]] = e
        out[tuple(new)] = coef
    return Polynomial(nvars, out)


def assemble_structured(
    g: PolynomialSystem, p: PolynomialSystem, k: int, l: int  # noqa: E741
) -> tuple[PolynomialSystem, BlockStructure]:
    """Build f = [g(a); p(a,b_i); p(a,c_j); p(a,d_j)] with fresh variable blocks."""
    m = g.nvars
    q = p.nvars - m
    if q < 0:
        raise StructureArithmetic(f"p has {p.nvars} variables, fewer than m = {m}")
    bs = BlockStructure(m, k, l, q, len(g), len(p))
    problems = bs.arithmetic_problems()
    if problems:
        raise StructureArithmetic("; ".join(problems))
    n = bs.nvars
    polys = [poly.rename(list(range(m)), n) for poly in g.polys]
    block_names = []
    labels = [f"b{i + 1}" for i in range(k)] + [f"c{i + 1}" for i in range(l)] + [f"d{i + 1}" for i in range(l)]
    ynames = p.names[m:]
    for j, label in enumerate(labels):
        mapping = _block_mapping(bs, j)
        polys.extend(poly.rename(mapping, n) for poly in p.polys)
        block_names.extend(f"{label}_{nm}" for nm in ynames)
    return PolynomialSystem(polys, list(g.names) + block_names, n), bs


# -- file formats ---------------------------------------------------------------


def _content_lines(text: str):
    """Yield (line_number, tokens) for every line holding data; comments stripped."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield lineno, tokens


def _ints(tokens, lineno, expected, what):
    if len(tokens) != expected:
        raise ParseError(f"{what}: expected {expected} integer tokens, found {len(tokens)}", lineno)
    try:
        return [exact.parse_int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"{what}: non-integer token in {' '.join(tokens)!r}", lineno) from None


def _gaussian(vals, lineno) -> GaussianRational:
    rn, rd, im_n, im_d = vals
    if rd <= 0 or im_d <= 0:
        raise ParseError("denominators must be positive", lineno)
    return GaussianRational(Fraction(rn, rd), Fraction(im_n, im_d))


def _as_text(text) -> str:
    if isinstance(text, (bytes, bytearray)):
        return text.decode("utf-8")
    return text


def parse_system(text, names: Sequence[str] | None = None) -> PolynomialSystem:
    """Read a system from the line-oriented integer format.

    Header ``N M``, then for each polynomial a term count ``T`` followed by T
    lines ``re_num re_den im_num im_den e1 ... eM``.  ``#`` begins a comment.
    """
    lines = list(_content_lines(_as_text(text)))
    if not lines:
        raise ParseError("empty system file", 1)
    it = iter(lines)
    lineno, tokens = next(it)
    npolys, nvars = _ints(tokens, lineno, 2, "header")
    if npolys < 0 or nvars < 0:
        raise ParseError("counts must be non-negative", lineno)
    polys = []
    for pi in range(npolys):
        try:
            lineno, tokens = next(it)
        except StopIteration:
            raise ParseError(f"missing polynomial {pi + 1} of {npolys}", lines[-1][0]) from None
        (nterms,) = _ints(tokens, lineno, 1, f"term count of polynomial {pi + 1}")
        if nterms < 0:
            raise ParseError("term count must be non-negative", lineno)
        terms = []
        for _ in range(nterms):
            try:
                lineno, tokens = next(it)
            except StopIteration:
                raise ParseError(f"polynomial {pi + 1} ends early", lines[-1][0]) from None
            if len(tokens) != 4 + nvars:
                raise ParseError(
                    f"term needs 4 coefficient tokens and {nvars} exponents, found {len(tokens)} tokens", lineno
                )
            vals = _ints(tokens, lineno, 4 + nvars, "term")
            if any(e < 0 for e in vals[4:]):
                raise ParseError("negative exponent", lineno)
            terms.append((tuple(vals[4:]), _gaussian(vals[:4], lineno)))
        polys.append(Polynomial(nvars, terms))
    extra = next(it, None)
    if extra is not None:
        raise ParseError("unexpected content after the last polynomial", extra[0])
    return PolynomialSystem(polys, names, nvars)


def _fmt_coef(c: GaussianRational) -> str:
    return " ".join(exact.int_to_str(v) for v in (c.re.numerator, c.re.denominator, c.im.numerator, c.im.denominator))


def serialize_system(f: PolynomialSystem) -> str:
    out = [f"{len(f)} {f.nvars}"]
    for p in f.polys:
        out.append(str(len(p.terms)))
        for exp, coef in p.sorted_terms():
            out.append(_fmt_coef(coef) + "".join(f" {e}" for e in exp))
    return "\n".join(out) + "\n"


def parse_points(text) -> list[tuple[GaussianRational, ...]]:
    """Read a points file: header ``K M`` then K blocks of M coordinate lines."""
    lines = list(_content_lines(_as_text(text)))
    if not lines:
        raise ParseError("empty points file", 1)
    lineno, tokens = lines[0]
    count, dim = _ints(tokens, lineno, 2, "header")
    if count < 0 or dim < 0:
        raise ParseError("counts must be non-negative", lineno)
    body = lines[1:]
    if len(body) != count * dim:
        where = body[-1][0] if body else lineno
        raise ParseError(f"expected {count * dim} coordinate lines, found {len(body)}", where)
    points = []
    for i in range(count):
        coords = []
        for lineno, tokens in body[i * dim : (i + 1) * dim]:
            coords.append(_gaussian(_ints(tokens, lineno, 4, "coordinate"), lineno))
        points.append(tuple(coords))
    return points


def serialize_points(points: Sequence[Sequence[GaussianRational]], dim: int | None = None) -> str:
    points = [tuple(GaussianRational.coerce(z) for z in p) for p in points]
    if dim is None:
        dim = len(points[0]) if points else 0
    for p in points:
        if len(p) != dim:
            raise DimensionMismatch(f"point of dimension {len(p)} in a file of dimension {dim}")
    blocks = ["\n".join(_fmt_coef(z) for z in p) for p in points]
    return f"{len(points)} {dim}\n" + ("\n" + "\n\n".join(blocks) + "\n" if blocks else "")
