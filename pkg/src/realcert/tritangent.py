"""Tritangent planes of space sextics C = Q ∩ Γ in P^3.

The unknowns are a plane H = [1, h] and three tangency points X_i = [1, x_i]
with tangent directions Λ_i = [1, λ_i].  Each point contributes six
equations

    H(X_i),  q(X_i),  c(X_i),  ∇H·Λ_i,  ∇q(X_i)·Λ_i,  ∇c(X_i)·Λ_i

(gradients with respect to x), so the whole system is 18 x 18 with the
repeated-block shape (m, k, l, q, u, w) = (3, 3, 0, 5, 0, 6).  Flattened
coordinates are ordered (h, x_1, λ_1, x_2, λ_2, x_3, λ_3).
"""
from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from . import alphacert, exact
from .alphacert import CertReport, ConjPairs, FullReal, Outcome
from .errors import ParseError, SingularJacobian
from .exact import GaussianRational
from .polysys import BlockStructure, Polynomial, PolynomialSystem, assemble_structured

log = logging.getLogger(__name__)

MAX_TRITANGENTS = 120

TOTALLY_REAL = BlockStructure(3, 3, 0, 5, 0, 6)
REAL_ONE_PAIR = BlockStructure(3, 1, 1, 5, 0, 6)


def _monomials(degree: int) -> list[tuple[int, int, int, int]]:
    """Degree-``degree`` exponents of (x0..x3) in graded lexicographic order."""
    return sorted((e for e in itertools.product(range(degree + 1), repeat=4) if sum(e) == degree), reverse=True)


QUADRIC_MONOMIALS = _monomials(2)
CUBIC_MONOMIALS = _monomials(3)


@dataclass(frozen=True)
class SexticCurve:
    """Coefficients of q (10, degree-2 monomials) and c (20, degree-3), grlex order."""

    quadric: tuple
    cubic: tuple

    def __post_init__(self):
        if len(self.quadric) != 10 or len(self.cubic) != 20:
            raise ValueError("a sextic needs 10 quadric and 20 cubic coefficients")
        object.__setattr__(self, "quadric", exact.vector(self.quadric))
        object.__setattr__(self, "cubic", exact.vector(self.cubic))
        if all(z.is_zero() for z in self.quadric) or all(z.is_zero() for z in self.cubic):
            raise ValueError("quadric and cubic must both be nonzero")

    @classmethod
    def from_dicts(cls, quadric: Mapping, cubic: Mapping) -> "SexticCurve":
        for e in list(quadric) + list(cubic):
            if len(e) != 4:
                raise ValueError(f"exponent {e} is not in four variables")
        return cls(
            tuple(quadric.get(e, 0) for e in QUADRIC_MONOMIALS),
            tuple(cubic.get(e, 0) for e in CUBIC_MONOMIALS),
        )

    def is_real(self) -> bool:
        return all(z.is_real() for z in self.quadric + self.cubic)

    def quadric_poly(self) -> Polynomial:
        return Polynomial(4, zip(QUADRIC_MONOMIALS, self.quadric))

    def cubic_poly(self) -> Polynomial:
        return Polynomial(4, zip(CUBIC_MONOMIALS, self.cubic))


def parse_curve(text) -> SexticCurve:
    """Two data lines: 10 quadric then 20 cubic rational coefficients.

    A coefficient is written ``num/den`` or ``num``; a line holding exactly
    twice the expected count of plain integers is read as num den pairs.
    """
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            rows.append((lineno, tokens))
    if len(rows) != 2:
        raise ParseError(f"curve file needs 2 coefficient lines, found {len(rows)}", rows[-1][0] if rows else 1)
    coeffs = []
    for (lineno, tokens), expected in zip(rows, (10, 20)):
        coeffs.append(_parse_coeff_line(tokens, expected, lineno))
    return SexticCurve(tuple(coeffs[0]), tuple(coeffs[1]))


def _parse_coeff_line(tokens, expected, lineno):
    if len(tokens) == 2 * expected and all("/" not in t for t in tokens):
        try:
            vals = [exact.parse_int(t) for t in tokens]
        except ValueError:
            raise ParseError("non-integer token", lineno) from None
        out = []
        for num, den in zip(vals[::2], vals[1::2]):
            if den <= 0:
                raise ParseError("denominators must be positive", lineno)
            out.append(Fraction(num, den))
        return out
    if len(tokens) != expected:
        raise ParseError(f"expected {expected} coefficients, found {len(tokens)}", lineno)
    out = []
    for t in tokens:
        try:
            out.append(exact.parse_rational(t))
        except ValueError as exc:
            raise ParseError(f"bad rational token: {exc}", lineno) from None
    return out


def serialize_curve(curve: SexticCurve) -> str:
    if not curve.is_real():
        raise ValueError("the curve file format holds real coefficients only")

    def line(vals):
        return " ".join(exact.format_rational(z.re) for z in vals)

    return f"# quadric (x0^2 x0x1 ... x3^2)\n{line(curve.quadric)}\n# cubic (x0^3 x0^2x1 ... x3^3)\n{line(curve.cubic)}\n"


# -- the polynomial system ------------------------------------------------------------


def _dehomogenize(poly: Polynomial, nvars: int, xvars: Sequence[int]) -> Polynomial:
    """Set x0 = 1 and send x1..x3 to the given variable indices."""
    out = []
    for (_, e1, e2, e3), c in poly.terms.items():
        exp = [0] * nvars
        for v, e in zip(xvars, (e1, e2, e3)):
            exp[v] += e
        out.append((tuple(exp), c))
    return Polynomial(nvars, out)


def _gradient_x(poly: Polynomial) -> list[Polynomial]:
    return [poly.derivative(j) for j in (1, 2, 3)]


def block_polynomials(curve: SexticCurve) -> PolynomialSystem:
    """The six-polynomial block p(h, x, λ) in variables (h1,h2,h3,x1,x2,x3,l1,l2)."""
    n = 8
    h = [Polynomial.variable(n, i) for i in range(3)]
    lam = [Polynomial.constant(n, 1)] + [Polynomial.variable(n, i) for i in (6, 7)]
    xvars = (3, 4, 5)
    x = [Polynomial.variable(n, v) for v in xvars]
    q, c = curve.quadric_poly(), curve.cubic_poly()
    plane = 1 + sum((hi * xi for hi, xi in zip(h, x)), Polynomial(n))
    grad_h = h
    grad_q = [_dehomogenize(g, n, xvars) for g in _gradient_x(q)]
    grad_c = [_dehomogenize(g, n, xvars) for g in _gradient_x(c)]

    def along(grad):
        return sum((g * l for g, l in zip(grad, lam)), Polynomial(n))

    polys = [plane, _dehomogenize(q, n, xvars), _dehomogenize(c, n, xvars), along(grad_h), along(grad_q), along(grad_c)]
    return PolynomialSystem(polys, ["h1", "h2", "h3", "x1", "x2", "x3", "l1", "l2"])


def build_tritangent_system(curve: SexticCurve) -> tuple[PolynomialSystem, tuple[BlockStructure, BlockStructure]]:
    """The 18 x 18 system and its two structures (3,3,0,5,0,6) and (3,1,1,5,0,6)."""
    g = PolynomialSystem([], ["h1", "h2", "h3"], nvars=3)
    p = block_polynomials(curve)
    f, bs = assemble_structured(g, p, 3, 0)
    names = ["h1", "h2", "h3"]
    for i in (1, 2, 3):
        names += [f"x{i}_1", f"x{i}_2", f"x{i}_3", f"l{i}_1", f"l{i}_2"]
    return PolynomialSystem(f.polys, names, 18), (bs, REAL_ONE_PAIR)


# -- candidates -------------------------------------------------------------------------


@dataclass(frozen=True)
class TritangentCandidate:
    h: tuple
    blocks: tuple  # three (x, λ) pairs, x of length 3, λ of length 2

    def __post_init__(self):
        object.__setattr__(self, "h", exact.vector(self.h))
        blocks = tuple((exact.vector(x), exact.vector(lam)) for x, lam in self.blocks)
        if len(self.h) != 3 or len(blocks) != 3 or any(len(x) != 3 or len(lam) != 2 for x, lam in blocks):
            raise ValueError("a candidate has h in C^3 and three (x in C^3, λ in C^2) blocks")
        object.__setattr__(self, "blocks", blocks)

    def flatten(self) -> tuple:
        out = list(self.h)
        for x, lam in self.blocks:
            out += list(x) + list(lam)
        return tuple(out)

    @classmethod
    def from_flat(cls, z: Sequence) -> "TritangentCandidate":
        z = exact.vector(z)
        if len(z) != 18:
            raise ValueError(f"tritangent points have 18 coordinates, got {len(z)}")
        return cls(z[:3], tuple((z[3 + 5 * i : 6 + 5 * i], z[6 + 5 * i : 8 + 5 * i]) for i in range(3)))

    def permuted(self, order: Sequence[int]) -> "TritangentCandidate":
        return TritangentCandidate(self.h, tuple(self.blocks[i] for i in order))


def _block_key(block):
    x, lam = block
    coords = list(x) + list(lam)
    imag = sum((z.im * z.im for z in coords), Fraction(0))
    re = tuple(exact.dyadic_round_rational(z.re, 64) for z in coords)
    im = tuple(exact.dyadic_round_rational(z.im, 64) for z in coords)
    return (imag, re, im)


def canonicalize_candidate(cand: TritangentCandidate) -> TritangentCandidate:
    """Order point blocks by imaginary size, smallest first; ties by rounded coordinates."""
    order = sorted(range(3), key=lambda i: _block_key(cand.blocks[i]))
    return cand.permuted(order)


# -- classification -------------------------------------------------------------------


@dataclass
class ClassifyOptions:
    max_iters: int = alphacert.DEFAULT_MAX_ITERS
    round_bits: int | None = alphacert.DEFAULT_ROUND_BITS
    jobs: int = 1


@dataclass
class CandidateResult:
    index: int
    approx: CertReport
    beta_sq: Fraction | None = None
    representative: int | None = None
    classification: str = "dropped"
    reports: dict = field(default_factory=dict)  # set label -> CertReport


@dataclass
class ClassificationReport:
    counts: dict
    candidates: list
    dedup: dict  # input index -> representative input index

    @property
    def complete(self) -> bool:
        return self.counts["distinct_tritangents"] == MAX_TRITANGENTS and self.counts["unresolved"] == 0


def _approx_stage(args):
    f, z = args
    try:
        data = alphacert.analyze(f, z)
    except SingularJacobian as exc:
        return CertReport(Outcome.SINGULAR, [], 0, z, note=str(exc)), None
    b = data.bounds()
    if b.approximate():
        return CertReport(Outcome.APPROX_ONLY, [b], 0, data.x), data.beta_sq
    return CertReport(Outcome.UNRESOLVED, [b], 0, data.x, note="not certified as an approximate solution"), None


def _reality_stage(args):
    f, z, beta, opts = args
    reports = {}
    nonreal = any(alphacert.certify_coordinate_nonreal(f, z, j, beta) for j in range(3))
    if nonreal:
        return "nonreal", reports
    rep = alphacert.certify_report(f, z, FullReal(18), opts.max_iters, opts.round_bits)
    reports["R^18"] = rep
    if rep.outcome is Outcome.IN_V:
        return "totally_real", reports
    cand = canonicalize_candidate(TritangentCandidate.from_flat(z))
    # canonical order first, then each other block in the real slot
    orders = [(0, 1, 2), (1, 0, 2), (2, 0, 1)]
    V = ConjPairs(REAL_ONE_PAIR)
    for order in orders:
        w = cand.permuted(order).flatten()
        rep = alphacert.certify_report(f, w, V, opts.max_iters, opts.round_bits)
        reports[f"conj-pairs{order}"] = rep
        if rep.outcome is Outcome.IN_V:
            return "real_not_totally", reports
    return "unresolved", reports


def _map(fn, items, jobs):
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items, chunksize=1))
    return [fn(item) for item in items]


def classify_tritangents(
    curve: SexticCurve, candidates: Sequence, opts: ClassifyOptions | None = None
) -> ClassificationReport:
    """Certified counts of distinct, nonreal, real and totally real tritangents.

    ``candidates`` are flattened 18-coordinate points or TritangentCandidate
    objects.  Distinctness is decided on the plane coordinates h only, so
    reordered copies of one solution collapse to one representative.
    """
    opts = opts or ClassifyOptions()
    if not curve.is_real():
        raise ValueError("reality of tritangents is only meaningful for a real curve")
    f, _ = build_tritangent_system(curve)
    points = [c.flatten() if isinstance(c, TritangentCandidate) else exact.vector(c) for c in candidates]
    for i, z in enumerate(points):
        if len(z) != 18:
            raise ValueError(f"candidate {i} has {len(z)} coordinates, expected 18")

    staged = _map(_approx_stage, [(f, z) for z in points], opts.jobs)
    results = [CandidateResult(i, rep, beta) for i, (rep, beta) in enumerate(staged)]

    # serial reduction: greedy grouping by certified distinctness of h
    reps: list[CandidateResult] = []
    dedup = {}
    for r in results:
        if r.beta_sq is None:
            continue
        z = r.approx.point
        match = None
        for s in reps:
            w = s.approx.point
            if not alphacert.certify_distinct(f, z, w, (0, 1, 2), r.beta_sq, s.beta_sq):
                match = s
                break
        if match is None:
            reps.append(r)
            r.representative = r.index
        else:
            r.representative = match.index
            r.classification = "duplicate"
        dedup[r.index] = r.representative
    if len(reps) > MAX_TRITANGENTS:
        raise AssertionError(f"{len(reps)} certified-distinct tritangents exceed {MAX_TRITANGENTS}")

    stage = _map(_reality_stage, [(f, r.approx.point, r.beta_sq, opts) for r in reps], opts.jobs)
    for r, (label, reports) in zip(reps, stage):
        r.classification = label
        r.reports = reports

    counts = {
        "distinct_tritangents": len(reps),
        "nonreal": sum(r.classification == "nonreal" for r in reps),
        "totally_real": sum(r.classification == "totally_real" for r in reps),
        "real_not_totally": sum(r.classification == "real_not_totally" for r in reps),
        "unresolved": sum(r.classification == "unresolved" for r in reps),
    }
    counts["real"] = counts["totally_real"] + counts["real_not_totally"]
    assert counts["nonreal"] + counts["real"] + counts["unresolved"] == counts["distinct_tritangents"]
    return ClassificationReport(counts, results, dedup)


# -- heuristic candidate search -------------------------------------------------------


@dataclass
class SolveOptions:
    box: float = 1.0
    max_steps: int = 200
    batch: int = 2000
    refine_iters: int = 2
    min_separation: float = 1e-6
    max_condition: float = 1e9
    families: tuple = ("complex", "real", "conj")
    frames: int = 2  # coordinate frames: the given one plus frames - 1 random real ones


def transform_curve(curve: SexticCurve, M: Sequence[Sequence]) -> SexticCurve:
    """The curve in coordinates y with x = M y, i.e. q(M y) and c(M y), exactly."""
    y = [Polynomial.variable(4, j) for j in range(4)]
    rows = [sum((Fraction(M[i][j]) * y[j] for j in range(4)), Polynomial(4)) for i in range(4)]

    def compose(poly):
        out = Polynomial(4)
        for exp, c in poly.terms.items():
            term = Polynomial.constant(4, c)
            for row, e in zip(rows, exp):
                term = term * row**e if e else term
            out = out + term
        return out

    q, c = compose(curve.quadric_poly()), compose(curve.cubic_poly())
    return SexticCurve(
        tuple(q.terms.get(e, 0) for e in QUADRIC_MONOMIALS),
        tuple(c.terms.get(e, 0) for e in CUBIC_MONOMIALS),
    )


def _random_frame(seed_seq: np.random.SeedSequence) -> tuple:
    """A well-conditioned rational 4 x 4 matrix I + E, E with entries in {-0.9, ..., 0.9}."""
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    while True:
        E = rng.integers(-9, 10, (4, 4))
        M = tuple(tuple(Fraction(int(E[i, j]), 10) + (i == j) for j in range(4)) for i in range(4))
        if np.linalg.cond(np.array(M, dtype=float)) < 20:
            return M


def _from_frame(a: np.ndarray, M: np.ndarray) -> np.ndarray:
    """Map 18 affine coordinates found for the transformed curve back through x = M y."""
    H = np.linalg.solve(M.T, np.concatenate([[1], a[:3]]))
    out = list(H[1:] / H[0])
    for i in range(3):
        y, lam = a[3 + 5 * i : 6 + 5 * i], a[6 + 5 * i : 8 + 5 * i]
        X = M @ np.concatenate([[1], y])
        D = M @ np.concatenate([[0, 1], lam])
        # affine tangent direction of t -> (X + t D)[1:] / (X + t D)[0] at t = 0
        d = D[1:] * X[0] - X[1:] * D[0]
        out += list(X[1:] / X[0]) + list(d[1:] / d[0])
    return np.array(out)


def search_system(curve: SexticCurve, chart: np.ndarray) -> PolynomialSystem:
    """The float-search form of the system, with plane and directions in affine charts.

    Unknowns are H in C^4 and, per point, x in C^3 and a direction L in C^3,
    normalized by chart[0:4]·H = 1 and chart[4:7]·L = 1.  Planes and
    directions whose first coordinate is tiny stay at moderate size here,
    which keeps damped Newton well scaled.  The chart is real, so real and
    conjugate-pair starts stay in their sets under Newton's method.
    """
    t = [Fraction(float(v)) for v in chart[:4]]
    u = [Fraction(float(v)) for v in chart[4:7]]
    g_vars = [Polynomial.variable(4, i) for i in range(4)]
    g = PolynomialSystem([sum((ti * hi for ti, hi in zip(t, g_vars)), Polynomial(4)) - 1], nvars=4)
    n = 10
    H = [Polynomial.variable(n, i) for i in range(4)]
    xvars = (4, 5, 6)
    x = [Polynomial.variable(n, v) for v in xvars]
    L = [Polynomial.variable(n, i) for i in (7, 8, 9)]
    q, c = curve.quadric_poly(), curve.cubic_poly()
    plane = H[0] + sum((hi * xi for hi, xi in zip(H[1:], x)), Polynomial(n))
    grad_q = [_dehomogenize(d, n, xvars) for d in _gradient_x(q)]
    grad_c = [_dehomogenize(d, n, xvars) for d in _gradient_x(c)]

    def along(grad):
        return sum((d * li for d, li in zip(grad, L)), Polynomial(n))

    polys = [
        plane,
        _dehomogenize(q, n, xvars),
        _dehomogenize(c, n, xvars),
        along(H[1:]),
        along(grad_q),
        along(grad_c),
        sum((ui * li for ui, li in zip(u, L)), Polynomial(n)) - 1,
    ]
    p = PolynomialSystem(polys, nvars=n)
    f, _ = assemble_structured(g, p, 3, 0)
    return f


def _chart_to_affine(w: np.ndarray, floor: float = 1e-8):
    """Map a search-system root to the 18 coordinates (h, x1, λ1, ...), or None."""
    H = w[:4]
    if abs(H[0]) < floor * np.linalg.norm(H):
        return None
    out = list(H[1:] / H[0])
    for i in range(3):
        x = w[4 + 6 * i : 7 + 6 * i]
        L = w[7 + 6 * i : 10 + 6 * i]
        if abs(L[0]) < floor * np.linalg.norm(L):
            return None
        out += list(x) + list(L[1:] / L[0])
    return np.array(out)


def _start(seed_seq: np.random.SeedSequence, box: float, family: str) -> np.ndarray:
    """A random start for the 22-variable search system from one PCG64 stream."""
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    re = box * rng.standard_normal(22)
    im = box * rng.standard_normal(22)
    if family == "real":
        return re.astype(complex)
    if family == "conj":
        # block 1 and H real, block 3 the conjugate of block 2
        z = re.astype(complex)
        z[10:16] += 1j * im[10:16]
        z[16:22] = z[10:16].conj()
        return z
    return re + 1j * im


def float_candidates(
    curve: SexticCurve,
    n_starts: int,
    rng_seed: int,
    float_tolerance: float = 1e-12,
    options: SolveOptions | None = None,
) -> np.ndarray:
    """Damped Newton from seeded random starts; nondegenerate, h-deduplicated roots.

    Start i uses family ``options.families[i % len(families)]``: complex,
    real, or conjugate-pair (real block 1, block 3 = conj of block 2).
    Consecutive rounds of families alternate between ``options.frames``
    coordinate frames: the given coordinates and random real projective
    changes of coordinates, so that planes whose tangency points are near
    infinity in the given affine chart are found at moderate size elsewhere.
    """
    from .numeric import FloatSystem, damped_newton, polish

    if n_starts < 1:
        raise ValueError("n_starts must be at least 1")
    options = options or SolveOptions()
    if options.frames < 1:
        raise ValueError("frames must be at least 1")
    root = np.random.SeedSequence(rng_seed)
    chart_seq, start_seq, frame_seq = root.spawn(3)
    chart = np.random.Generator(np.random.PCG64(chart_seq)).uniform(0.5, 1.5, 7)
    frames = [None] + [_random_frame(s) for s in frame_seq.spawn(options.frames - 1)]
    searches = [
        (FloatSystem(search_system(curve if M is None else transform_curve(curve, M), chart)),
         None if M is None else np.array(M, dtype=float))
        for M in frames
    ]
    f, _ = build_tritangent_system(curve)
    fs18 = FloatSystem(f)
    real = curve.is_real()
    children = start_seq.spawn(n_starts)
    fams = options.families
    found: list[np.ndarray] = []
    for lo in range(0, n_starts, options.batch):
        batch = children[lo : lo + options.batch]
        for k, (fs, M) in enumerate(searches):
            idx = [i for i in range(lo, lo + len(batch)) if (i // len(fams)) % len(searches) == k]
            if not idx:
                continue
            starts = np.array([_start(children[i], options.box, fams[i % len(fams)]) for i in idx])
            z, res = damped_newton(fs, starts, options.max_steps, float_tolerance)
            z = polish(fs, z[res < float_tolerance])
            for w in z:
                if not _nondegenerate(fs, w, options):
                    continue
                a = _chart_to_affine(w)
                if a is not None and M is not None:
                    a = _from_frame(a, M)
                if a is None or not np.isfinite(a).all():
                    continue
                a = polish(fs18, a[None, :])[0]
                # a real curve's solutions come in conjugate pairs
                for v in (a, a.conj()) if real else (a,):
                    if not _seen(found, v):
                        found.append(v)
        log.info("starts %d-%d: %d distinct planes so far", lo, lo + len(batch) - 1, len(found))
    return np.array(found).reshape(-1, 18)


def _nondegenerate(fs, w: np.ndarray, options: SolveOptions) -> bool:
    if not np.isfinite(w).all():
        return False
    res = np.linalg.norm(fs.evaluate(w)[0])
    if not res < 1e-8 * max(1.0, np.linalg.norm(w)):
        return False
    xs = [w[4 + 6 * i : 7 + 6 * i] for i in range(3)]
    scale = max(1.0, max(np.linalg.norm(x) for x in xs))
    if min(np.linalg.norm(xs[a] - xs[b]) for a, b in ((0, 1), (0, 2), (1, 2))) < options.min_separation * scale:
        return False
    _, J = fs.evaluate_with_jacobian(w)
    return np.linalg.cond(J[0]) < options.max_condition


def _seen(found, w, rel=1e-8) -> bool:
    h = w[:3]
    tol = rel * max(1.0, np.linalg.norm(h))
    return any(np.linalg.norm(v[:3] - h) < tol for v in found)


def lift_candidate(f: PolynomialSystem, w: np.ndarray, refine_iters: int = 2, round_bits: int | None = 256):
    """Round a float point to 53-bit dyadics, refine exactly, keep it if the alpha test passes."""
    z = exact.vector(exact.dyadic_round(complex(v), 53) for v in w)
    try:
        z = alphacert.refine(f, z, refine_iters, round_bits)
        ok, _ = alphacert.is_approximate_solution(f, z)
    except SingularJacobian:
        return None
    return z if ok else None


def _lift_task(args):
    f, w, iters = args
    return lift_candidate(f, w, iters)


def multistart_solve(
    curve: SexticCurve,
    n_starts: int,
    rng_seed: int,
    float_tolerance: float = 1e-12,
    options: SolveOptions | None = None,
    jobs: int = 1,
) -> list[TritangentCandidate]:
    """Heuristic search for tritangent candidates; no completeness guarantee.

    Each start draws from its own PCG64 stream spawned from ``rng_seed``, so
    the output does not depend on batching or ``jobs``.
    """
    options = options or SolveOptions()
    floats = float_candidates(curve, n_starts, rng_seed, float_tolerance, options)
    f, _ = build_tritangent_system(curve)
    lifted = _map(_lift_task, [(f, w, options.refine_iters) for w in floats], jobs)
    return [TritangentCandidate.from_flat(z) for z in lifted if z is not None]
