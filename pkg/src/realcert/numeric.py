"""Vectorized floating-point evaluation of polynomial systems.

Only used to generate candidate points cheaply; nothing computed here is
trusted by the certification code.
"""
from __future__ import annotations

import numpy as np

from .polysys import PolynomialSystem


class _TermTable:
    """Monomials stored by support: (variable, exponent) pairs padded to width K."""

    def __init__(self, entries, n):
        # entries: list of (output index, complex coefficient, exponent tuple)
        width = max((sum(1 for e in exp if e) for _, _, exp in entries), default=0)
        width = max(width, 1)
        T = len(entries)
        self.vars = np.zeros((T, width), dtype=np.int64)
        self.pows = np.zeros((T, width), dtype=np.int64)
        self.coefs = np.zeros(T, dtype=complex)
        self.out = np.zeros(T, dtype=np.int64)
        for t, (o, c, exp) in enumerate(entries):
            support = [(i, e) for i, e in enumerate(exp) if e]
            for s, (i, e) in enumerate(support):
                self.vars[t, s] = i
                self.pows[t, s] = e
            self.out[t] = o
            self.coefs[t] = c
        self.maxdeg = int(self.pows.max()) if T else 0

    def accumulate(self, pw: np.ndarray, size: int) -> np.ndarray:
        # pw: (B, n, maxdeg+1) power table
        B = pw.shape[0]
        out = np.zeros((B, size), dtype=complex)
        if not len(self.coefs):
            return out
        g = pw[:, self.vars, self.pows]  # (B, T, K)
        mono = g.prod(axis=-1) * self.coefs
        np.add.at(out, (slice(None), self.out), mono)
        return out


class FloatSystem:
    """Batch evaluator for f and Df in complex128."""

    def __init__(self, f: PolynomialSystem):
        self.n = f.nvars
        self.npolys = len(f)
        values, derivs = [], []
        for i, p in enumerate(f.polys):
            for exp, c in p.terms.items():
                values.append((i, complex(c), exp))
                for j, e in enumerate(exp):
                    if e:
                        lowered = list(exp)
                        lowered[j] -= 1
                        derivs.append((i * self.n + j, complex(c) * e, tuple(lowered)))
        self._values = _TermTable(values, self.n)
        self._derivs = _TermTable(derivs, self.n)
        self.maxdeg = max(self._values.maxdeg, 1)

    def _powers(self, z: np.ndarray) -> np.ndarray:
        pw = np.ones(z.shape + (self.maxdeg + 1,), dtype=complex)
        # diverging starts may overflow; they are discarded by the residual test
        with np.errstate(over="ignore", invalid="ignore"):
            for k in range(1, self.maxdeg + 1):
                pw[..., k] = pw[..., k - 1] * z
        return pw

    def evaluate(self, z) -> np.ndarray:
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        return self._values.accumulate(self._powers(z), self.npolys)

    def evaluate_with_jacobian(self, z):
        z = np.atleast_2d(np.asarray(z, dtype=complex))
        pw = self._powers(z)
        values = self._values.accumulate(pw, self.npolys)
        jac = self._derivs.accumulate(pw, self.npolys * self.n).reshape(-1, self.npolys, self.n)
        return values, jac


def damped_newton(fs: FloatSystem, z: np.ndarray, max_steps: int = 200, tol: float = 1e-12, min_step: float = 2.0**-10):
    """Armijo-damped Newton on a batch of starts.

    Returns the final iterates and their residual norms.  Starts whose
    iterates blow up come back with infinite residual.
    """
    z = np.array(z, dtype=complex)
    B = z.shape[0]
    active = np.ones(B, dtype=bool)
    residual = np.full(B, np.inf)
    for _ in range(max_steps):
        idx = np.nonzero(active)[0]
        if not len(idx):
            break
        zs = z[idx]
        f0, J = fs.evaluate_with_jacobian(zs)
        nf = np.linalg.norm(f0, axis=-1)
        residual[idx] = nf
        done = nf < tol
        bad = ~np.isfinite(nf) | ~np.isfinite(J).all(axis=(1, 2))
        with np.errstate(all="ignore"):
            dz = _batched_solve(J, f0)
        bad |= ~np.isfinite(dz).all(axis=-1)
        step = np.ones(len(idx))
        trial = zs - dz
        with np.errstate(all="ignore"):
            nt = np.linalg.norm(fs.evaluate(trial), axis=-1)
            shrink = ~(nt <= (1 - 1e-4 * step) * nf) & ~done & ~bad
            while shrink.any() and step[shrink].min() > min_step:
                step = np.where(shrink, step / 2, step)
                trial = zs - step[:, None] * dz
                nt = np.linalg.norm(fs.evaluate(trial), axis=-1)
                shrink = ~(nt <= (1 - 1e-4 * step) * nf) & ~done & ~bad
        upd = ~done & ~bad
        z[idx[upd]] = trial[upd]
        residual[idx[bad]] = np.inf
        active[idx[done | bad]] = False
    with np.errstate(all="ignore"):
        final = np.linalg.norm(fs.evaluate(z), axis=-1)
    final[~np.isfinite(final)] = np.inf
    return z, final


def _batched_solve(J, f0):
    try:
        return np.linalg.solve(J, f0[..., None])[..., 0]
    except np.linalg.LinAlgError:
        out = np.empty_like(f0)
        for i in range(len(f0)):
            try:
                out[i] = np.linalg.solve(J[i], f0[i])
            except np.linalg.LinAlgError:
                out[i] = np.nan
        return out


def polish(fs: FloatSystem, z: np.ndarray, steps: int = 4) -> np.ndarray:
    """A few undamped Newton steps to squeeze out the last float digits."""
    z = np.array(z, dtype=complex)
    if not len(z):
        return z
    for _ in range(steps):
        f0, J = fs.evaluate_with_jacobian(z)
        with np.errstate(all="ignore"):
            trial = z - _batched_solve(J, f0)
            better = np.linalg.norm(fs.evaluate(trial), axis=-1) < np.linalg.norm(f0, axis=-1)
        better &= np.isfinite(trial).all(axis=-1)
        z[better] = trial[better]
    return z
