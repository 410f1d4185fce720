"""Halving dynamics conjugated by a piecewise power map: a radial factor whose
iterates all share one distortion bound.

Conjugating x -> x/2 by the piecewise power homeomorphism f yields
h(r) = f^{-1}(f(r) / 2), an increasing self-map of [0, 1] with an attracting
fixed point at 0.  Because f sends breakpoints to successive halves, h
advances each breakpoint interval to the next one and is itself piecewise
power with exponents K^2 and 1/K^2:

    h(r) = 2^{(j-1) K^3 - j/K}       r^{K^2}    on [r_{2j-1}, r_{2j-2}]
    h(r) = 2^{j/K^3 - 1/K - j K}     r^{1/K^2}  on [r_{2j},   r_{2j-1}]

Two steps of h shift log2 r down by exactly K + 1/K (halving twice composes
with the even-breakpoint multiplicativity of f), so even iterates are
similarities with no distortion at all and odd iterates carry the same bound
as h itself: the iterate distortion never grows.  The d-dimensional map keeps
every spherical coordinate fixed and applies h radially, so only the radial
factor is stored.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .powermap import (
    RADIUS_ZERO_LOG2,
    PiecewisePowerMap,
    _scalar_like,
    _strict_branch_index,
    _validate_log_radius,
)

__all__ = ["ConjugatedMap", "build_conjugated_map", "h_via_conjugacy"]


def _branch_exponent(K, n):
    return np.where((np.asarray(n, dtype=np.int64) % 2) == 1, K * K, 1.0 / (K * K))


def _branch_offset_log2(K, n):
    """log2 of the branch coefficient of h on the n-th breakpoint interval."""
    na = np.asarray(n, dtype=np.int64)
    j_odd = (na + 1) // 2
    j_even = na // 2
    return np.where(
        (na % 2) == 1,
        (j_odd - 1) * K**3 - j_odd / K,
        j_even / K**3 - 1.0 / K - j_even * K,
    ) + 0.0


@dataclass(frozen=True)
class ConjugatedMap:
    """Radial factor h of the conjugated halving map, in closed branch form.

    Shares the breakpoint chain of its source map; immutable and pure like it.
    """

    K: float
    source: PiecewisePowerMap

    def breakpoint(self, n):
        return self.source.breakpoint(n)

    def locate_interval(self, x):
        return self.source.locate_interval(x)

    def eval_log(self, x):
        """log2 h(2^x) via the branch table (independent of f's inverse)."""
        xa = np.asarray(x, dtype=float)
        _validate_log_radius(xa, "x")
        xa1 = np.atleast_1d(xa)
        out = np.full(xa1.shape, RADIUS_ZERO_LOG2)
        fin = np.isfinite(xa1)
        if fin.any():
            xf = xa1[fin]
            n = self.source._locate(xf)
            out[fin] = _branch_offset_log2(self.K, n) + _branch_exponent(self.K, n) * xf
        return _scalar_like(x, out)

    def iterate(self, x, m):
        """log2 h^m(2^x) for m >= 0.

        Even iterate counts use the exact similarity
        log2 h^{2p}(x) = x - p (K + 1/K), so no branch-evaluation error
        accumulates over long orbits; an odd count applies h once more.
        """
        m = int(m)
        if m < 0:
            raise ValueError("iteration count must be >= 0")
        xa = np.asarray(x, dtype=float)
        _validate_log_radius(xa, "x")
        y = xa - (m // 2) * (self.K + 1.0 / self.K)
        if m % 2:
            return self.eval_log(float(y) if np.ndim(x) == 0 else y)
        return float(y) if np.ndim(x) == 0 else y

    def local_exponent(self, x):
        """Branch exponent (K^2 or 1/K^2) at x; breakpoints are rejected."""
        xa = np.asarray(x, dtype=float)
        _validate_log_radius(xa, "x", allow_zero_radius=False)
        n = _strict_branch_index(self.source, np.atleast_1d(xa))
        out = np.asarray(_branch_exponent(self.K, n), dtype=float)
        return _scalar_like(x, out)

    def distinct_exponents(self):
        return (self.K * self.K, 1.0 / (self.K * self.K))


def build_conjugated_map(f: PiecewisePowerMap) -> ConjugatedMap:
    """Closed-form radial factor h = f^{-1}((.)/2 after f) for a given f."""
    if not isinstance(f, PiecewisePowerMap):
        raise TypeError("build_conjugated_map needs a PiecewisePowerMap")
    return ConjugatedMap(K=f.K, source=f)


def h_via_conjugacy(f: PiecewisePowerMap, x):
    """Oracle route for h: push through f, halve (a unit log2 shift), pull back.

    Uses only f's forward and inverse evaluators, so it is an independent
    cross-check of the closed branch table in :class:`ConjugatedMap`.
    """
    return f.inverse_eval_log(f.eval_log(x) - 1.0)
