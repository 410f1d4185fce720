"""Piecewise power-law radial homeomorphisms of [0, 1], evaluated in log2 space.

The central object is an increasing homeomorphism f : [0, 1] -> [0, 1] glued
from power-law pieces f(r) = C_n r^{k_n} on a decreasing chain of breakpoint
radii 1 = r_0 > r_1 > r_2 > ... -> 0, chosen so that f(r_n) = 2^{-n}.  The
exponents alternate between K and 1/K for a fixed parameter K > 1 (K on the
odd-indexed intervals, 1/K on the even ones), which makes every quantity
affine in base-2 logarithmic coordinates:

    log2 r_{2m}   = -(m K + m / K)
    log2 r_{2m-1} = -((m - 1) K + m / K)
    log2 C_{2m}   = m (1 / K^2 - 1)
    log2 C_{2m-1} = (m - 1) (K^2 - 1)
    log2 f(r)     = log2 C_n + k_n log2 r        for r in [r_n, r_{n-1}]

The breakpoints shrink like 2^{-(K + 1/K) n / 2} and underflow any linear
float representation after a few hundred indices, so this library works in
log2 throughout: a radius in (0, 1] is represented by its log2 value (a float
<= 0), and the radius 0 by the sentinel ``RADIUS_ZERO_LOG2 = -inf``.  All
evaluators accept scalars or numpy arrays and return the matching kind.

Useful consequences of the layout, relied on elsewhere in the package:

  * anchor identity:   log2 C_n = -n - k_n log2 r_n
  * unit period:       log2 r_n - log2 r_{n+2} = K + 1/K for every n
  * product identity:  log2 r_{2n} + log2 r_m = log2 r_{2n+m}
  * value intervals:   f maps [r_n, r_{n-1}] onto [2^-n, 2^-(n-1)], so the
    value-side interval index is simply ceil(-log2 value).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RADIUS_ZERO_LOG2",
    "NotDifferentiableError",
    "PiecewisePowerMap",
    "build_standard_map",
    "breakpoint_log2",
]

#: log2 sentinel for the radius 0 (fixed point and image of 0 under every map here).
RADIUS_ZERO_LOG2 = float("-inf")


class NotDifferentiableError(ValueError):
    """A derivative-based quantity was requested at a breakpoint radius."""


def _as_float_array(x) -> np.ndarray:
    return np.asarray(x, dtype=float)


def _validate_log_radius(a, name, allow_zero_radius=True):
    if np.any(np.isnan(a)) or np.any(a == np.inf):
        raise ValueError(f"{name} must be a log2 radius, not NaN or +inf")
    if np.any(a > 0.0):
        raise ValueError(f"{name} must be <= 0 (base-2 log of a radius in (0, 1])")
    if not allow_zero_radius and np.any(np.isneginf(a)):
        raise ValueError(f"{name}: the radius-0 sentinel is not accepted here")


def _scalar_like(x, out1d):
    """Collapse a 1-element working array back to float for scalar input."""
    return float(out1d[0]) if np.ndim(x) == 0 else out1d


def breakpoint_log2(K, n):
    """log2 of the n-th breakpoint radius, valid for every n >= 0.

    Parity-split closed form; equals the recurrence
    log2 r_n = log2 r_{n-1} - 1/k_n started from r_0 = 1.
    """
    K = float(K)
    na = np.asarray(n)
    if not np.issubdtype(na.dtype, np.integer):
        raise TypeError("breakpoint index must be an integer")
    if np.any(na < 0):
        raise ValueError("breakpoint index must be >= 0")
    na = na.astype(np.int64)
    m_odd = (na + 1) // 2
    m_even = na // 2
    out = np.where(
        (na % 2) == 1,
        -((m_odd - 1) * K + m_odd / K),
        -(m_even * K + m_even / K),
    ) + 0.0  # normalize -0.0 at n = 0
    return float(out) if np.ndim(n) == 0 else out


def _exponent(K, n):
    """Branch exponent k_n: K on odd-indexed intervals, 1/K on even ones."""
    na = np.asarray(n, dtype=np.int64)
    return np.where((na % 2) == 1, K, 1.0 / K)


def _coefficient_log2(K, n):
    """log2 C_n by the parity-split closed form (not via the anchor identity)."""
    na = np.asarray(n, dtype=np.int64)
    m_odd = (na + 1) // 2
    m_even = na // 2
    return np.where(
        (na % 2) == 1,
        (m_odd - 1) * (K * K - 1.0),
        m_even * (1.0 / (K * K) - 1.0),
    ) + 0.0


@dataclass(frozen=True)
class PiecewisePowerMap:
    """The alternating-exponent homeomorphism, all data in log2 form.

    Immutable after construction; every method is a pure function, so
    instances are safe to share across any number of concurrent workers.
    The arrays cache indices 0..depth for inspection and invariant checks;
    evaluation always goes through the closed forms, which remain valid for
    arbitrarily deep indices (slot 0 of ``k`` and ``log2_C`` is NaN padding,
    since branch data starts at n = 1).
    """

    K: float
    depth: int
    log2_r: np.ndarray
    k: np.ndarray
    log2_C: np.ndarray

    def breakpoint(self, n):
        """log2 r_n for any n >= 0 (not limited by ``depth``)."""
        return breakpoint_log2(self.K, n)

    def _locate(self, xf):
        """Branch index for an array of finite log2 radii (no validation)."""
        period = self.K + 1.0 / self.K
        m = np.floor(-xf / period).astype(np.int64)
        lo = np.maximum(2 * m - 1, 1)
        out = np.full(xf.shape, -1, dtype=np.int64)
        # Floor arithmetic lands within one index of the true interval; probe a
        # bounded window in ascending order so the smaller index wins ties.
        for off in range(6):
            cand = lo + off
            hit = (
                (out < 0)
                & (breakpoint_log2(self.K, cand) <= xf)
                & (xf <= breakpoint_log2(self.K, cand - 1))
            )
            out = np.where(hit, cand, out)
        if np.any(out < 0):
            raise ValueError("log2 radius too deep for float64 breakpoint resolution")
        return out

    def locate_interval(self, x):
        """Index n >= 1 of the branch interval [r_n, r_{n-1}] containing 2^x.

        Closed-form inversion of the breakpoint formula plus an O(1)
        adjustment, never a scan.  When x is exactly a breakpoint the smaller
        index is returned; continuity makes evaluation agree either way.
        """
        xa = _as_float_array(x)
        _validate_log_radius(xa, "x", allow_zero_radius=False)
        out = self._locate(np.atleast_1d(xa))
        return int(out[0]) if np.ndim(x) == 0 else out

    def eval_log(self, x):
        """log2 f(2^x); the radius-0 sentinel maps to itself."""
        xa = _as_float_array(x)
        _validate_log_radius(xa, "x")
        xa1 = np.atleast_1d(xa)
        out = np.full(xa1.shape, RADIUS_ZERO_LOG2)
        fin = np.isfinite(xa1)
        if fin.any():
            xf = xa1[fin]
            n = self._locate(xf)
            out[fin] = _coefficient_log2(self.K, n) + _exponent(self.K, n) * xf
        return _scalar_like(x, out)

    def inverse_eval_log(self, y):
        """log2 of f^{-1}(2^y).

        The value-side interval [2^-n, 2^-(n-1)] has unit log2 width, so the
        branch index is ceil(-y) directly; inverting the affine branch gives
        (y - log2 C_n) / k_n.
        """
        ya = _as_float_array(y)
        _validate_log_radius(ya, "y")
        ya1 = np.atleast_1d(ya)
        out = np.full(ya1.shape, RADIUS_ZERO_LOG2)
        fin = np.isfinite(ya1)
        if fin.any():
            yf = ya1[fin]
            n = np.maximum(np.ceil(-yf).astype(np.int64), 1)
            out[fin] = (yf - _coefficient_log2(self.K, n)) / _exponent(self.K, n)
        return _scalar_like(y, out)

    def eval(self, r):
        """f(r) on the linear scale, for r in [0, 1].

        Convenience wrapper only: the result underflows to 0.0 once
        log2 f(r) drops below the float64 exponent range (~ -1074); use
        ``eval_log`` for deep radii.
        """
        ra = _as_float_array(r)
        if np.any(np.isnan(ra)) or np.any(ra < 0.0) or np.any(ra > 1.0):
            raise ValueError("r must lie in [0, 1]")
        with np.errstate(divide="ignore"):
            lx = np.log2(ra)
        out = np.exp2(self.eval_log(lx))
        return float(out) if np.ndim(r) == 0 else out

    def mean_radius_radial(self, delta):
        """log2 mean radius of the image of the ball of log2 radius ``delta``.

        The radial extension (r, sigma) -> (f(r), sigma) carries B(0, t) onto
        B(0, f(t)) exactly, so the volume-matching radius is f(t) itself; this
        equality is what lets f(t) serve as the zoom normalizer.
        """
        return self.eval_log(delta)

    def local_exponent(self, x):
        """Power-law exponent of the branch at x; breakpoints are rejected."""
        xa = _as_float_array(x)
        _validate_log_radius(xa, "x", allow_zero_radius=False)
        n = _strict_branch_index(self, np.atleast_1d(xa))
        out = np.asarray(_exponent(self.K, n), dtype=float)
        return _scalar_like(x, out)

    def distinct_exponents(self):
        """The two branch exponents; pointwise distortion depends only on these."""
        return (self.K, 1.0 / self.K)


def _strict_branch_index(map_, xa1):
    """Branch indices for points strictly inside a branch; breakpoints raise."""
    n = map_._locate(xa1)
    on_bp = (xa1 == breakpoint_log2(map_.K, n)) | (
        xa1 == breakpoint_log2(map_.K, n - 1)
    )
    if np.any(on_bp):
        raise NotDifferentiableError(
            "no derivative at a breakpoint radius (distortion is an a.e. notion; "
            "breakpoint spheres form a removable null set)"
        )
    return n


def build_standard_map(K, depth=10_000) -> PiecewisePowerMap:
    """Construct the alternating-exponent map for a distortion parameter K > 1.

    ``depth`` only sizes the cached arrays (and bounds the recurrence-based
    invariant checks); closed forms serve every deeper index, so no operation
    fails on deep zooms.
    """
    K = float(K)
    if not math.isfinite(K) or K <= 1.0:
        raise ValueError("K must be a finite real > 1 (the two exponents must differ)")
    depth = int(depth)
    if depth < 2:
        raise ValueError("depth must be >= 2")
    idx = np.arange(depth + 1, dtype=np.int64)
    log2_r = breakpoint_log2(K, idx)
    k = np.concatenate(([np.nan], np.asarray(_exponent(K, idx[1:]), dtype=float)))
    log2_C = np.concatenate(
        ([np.nan], np.asarray(_coefficient_log2(K, idx[1:]), dtype=float))
    )
    if log2_r[0] != 0.0 or log2_C[1] != 0.0 or np.any(np.diff(log2_r) >= 0.0):
        raise AssertionError("breakpoint chain failed construction sanity checks")
    return PiecewisePowerMap(K=K, depth=depth, log2_r=log2_r, k=k, log2_C=log2_C)
