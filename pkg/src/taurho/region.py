"""The attainable (tau, rho) region for shuffles and its boundary.

The lower boundary is a piecewise function ``Phi`` built from countably
many segments indexed by ``n >= 2``; segment ``n`` lives on
``[-1 + 2/n, -1 + 2/(n-1)]`` and carries a 3/2-power correction term, so
the curve is C^1 away from the segment junctions and has a corner in its
second derivative at each junction.  The upper boundary is the point
reflection ``-Phi(-x)``.  The same curve in inversion coordinates is
``varphi`` (with ``inv`` on the x-axis and ``invs`` on the y-axis), and
``theta(x) = x - 2*varphi(x)`` is the minimal triple weight ``b``
compatible with a given pair weight ``a`` — the quantity the main
inequality of the verification harness bounds from below.

Membership tests use closed-region semantics with a 1e-12 tolerance:
boundary points belong to the region.

Scalar inputs give scalar outputs; numpy arrays broadcast elementwise.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial.legendre import leggauss

from .shuffles import RegionPoint

__all__ = [
    "APERY",
    "segment_index",
    "phi_boundary",
    "varphi",
    "theta",
    "contains",
    "classical_contains",
    "classical_rho_bounds",
    "boundary_samples",
    "area_closed_form",
    "area_quadrature",
    "classical_area_quadrature",
]

# Apery's constant zeta(3), to 20 significant digits; the quadrature in
# area_quadrature provides the independent numeric check of any formula
# using it.
APERY = 1.2020569031595942854

_MEMBERSHIP_TOL = 1e-12
_DOMAIN_SLACK = 1e-12


def segment_index(x: float) -> int:
    """The n >= 2 whose boundary segment [-1+2/n, -1+2/(n-1)) contains x.

    Ties at shared endpoints resolve to the smaller n; x in [0, 1] gives 2.
    """
    x = float(x)
    if not -1.0 < x <= 1.0:
        raise ValueError(f"segment_index: x={x!r} outside (-1, 1]")
    n = max(2, math.ceil(2.0 / (1.0 + x)))
    # The ceiling above is exact in reals; the two loops absorb the one
    # step of float slop it can pick up near segment junctions.
    while n > 2 and x >= -1.0 + 2.0 / (n - 1):
        n -= 1
    while -1.0 + 2.0 / n > x:
        n += 1
    return n


def _phi_segments(x: np.ndarray) -> np.ndarray:
    """Vectorized segment_index for x in (-1, 1], returned as floats."""
    n = np.ceil(2.0 / (1.0 + x))
    n = np.maximum(n, 2.0)
    for _ in range(2):
        n = np.where((n > 2) & (x >= -1.0 + 2.0 / (n - 1.0)), n - 1.0, n)
    for _ in range(2):
        n = np.where(-1.0 + 2.0 / n > x, n + 1.0, n)
    return n


def _phi_segment_value(n: np.ndarray, x: np.ndarray) -> np.ndarray:
    linear = -1.0 - 4.0 / n**2 + 3.0 / n + 3.0 * x / n
    excess = np.maximum(n * (1.0 + x) - 2.0, 0.0)
    coef = np.where(n > 2, (n - 2.0) / (np.sqrt(2.0) * n**2 * np.sqrt(np.maximum(n - 1.0, 1.0))), 0.0)
    return linear - coef * excess**1.5


def phi_boundary(x):
    """Lower boundary of the region at tau = x, for x in [-1, 1].

    Strictly increasing, with phi_boundary(-1) = -1 and
    phi_boundary(1) = 1; on [0, 1] it is the line -1/2 + 3x/2.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -1.0 - _DOMAIN_SLACK) or np.any(arr > 1.0 + _DOMAIN_SLACK):
        raise ValueError("phi_boundary: argument outside [-1, 1]")
    arr = np.clip(arr, -1.0, 1.0)
    at_corner = arr == -1.0
    safe = np.where(at_corner, 0.0, arr)
    n = _phi_segments(safe)
    vals = np.where(at_corner, -1.0, _phi_segment_value(n, safe))
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(vals)
    return vals


def _varphi_segments(x: np.ndarray) -> np.ndarray:
    """Segment index for varphi on [0, 1/2), as floats; segments are
    right-closed, ties resolving to the smaller n."""
    n = np.ceil(1.0 / (1.0 - 2.0 * x))
    n = np.maximum(n, 2.0)
    for _ in range(2):
        n = np.where((n > 2) & (x <= 0.5 - 0.5 / (n - 1.0)), n - 1.0, n)
    for _ in range(2):
        n = np.where(x > 0.5 - 0.5 / n, n + 1.0, n)
    return n


def varphi(x):
    """Maximal invs compatible with inv = x, for x in [0, 1/2].

    Equals x/2 on [0, 1/4] and 1/6 at x = 1/2; in between it is the
    segmented 3/2-power curve mirroring phi_boundary in inversion
    coordinates: phi_boundary(t) = 1 - 12*varphi((1-t)/4).
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -_DOMAIN_SLACK) or np.any(arr > 0.5 + _DOMAIN_SLACK):
        raise ValueError("varphi: argument outside [0, 1/2]")
    arr = np.clip(arr, 0.0, 0.5)
    at_half = arr == 0.5
    safe = np.where(at_half, 0.0, arr)
    n = _varphi_segments(safe)
    core = 1.0 / 6.0 + 1.0 / (3.0 * n**2) - 0.5 / n + safe / n
    excess = np.maximum(n * (1.0 - 2.0 * safe) - 1.0, 0.0)
    coef = np.where(n > 2, (n - 2.0) / (6.0 * n**2 * np.sqrt(np.maximum(n - 1.0, 1.0))), 0.0)
    vals = np.where(at_half, 1.0 / 6.0, core + coef * excess**1.5)
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(vals)
    return vals


def theta(x):
    """theta(x) = x - 2*varphi(x): the least b attainable at a = x.

    Vanishes on [0, 1/4], is non-decreasing, and reaches 1/6 at x = 1/2.
    """
    arr = np.asarray(x, dtype=float)
    vals = arr - 2.0 * np.asarray(varphi(arr))
    if np.isscalar(x) or np.asarray(x).ndim == 0:
        return float(vals)
    return vals


def _coords(p) -> tuple[float, float]:
    if isinstance(p, RegionPoint):
        return p.tau, p.rho
    t, r = p
    return float(t), float(r)


def contains(p) -> bool:
    """Closed-region membership: Phi(tau) <= rho <= -Phi(-tau), tol 1e-12.

    Accepts a RegionPoint or a plain (tau, rho) pair.
    """
    t, r = _coords(p)
    t = min(1.0, max(-1.0, t))
    lower = phi_boundary(t)
    upper = -phi_boundary(-t)
    return bool(lower - _MEMBERSHIP_TOL <= r <= upper + _MEMBERSHIP_TOL)


def classical_rho_bounds(tau: float) -> tuple[float, float]:
    """The classical lower/upper rho bounds at a given tau.

    Combines the linear band |3*tau - 2*rho| <= 1 with the quadratic
    envelope (1+tau)^2/2 - 1 <= rho <= 1 - (1-tau)^2/2.
    """
    t = float(tau)
    lower = max((3.0 * t - 1.0) / 2.0, (1.0 + t) ** 2 / 2.0 - 1.0)
    upper = min((3.0 * t + 1.0) / 2.0, 1.0 - (1.0 - t) ** 2 / 2.0)
    return lower, upper


def classical_contains(p) -> bool:
    """Membership in the classical region (both textbook bounds, tol 1e-12)."""
    t, r = _coords(p)
    lower, upper = classical_rho_bounds(t)
    return bool(lower - _MEMBERSHIP_TOL <= r <= upper + _MEMBERSHIP_TOL)


def boundary_samples(k: int) -> np.ndarray:
    """(k, 3) array of rows (tau, rho_lower, rho_upper), tau equispaced in [-1, 1]."""
    k = int(k)
    if k < 2:
        raise ValueError(f"boundary_samples: k must be >= 2, got {k}")
    taus = np.linspace(-1.0, 1.0, k)
    lower = phi_boundary(taus)
    upper = -phi_boundary(-taus)
    return np.column_stack([taus, lower, upper])


def area_closed_form() -> float:
    """Closed-form area of the region: 4/5 - (4/5)*zeta(3) + (2/15)*pi^2."""
    return 4.0 / 5.0 - (4.0 / 5.0) * APERY + (2.0 / 15.0) * math.pi**2


_GL_HI = leggauss(15)
_GL_LO = leggauss(7)


def _panel_estimates(f, a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    mid = (a + b) / 2.0
    half = (b - a) / 2.0
    xn_hi, wn_hi = _GL_HI
    xn_lo, wn_lo = _GL_LO
    xs_hi = mid[:, None] + half[:, None] * xn_hi[None, :]
    xs_lo = mid[:, None] + half[:, None] * xn_lo[None, :]
    f_hi = f(xs_hi.ravel()).reshape(xs_hi.shape)
    f_lo = f(xs_lo.ravel()).reshape(xs_lo.shape)
    hi = half * (f_hi @ wn_hi)
    lo = half * (f_lo @ wn_lo)
    return hi, np.abs(hi - lo)


def _adaptive_quadrature(f, edges: np.ndarray, target: float, max_rounds: int = 60) -> float:
    """Adaptive Gauss quadrature over fixed initial panels.

    Each round bisects exactly the panels whose error estimate exceeds
    their width-proportional share of the target, so the loop makes
    progress whenever the total error is still too large; summation order
    is always left-to-right, keeping results deterministic.
    """
    a = np.asarray(edges[:-1], dtype=float)
    b = np.asarray(edges[1:], dtype=float)
    vals, errs = _panel_estimates(f, a, b)
    width = float(b[-1] - a[0])
    for _ in range(max_rounds):
        if float(errs.sum()) <= target:
            order = np.argsort(a, kind="stable")
            return float(vals[order].sum())
        share = target * (b - a) / width
        split = errs > share
        keep_a, keep_b = a[~split], b[~split]
        keep_v, keep_e = vals[~split], errs[~split]
        sa, sb = a[split], b[split]
        sm = (sa + sb) / 2.0
        new_a = np.concatenate([sa, sm])
        new_b = np.concatenate([sm, sb])
        new_v, new_e = _panel_estimates(f, new_a, new_b)
        a = np.concatenate([keep_a, new_a])
        b = np.concatenate([keep_b, new_b])
        vals = np.concatenate([keep_v, new_v])
        errs = np.concatenate([keep_e, new_e])
    raise RuntimeError(
        f"adaptive quadrature did not reach target {target!r} "
        f"(residual error {float(errs.sum())!r} over {len(a)} panels)"
    )


def _region_width(x: np.ndarray) -> np.ndarray:
    return -phi_boundary(-x) - phi_boundary(x)


def area_quadrature(tol: float) -> float:
    """Area of the region by adaptive quadrature of the slice widths.

    Integrates -Phi(-x) - Phi(x) with panel edges forced at every
    boundary-segment junction up to a cutoff N near the corners, where
    junctions accumulate; the two leftover corner slivers contribute
    3/N^2 each up to an O(1/N^3) remainder that is absorbed into the
    tolerance budget (half to the slivers, half to the quadrature).
    """
    tol = float(tol)
    if tol <= 0.0:
        raise ValueError(f"area_quadrature: tol must be > 0, got {tol!r}")
    if tol < 1e-13:
        raise ValueError("area_quadrature: tol below 1e-13 exceeds float64 resolution")
    n_cut = int(min(1_000_000, max(64, math.ceil((16.0 / tol) ** (1.0 / 3.0)))))
    ns = np.arange(2, n_cut + 1, dtype=float)
    left = -1.0 + 2.0 / ns[::-1]
    right = 1.0 - 2.0 / ns
    edges = np.unique(np.concatenate([left, right]))
    body = _adaptive_quadrature(_region_width, edges, tol / 2.0)
    slivers = 6.0 / n_cut**2
    return body + slivers


def _classical_width(x: np.ndarray) -> np.ndarray:
    lower = np.maximum((3.0 * x - 1.0) / 2.0, (1.0 + x) ** 2 / 2.0 - 1.0)
    upper = np.minimum((3.0 * x + 1.0) / 2.0, 1.0 - (1.0 - x) ** 2 / 2.0)
    return np.maximum(upper - lower, 0.0)


def classical_area_quadrature(tol: float) -> float:
    """Area of the classical region (exactly 7/6) by the same machinery."""
    tol = float(tol)
    if tol <= 0.0:
        raise ValueError(f"classical_area_quadrature: tol must be > 0, got {tol!r}")
    edges = np.array([-1.0, 0.0, 1.0])
    return _adaptive_quadrature(_classical_width, edges, tol)
