"""Kendall's tau and Spearman's rho for shuffle maps.

For a measure-preserving map ``h`` the two coefficients of the copula of
``(U, h(U))`` reduce to weighted counts of inverted pairs:

* ``tau = 1 - 4 * inv`` where ``inv`` is the measure of pairs ``x < y``
  with ``h(x) > h(y)``,
* ``rho = 1 - 12 * invs`` where ``invs`` additionally weights each such
  pair by ``y - x``.

Both integrals collapse to finite sums over the pieces of a shuffle,
which is what :func:`inv_invs` evaluates.  The combinatorial layer
(:func:`inversion_data`, :func:`ab_values`, :func:`perturbation_coeffs`)
exposes the same quantities for straight shuffles as explicit polynomials
in the weights, which is the form the verification harness differentiates.

:func:`oracle_tau_rho` is an intentionally independent cross-check: it
never looks at the piece structure, only at point evaluations of the map
on a midpoint grid, and estimates both coefficients by brute pair
counting (organised around a Fenwick tree so large grids stay cheap).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .shuffles import Permutation, RegionPoint, Shuffle, SimplexWeights, evaluate

__all__ = [
    "inv_invs",
    "tau_rho",
    "InversionData",
    "inversion_data",
    "ab_values",
    "PerturbationCoeffs",
    "perturbation_coeffs",
    "oracle_tau_rho",
]

_ROW_BLOCK = 2048


def inv_invs(shuffle: Shuffle) -> tuple[float, float]:
    """Plain and position-weighted inversion measures of a shuffle.

    Pairs of distinct pieces invert exactly when the permutation inverts
    them, contributing ``u_i * u_j`` to ``inv`` and additionally the
    distance between the piece midpoints to ``invs``.  A reversed piece
    inverts within itself: ``u_i^2 / 2`` and ``u_i^3 / 6``.

    Runs in O(n^2) time and O(n * block) memory.
    """
    u = shuffle.weights.as_array()
    p = np.asarray(shuffle.perm.images)
    e = np.asarray(shuffle.signs)
    n = shuffle.n
    mid = np.cumsum(u) - u / 2.0

    inv = 0.0
    invs = 0.0
    cols = np.arange(n)
    for lo in range(0, n, _ROW_BLOCK):
        hi = min(lo + _ROW_BLOCK, n)
        rows = np.arange(lo, hi)
        inverted = (p[None, :] < p[rows, None]) & (cols[None, :] > rows[:, None])
        w = np.where(inverted, u[rows, None] * u[None, :], 0.0)
        inv += float(w.sum())
        invs += float((w * (mid[None, :] - mid[rows, None])).sum())

    rev = e == -1
    if rev.any():
        inv += float((u[rev] ** 2).sum()) / 2.0
        invs += float((u[rev] ** 3).sum()) / 6.0
    return inv, invs


def tau_rho(shuffle: Shuffle) -> RegionPoint:
    """Exact (tau, rho) of a shuffle."""
    inv, invs = inv_invs(shuffle)
    return RegionPoint(1.0 - 4.0 * inv, 1.0 - 12.0 * invs)


@dataclass(frozen=True)
class InversionData:
    """Inverted pairs and cyclically-descending triples of a permutation.

    ``pairs`` holds the (i, j), i < j, with ``perm(i) > perm(j)``.
    ``triples`` holds the (i, j, k), i < j < k, whose image pattern is one
    of the three cyclic rotations of a strict descent: 321, 213 or 132
    read as relative order.  Both use 1-based positions.
    """

    pairs: frozenset[tuple[int, int]]
    triples: frozenset[tuple[int, int, int]]


def inversion_data(perm: Permutation) -> InversionData:
    n = perm.n
    img = perm.images
    pairs = frozenset(
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if img[i - 1] > img[j - 1]
    )
    triples = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                a, b, c = img[i - 1], img[j - 1], img[k - 1]
                if (a > b > c) or (b > c > a) or (c > a > b):
                    triples.append((i, j, k))
    return InversionData(pairs, frozenset(triples))


def _weights_array(u, n: int) -> np.ndarray:
    if isinstance(u, SimplexWeights):
        arr = u.as_array()
    else:
        arr = np.asarray(u, dtype=float)
    if arr.shape != (n,):
        raise ValueError(f"weights must have shape ({n},), got {arr.shape}")
    return arr


def ab_values(perm: Permutation, u) -> tuple[float, float]:
    """The pair and triple weight polynomials of a straight shuffle.

    ``a = sum u_i u_j`` over inverted pairs and ``b = sum u_i u_j u_k``
    over the cyclic-descent triples.  For simplex weights on a straight
    shuffle these determine both coefficients: ``tau = 1 - 4a`` and
    ``rho = 1 - 6(a - b)``.  Here they are evaluated as formal
    polynomials, so ``u`` is not required to be normalised (the
    perturbation checks feed in off-simplex points on purpose).
    """
    arr = _weights_array(u, perm.n)
    data = inversion_data(perm)
    a = 0.0
    for i, j in sorted(data.pairs):
        a += arr[i - 1] * arr[j - 1]
    b = 0.0
    for i, j, k in sorted(data.triples):
        b += arr[i - 1] * arr[j - 1] * arr[k - 1]
    return a, b


@dataclass(eq=False)
class PerturbationCoeffs:
    """Taylor data of ``a`` and ``b`` along a direction in the simplex.

    With ``delta`` summing to zero, the exact finite expansions are::

        a(u + t*delta) = a(u) + t*alpha1 + t^2*alpha2
        b(u + t*delta) = b(u) + t*beta1  + t^2*beta2  + t^3*beta3

    ``a_vec``, ``b_vec`` and ``c_mat`` are the raw gradients/curvatures
    the five scalars contract against (``c_mat`` is symmetric with zero
    diagonal and only its upper triangle enters ``beta2``).
    """

    alpha1: float
    alpha2: float
    beta1: float
    beta2: float
    beta3: float
    a_vec: np.ndarray
    b_vec: np.ndarray
    c_mat: np.ndarray


def perturbation_coeffs(perm: Permutation, u, delta) -> PerturbationCoeffs:
    n = perm.n
    arr = _weights_array(u, n)
    d = np.asarray(delta, dtype=float)
    if d.shape != (n,):
        raise ValueError(f"delta must have shape ({n},), got {d.shape}")
    if abs(float(d.sum())) > 1e-12:
        raise ValueError(f"delta must sum to zero, got {float(d.sum())!r}")

    data = inversion_data(perm)
    a_vec = np.zeros(n)
    for i, j in data.pairs:
        a_vec[i - 1] += arr[j - 1]
        a_vec[j - 1] += arr[i - 1]
    b_vec = np.zeros(n)
    c_mat = np.zeros((n, n))
    for i, j, k in data.triples:
        b_vec[i - 1] += arr[j - 1] * arr[k - 1]
        b_vec[j - 1] += arr[i - 1] * arr[k - 1]
        b_vec[k - 1] += arr[i - 1] * arr[j - 1]
        c_mat[i - 1, j - 1] += arr[k - 1]
        c_mat[i - 1, k - 1] += arr[j - 1]
        c_mat[j - 1, k - 1] += arr[i - 1]
    c_mat = c_mat + c_mat.T

    alpha1 = float(a_vec @ d)
    alpha2 = 0.0
    for i, j in data.pairs:
        alpha2 += d[i - 1] * d[j - 1]
    beta1 = float(b_vec @ d)
    beta2 = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            beta2 += c_mat[i, j] * d[i] * d[j]
    beta3 = 0.0
    for i, j, k in data.triples:
        beta3 += d[i - 1] * d[j - 1] * d[k - 1]
    return PerturbationCoeffs(
        alpha1=alpha1,
        alpha2=float(alpha2),
        beta1=beta1,
        beta2=float(beta2),
        beta3=float(beta3),
        a_vec=a_vec,
        b_vec=b_vec,
        c_mat=c_mat,
    )


class _Fenwick:
    """Prefix sums with point updates, 1-based internally."""

    def __init__(self, size: int) -> None:
        self.tree = [0.0] * (size + 1)

    def add(self, i: int, value: float) -> None:
        i += 1
        while i < len(self.tree):
            self.tree[i] += value
            i += i & (-i)

    def prefix(self, i: int) -> float:
        # sum of entries 0..i inclusive
        i += 1
        total = 0.0
        while i > 0:
            total += self.tree[i]
            i -= i & (-i)
        return total


def oracle_tau_rho(shuffle: Shuffle, grid_m: int = 2000) -> RegionPoint:
    """Grid estimate of (tau, rho) using only point evaluations of the map.

    Places ``grid_m`` midpoints, evaluates the shuffle at each, and counts
    inverted pairs (for tau) and their x-distances (for rho) in
    O(m log m).  Ties in the evaluated heights are treated as concordant,
    matching stable sorting.  The error of either estimate decays like
    ``O(pieces / grid_m)``, so this is a cross-check, not an exact value.
    """
    m = int(grid_m)
    if m < 2:
        raise ValueError(f"grid_m must be >= 2, got {grid_m}")
    xs = (np.arange(m) + 0.5) / m
    hv = evaluate(shuffle, xs)

    order = np.argsort(hv, kind="stable")
    ranks = np.empty(m, dtype=int)
    ranks[order] = np.arange(m)

    counts = _Fenwick(m)
    xsums = _Fenwick(m)
    seen = 0
    seen_x = 0.0
    inv_pairs = 0.0
    wsum = 0.0
    for i in range(m):
        r = int(ranks[i])
        x = float(xs[i])
        gt = seen - counts.prefix(r)        # earlier points mapped above this one
        gx = seen_x - xsums.prefix(r)
        inv_pairs += gt
        wsum += x * gt - gx
        counts.add(r, 1.0)
        xsums.add(r, x)
        seen += 1
        seen_x += x

    inv_est = inv_pairs / (m * m)
    invs_est = wsum / (m * m)
    return RegionPoint(1.0 - 4.0 * inv_est, 1.0 - 12.0 * invs_est)
