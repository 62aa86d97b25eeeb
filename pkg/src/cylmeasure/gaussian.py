"""Gaussian measures on sequence space with diagonal covariance.

A positive variance sequence rho defines the centered Gaussian product
measure whose coordinates are independent with variance rho_n.  Its
characteristic function on finitely supported test vectors is
exp(-<xi, xi>_rho / 2) with the covariance form

    <xi, eta>_rho = sum_n rho_n xi_n eta_n,

and its polynomial moments close under the pairing rule: odd moments
vanish, even moments are sums over perfect matchings of two-point
covariances.  Every operation here is exact given the covariance class;
Monte Carlo enters only through the (seeded) sampler.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import InputError
from .sequences import DecaySeq, FiniteSequence, require_positive, seq_value, seq_values

__all__ = [
    "CovarianceSeq",
    "GaussianSample",
    "Pairing",
    "GramReport",
    "inner",
    "chi",
    "sample",
    "draw_coordinates",
    "pairings",
    "wick_moment",
    "positive_type_gram",
    "PAIRING_CAP",
]

# A covariance is any positive decay class; the alias names the role.
CovarianceSeq = DecaySeq

# (2n-1)!! grows too fast beyond this to enumerate or sum pairings
PAIRING_CAP = 20

Pairing = tuple[tuple[int, int], ...]


def inner(xi: FiniteSequence, eta: FiniteSequence, cov: CovarianceSeq) -> float:
    """Covariance form sum_n rho_n xi_n eta_n (finite: both supports are)."""
    require_positive(cov, "covariance")
    eta_map = dict(eta.entries)
    total = 0.0
    for idx, val in xi.entries:
        other = eta_map.get(idx)
        if other is not None:
            total += seq_value(cov, idx) * val * other
    return total


def chi(xi: FiniteSequence, cov: CovarianceSeq) -> float:
    """Characteristic function exp(-<xi,xi>/2); equals 1 at xi = 0."""
    return math.exp(-0.5 * inner(xi, xi, cov))


@dataclass(frozen=True, eq=False)
class GaussianSample:
    """A truncated draw: independent N(0, rho_n) for n = 1..truncation."""

    truncation: int
    values: np.ndarray
    seed: int
    cov: CovarianceSeq


def draw_coordinates(
    cov: CovarianceSeq, n_coords: int, n_samples: int, rng: np.random.Generator
) -> np.ndarray:
    """(n_samples, n_coords) matrix of independent centered Gaussians."""
    sd = np.sqrt(seq_values(require_positive(cov, "covariance"), n_coords))
    return rng.standard_normal((n_samples, n_coords)) * sd


def sample(cov: CovarianceSeq, n_coords: int, seed: int) -> GaussianSample:
    """One truncated sample, reproducible from (seed, n_coords, cov)."""
    if n_coords < 1:
        raise InputError(f"need a truncation >= 1, got {n_coords}")
    rng = np.random.default_rng(seed)
    values = draw_coordinates(cov, n_coords, 1, rng)[0]
    return GaussianSample(truncation=n_coords, values=values, seed=seed, cov=cov)


def pairings(two_n: int, cap: int = PAIRING_CAP) -> list[Pairing]:
    """All perfect matchings of the labels 1..two_n, in canonical order.

    Each pairing stores pairs (i, j) with i < j, sorted by first element;
    the list enumerates the smallest free label against each partner in
    increasing order, recursively.  There are (two_n - 1)!! of them.
    """
    if two_n < 0 or two_n % 2 != 0:
        raise InputError(f"pairings are defined for even nonnegative counts, got {two_n}")
    if two_n > cap:
        raise InputError(f"{two_n} labels exceed the pairing cap {cap}")

    def rec(labels: tuple[int, ...]) -> list[Pairing]:
        if not labels:
            return [()]
        first, rest = labels[0], labels[1:]
        out = []
        for k, partner in enumerate(rest):
            remaining = rest[:k] + rest[k + 1 :]
            for sub in rec(remaining):
                out.append(((first, partner),) + sub)
        return out

    return rec(tuple(range(1, two_n + 1)))


def wick_moment(
    cov: CovarianceSeq, xs: Sequence[FiniteSequence], cap: int = PAIRING_CAP
) -> float:
    """Gaussian moment E[phi(x_1) ... phi(x_k)] by the pairing rule.

    Zero for odd k.  For even k the sum over all perfect matchings of
    products of pairwise covariances is evaluated by contracting the
    first remaining label against every partner, memoized on the set of
    remaining labels, which visits each matching exactly once without
    materializing the (k-1)!! list.
    """
    k = len(xs)
    if k > cap:
        raise InputError(f"{k} factors exceed the pairing cap {cap}")
    if k % 2 != 0:
        return 0.0
    if k == 0:
        return 1.0
    gram = [[inner(a, b, cov) for b in xs] for a in xs]

    memo: dict[int, float] = {0: 1.0}

    def contract(mask: int) -> float:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        i = (mask & -mask).bit_length() - 1  # lowest remaining label
        rest = mask & ~(1 << i)
        total = 0.0
        m = rest
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            total += gram[i][j] * contract(rest & ~(1 << j))
        memo[mask] = total
        return total

    return contract((1 << k) - 1)


@dataclass(frozen=True)
class GramReport:
    min_eigenvalue: float
    psd: bool
    size: int


def positive_type_gram(
    chi_fn: Callable[[FiniteSequence], complex],
    points: Sequence[FiniteSequence],
    tol: float = 1e-10,
    max_points: int = 64,
) -> GramReport:
    """Positive-type diagnostic: spectrum of the matrix chi(xi_k - xi_l).

    For the Fourier transform of a probability measure this matrix is
    positive semi-definite at any point set.  The verdict is PSD when the
    minimum eigenvalue is >= -tol, which separates round-off from genuine
    indefiniteness at this size.  ``chi_fn`` may return complex values
    (Hermitian case); the centered Gaussian chi is real and symmetric.
    """
    if tol < 0:
        raise InputError(f"tolerance must be nonnegative, got {tol}")
    m = len(points)
    if m == 0:
        raise InputError("positive_type_gram needs at least one point")
    if m > max_points:
        raise InputError(f"{m} points exceed the limit {max_points}")
    if len(set(points)) != m:
        raise InputError("points must be distinct")
    gram = np.empty((m, m), dtype=complex)
    for a in range(m):
        for b in range(m):
            gram[a, b] = chi_fn(points[a] - points[b])
    if np.allclose(gram.imag, 0.0, atol=0.0):
        gram = gram.real
        gram = 0.5 * (gram + gram.T)
    else:
        gram = 0.5 * (gram + gram.conj().T)
    min_eig = float(np.linalg.eigvalsh(gram)[0])
    return GramReport(min_eigenvalue=min_eig, psd=min_eig >= -tol, size=m)
