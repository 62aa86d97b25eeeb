"""Haar measure on the torus family behind the compactified line.

A finite set of reals k_1..k_n that admits no nonzero integer relation
sum m_i k_i = 0 freely generates a subgroup of the line; its character
group is an n-torus, and the compatible family of these tori carries
Haar measure as uniform independent phases.  Cylindrical integrals over
the big space reduce to torus integrals, evaluated here by periodic
trapezoid rule (spectrally accurate on trigonometric integrands) or by
seeded Monte Carlo.

True rational independence is not decidable in floating point; the
certificate is an exhaustive search up to a named coefficient bound.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import InputError, NumericError

__all__ = [
    "FrequencySet",
    "CharacterSample",
    "IndependenceResult",
    "QuadratureMethod",
    "MCMethod",
    "HaarIntegralResult",
    "independence_check",
    "haar_sample",
    "haar_sample_batch",
    "haar_cylinder_integral",
    "SEARCH_BUDGET",
]

SEARCH_BUDGET = 10**8
_REL_TOL = 1e-12


@dataclass(frozen=True)
class FrequencySet:
    """Distinct nonzero real frequencies k_1..k_n, n >= 1."""

    freqs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "freqs", tuple(float(v) for v in self.freqs))
        if len(self.freqs) < 1:
            raise InputError("frequency set needs at least one frequency")
        if any(v == 0.0 or not math.isfinite(v) for v in self.freqs):
            raise InputError("frequencies must be finite and nonzero")
        if len(set(self.freqs)) != len(self.freqs):
            raise InputError("frequencies must be distinct")

    @property
    def n(self) -> int:
        return len(self.freqs)


@dataclass(frozen=True)
class IndependenceResult:
    """Outcome of the bounded integer-relation search.

    ``independent`` certifies no relation with coefficients bounded by
    ``bound`` in absolute value; otherwise ``witness`` is a minimal
    nonzero integer vector (smallest max-norm, then lexicographic, first
    nonzero component positive) with sum witness_i * k_i = 0.
    """

    independent: bool
    bound: int
    witness: tuple[int, ...] | None = None


def _normalize_witness(m: tuple[int, ...]) -> tuple[int, ...]:
    for v in m:
        if v != 0:
            return m if v > 0 else tuple(-x for x in m)
    return m


def independence_check(gamma: FrequencySet, bound: int) -> IndependenceResult:
    """Search |m_i| <= bound, m != 0, for a null combination sum m_i k_i = 0.

    A combination counts as null when it vanishes to relative tolerance
    1e-12 against sum |m_i k_i|, which protects against round-off for
    inputs given at full precision.  The search is exhaustive, so the
    budget (2*bound+1)^n is capped; ask for a smaller bound if exceeded.
    """
    if bound < 1:
        raise InputError(f"coefficient bound must be >= 1, got {bound}")
    n = gamma.n
    width = 2 * bound + 1
    if width**n > SEARCH_BUDGET:
        raise InputError(
            f"search space {width}^{n} exceeds the budget {SEARCH_BUDGET}; "
            "use a smaller coefficient bound"
        )
    ks = np.asarray(gamma.freqs)
    coeffs = np.arange(-bound, bound + 1)

    hits: list[tuple[int, ...]] = []
    if n == 1:
        # m * k = 0 with k != 0 forces m = 0
        return IndependenceResult(True, bound)

    # vectorize the last two coordinates, loop over the rest
    tail_a = coeffs[:, None] * ks[-2]
    tail_b = coeffs[None, :] * ks[-1]
    tail_sum = tail_a + tail_b
    tail_scale = np.abs(tail_a) + np.abs(tail_b)

    def scan_head(head: tuple[int, ...]) -> None:
        head_sum = float(np.dot(head, ks[: n - 2]))
        head_scale = float(np.abs(np.asarray(head) * ks[: n - 2]).sum())
        total = head_sum + tail_sum
        scale = head_scale + tail_scale
        mask = np.abs(total) <= _REL_TOL * scale
        if not mask.any():
            return
        for i, j in zip(*np.nonzero(mask)):
            m = head + (int(coeffs[i]), int(coeffs[j]))
            if any(v != 0 for v in m):
                hits.append(_normalize_witness(m))

    if n == 2:
        scan_head(())
    else:
        for head in itertools.product(coeffs.tolist(), repeat=n - 2):
            scan_head(tuple(int(v) for v in head))

    if not hits:
        return IndependenceResult(True, bound)
    witness = min(hits, key=lambda m: (max(abs(v) for v in m), m))
    return IndependenceResult(False, bound, witness)


@dataclass(frozen=True, eq=False)
class CharacterSample:
    """One Haar draw: independent uniform phases on [0, 2pi)."""

    phases: np.ndarray
    seed: int


def haar_sample(gamma: FrequencySet, seed: int) -> CharacterSample:
    rng = np.random.default_rng(seed)
    return CharacterSample(phases=rng.uniform(0.0, 2.0 * math.pi, gamma.n), seed=seed)


def haar_sample_batch(gamma: FrequencySet, n_samples: int, seed: int) -> np.ndarray:
    """(n_samples, n) matrix of independent Haar draws."""
    if n_samples < 1:
        raise InputError(f"need n_samples >= 1, got {n_samples}")
    rng = np.random.default_rng(seed)
    return rng.uniform(0.0, 2.0 * math.pi, (n_samples, gamma.n))


@dataclass(frozen=True)
class QuadratureMethod:
    """Periodic trapezoid rule with points_per_axis nodes per angle."""

    points_per_axis: int = 16

    def __post_init__(self):
        if self.points_per_axis < 2:
            raise InputError("quadrature needs at least 2 points per axis")


@dataclass(frozen=True)
class MCMethod:
    n_samples: int
    seed: int

    def __post_init__(self):
        if self.n_samples < 2:
            raise InputError(f"need n_samples >= 2, got {self.n_samples}")


Method = Union[QuadratureMethod, MCMethod]

QUADRATURE_MAX_AXES = 4


@dataclass(frozen=True)
class HaarIntegralResult:
    value: complex
    error_bound: float
    method: str


def _evaluate(f: Callable, points: np.ndarray) -> np.ndarray:
    """Apply f to rows of (M, n); accepts vectorized or scalar callables."""
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            vals = np.asarray(f(points))
        if vals.shape == (points.shape[0],):
            return vals.astype(complex)
    except Exception:
        pass
    return np.array([f(row) for row in points], dtype=complex)


def _grid_mean(f: Callable, n_axes: int, points: int) -> complex:
    theta = 2.0 * math.pi * np.arange(points) / points
    mesh = np.meshgrid(*([theta] * n_axes), indexing="ij")
    flat = np.stack([m.reshape(-1) for m in mesh], axis=1)
    vals = _evaluate(f, flat)
    if not np.all(np.isfinite(vals)):
        raise NumericError("integrand produced a non-finite value on the grid")
    return complex(vals.mean())


def haar_cylinder_integral(
    gamma: FrequencySet, f: Callable, method: Method
) -> HaarIntegralResult:
    """Normalized Haar integral of f over the torus of ``gamma``.

    Quadrature (n <= 4 axes) uses the periodic trapezoid rule, which
    integrates trigonometric polynomials below the node count exactly;
    the reported bound is the change under doubling the nodes.  Monte
    Carlo reports the standard error of the mean.  ``f`` takes a phase
    vector (or a stacked (M, n) array when vectorized) and may return
    complex values.
    """
    if isinstance(method, QuadratureMethod):
        if gamma.n > QUADRATURE_MAX_AXES:
            raise InputError(
                f"quadrature supports up to {QUADRATURE_MAX_AXES} axes, got {gamma.n}; "
                "use Monte Carlo"
            )
        coarse = _grid_mean(f, gamma.n, method.points_per_axis)
        fine = _grid_mean(f, gamma.n, 2 * method.points_per_axis)
        bound = abs(fine - coarse) + 1e-14
        return HaarIntegralResult(fine, bound, f"quadrature({method.points_per_axis}x2)")
    if isinstance(method, MCMethod):
        points = haar_sample_batch(gamma, method.n_samples, method.seed)
        vals = _evaluate(f, points)
        if not np.all(np.isfinite(vals)):
            raise NumericError("integrand produced a non-finite value on a sample")
        est = complex(vals.mean())
        se = math.sqrt(
            (np.var(vals.real, ddof=1) + np.var(vals.imag, ddof=1)) / method.n_samples
        )
        return HaarIntegralResult(est, se, f"mc({method.n_samples},seed={method.seed})")
    raise InputError(f"unknown integration method: {method!r}")
