"""Finitely supported sequences and closed-form decay classes.

Two kinds of data live here.

``FiniteSequence`` models real sequences indexed by the naturals
(1-based) that vanish after finitely many entries.  These are the test
vectors fed to covariance forms, the shifts applied to measures, and the
coefficient vectors of cylindrical functions.

The decay classes (``Constant``, ``PowerDecay``, ``Geometric``,
``ConstantPlusPower``, ``Prefixed``, ``Tabulated``) describe infinite
positive-or-signed sequences in closed form.  Their point is exactness:
questions like "does sum a_n^2 rho_n converge?" are decided symbolically,
never guessed from floating partial sums.  The decision machinery works
on *atoms* ``k * n^alpha * q^n``: every closed-form class here is a finite
combination of atoms, combinations are closed under products and
differences, and the eventually-dominant atom determines convergence of
the associated positive series:

    sum n^alpha q^n  converges  iff  q < 1, or q = 1 and alpha < -1.

``Tabulated`` carries a finite table and no tail information; symbolic
deciders refuse it (callers surface that as an undecided/heuristic
verdict).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .errors import InputError, UndecidableError

__all__ = [
    "FiniteSequence",
    "Constant",
    "PowerDecay",
    "Geometric",
    "ConstantPlusPower",
    "Prefixed",
    "Tabulated",
    "DecaySeq",
    "seq_value",
    "seq_values",
    "tail_atoms",
    "require_positive",
    "series_converges",
    "ratio_series_converges",
    "ratio_is_bounded",
    "atoms_mul",
    "atoms_sub",
    "dominant_atom",
]


# ---------------------------------------------------------------------------
# finitely supported sequences


@dataclass(frozen=True)
class FiniteSequence:
    """A real sequence over indices 1, 2, ... with finite support.

    Stored canonically: strictly increasing indices, no explicit zeros.
    An absent index means the value 0.
    """

    entries: tuple[tuple[int, float], ...] = ()

    def __post_init__(self):
        seen = set()
        for idx, val in self.entries:
            if not isinstance(idx, int) or idx < 1:
                raise InputError(f"sequence index must be a natural >= 1, got {idx!r}")
            if idx in seen:
                raise InputError(f"duplicate sequence index {idx}")
            seen.add(idx)
            if not math.isfinite(val):
                raise InputError(f"sequence value at index {idx} is not finite")
        canonical = tuple(sorted((i, float(v)) for i, v in self.entries if v != 0.0))
        object.__setattr__(self, "entries", canonical)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, float]]) -> "FiniteSequence":
        acc: dict[int, float] = {}
        for idx, val in pairs:
            acc[idx] = acc.get(idx, 0.0) + float(val)
        return cls(tuple(acc.items()))

    @classmethod
    def basis(cls, index: int, value: float = 1.0) -> "FiniteSequence":
        return cls(((index, value),))

    def value(self, index: int) -> float:
        for idx, val in self.entries:
            if idx == index:
                return val
        return 0.0

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(idx for idx, _ in self.entries)

    @property
    def max_index(self) -> int:
        return self.entries[-1][0] if self.entries else 0

    def is_zero(self) -> bool:
        return not self.entries

    def scale(self, factor: float) -> "FiniteSequence":
        return FiniteSequence(tuple((i, factor * v) for i, v in self.entries))

    def __add__(self, other: "FiniteSequence") -> "FiniteSequence":
        return FiniteSequence.from_pairs(self.entries + other.entries)

    def __sub__(self, other: "FiniteSequence") -> "FiniteSequence":
        return self + other.scale(-1.0)

    def __neg__(self) -> "FiniteSequence":
        return self.scale(-1.0)

    def as_vector(self, length: int) -> np.ndarray:
        """Dense coordinates 1..length; support must fit."""
        if self.max_index > length:
            raise InputError(
                f"sequence support reaches index {self.max_index}, beyond length {length}"
            )
        out = np.zeros(length)
        for idx, val in self.entries:
            out[idx - 1] = val
        return out


# ---------------------------------------------------------------------------
# decay classes


@dataclass(frozen=True)
class Constant:
    """s_n = value for every n."""

    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise InputError("constant class needs a finite value")


@dataclass(frozen=True)
class PowerDecay:
    """s_n = c * n**(-p) with p > 0."""

    c: float
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.c) and math.isfinite(self.p)):
            raise InputError("power class needs finite parameters")
        if self.p <= 0:
            raise InputError(f"power class needs p > 0, got p={self.p}")


@dataclass(frozen=True)
class Geometric:
    """s_n = c * q**n with 0 < q < 1."""

    c: float
    q: float

    def __post_init__(self):
        if not (math.isfinite(self.c) and math.isfinite(self.q)):
            raise InputError("geometric class needs finite parameters")
        if not (0.0 < self.q < 1.0):
            raise InputError(f"geometric class needs 0 < q < 1, got q={self.q}")


@dataclass(frozen=True)
class ConstantPlusPower:
    """s_n = base + c * n**(-p) with base != 0, p > 0.

    Extends the multiplicative classes with a constant-plus-correction
    shape (e.g. 1 + 1/n), which is where equivalence-vs-singularity
    questions become non-trivial.
    """

    base: float
    c: float
    p: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.base, self.c, self.p)):
            raise InputError("constant-plus-power class needs finite parameters")
        if self.base == 0.0:
            raise InputError("constant-plus-power with base=0 is a plain power class")
        if self.c == 0.0:
            raise InputError("constant-plus-power with c=0 is a plain constant class")
        if self.p <= 0:
            raise InputError(f"constant-plus-power class needs p > 0, got p={self.p}")


@dataclass(frozen=True)
class Prefixed:
    """Finitely many explicit values, then a closed-form tail."""

    prefix: tuple[float, ...]
    tail: "Union[Constant, PowerDecay, Geometric, ConstantPlusPower]"

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(float(v) for v in self.prefix))
        if not self.prefix:
            raise InputError("prefixed class needs a nonempty prefix")
        if not all(math.isfinite(v) for v in self.prefix):
            raise InputError("prefixed class needs finite prefix values")
        if isinstance(self.tail, (Prefixed, Tabulated)):
            raise InputError("prefixed tail must be a closed-form decay class")


@dataclass(frozen=True)
class Tabulated:
    """A finite table of values with *no* tail information.

    Symbolic series decisions are refused on this class; consumers report
    heuristic/undecided verdicts built from partial sums instead.
    """

    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if not self.values:
            raise InputError("tabulated class needs at least one value")
        if not all(math.isfinite(v) for v in self.values):
            raise InputError("tabulated class needs finite values")


DecaySeq = Union[Constant, PowerDecay, Geometric, ConstantPlusPower, Prefixed, Tabulated]

_CLOSED_FORM = (Constant, PowerDecay, Geometric, ConstantPlusPower)


def seq_value(seq: DecaySeq, n: int) -> float:
    """Entry s_n (1-based)."""
    if n < 1:
        raise InputError(f"sequence entries are indexed from 1, got n={n}")
    if isinstance(seq, Constant):
        return seq.value
    if isinstance(seq, PowerDecay):
        return seq.c * float(n) ** (-seq.p)
    if isinstance(seq, Geometric):
        return seq.c * seq.q**n
    if isinstance(seq, ConstantPlusPower):
        return seq.base + seq.c * float(n) ** (-seq.p)
    if isinstance(seq, Prefixed):
        if n <= len(seq.prefix):
            return seq.prefix[n - 1]
        return seq_value(seq.tail, n)
    if isinstance(seq, Tabulated):
        if n > len(seq.values):
            raise InputError(
                f"tabulated sequence has {len(seq.values)} entries, index {n} requested"
            )
        return seq.values[n - 1]
    raise InputError(f"not a decay class: {seq!r}")


def seq_values(seq: DecaySeq, n_max: int) -> np.ndarray:
    """Entries s_1..s_{n_max} as a dense vector."""
    if n_max < 1:
        raise InputError(f"need n_max >= 1, got {n_max}")
    n = np.arange(1, n_max + 1, dtype=float)
    if isinstance(seq, Constant):
        return np.full(n_max, seq.value)
    if isinstance(seq, PowerDecay):
        return seq.c * n ** (-seq.p)
    if isinstance(seq, Geometric):
        return seq.c * seq.q**n
    if isinstance(seq, ConstantPlusPower):
        return seq.base + seq.c * n ** (-seq.p)
    if isinstance(seq, Prefixed):
        k = min(len(seq.prefix), n_max)
        head = np.asarray(seq.prefix[:k])
        if n_max <= len(seq.prefix):
            return head.copy()
        tail = seq_values(seq.tail, n_max)[k:]
        return np.concatenate([head, tail])
    if isinstance(seq, Tabulated):
        if n_max > len(seq.values):
            raise InputError(
                f"tabulated sequence has {len(seq.values)} entries, {n_max} requested"
            )
        return np.asarray(seq.values[:n_max])
    raise InputError(f"not a decay class: {seq!r}")


def table_length(seq: DecaySeq) -> int | None:
    """Length of the usable range (None = infinite)."""
    return len(seq.values) if isinstance(seq, Tabulated) else None


def require_positive(seq: DecaySeq, what: str = "sequence") -> DecaySeq:
    """Validate s_n > 0 for all n; returns the input for chaining."""
    if isinstance(seq, Constant):
        ok = seq.value > 0
    elif isinstance(seq, PowerDecay):
        ok = seq.c > 0
    elif isinstance(seq, Geometric):
        ok = seq.c > 0
    elif isinstance(seq, ConstantPlusPower):
        # monotone in n, so the extremes are n=1 and the limit
        ok = seq.base > 0 and seq.base + seq.c > 0
    elif isinstance(seq, Prefixed):
        ok = all(v > 0 for v in seq.prefix)
        if ok:
            require_positive(seq.tail, what)
    elif isinstance(seq, Tabulated):
        ok = all(v > 0 for v in seq.values)
    else:
        raise InputError(f"not a decay class: {seq!r}")
    if not ok:
        raise InputError(f"{what} must be strictly positive at every index")
    return seq


# ---------------------------------------------------------------------------
# symbolic series engine
#
# An atom dict maps (alpha, q) -> coefficient, representing the tail
# s_n = sum_i k_i n^{alpha_i} q_i^n.  Only the tail matters: prefixes alter
# finitely many terms and never change a convergence or boundedness verdict.

Atoms = dict[tuple[float, float], float]


def tail_atoms(seq: DecaySeq) -> Atoms:
    """Atom decomposition of the sequence tail.

    Raises ``UndecidableError`` for tabulated input, which has no tail.
    """
    if isinstance(seq, Constant):
        return {(0.0, 1.0): seq.value}
    if isinstance(seq, PowerDecay):
        return {(-seq.p, 1.0): seq.c}
    if isinstance(seq, Geometric):
        return {(0.0, seq.q): seq.c}
    if isinstance(seq, ConstantPlusPower):
        return {(0.0, 1.0): seq.base, (-seq.p, 1.0): seq.c}
    if isinstance(seq, Prefixed):
        return tail_atoms(seq.tail)
    if isinstance(seq, Tabulated):
        raise UndecidableError(
            "tabulated values carry no tail information; symbolic decision refused"
        )
    raise InputError(f"not a decay class: {seq!r}")


def _clean(atoms: Atoms) -> Atoms:
    return {key: k for key, k in atoms.items() if k != 0.0}


def atoms_mul(a: Atoms, b: Atoms) -> Atoms:
    out: Atoms = {}
    for (al1, q1), k1 in a.items():
        for (al2, q2), k2 in b.items():
            key = (al1 + al2, q1 * q2)
            out[key] = out.get(key, 0.0) + k1 * k2
    return _clean(out)


def atoms_sub(a: Atoms, b: Atoms) -> Atoms:
    out = dict(a)
    for key, k in b.items():
        out[key] = out.get(key, 0.0) - k
    return _clean(out)


def dominant_atom(atoms: Atoms) -> tuple[float, float, float] | None:
    """Asymptotically dominant atom as (alpha, q, coeff), or None if zero.

    Larger q wins; at equal q, larger alpha wins.  The tail of the
    combination is eventually a constant multiple of the dominant atom.
    """
    live = [(q, alpha, k) for (alpha, q), k in atoms.items() if k != 0.0]
    if not live:
        return None
    q, alpha, k = max(live)
    return (alpha, q, k)


def _theta_converges(alpha: float, q: float) -> bool:
    return q < 1.0 or (q == 1.0 and alpha < -1.0)


def series_converges(atoms: Atoms) -> bool:
    """Whether sum_n s_n < infinity for an eventually-positive combination."""
    dom = dominant_atom(atoms)
    if dom is None:
        return True
    alpha, q, coeff = dom
    if coeff < 0:
        raise InputError("series decision requires an eventually-positive sequence")
    return _theta_converges(alpha, q)


def ratio_series_converges(numer: Atoms, denom: Atoms) -> bool:
    """Whether sum_n (numer_n / denom_n) < infinity.

    The numerator must be eventually nonnegative and the denominator
    eventually strictly positive; both hold for the squares and variance
    sequences this package feeds in.
    """
    dom_n = dominant_atom(numer)
    if dom_n is None:
        return True
    dom_d = dominant_atom(denom)
    if dom_d is None or dom_d[2] <= 0:
        raise InputError("ratio series needs a positive denominator")
    alpha = dom_n[0] - dom_d[0]
    q = dom_n[1] / dom_d[1]
    return _theta_converges(alpha, q)


def ratio_is_bounded(numer: Atoms, denom: Atoms) -> bool:
    """Whether numer_n / denom_n stays within (0, infinity) bounds.

    True exactly when both tails share the dominant shape (same alpha and
    q), so the ratio tends to a finite nonzero limit.
    """
    dom_n = dominant_atom(numer)
    dom_d = dominant_atom(denom)
    if dom_n is None or dom_d is None:
        return False
    return dom_n[0] == dom_d[0] and dom_n[1] == dom_d[1]
