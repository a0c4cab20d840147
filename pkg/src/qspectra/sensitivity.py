"""Relevant variables, retracts and mixed-edge counts.

Variables are numbered 1..n as x_1..x_n. Per-direction sequences are
ordinary 0-based lists (entry i-1 belongs to x_i).

The ``*_batch`` helpers take integer-coded tables of shape (B, q^n) and
count directly on the tables; the ``spectral_*`` functions compute the same
quantities from the spectrum.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domain import DiscreteFunction, DomainSpec, coordinate_table
from .degrees import UndefinedDegreeError, degree_profile, weight_table
from .graphs import EdgeCount, GraphKind, cycle_weight_table
from .transform import Spectrum, forward


class ExactKindRequired(ValueError):
    """Equality of values is needed but the function is floating complex."""


def _grid(codes: np.ndarray, q: int, n: int) -> np.ndarray:
    codes = np.asarray(codes)
    return codes.reshape(codes.shape[:-1] + (q,) * n)


def _check_index(i: int, n: int):
    if not 1 <= i <= n:
        raise IndexError(f"variable index {i} out of range 1..{n}")


def retract(f: DiscreteFunction, i: int, a: int) -> DiscreteFunction:
    """f with x_i fixed to a, as a function on Z_q^{n-1}."""
    _check_index(i, f.spec.n)
    if f.spec.n == 1:
        raise ValueError("cannot retract a function of one variable")
    sub = np.take(f.grid(), a % f.spec.q, axis=i - 1)
    return DiscreteFunction(DomainSpec(f.spec.q, f.spec.n - 1), f.kind, sub.reshape(-1))


# ---------------------------------------------------------------------------
# direct counts on coded tables
# ---------------------------------------------------------------------------

def relevance_batch(codes: np.ndarray, q: int, n: int) -> np.ndarray:
    """(B, n) mask: x_i is relevant iff some retract differs from the retract at 0."""
    g = _grid(codes, q, n)
    nb = g.ndim - n
    out = []
    for i in range(n):
        first = np.take(g, [0], axis=nb + i)
        diff = g != first
        out.append(diff.reshape(diff.shape[:nb] + (-1,)).any(axis=-1))
    return np.stack(out, axis=-1)


def mixed_cycle_batch(codes: np.ndarray, q: int, n: int) -> np.ndarray:
    """(B, n) mixed edges per direction of C_q^n (doubled edges for q = 2)."""
    g = _grid(codes, q, n)
    nb = g.ndim - n
    out = []
    for i in range(n):
        diff = g != np.roll(g, -1, axis=nb + i)
        out.append(diff.reshape(diff.shape[:nb] + (-1,)).sum(axis=-1))
    return np.stack(out, axis=-1)


def mixed_hamming_batch(codes: np.ndarray, q: int, n: int) -> np.ndarray:
    """(B, n) mixed edges per direction of H(n,q)."""
    g = _grid(codes, q, n)
    nb = g.ndim - n
    out = []
    for i in range(n):
        total = 0
        for d in range(1, q):
            diff = g != np.roll(g, -d, axis=nb + i)
            total = total + diff.reshape(diff.shape[:nb] + (-1,)).sum(axis=-1)
        out.append(total // 2)
    return np.stack(out, axis=-1)


def retract_mismatch_batch(codes: np.ndarray, q: int, n: int, i: int) -> np.ndarray:
    """(B, q, q) count of points where retracts x_i=a and x_i=b differ (i 0-based)."""
    g = _grid(codes, q, n)
    nb = g.ndim - n
    sl = np.moveaxis(g, nb + i, nb)
    sl = sl.reshape(sl.shape[: nb + 1] + (-1,))
    return (sl[..., :, None, :] != sl[..., None, :, :]).sum(axis=-1)


def retract_pairs_batch(codes: np.ndarray, q: int, n: int) -> np.ndarray:
    """(B, n) number of ordered pairs of distinct retracts per coordinate."""
    return np.stack([(retract_mismatch_batch(codes, q, n, i) > 0).sum(axis=(-1, -2))
                     for i in range(n)], axis=-1)


def _codes(f: DiscreteFunction) -> np.ndarray:
    if not f.exact:
        raise ExactKindRequired("mixed-edge counting needs an exact value kind")
    return f.values


# ---------------------------------------------------------------------------
# single-function API
# ---------------------------------------------------------------------------

def relevant_variables(f: DiscreteFunction) -> frozenset[int]:
    if f.exact:
        mask = relevance_batch(f.values, f.spec.q, f.spec.n)
    else:
        g = f.grid()
        mask = np.array([not np.allclose(g, np.take(g, [0], axis=i), atol=1e-12, rtol=0)
                         for i in range(f.spec.n)])
    return frozenset(int(i) + 1 for i in np.flatnonzero(mask))


def num_relevant(f: DiscreteFunction) -> int:
    return len(relevant_variables(f))


def mixed_edges(f: DiscreteFunction, kind: GraphKind) -> EdgeCount:
    codes = _codes(f)
    q, n = f.spec.q, f.spec.n
    if GraphKind(kind) is GraphKind.CYCLE:
        per = mixed_cycle_batch(codes, q, n)
    else:
        per = mixed_hamming_batch(codes, q, n)
    per = tuple(int(v) for v in per)
    return EdgeCount(sum(per), per)


def retract_pair_count(f: DiscreteFunction, i: int) -> int:
    """sum_j t_j (q - t_j) over the equality classes of retracts at x_i."""
    _check_index(i, f.spec.n)
    mism = retract_mismatch_batch(_codes(f), f.spec.q, f.spec.n, i - 1)
    return int((mism > 0).sum())


# ---------------------------------------------------------------------------
# spectral identities
# ---------------------------------------------------------------------------

def _weighted_power(s: Spectrum, table: np.ndarray) -> float:
    return float((s.power() * table).sum())


def spectral_I_two_valued(s: Spectrum) -> float:
    """Mixed edges of C_q^n for a +-1 function: q^{-n} sum |W|^2 sum_k a_k sin^2(pi k/q)."""
    return _weighted_power(s, cycle_weight_table(s.spec.q, s.spec.n)) / s.spec.size


def spectral_I_three_valued(s: Spectrum) -> float:
    """Mixed edges of C_q^n for values in {1, w, w^2}: 4/(3 q^n) times the same sum."""
    return 4 * _weighted_power(s, cycle_weight_table(s.spec.q, s.spec.n)) / (3 * s.spec.size)


def spectral_I_three_valued_hamming(s: Spectrum) -> float:
    """Mixed edges of H(n,q) for values in {1, w, w^2}: q/(3 q^n) sum |W|^2 wt(z)."""
    q = s.spec.q
    return q * _weighted_power(s, weight_table(q, s.spec.n)) / (3 * s.spec.size)


def round_count(value: float, tol: float = 1e-6) -> int:
    """Nearest integer; raises if ``value`` is further than ``tol`` from it."""
    r = round(value)
    if abs(value - r) > tol:
        raise ArithmeticError(f"spectral count {value!r} is not within {tol} of an integer")
    return int(r)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SensitivityReport:
    relevant: frozenset
    t: int
    I_cycle: int
    I_hamming: int
    per_direction_cycle: tuple
    per_direction_hamming: tuple


def sensitivity_report(f: DiscreteFunction) -> SensitivityReport:
    cyc = mixed_edges(f, GraphKind.CYCLE)
    ham = mixed_edges(f, GraphKind.HAMMING)
    rel = relevant_variables(f)
    return SensitivityReport(rel, len(rel), cyc.total, ham.total, cyc.per_direction, ham.per_direction)


@dataclass(frozen=True)
class SupportReport:
    """Support and vanishing-coefficient checks for one function.

    ``support_ok`` / ``retract_difference_ok`` are None when q < 3 (the
    support bound needs q >= 3) or the function is zero.
    ``deg0_le_n_minus_t`` records the literal alternative reading of the
    vanishing corollary; it is not asserted.
    """

    deg0: int
    t: int
    support: int
    indicator_support: int | None
    support_ok: bool | None
    retract_difference_ok: bool | None
    min_retract_difference: int | None
    vanishing_ok: bool
    deg0_le_t: bool
    deg0_le_n_minus_t: bool

    @property
    def ok(self) -> bool:
        return (self.support_ok is not False and self.retract_difference_ok is not False
                and self.vanishing_ok and self.deg0_le_t)


def check_support_bounds(f: DiscreteFunction, s: Spectrum | None = None) -> SupportReport:
    q, n = f.spec.q, f.spec.n
    codes = _codes(f)
    s = forward(f) if s is None else s
    try:
        deg0 = degree_profile(s).deg0
    except UndefinedDegreeError:
        deg0 = 0
    relevant = relevance_batch(codes, q, n)
    t = int(relevant.sum())
    support_mask = s.support()

    # W(z) = 0 whenever z_i != 0 at an irrelevant coordinate
    pts = coordinate_table(q, n)
    touches_irrelevant = ((pts != 0) & ~relevant[None, :]).any(axis=1)
    vanishing_ok = not bool((support_mask & touches_irrelevant).any())

    if f.kind == "three_valued_omega":
        support = f.spec.size
    else:
        support = int(np.count_nonzero(codes))
    indicator = None
    if f.kind == "two_valued_pm1":
        indicator = int(np.count_nonzero(codes == -1))

    support_ok = retract_ok = min_diff = None
    if q >= 3 and support_mask.any():
        floor = q ** (n - deg0)
        support_ok = support == 0 or support >= floor
        if indicator:
            ind = f.to_boolean()
            ind_deg0 = degree_profile(forward(ind)).deg0
            support_ok = support_ok and indicator >= q ** (n - ind_deg0)
        diffs = [retract_mismatch_batch(codes, q, n, i) for i in range(n)]
        positive = np.concatenate([d[d > 0] for d in diffs])
        if positive.size:
            min_diff = int(positive.min())
            retract_ok = min_diff >= floor
        else:
            retract_ok = True
    return SupportReport(deg0, t, support, indicator, support_ok, retract_ok, min_diff,
                         vanishing_ok, deg0 <= t, deg0 <= n - t)
