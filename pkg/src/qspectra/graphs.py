"""Cayley graphs on Z_q^n: the Hamming graph H(n,q) and the cycle power C_q^n.

C_q^n uses the connecting set {-1, 1} per coordinate. For q = 2 both
generators coincide and the graph is kept as a multigraph with every
hypercube edge doubled, so the character eigenvalues stay
2n - 4 sum_k a_k(z) sin^2(pi k/q) for every q.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .domain import CycloNum, DomainSpec, coordinate_table, sym_rep_table
from .degrees import weight_table
from .transform import Spectrum


class GraphKind(str, Enum):
    HAMMING = "hamming"
    CYCLE = "cycle_power"

    def degree(self, spec: DomainSpec) -> int:
        return spec.n * (spec.q - 1) if self is GraphKind.HAMMING else 2 * spec.n

    def connecting_set(self, q: int) -> tuple[int, ...]:
        """Per-coordinate generators, with multiplicity."""
        return tuple(range(1, q)) if self is GraphKind.HAMMING else (1, q - 1)


@dataclass(frozen=True)
class EdgeCount:
    total: int
    per_direction: tuple[int, ...]


@lru_cache(maxsize=None)
def sin2_table(q: int) -> np.ndarray:
    """sin^2(pi k / q) indexed by residue k."""
    k = sym_rep_table(q)
    table = np.sin(np.pi * k / q) ** 2
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def cycle_weight_table(q: int, n: int) -> np.ndarray:
    """sum_k a_k(z) sin^2(pi k/q) for every z in flat order."""
    table = sin2_table(q)[coordinate_table(q, n)].sum(axis=1)
    table.setflags(write=False)
    return table


def eigenvalue_hamming(z: Sequence[int], spec: DomainSpec) -> int:
    wt = sum(1 for c in z if c % spec.q)
    return (spec.q - 1) * spec.n - spec.q * wt


def eigenvalue_cycle(z: Sequence[int], spec: DomainSpec) -> float:
    s = sin2_table(spec.q)
    return 2 * spec.n - 4 * float(sum(s[c % spec.q] for c in z))


def eigenvalue_table(kind: GraphKind, spec: DomainSpec) -> np.ndarray:
    q, n = spec.q, spec.n
    if GraphKind(kind) is GraphKind.HAMMING:
        return ((q - 1) * n - q * weight_table(q, n)).astype(np.float64)
    return 2 * n - 4 * cycle_weight_table(q, n)


def eigenvalue_exact(z: Sequence[int], kind: GraphKind, spec: DomainSpec) -> CycloNum:
    """sum over the connecting set of phi_z(s), as an exact cyclotomic number."""
    q = spec.q
    total = CycloNum.rational(q, 0)
    for zi in z:
        for s in GraphKind(kind).connecting_set(q):
            total = total + CycloNum.root(q, zi * s)
    return total


def neighbors(x: Sequence[int], kind: GraphKind, spec: DomainSpec) -> Iterator[tuple[int, ...]]:
    """Neighbours of x with multiplicity (q = 2 cycle neighbours twice)."""
    q = spec.q
    if len(x) != spec.n:
        raise ValueError(f"expected {spec.n} coordinates, got {len(x)}")
    for i in range(spec.n):
        for s in GraphKind(kind).connecting_set(q):
            y = list(x)
            y[i] = (y[i] + s) % q
            yield tuple(y)


def apply_adjacency(values: np.ndarray, kind: GraphKind, spec: DomainSpec) -> np.ndarray:
    """(A f)(x) = sum of f over the neighbours of x, without forming A."""
    grid = np.asarray(values).reshape(spec.shape)
    out = np.zeros_like(grid)
    for i in range(spec.n):
        for s in GraphKind(kind).connecting_set(spec.q):
            out = out + np.roll(grid, -s, axis=i)
    return out.reshape(-1)


def edges(kind: GraphKind, spec: DomainSpec) -> Iterator[tuple[int, int, int]]:
    """Every edge once as (x, y, direction), flat indices, 0-based direction.

    For the q = 2 cycle power each hypercube edge is emitted twice.
    """
    q, n = spec.q, spec.n
    pts = coordinate_table(q, n)
    weights = q ** np.arange(n - 1, -1, -1)
    kind = GraphKind(kind)
    for x in range(spec.size):
        for i in range(n):
            xi = pts[x, i]
            if kind is GraphKind.CYCLE:
                targets = [(xi + 1) % q]
            else:
                targets = range(xi + 1, q)
            for b in targets:
                yield x, int(x + (b - xi) * weights[i]), i


def edge_count(kind: GraphKind, spec: DomainSpec) -> int:
    if GraphKind(kind) is GraphKind.CYCLE:
        return spec.n * spec.size
    return spec.n * (spec.q - 1) * spec.size // 2


def quadratic_form(s: Spectrum, kind: GraphKind, max_abs: float | None = None) -> float:
    """(A f, f) = q^{-n} sum_z lambda_z |W_f(z)|^2."""
    lam = eigenvalue_table(kind, s.spec)
    return float((lam * s.power()).sum() / s.spec.size)


def quadratic_form_direct(values: np.ndarray, kind: GraphKind, spec: DomainSpec) -> complex:
    """sum over edges {x,y} of f(x) conj f(y) + conj f(x) f(y)."""
    f = np.asarray(values, dtype=np.complex128)
    total = 0j
    for x, y, _ in edges(kind, spec):
        total += f[x] * np.conj(f[y]) + np.conj(f[x]) * f[y]
    return total


def lee_distance(u: Sequence[int], v: Sequence[int], spec: DomainSpec) -> int:
    q = spec.q
    return sum(min(abs(a - b) % q, q - abs(a - b) % q) for a, b in zip(u, v))


def hamming_distance(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(1 for a, b in zip(u, v) if a != b)
