"""Degree functionals of discrete functions.

deg_m(f) is the largest sum_k |z_k|^m (symmetric representatives) over the
support of the spectrum; deg_0 is the largest weight. For Boolean functions
there are also the ANF (algebraic) and NNF (numerical) degrees, and for any
value set T there is the unique interpolating polynomial with per-variable
degree below |T|.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .domain import CycloNum, DiscreteFunction, coordinate_table, sym_rep, sym_rep_table
from .transform import Spectrum, forward


class UndefinedDegreeError(ValueError):
    """Degree requested for the zero function."""


def weight(z: Sequence[int]) -> int:
    return sum(1 for c in z if c)


def char_degree(z: Sequence[int], m: int, q: int) -> int:
    """sum_k |z_k|^m over symmetric representatives, with 0^0 = 0."""
    reps = (abs(sym_rep(c, q)) for c in z)
    if m == 0:
        return sum(1 for r in reps if r)
    return sum(r ** m for r in reps)


@lru_cache(maxsize=None)
def char_degree_table(q: int, n: int, m: int) -> np.ndarray:
    """char_degree for every z in flat order."""
    reps = np.abs(sym_rep_table(q)[coordinate_table(q, n)])
    table = (reps != 0).sum(axis=1) if m == 0 else (reps ** m).sum(axis=1)
    table = table.astype(np.int64)
    table.setflags(write=False)
    return table


def weight_table(q: int, n: int) -> np.ndarray:
    return char_degree_table(q, n, 0)


def max_over_support(support: np.ndarray, table: np.ndarray) -> np.ndarray:
    """Row-wise max of ``table`` over ``support``; -1 where the support is empty."""
    return np.where(support, table, -1).max(axis=-1)


@dataclass(frozen=True)
class DegreeProfile:
    deg0: int
    deg1: int
    deg2: int
    generic: dict = field(default_factory=dict)

    def __getitem__(self, m: int) -> int:
        return self.generic[m]


def degree_profile(s: Spectrum, ms: Sequence[int] = (0, 1, 2), max_abs: float | None = None) -> DegreeProfile:
    """Degrees deg_m for each requested m (0, 1, 2 are always included)."""
    support = s.support(max_abs)
    if not support.any():
        raise UndefinedDegreeError("degree of the zero function is undefined")
    q, n = s.spec.q, s.spec.n
    generic = {m: int(max_over_support(support, char_degree_table(q, n, m)))
               for m in sorted(set(ms) | {0, 1, 2})}
    return DegreeProfile(generic[0], generic[1], generic[2], generic)


# ---------------------------------------------------------------------------
# Boolean and pseudo-Boolean normal forms
# ---------------------------------------------------------------------------

def _butterfly(values: np.ndarray, n: int, op) -> np.ndarray:
    batch = values.shape[:-1]
    a = np.array(values).reshape(batch + (2,) * n)
    nb = len(batch)
    for i in range(n):
        lo = [slice(None)] * a.ndim
        hi = [slice(None)] * a.ndim
        lo[nb + i], hi[nb + i] = 0, 1
        a[tuple(hi)] = op(a[tuple(hi)], a[tuple(lo)])
    return a.reshape(values.shape)


def moebius_transform(values: np.ndarray, n: int) -> np.ndarray:
    """GF(2) Moebius transform along the last axis (batchable, involutive)."""
    return _butterfly(np.asarray(values, dtype=np.int64) & 1, n, np.bitwise_xor)


def nnf_transform(values: np.ndarray, n: int) -> np.ndarray:
    """Real Moebius transform a(y) = sum_{x<=y} (-1)^{wt(y)-wt(x)} f(x)."""
    values = np.asarray(values)
    if values.dtype.kind in "iub":
        values = values.astype(np.int64)
    return _butterfly(values, n, np.subtract)


def _require_binary(f: DiscreteFunction):
    if f.spec.q != 2:
        raise ValueError(f"normal forms need q = 2, got q = {f.spec.q}")


@dataclass(frozen=True)
class AnfTable:
    n: int
    coefficients: np.ndarray  # M_f(y) in {0,1}, flat order of y

    def monomials(self) -> list[tuple[int, ...]]:
        """Monomials present, each as a tuple of 1-based variable indices."""
        pts = coordinate_table(2, self.n)
        return [tuple(int(i) + 1 for i in np.flatnonzero(pts[y]))
                for y in np.flatnonzero(self.coefficients)]


@dataclass(frozen=True)
class NnfTable:
    n: int
    coefficients: np.ndarray  # a(y), flat order of y

    def evaluate(self, x: Sequence[int]):
        pts = coordinate_table(2, self.n)
        covered = (pts <= np.asarray(x)).all(axis=1)
        return self.coefficients[covered].sum()


def moebius(f: DiscreteFunction) -> AnfTable:
    _require_binary(f)
    if f.kind != "boolean01":
        raise ValueError("ANF needs a boolean01 function")
    return AnfTable(f.spec.n, moebius_transform(f.values, f.spec.n))


def algebraic_degree(anf: AnfTable) -> int:
    w = weight_table(2, anf.n)
    return int(max(max_over_support(anf.coefficients != 0, w), 0))


def nnf(f: DiscreteFunction) -> NnfTable:
    _require_binary(f)
    vals = f.values if f.kind != "complex" else f.values.real
    return NnfTable(f.spec.n, nnf_transform(vals, f.spec.n))


def numerical_degree(table: NnfTable, tol: float = 1e-9) -> int:
    c = table.coefficients
    nonzero = c != 0 if c.dtype.kind in "iuO" else np.abs(c) > tol
    return int(max(max_over_support(nonzero, weight_table(2, table.n)), 0))


# ---------------------------------------------------------------------------
# Lagrange interpolation on T^n
# ---------------------------------------------------------------------------

def _is_zero(c, tol: float = 1e-9) -> bool:
    if isinstance(c, CycloNum):
        return c.is_zero()
    if isinstance(c, (complex, float, np.floating, np.complexfloating)):
        return abs(c) <= tol
    return c == 0


@dataclass(frozen=True)
class InterpPolynomial:
    """Polynomial in C_k(x_1..x_n): exponent tuple -> coefficient."""

    n: int
    points: tuple
    terms: dict

    def evaluate(self, x: Sequence) -> object:
        total = 0
        for exps, c in self.terms.items():
            term = c
            for xi, e in zip(x, exps):
                for _ in range(e):
                    term = term * xi
            total = total + term
        return total

    def degree(self) -> int:
        """Largest total degree of a monomial (deg_num)."""
        return max((sum(e) for e in self.terms), default=0)

    def variable_degree(self) -> int:
        """Largest number of distinct variables in a monomial (deg'_num)."""
        return max((sum(1 for v in e if v) for e in self.terms), default=0)


def _poly_mul_linear(poly: list, root) -> list:
    # poly * (x - root); coefficients lowest degree first
    out = [None] * (len(poly) + 1)
    out[0] = -root * poly[0]
    for k in range(1, len(poly)):
        out[k] = poly[k - 1] - root * poly[k]
    out[-1] = poly[-1]
    return out


def _lagrange_basis(points: Sequence) -> list[list]:
    basis = []
    for i, ti in enumerate(points):
        num = [ti * 0 + 1]
        den = ti * 0 + 1
        for j, tj in enumerate(points):
            if j != i:
                num = _poly_mul_linear(num, tj)
                den = den * (ti - tj)
        basis.append([c / den for c in num])
    return basis


def lagrange_interpolate(values: Sequence, points: Sequence, n: int) -> InterpPolynomial:
    """Unique interpolating polynomial of a function on T^n.

    ``values`` lists f in flat order over T^n (last coordinate fastest, the
    coordinate index j standing for ``points[j]``). The polynomial is built
    by induction on the last variable, combining interpolants of the
    retracts with the univariate Lagrange basis.
    """
    points = [Fraction(t) if isinstance(t, (int, np.integer)) else t for t in points]
    k = len(points)
    for i in range(k):
        for j in range(i + 1, k):
            if _is_zero(points[i] - points[j]):
                raise ValueError("interpolation points must be distinct")
    values = list(values)
    if len(values) != k ** n:
        raise ValueError(f"expected {k ** n} values, got {len(values)}")
    basis = _lagrange_basis(points)

    def build(vals: list, m: int) -> dict:
        if m == 0:
            return {(): vals[0]}
        terms: dict = {}
        for i in range(k):
            sub = build(vals[i::k], m - 1)  # retract x_m = points[i]
            for exps, c in sub.items():
                for e, b in enumerate(basis[i]):
                    key = exps + (e,)
                    prod = c * b
                    terms[key] = terms[key] + prod if key in terms else prod
        return terms

    terms = {e: c for e, c in build(values, n).items() if not _is_zero(c)}
    return InterpPolynomial(n, tuple(points), terms)


# ---------------------------------------------------------------------------
# cross-degree relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Prop2Report:
    deg_num_prime: int
    deg0: int
    deg_num: int
    deg1: int

    @property
    def prime_equals_deg0(self) -> bool:
        return self.deg_num_prime == self.deg0

    @property
    def num_at_least_deg1(self) -> bool:
        return self.deg_num >= self.deg1


def check_prop2(f: DiscreteFunction, s: Spectrum | None = None) -> Prop2Report:
    """Compare the polynomial obtained from f by x -> xi^x with deg_0, deg_1.

    g interpolates f on T = {xi^0, ..., xi^{q-1}}; deg'_num g must equal
    deg_0 f and deg_num g must be at least deg_1 f. The zero function
    reports all degrees as 0.
    """
    q, n = f.spec.q, f.spec.n
    s = forward(f) if s is None else s
    if f.exact:
        N = f.order
        points = [CycloNum.root(N, k * (N // q)) for k in range(q)]
        values = [f.value(tuple(x)) for x in coordinate_table(q, n)]
        max_abs = None
    else:
        points = [complex(np.exp(2j * np.pi * k / q)) for k in range(q)]
        values = [complex(v) for v in f.values]
        max_abs = float(np.abs(f.values).max())
    poly = lagrange_interpolate(values, points, n)
    if s.support(max_abs).any():
        prof = degree_profile(s, max_abs=max_abs)
        d0, d1 = prof.deg0, prof.deg1
    else:
        d0 = d1 = 0
    return Prop2Report(poly.variable_degree(), d0, poly.degree(), d1)


@dataclass(frozen=True)
class Prop3Report:
    """deg_alg against the Walsh support of (-1)^f.

    ``literal`` is deg_alg <= min{deg_0, n - deg_0}; ``proof_form`` is
    deg_alg <= min{deg_0, n - minwt}, minwt the least weight in the support.
    ``exempt`` marks deg_alg <= 1.
    """

    n: int
    deg_alg: int
    deg0: int
    min_weight: int

    @property
    def literal(self) -> bool:
        return self.deg_alg <= min(self.deg0, self.n - self.deg0)

    @property
    def proof_form(self) -> bool:
        return self.deg_alg <= min(self.deg0, self.n - self.min_weight)

    @property
    def exempt(self) -> bool:
        return self.deg_alg <= 1


def check_prop3(f: DiscreteFunction) -> Prop3Report:
    _require_binary(f)
    deg_alg = algebraic_degree(moebius(f))
    support = forward(f.to_pm1()).support()
    w = weight_table(2, f.spec.n)
    return Prop3Report(f.spec.n, deg_alg, int(w[support].max()), int(w[support].min()))
