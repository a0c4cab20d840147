"""Core value types for functions on Z_q^n.

Points of Z_q^n are addressed by a flat index with x_n varying fastest.
Exact values live in the cyclotomic ring Z[xi_N] (or Q(xi_N)), stored as
integer coefficient vectors reduced modulo the N-th cyclotomic polynomial.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_POINTS = 2 ** 40
MAX_Q = 64

KINDS = ("two_valued_pm1", "three_valued_omega", "boolean01", "integer", "complex")
EXACT_KINDS = frozenset(KINDS[:4])


class DomainError(ValueError):
    """Invalid alphabet size, arity or coordinate."""


@dataclass(frozen=True)
class DomainSpec:
    q: int
    n: int

    def __post_init__(self):
        if self.q < 2 or self.n < 1:
            raise DomainError(f"need q >= 2 and n >= 1, got q={self.q}, n={self.n}")
        if self.q > MAX_Q:
            raise DomainError(f"q={self.q} exceeds supported maximum {MAX_Q}")
        if self.q ** self.n > MAX_POINTS:
            raise DomainError(f"q^n = {self.q}^{self.n} exceeds 2^40")

    @property
    def size(self) -> int:
        return self.q ** self.n

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.q,) * self.n

    def points(self) -> np.ndarray:
        """All points as an (q^n, n) array of residues, in flat order."""
        return coordinate_table(self.q, self.n)


@lru_cache(maxsize=None)
def coordinate_table(q: int, n: int) -> np.ndarray:
    grids = np.indices((q,) * n).reshape(n, -1).T
    grids.setflags(write=False)
    return grids


def sym_rep(r: int, q: int) -> int:
    """Symmetric representative of residue r.

    Odd q maps onto {-(q-1)/2, ..., (q-1)/2}; even q onto
    {-(q-2)/2, ..., q/2}, so q/2 stays positive.
    """
    if q < 2:
        raise DomainError(f"invalid modulus q={q}")
    r %= q
    return r if r <= q // 2 else r - q


@lru_cache(maxsize=None)
def sym_rep_table(q: int) -> np.ndarray:
    table = np.array([sym_rep(r, q) for r in range(q)], dtype=np.int64)
    table.setflags(write=False)
    return table


def flat_index(coords: Sequence[int], spec: DomainSpec) -> int:
    if len(coords) != spec.n:
        raise DomainError(f"expected {spec.n} coordinates, got {len(coords)}")
    flat = 0
    for c in coords:
        if not 0 <= c < spec.q:
            raise DomainError(f"coordinate {c} out of range for q={spec.q}")
        flat = flat * spec.q + int(c)
    return flat


def unflatten(flat: int, spec: DomainSpec) -> tuple[int, ...]:
    if not 0 <= flat < spec.size:
        raise DomainError(f"flat index {flat} out of range [0, {spec.size})")
    coords = []
    for _ in range(spec.n):
        flat, r = divmod(flat, spec.q)
        coords.append(r)
    return tuple(reversed(coords))


# ---------------------------------------------------------------------------
# cyclotomic arithmetic
# ---------------------------------------------------------------------------

def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + len(den) - 1]
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Coefficients of the N-th cyclotomic polynomial, lowest degree first."""
    poly = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def totient(N: int) -> int:
    return len(cyclotomic_poly(N)) - 1


@lru_cache(maxsize=None)
def reduction_matrix(N: int) -> np.ndarray:
    """Integer (N, phi(N)) matrix whose row r is x^r mod Phi_N.

    Multiplying a group-ring vector (coefficients of 1, x, ..., x^{N-1}) by
    this matrix gives the canonical form in Z[x]/Phi_N.
    """
    phi = cyclotomic_poly(N)
    d = len(phi) - 1
    rows = np.zeros((N, d), dtype=np.int64)
    cur = [0] * d
    cur[0] = 1
    for r in range(N):
        rows[r] = cur
        # multiply by x, then eliminate x^d using the monic relation
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, phi[:-1])]
    rows.setflags(write=False)
    return rows


@lru_cache(maxsize=None)
def root_powers(N: int) -> np.ndarray:
    k = np.arange(N)
    out = np.exp(2j * np.pi * k / N)
    out.setflags(write=False)
    return out


def reduce_group_ring(vec: np.ndarray, N: int) -> np.ndarray:
    """Canonical form(s) of group-ring vectors along the last axis."""
    return np.asarray(vec) @ reduction_matrix(N)


def canonical_to_complex(coeffs: np.ndarray, N: int) -> np.ndarray:
    d = totient(N)
    return np.asarray(coeffs) @ root_powers(N)[:d]


def group_ring_to_complex(vec: np.ndarray, N: int) -> np.ndarray:
    return np.asarray(vec) @ root_powers(N)


def _solve_fractions(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    size = len(rhs)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col] != 0), None)
        if pivot is None:
            raise ZeroDivisionError("singular cyclotomic element")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(size):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [v - factor * w for v, w in zip(a[r], a[col])]
    return [a[r][size] for r in range(size)]


@dataclass(frozen=True)
class CycloNum:
    """Element of Q(xi_N), xi_N = exp(2*pi*i/N), in canonical reduced form.

    ``coeffs[j]`` multiplies xi_N^j for j < phi(N). Coefficients are ints or
    Fractions; the representation is unique so ``==`` is an exact test.
    """

    order: int
    coeffs: tuple = field(default=())

    def __post_init__(self):
        d = totient(self.order)
        cs = tuple(self.coeffs) + (0,) * (d - len(self.coeffs))
        if len(cs) != d:
            raise ValueError(f"expected {d} coefficients for order {self.order}")
        cs = tuple(int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in cs)
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def from_group_ring(cls, vec: Iterable, N: int) -> "CycloNum":
        vec = list(vec)
        rows = reduction_matrix(N)
        d = totient(N)
        out = [0] * d
        for r, c in enumerate(vec):
            if c:
                row = rows[r % N]
                for j in range(d):
                    if row[j]:
                        out[j] += c * int(row[j])
        return cls(N, tuple(out))

    @classmethod
    def root(cls, N: int, k: int = 1) -> "CycloNum":
        vec = [0] * N
        vec[k % N] = 1
        return cls.from_group_ring(vec, N)

    @classmethod
    def rational(cls, N: int, value) -> "CycloNum":
        return cls(N, (value,))

    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.order != self.order:
                raise ValueError(f"mismatched cyclotomic orders {self.order} and {other.order}")
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return CycloNum.rational(self.order, int(other) if isinstance(other, np.integer) else other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        d = len(self.coeffs)
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CycloNum.from_group_ring(prod, self.order)

    __rmul__ = __mul__

    def _mul_matrix(self) -> list[list[Fraction]]:
        d = len(self.coeffs)
        cols = []
        for j in range(d):
            basis = [0] * d
            basis[j] = 1
            cols.append((self * CycloNum(self.order, tuple(basis))).coeffs)
        return [[Fraction(cols[j][i]) for j in range(d)] for i in range(d)]

    def inverse(self) -> "CycloNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        d = len(self.coeffs)
        rhs = [Fraction(0)] * d
        rhs[0] = Fraction(1)
        return CycloNum(self.order, tuple(_solve_fractions(self._mul_matrix(), rhs)))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def conj(self) -> "CycloNum":
        vec = [0] * self.order
        for j, c in enumerate(self.coeffs):
            vec[(-j) % self.order] += c
        return CycloNum.from_group_ring(vec, self.order)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def lift(self, order: int) -> "CycloNum":
        """Embed into Q(xi_M) for a multiple M of the current order."""
        if order % self.order:
            raise ValueError(f"{order} is not a multiple of {self.order}")
        step = order // self.order
        vec = [0] * order
        for j, c in enumerate(self.coeffs):
            vec[j * step] += c
        return CycloNum.from_group_ring(vec, order)

    def rational_value(self):
        """The element as an int/Fraction if it is rational, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def __complex__(self) -> complex:
        powers = root_powers(self.order)
        return complex(sum(complex(float(c)) * powers[j] for j, c in enumerate(self.coeffs) if c))

    def __repr__(self):
        return f"CycloNum({self.order}, {self.coeffs})"

    def __str__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                mono = "w" if j == 1 else f"w^{j}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def cyclo_add(a: CycloNum, b: CycloNum) -> CycloNum:
    return a + b


def cyclo_mul(a: CycloNum, b: CycloNum) -> CycloNum:
    return a * b


def cyclo_conj(a: CycloNum) -> CycloNum:
    return a.conj()


def cyclo_is_zero(a: CycloNum) -> bool:
    return a.is_zero()


# ---------------------------------------------------------------------------
# discrete functions
# ---------------------------------------------------------------------------

def ring_order(q: int, kind: str) -> int:
    """Cyclotomic order needed to hold both the values and the characters."""
    return q * 3 // math.gcd(q, 3) if kind == "three_valued_omega" else q


_OMEGA = cmath.exp(2j * math.pi / 3)


@dataclass(frozen=True, eq=False)
class DiscreteFunction:
    """Dense table of a function on Z_q^n.

    ``values`` holds integers for the exact kinds; for ``three_valued_omega``
    an entry v in {0, 1, 2} stands for exp(2*pi*i*v/3). The ``complex`` kind
    stores complex128 values.
    """

    spec: DomainSpec
    kind: str
    values: np.ndarray

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")
        dtype = np.complex128 if self.kind == "complex" else np.int64
        vals = np.array(self.values, dtype=dtype).reshape(-1)
        if vals.size != self.spec.size:
            raise ValueError(f"expected {self.spec.size} values, got {vals.size}")
        allowed = {
            "two_valued_pm1": (-1, 1),
            "three_valued_omega": (0, 1, 2),
            "boolean01": (0, 1),
        }.get(self.kind)
        if allowed is not None and not np.isin(vals, allowed).all():
            raise ValueError(f"values outside {allowed} for kind {self.kind}")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def q(self) -> int:
        return self.spec.q

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def exact(self) -> bool:
        return self.kind in EXACT_KINDS

    @property
    def order(self) -> int:
        return ring_order(self.spec.q, self.kind)

    def grid(self) -> np.ndarray:
        return self.values.reshape(self.spec.shape)

    def __call__(self, *coords: int):
        return self.values[flat_index(coords, self.spec)]

    def complex_values(self) -> np.ndarray:
        if self.kind == "three_valued_omega":
            return _OMEGA ** self.values
        return self.values.astype(np.complex128)

    def value(self, x: Sequence[int]) -> CycloNum | complex:
        v = self.values[flat_index(x, self.spec)]
        if self.kind == "complex":
            return complex(v)
        N = self.order
        if self.kind == "three_valued_omega":
            return CycloNum.root(N, int(v) * (N // 3))
        return CycloNum.rational(N, int(v))

    def __eq__(self, other):
        if not isinstance(other, DiscreteFunction):
            return NotImplemented
        return (self.spec == other.spec and self.kind == other.kind
                and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.spec, self.kind, self.values.tobytes()))

    def is_constant(self) -> bool:
        return bool((self.values == self.values[0]).all())

    def to_pm1(self) -> "DiscreteFunction":
        """(-1)^f for a 0/1 function."""
        if self.kind != "boolean01":
            raise ValueError("to_pm1 needs a boolean01 function")
        return DiscreteFunction(self.spec, "two_valued_pm1", 1 - 2 * self.values)

    def to_boolean(self) -> "DiscreteFunction":
        """Indicator (1 - f)/2 of the -1 set of a +-1 function."""
        if self.kind != "two_valued_pm1":
            raise ValueError("to_boolean needs a two_valued_pm1 function")
        return DiscreteFunction(self.spec, "boolean01", (1 - self.values) // 2)


def group_ring_values(values: np.ndarray, kind: str, q: int) -> np.ndarray:
    """Embed integer-coded tables into Z[x]/(x^N - 1); shape (..., L, N)."""
    N = ring_order(q, kind)
    values = np.asarray(values, dtype=np.int64)
    out = np.zeros(values.shape + (N,), dtype=np.int64)
    if kind == "three_valued_omega":
        np.put_along_axis(out, (values * (N // 3))[..., None], 1, axis=-1)
    else:
        out[..., 0] = values
    return out
