"""Fourier-Hadamard transform over Z_q^n.

W_f(z) = (f, phi_z) = sum_x f(x) xi^{-<x,z>}, unnormalized, and
f(x) = q^{-n} sum_z W_f(z) phi_z(x).

Exact kinds are transformed in the group ring Z[x]/(x^N - 1), where the
character value xi_q^k is the monomial x^{k N/q}; a product with a character
is then a cyclic shift of the coefficient vector and the whole transform is
integer arithmetic. Results are reduced modulo Phi_N for zero tests.
All array routines accept leading batch axes.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .domain import (
    CycloNum,
    DiscreteFunction,
    DomainSpec,
    canonical_to_complex,
    coordinate_table,
    group_ring_values,
    reduce_group_ring,
    reduction_matrix,
    ring_order,
    totient,
)

NORMALIZATION = "unnormalized W_f(z)=(f,phi_z)"


@lru_cache(maxsize=None)
def _shift_index(q: int, N: int, sign: int) -> np.ndarray:
    # idx[x, z, r] = (r - sign * x z N/q) mod N
    step = N // q
    x = np.arange(q)[:, None, None]
    z = np.arange(q)[None, :, None]
    r = np.arange(N)[None, None, :]
    idx = (r - sign * x * z * step) % N
    idx.setflags(write=False)
    return idx


def _axis_pass(arr: np.ndarray, axis: int, q: int, N: int, sign: int) -> np.ndarray:
    # arr: (..., q, ..., q, N); multiply the slice at x by x^{sign * x z N/q}
    moved = np.moveaxis(arr, axis, -2)
    idx = _shift_index(q, N, sign)
    out = np.zeros(moved.shape[:-2] + (q, N), dtype=moved.dtype)
    for x in range(q):
        out += np.take(moved[..., x, :], idx[x], axis=-1)
    return np.moveaxis(out, -2, axis)


def group_ring_transform(gr: np.ndarray, q: int, n: int, sign: int = -1) -> np.ndarray:
    """Tensor DFT of group-ring tables, one axis pass per coordinate.

    ``gr`` has shape (..., q^n, N). ``sign=-1`` is the forward transform
    (kernel xi^{-<x,z>}), ``sign=+1`` the unnormalized inverse kernel.
    """
    N = gr.shape[-1]
    batch = gr.shape[:-2]
    arr = gr.reshape(batch + (q,) * n + (N,))
    nb = len(batch)
    for i in range(n):
        arr = _axis_pass(arr, nb + i, q, N, sign)
    return arr.reshape(batch + (q ** n, N))


@lru_cache(maxsize=None)
def inner_products(q: int, n: int) -> np.ndarray:
    """(q^n, q^n) matrix of <x, z> mod q."""
    pts = coordinate_table(q, n)
    ip = (pts @ pts.T) % q
    ip.setflags(write=False)
    return ip


def naive_group_ring_transform(gr: np.ndarray, q: int, n: int) -> np.ndarray:
    """Direct O(q^{2n}) evaluation of sum_x f(x) xi^{-<x,z>}."""
    N = gr.shape[-1]
    L = q ** n
    step = N // q
    ip = inner_products(q, n)
    r = np.arange(N)
    out = np.zeros(gr.shape, dtype=gr.dtype)
    for xi in range(L):
        # column z: shift f(x) by -<x,z>
        idx = (r[None, :] + ip[xi][:, None] * step) % N
        out += gr[..., xi, :][..., idx]
    return out


@lru_cache(maxsize=None)
def _char_matrix(q: int, sign: int) -> np.ndarray:
    k = np.arange(q)
    m = np.exp(sign * 2j * np.pi * np.outer(k, k) / q)
    m.setflags(write=False)
    return m


def complex_transform(values: np.ndarray, q: int, n: int, sign: int = -1) -> np.ndarray:
    batch = values.shape[:-1]
    arr = values.reshape(batch + (q,) * n).astype(np.complex128)
    nb = len(batch)
    mat = _char_matrix(q, sign)
    for i in range(n):
        arr = np.moveaxis(np.tensordot(arr, mat, axes=([nb + i], [0])), -1, nb + i)
    return arr.reshape(batch + (q ** n,))


def naive_complex_transform(values: np.ndarray, q: int, n: int) -> np.ndarray:
    ip = inner_products(q, n)
    kernel = np.exp(-2j * np.pi * ip / q)
    return values.astype(np.complex128) @ kernel


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Fourier-Hadamard coefficients of a function, indexed by flat z.

    Exact spectra hold canonical cyclotomic coefficients of shape
    (q^n, phi(N)); the complex kind holds a complex128 vector.
    """

    spec: DomainSpec
    kind: str
    coefficients: np.ndarray
    normalization: str = NORMALIZATION

    @property
    def exact(self) -> bool:
        return self.kind != "complex"

    @property
    def order(self) -> int:
        return ring_order(self.spec.q, self.kind)

    def __len__(self):
        return self.spec.size

    def __getitem__(self, flat: int) -> CycloNum | complex:
        if self.exact:
            return CycloNum(self.order, tuple(int(c) for c in self.coefficients[flat]))
        return complex(self.coefficients[flat])

    def as_complex(self) -> np.ndarray:
        if self.exact:
            return canonical_to_complex(self.coefficients, self.order)
        return self.coefficients

    def support(self, max_abs: float | None = None) -> np.ndarray:
        """Boolean mask of nonzero coefficients.

        Exact spectra use the exact zero test. Complex spectra treat
        |W| <= 1e-8 * q^{n/2} * max|f| as zero; pass ``max_abs`` = max|f|.
        """
        if self.exact:
            return self.coefficients.any(axis=-1)
        scale = 1.0 if max_abs is None else max(max_abs, 1e-300)
        tol = 1e-8 * self.spec.q ** (self.spec.n / 2) * scale
        return np.abs(self.coefficients) > tol

    def power(self) -> np.ndarray:
        return np.abs(self.as_complex()) ** 2

    def __eq__(self, other):
        if not isinstance(other, Spectrum):
            return NotImplemented
        return (self.spec == other.spec and self.kind == other.kind
                and np.array_equal(self.coefficients, other.coefficients))


def _exact_spectrum(f: DiscreteFunction, gr_spec: np.ndarray) -> Spectrum:
    canon = reduce_group_ring(gr_spec, f.order)
    canon.setflags(write=False)
    return Spectrum(f.spec, f.kind, canon)


def forward(f: DiscreteFunction) -> Spectrum:
    """Tensor (axis-by-axis) transform; O(n q^{n+1}) ring operations."""
    q, n = f.spec.q, f.spec.n
    if f.exact:
        gr = group_ring_values(f.values, f.kind, q)
        return _exact_spectrum(f, group_ring_transform(gr, q, n))
    return Spectrum(f.spec, f.kind, complex_transform(f.values, q, n))


def naive_forward(f: DiscreteFunction) -> Spectrum:
    """Test oracle: the double sum over x and z, no factorization."""
    q, n = f.spec.q, f.spec.n
    if f.exact:
        gr = group_ring_values(f.values, f.kind, q)
        return _exact_spectrum(f, naive_group_ring_transform(gr, q, n))
    return Spectrum(f.spec, f.kind, naive_complex_transform(f.values, q, n))


def _decode_values(canon: np.ndarray, kind: str, N: int, size: int) -> np.ndarray | None:
    if kind == "three_valued_omega":
        codes = reduction_matrix(N)[[0, N // 3, 2 * N // 3]]
        match = (canon[:, None, :] == codes[None, :, :]).all(axis=-1)
        if not match.any(axis=1).all():
            return None
        return match.argmax(axis=1)
    if canon[:, 1:].any():
        return None
    return canon[:, 0]


def inverse(s: Spectrum) -> DiscreteFunction:
    """f(x) = q^{-n} sum_z W(z) phi_z(x).

    Exact spectra are inverted in the group ring and divided by q^n exactly;
    the result keeps the source kind when the values fit it, otherwise it
    falls back to ``complex``.
    """
    q, n = s.spec.q, s.spec.n
    L = s.spec.size
    if not s.exact:
        return DiscreteFunction(s.spec, "complex", complex_transform(s.coefficients, q, n, sign=1) / L)
    N = s.order
    gr = np.zeros((L, N), dtype=np.int64)
    gr[:, : totient(N)] = s.coefficients
    canon = reduce_group_ring(group_ring_transform(gr, q, n, sign=1), N)
    if not (canon % L == 0).all():
        return DiscreteFunction(s.spec, "complex", canonical_to_complex(canon, N) / L)
    canon //= L
    decoded = _decode_values(canon, s.kind, N, L)
    if decoded is None:
        return DiscreteFunction(s.spec, "complex", canonical_to_complex(canon, N))
    for kind in (s.kind, "integer"):
        try:
            return DiscreteFunction(s.spec, kind, decoded)
        except ValueError:
            continue
    raise AssertionError("unreachable")


def exact_power_sum(canon: np.ndarray, N: int) -> np.ndarray:
    """sum_z W(z) conj(W(z)) in canonical form; canon has shape (..., L, d)."""
    d = canon.shape[-1]
    gr = np.zeros(canon.shape[:-1] + (N,), dtype=np.int64)
    gr[..., :d] = canon
    prod = np.zeros(canon.shape[:-2] + (N,), dtype=np.int64)
    for s in range(N):
        # coefficient of x^s: sum_r W_r W_{r-s}
        prod[..., s] = (gr * np.roll(gr, s, axis=-1)).sum(axis=(-1, -2))
    return reduce_group_ring(prod, N)


def parseval_sum(s: Spectrum) -> float:
    """sum_z |W_f(z)|^2 as a float."""
    return float(s.power().sum())


def parseval_exact(s: Spectrum) -> CycloNum:
    """sum_z |W_f(z)|^2 as an exact cyclotomic number (exact spectra only)."""
    if not s.exact:
        raise ValueError("exact Parseval sum needs an exact spectrum")
    return CycloNum(s.order, tuple(int(c) for c in exact_power_sum(s.coefficients, s.order)))
