import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import functions, random_function
from qspectra.degrees import (
    UndefinedDegreeError,
    algebraic_degree,
    char_degree,
    check_prop2,
    check_prop3,
    degree_profile,
    lagrange_interpolate,
    moebius,
    moebius_transform,
    nnf,
    numerical_degree,
    weight,
)
from qspectra.domain import DiscreteFunction, DomainSpec, coordinate_table, sym_rep
from qspectra.explorer import gen_fm, gen_named
from qspectra.transform import forward


def boolean(n, table):
    return DiscreteFunction(DomainSpec(2, n), "boolean01", table)


def test_weight_examples():
    assert weight((0, 0, 0)) == 0
    assert weight((2, 0, 3)) == 2
    assert weight((1,) * 5) == 5


def test_char_degree_examples():
    assert char_degree((1, 2), 1, 3) == 2
    assert char_degree((2, 2), 2, 4) == 8
    assert char_degree((3, 0), 1, 4) == 1
    assert char_degree((3, 0, 2), 0, 4) == 2


@given(st.integers(2, 9), st.lists(st.integers(0, 8), min_size=1, max_size=4), st.integers(0, 3))
def test_char_degree_uses_symmetric_reps(q, z, m):
    z = [c % q for c in z]
    expected = sum(abs(sym_rep(c, q)) ** m for c in z if c)
    assert char_degree(z, m, q) == expected


def test_fm_degrees():
    for m in (1, 2, 3):
        p = degree_profile(forward(gen_fm(m, m + 1)))
        assert p.deg0 == p.deg2 == m
        assert p.deg1 == m


def test_constant_degree_zero():
    spec = DomainSpec(4, 2)
    p = degree_profile(forward(DiscreteFunction(spec, "integer", np.full(16, 3))))
    assert (p.deg0, p.deg1, p.deg2) == (0, 0, 0)


def test_zero_function_degree_undefined():
    with pytest.raises(UndefinedDegreeError):
        degree_profile(forward(DiscreteFunction(DomainSpec(3, 2), "integer", np.zeros(9))))


@pytest.mark.parametrize("kind", ["two_valued_pm1", "three_valued_omega"])
@given(data=st.data())
def test_small_q_degrees_coincide(kind, data):
    f = data.draw(functions(kind, max_q=3))
    p = degree_profile(forward(f), ms=(3, 4))
    assert p.deg0 == p.deg1 == p.deg2 == p[3] == p[4]
    assert 0 <= p.deg0 <= f.spec.n


def test_generic_degree_brute_force(rng):
    spec = DomainSpec(5, 2)
    for _ in range(20):
        f = random_function(rng, spec, "integer")
        s = forward(f)
        p = degree_profile(s, ms=(3,))
        supp = np.flatnonzero(s.support())
        pts = coordinate_table(5, 2)
        assert p[3] == max(sum(abs(sym_rep(c, 5)) ** 3 for c in pts[z] if c) for z in supp)


def test_anf_examples():
    assert algebraic_degree(moebius(boolean(3, np.zeros(8)))) == 0
    xor = gen_named("xor_all", DomainSpec(2, 3))
    anf = moebius(xor)
    assert sorted(anf.monomials()) == [(1,), (2,), (3,)]
    assert algebraic_degree(anf) == 1
    maj = gen_named("majority", DomainSpec(2, 3))
    anf = moebius(maj)
    assert sorted(anf.monomials()) == [(1, 2), (1, 3), (2, 3)]
    assert algebraic_degree(anf) == 2


def test_anf_requires_binary():
    with pytest.raises(ValueError):
        moebius(DiscreteFunction(DomainSpec(3, 1), "boolean01", [0, 1, 0]))


def anf_oracle(table, n):
    """M_f(y) = XOR of f(x) over x <= y, by direct summation."""
    pts = coordinate_table(2, n)
    return np.array([np.bitwise_xor.reduce(table[(pts <= pts[y]).all(axis=1)]) for y in range(2 ** n)])


def test_moebius_involution_exhaustive_small():
    for n in (1, 2, 3):
        for bits in itertools.product((0, 1), repeat=2 ** n):
            t = np.array(bits)
            m = moebius_transform(t, n)
            assert np.array_equal(moebius_transform(m, n), t)
            assert np.array_equal(m, anf_oracle(t, n))


def test_moebius_involution_n4_batch():
    tables = (np.arange(2 ** 16)[:, None] >> np.arange(16)) & 1
    m = moebius_transform(tables, 4)
    assert np.array_equal(moebius_transform(m, 4), tables)


def test_nnf_examples():
    j = gen_named("jmath", DomainSpec(2, 3))
    assert numerical_degree(nnf(j)) == 1
    x = boolean(2, [0, 1, 1, 0])
    table = nnf(x)
    assert table.coefficients.tolist() == [0, 1, 1, -2]
    assert numerical_degree(table) == 2
    assert numerical_degree(nnf(boolean(2, [1, 1, 1, 1]))) == 0


@given(st.integers(1, 4), st.data())
def test_nnf_reproduces_f(n, data):
    vals = data.draw(st.lists(st.integers(-5, 5), min_size=2 ** n, max_size=2 ** n))
    f = DiscreteFunction(DomainSpec(2, n), "integer", vals)
    table = nnf(f)
    for x, v in zip(coordinate_table(2, n), vals):
        assert table.evaluate(x) == v


def vandermonde_oracle(values, points, n):
    """Dense linear solve over all monomials with exponents < k."""
    k = len(points)
    exps = list(itertools.product(range(k), repeat=n))
    rows = []
    for x in itertools.product(points, repeat=n):
        rows.append([np.prod([complex(xi) ** e for xi, e in zip(x, ex)]) for ex in exps])
    coeffs = np.linalg.solve(np.array(rows), np.array(values, dtype=complex))
    return {ex: c for ex, c in zip(exps, coeffs) if abs(c) > 1e-9}


def test_lagrange_examples():
    p = lagrange_interpolate([0, 1, 4], [0, 1, 2], 1)
    assert p.terms == {(2,): 1}
    p = lagrange_interpolate([7] * 9, [0, 1, 2], 2)
    assert p.terms == {(0, 0): 7}
    p = lagrange_interpolate([0, 0, 0, 1], [0, 1], 2)
    assert p.terms == {(1, 1): 1}
    with pytest.raises(ValueError):
        lagrange_interpolate([1, 2], [1, 1], 1)


@given(st.lists(st.integers(-4, 4), min_size=2, max_size=3, unique=True), st.integers(1, 2), st.data())
def test_lagrange_against_solve(points, n, data):
    k = len(points)
    values = data.draw(st.lists(st.integers(-5, 5), min_size=k ** n, max_size=k ** n))
    poly = lagrange_interpolate(values, points, n)
    oracle = vandermonde_oracle(values, points, n)
    assert set(poly.terms) == set(oracle)
    for ex, c in poly.terms.items():
        assert abs(complex(c) - oracle[ex]) < 1e-7
        assert max(ex) <= k - 1
    for x, v in zip(itertools.product(points, repeat=n), values):
        assert poly.evaluate(x) == v


def test_lagrange_fraction_points():
    pts = [Fraction(1, 2), Fraction(-1, 3)]
    poly = lagrange_interpolate([1, 0], pts, 1)
    assert poly.evaluate([Fraction(1, 2)]) == 1
    assert poly.evaluate([Fraction(-1, 3)]) == 0


def test_prop2_examples():
    for m in (1, 2):
        r = check_prop2(gen_fm(m, m + 1))
        assert r.deg_num_prime == m == r.deg0
        assert r.prime_equals_deg0 and r.num_at_least_deg1
    r = check_prop2(DiscreteFunction(DomainSpec(3, 2), "two_valued_pm1", np.ones(9)))
    assert (r.deg_num_prime, r.deg0, r.deg_num, r.deg1) == (0, 0, 0, 0)


@given(functions("two_valued_pm1", max_q=4, max_n=2))
def test_prop2_random(f):
    r = check_prop2(f)
    assert r.prime_equals_deg0
    assert r.num_at_least_deg1


def test_prop2_complex_kind():
    f = gen_named("character", DomainSpec(3, 2), z=(1, 2))
    r = check_prop2(f)
    assert r.deg0 == 2 and r.prime_equals_deg0


def test_prop3_examples():
    xor = gen_named("xor_all", DomainSpec(2, 4))
    r = check_prop3(xor)
    assert (r.deg_alg, r.deg0) == (1, 4)
    assert r.exempt and not r.literal
    r = check_prop3(boolean(2, [0, 0, 0, 1]))
    assert (r.deg_alg, r.deg0) == (2, 2)
    assert not r.literal
    r = check_prop3(boolean(3, np.zeros(8)))
    assert r.deg_alg == 0 and r.literal and r.proof_form


def test_boolean_degree_relations_sample(rng):
    spec = DomainSpec(2, 4)
    for _ in range(200):
        f = random_function(rng, spec, "boolean01")
        deg_num = numerical_degree(nnf(f))
        assert algebraic_degree(moebius(f)) <= deg_num
        assert deg_num == degree_profile(forward(f.to_pm1())).deg0
