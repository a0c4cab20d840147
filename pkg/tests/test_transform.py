import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import functions, random_function
from qspectra.domain import CycloNum, DiscreteFunction, DomainSpec, coordinate_table
from qspectra.explorer import gen_fm, gen_named
from qspectra.transform import (
    NORMALIZATION,
    exact_power_sum,
    forward,
    inverse,
    naive_forward,
    parseval_exact,
    parseval_sum,
)

EXACT_KINDS = ["two_valued_pm1", "three_valued_omega", "boolean01", "integer"]


def numpy_reference(f: DiscreteFunction) -> np.ndarray:
    # numpy's fftn uses exp(-2 pi i k x / q), the same sign as W_f(z)
    return np.fft.fftn(f.complex_values().reshape(f.spec.shape)).reshape(-1)


def test_constant_spectrum():
    for q, n in [(2, 3), (3, 2), (5, 1)]:
        spec = DomainSpec(q, n)
        s = forward(DiscreteFunction(spec, "integer", np.ones(spec.size)))
        assert s[0] == CycloNum.rational(q, spec.size)
        assert s.support().sum() == 1
        assert s.normalization == NORMALIZATION


def test_h_vanishing_coefficient():
    h = DiscreteFunction(DomainSpec(4, 1), "boolean01", [1, 1, 0, 0])
    s = forward(h)
    assert s[2].is_zero()
    assert s[0] == CycloNum.rational(4, 2)
    assert s == naive_forward(h)


def test_character_orthogonality():
    spec = DomainSpec(3, 2)
    f = gen_named("character", spec, z=(1, 2))
    w = forward(f).as_complex()
    assert abs(w[5] - 9) < 1e-9
    assert np.abs(np.delete(w, 5)).max() < 1e-9


def test_zero_function():
    spec = DomainSpec(3, 2)
    s = forward(DiscreteFunction(spec, "integer", np.zeros(9)))
    assert not s.support().any()
    assert parseval_sum(s) == 0


def test_three_valued_character_parseval():
    f = DiscreteFunction(DomainSpec(3, 1), "three_valued_omega", [0, 1, 2])
    s = forward(f)
    assert s[1] == CycloNum.rational(3, 3)
    assert parseval_exact(s) == CycloNum.rational(3, 9)


@pytest.mark.parametrize("kind", EXACT_KINDS)
@given(data=st.data())
def test_forward_matches_naive_and_fft(kind, data):
    f = data.draw(functions(kind, max_q=6, max_n=3))
    s = forward(f)
    assert s == naive_forward(f)
    np.testing.assert_allclose(s.as_complex(), numpy_reference(f), atol=1e-9)


@pytest.mark.parametrize("kind", EXACT_KINDS)
@given(data=st.data())
def test_roundtrip_exact(kind, data):
    f = data.draw(functions(kind, max_q=6, max_n=3))
    assert inverse(forward(f)) == f


@given(functions("complex", max_q=5, max_n=3))
def test_roundtrip_complex(f):
    g = inverse(forward(f))
    assert np.abs(g.values - f.values).max() <= 1e-9


def test_complex_roundtrip_q5_n3(rng):
    spec = DomainSpec(5, 3)
    for _ in range(100):
        f = random_function(rng, spec, "complex")
        assert np.abs(inverse(forward(f)).values - f.values).max() <= 1e-9


def test_fm_roundtrip():
    f = gen_fm(2, 3)
    assert inverse(forward(f)) == f


@given(functions("integer"), st.integers(-3, 3), st.integers(-3, 3), st.data())
def test_linearity(f, a, b, data):
    g = data.draw(functions("integer", spec=f.spec))
    combo = DiscreteFunction(f.spec, "integer", a * f.values + b * g.values)
    lhs = forward(combo).coefficients
    rhs = a * forward(f).coefficients + b * forward(g).coefficients
    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("kind", EXACT_KINDS)
@given(data=st.data())
def test_parseval(kind, data):
    f = data.draw(functions(kind))
    s = forward(f)
    mass = int(np.rint(np.abs(f.complex_values()) ** 2).sum())
    assert parseval_exact(s) == CycloNum.rational(s.order, f.spec.size * mass)
    assert abs(parseval_sum(s) - f.spec.size * mass) <= 1e-9 * max(1, f.spec.size * mass)


@given(functions("integer"))
def test_conjugate_symmetry(f):
    s = forward(f)
    q, n = f.spec.q, f.spec.n
    pts = coordinate_table(q, n)
    neg = ((-pts) % q) @ (q ** np.arange(n - 1, -1, -1))
    for z in range(f.spec.size):
        assert s[int(neg[z])] == s[z].conj()


def test_exact_power_sum_batch():
    spec = DomainSpec(3, 2)
    rng = np.random.default_rng(1)
    fs = [random_function(rng, spec, "three_valued_omega") for _ in range(5)]
    canon = np.stack([forward(f).coefficients for f in fs])
    sums = exact_power_sum(canon, 3)
    assert (sums[:, 0] == 81).all() and (sums[:, 1:] == 0).all()
