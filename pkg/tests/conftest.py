import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from qspectra.domain import DiscreteFunction, DomainSpec

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

CODE_SETS = {
    "two_valued_pm1": (-1, 1),
    "three_valued_omega": (0, 1, 2),
    "boolean01": (0, 1),
    "integer": tuple(range(-3, 4)),
}


@st.composite
def specs(draw, max_q=6, max_n=3, min_q=2, max_points=216):
    q = draw(st.integers(min_q, max_q))
    n = draw(st.integers(1, max_n))
    while q ** n > max_points:
        n -= 1
    return DomainSpec(q, n)


@st.composite
def functions(draw, kind="two_valued_pm1", max_q=6, max_n=3, min_q=2, spec=None):
    if spec is None:
        spec = draw(specs(max_q=max_q, max_n=max_n, min_q=min_q))
    if kind == "complex":
        parts = draw(st.lists(st.floats(-4, 4, allow_nan=False), min_size=2 * spec.size,
                              max_size=2 * spec.size))
        arr = np.array(parts[0::2]) + 1j * np.array(parts[1::2])
        return DiscreteFunction(spec, "complex", arr)
    codes = draw(st.lists(st.sampled_from(CODE_SETS[kind]), min_size=spec.size, max_size=spec.size))
    return DiscreteFunction(spec, kind, np.array(codes))


def random_function(rng, spec, kind="two_valued_pm1"):
    if kind == "complex":
        vals = rng.normal(size=spec.size) + 1j * rng.normal(size=spec.size)
        return DiscreteFunction(spec, "complex", vals)
    return DiscreteFunction(spec, kind, rng.choice(CODE_SETS[kind], size=spec.size))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# acceptance criteria append (number, title, ok, detail) here; the lines are
# echoed in the terminal summary so they appear without -s
ACCEPTANCE: list[tuple[int, str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} [{number:2d}] {title}: {detail}")
