"""Upper bounds on the number of relevant variables.

Every formula here works on scalars and on numpy arrays alike, so the
sweeps and the single-function reports share one implementation.

Entries flagged ``asserted`` are the bounds proved for two- and three-valued
functions on Z_q^n via the cycle power C_q^n (and, for the last three-valued
bound, the Hamming graph). The older constants are carried as context:
their ``applicable`` flag records the stated hypothesis, but they are never
asserted and never enter the tightness ratio.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .degrees import DegreeProfile

TOL = 1e-9
PI2 = math.pi ** 2


def _pow(q, e):
    return np.power(float(q), np.asarray(e, dtype=np.float64))


def cycle_deg1_two(q, d0, d1):
    """(pi^2/4) deg_1 q^{deg_0 - 1}"""
    return PI2 / 4 * np.asarray(d1) * _pow(q, np.asarray(d0) - 1)


def cycle_deg2_two(q, d0, d2):
    """(pi^2/2) deg_2 q^{deg_0 - 2}"""
    return PI2 / 2 * np.asarray(d2) * _pow(q, np.asarray(d0) - 2)


def cycle_deg1_three(q, d0, d1):
    """(pi^2/3) deg_1 q^{deg_0 - 1}"""
    return PI2 / 3 * np.asarray(d1) * _pow(q, np.asarray(d0) - 1)


def cycle_deg2_three(q, d0, d2):
    """(2 pi^2/3) deg_2 q^{deg_0 - 2}"""
    return 2 * PI2 / 3 * np.asarray(d2) * _pow(q, np.asarray(d0) - 2)


def hamming_three(q, d0):
    """d q^{d+1} / (3 (q - 1))"""
    return np.asarray(d0) * _pow(q, np.asarray(d0) + 1) / (3 * (q - 1))


def nisan_szegedy(q, d0):
    return np.asarray(d0) * _pow(2, np.asarray(d0) - 1)


def wellens(q, d0):
    return 4.394 * _pow(2, math.ceil(math.log2(q)) * np.asarray(d0))


def valyuzhenich(q, d0):
    return np.asarray(d0) * _pow(q, np.asarray(d0) + 1) / (4 * (q - 1))


def is_power_of_two(q: int) -> bool:
    return q & (q - 1) == 0


# (name, formula id, callable(q, d0, d1, d2), asserted, applicable(q))
TWO_VALUED = (
    ("cycle_deg1", "pi^2/4*deg1*q^(deg0-1)",
     lambda q, d0, d1, d2: cycle_deg1_two(q, d0, d1), True, lambda q: True),
    ("cycle_deg2", "pi^2/2*deg2*q^(deg0-2)",
     lambda q, d0, d1, d2: cycle_deg2_two(q, d0, d2), True, lambda q: True),
    ("nisan_szegedy", "d*2^(d-1)",
     lambda q, d0, d1, d2: nisan_szegedy(q, d0), False, lambda q: q == 2),
    ("wellens", "4.394*2^(ceil(log2 q)*d)",
     lambda q, d0, d1, d2: wellens(q, d0), False, lambda q: True),
    ("valyuzhenich", "d*q^(d+1)/(4(q-1))",
     lambda q, d0, d1, d2: valyuzhenich(q, d0), False, lambda q: not is_power_of_two(q)),
)

THREE_VALUED = (
    ("cycle_deg1", "pi^2/3*deg1*q^(deg0-1)",
     lambda q, d0, d1, d2: cycle_deg1_three(q, d0, d1), True, lambda q: True),
    ("cycle_deg2", "2pi^2/3*deg2*q^(deg0-2)",
     lambda q, d0, d1, d2: cycle_deg2_three(q, d0, d2), True, lambda q: True),
    ("hamming_deg0", "d*q^(d+1)/(3(q-1))",
     lambda q, d0, d1, d2: hamming_three(q, d0), True, lambda q: True),
)

FAMILIES = {"two": TWO_VALUED, "three": THREE_VALUED}


def bound_table(family: str, q: int, d0, d1, d2) -> dict[str, np.ndarray]:
    """Values of every asserted bound of a family, vectorized over degrees."""
    return {name: fn(q, d0, d1, d2) for name, _, fn, asserted, _ in FAMILIES[family] if asserted}


@dataclass(frozen=True)
class BoundEntry:
    name: str
    formula: str
    value: float
    applicable: bool
    asserted: bool
    holds: bool
    margin: float


@dataclass(frozen=True)
class BoundReport:
    family: str
    q: int
    t_observed: int
    entries: tuple = field(default_factory=tuple)

    def asserted(self) -> list[BoundEntry]:
        return [e for e in self.entries if e.asserted and e.applicable]

    def violations(self) -> list[BoundEntry]:
        return [e for e in self.asserted() if not e.holds]

    def __getitem__(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def _report(family: str, profile: DegreeProfile, q: int, t: int) -> BoundReport:
    if profile.deg0 == 0:
        if t != 0:
            raise ValueError(f"deg_0 = 0 but t = {t}; a constant has no relevant variables")
        return BoundReport(family, q, 0, ())
    entries = []
    for name, formula, fn, asserted, applicable in FAMILIES[family]:
        value = float(fn(q, profile.deg0, profile.deg1, profile.deg2))
        entries.append(BoundEntry(name, formula, value, applicable(q), asserted,
                                  t <= value + TOL, value - t))
    return BoundReport(family, q, t, tuple(entries))


def bounds_two_valued(profile: DegreeProfile, q: int, t: int) -> BoundReport:
    return _report("two", profile, q, t)


def bounds_three_valued(profile: DegreeProfile, q: int, t: int) -> BoundReport:
    return _report("three", profile, q, t)


def tightness(report: BoundReport) -> float:
    """t / (smallest applicable asserted bound)."""
    values = [e.value for e in report.asserted()]
    if not values:
        raise ValueError("no applicable bound (constant function?)")
    return report.t_observed / min(values)


def tightness_batch(family: str, q: int, t, d0, d1, d2) -> np.ndarray:
    table = bound_table(family, q, d0, d1, d2)
    best = np.min(np.stack(list(table.values())), axis=0)
    ok = np.asarray(d0) > 0
    return np.divide(np.asarray(t, dtype=np.float64), best, out=np.full(np.shape(best), np.nan), where=ok)
