"""Function families, corpus sweeps and extremal search.

A corpus is either every function Z_q^n -> V for a small value set V, or a
seeded random sample. Corpora are processed in fixed-size chunks; chunk
boundaries depend only on the corpus, never on the worker count, so
summaries are identical for any ``threads``.

Exhaustive corpora are walked in reflected Gray-code order: consecutive
functions differ in one table entry, and the spectrum is carried along by
adding that entry's change times the conjugate character row.
"""
from __future__ import annotations

import hashlib
import heapq
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from . import bounds as bnd
from .degrees import (
    char_degree_table,
    check_prop2,
    max_over_support,
    moebius_transform,
    nnf_transform,
    weight_table,
)
from .domain import (
    DiscreteFunction,
    DomainSpec,
    canonical_to_complex,
    coordinate_table,
    group_ring_values,
    reduce_group_ring,
    ring_order,
)
from .graphs import cycle_weight_table
from .sensitivity import (
    mixed_cycle_batch,
    mixed_hamming_batch,
    relevance_batch,
    retract_mismatch_batch,
)
from .transform import exact_power_sum, group_ring_transform, inner_products

EXHAUSTIVE_CAP = 2 ** 24
ROUND_TOL = 1e-6
GENERATOR = "numpy.random.PCG64 seeded with [seed, chunk]"
HIST_BINS = 20


class CorpusError(ValueError):
    """Corpus is malformed or too large to enumerate."""


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

H_VALUES = (1, 1, 0, 0)


def gen_fm(m: int, n: int, q: int = 4) -> DiscreteFunction:
    """f_m(x) = h(x_1) ... h(x_m) with h = (1, 1, 0, 0), as a 0/1 function.

    Use ``.to_pm1()``-style recoding 1 - 2 f_m for the two-valued analysis.
    """
    if q != 4:
        raise ValueError(f"f_m is defined for q = 4, got q = {q}")
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    spec = DomainSpec(4, n)
    h = np.array(H_VALUES)
    vals = h[coordinate_table(4, n)[:, :m]].prod(axis=1)
    return DiscreteFunction(spec, "boolean01", vals)


def gen_fm_pm1(m: int, n: int) -> DiscreteFunction:
    f = gen_fm(m, n)
    return DiscreteFunction(f.spec, "two_valued_pm1", 1 - 2 * f.values)


def _binary(spec: DomainSpec, name: str):
    if spec.q != 2:
        raise ValueError(f"{name} is defined for q = 2")


def gen_named(name: str, spec: DomainSpec, *, i: int = 1, c: int = 1,
              z: Sequence[int] | None = None) -> DiscreteFunction:
    """Named functions: xor_all, jmath, dictator, majority, constant, character.

    ``dictator`` is the +-1 function that is -1 exactly when x_i != 0;
    ``constant`` takes the integer value c (+-1 gives a two-valued table);
    ``character`` is phi_z as a complex table.
    """
    pts = coordinate_table(spec.q, spec.n)
    if name == "xor_all":
        _binary(spec, name)
        return DiscreteFunction(spec, "boolean01", pts.sum(axis=1) % 2)
    if name == "jmath":
        _binary(spec, name)
        return DiscreteFunction(spec, "integer", spec.n - 2 * pts.sum(axis=1))
    if name == "dictator":
        if not 1 <= i <= spec.n:
            raise ValueError(f"dictator index {i} out of range 1..{spec.n}")
        return DiscreteFunction(spec, "two_valued_pm1", np.where(pts[:, i - 1] == 0, 1, -1))
    if name == "majority":
        _binary(spec, name)
        if spec.n % 2 == 0:
            raise ValueError("majority needs an odd number of arguments")
        return DiscreteFunction(spec, "boolean01", (2 * pts.sum(axis=1) > spec.n).astype(int))
    if name == "constant":
        kind = "two_valued_pm1" if c in (-1, 1) else "integer"
        return DiscreteFunction(spec, kind, np.full(spec.size, c))
    if name == "character":
        if z is None or len(z) != spec.n:
            raise ValueError("character needs z with n entries")
        ip = (pts @ np.asarray(z)) % spec.q
        return DiscreteFunction(spec, "complex", np.exp(2j * np.pi * ip / spec.q))
    raise ValueError(f"unknown function family {name!r}")


# ---------------------------------------------------------------------------
# corpora
# ---------------------------------------------------------------------------

VALUE_SETS = {
    "two": ("two_valued_pm1", (-1, 1)),
    "three": ("three_valued_omega", (0, 1, 2)),
    "bool": ("boolean01", (0, 1)),
}


@dataclass(frozen=True)
class Corpus:
    """Functions Z_q^n -> value set, exhaustive or random.

    ``kind`` is ``two`` (+-1), ``three`` (cube roots of unity, coded 0/1/2)
    or ``bool`` (0/1 on Z_2^n, analysed through (-1)^f).
    """

    spec: DomainSpec
    kind: str
    mode: str = "exhaustive"
    count: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.kind not in VALUE_SETS:
            raise CorpusError(f"unknown corpus kind {self.kind!r}")
        if self.kind == "bool" and self.spec.q != 2:
            raise CorpusError("bool corpora need q = 2")
        if self.mode == "exhaustive":
            if self.total_exhaustive() > EXHAUSTIVE_CAP:
                raise CorpusError(
                    f"exhaustive corpus has {len(self.values)}^{self.spec.size} functions, above 2^24")
        elif self.mode == "random":
            if self.count < 1:
                raise CorpusError("random corpus needs a positive count")
        else:
            raise CorpusError(f"unknown corpus mode {self.mode!r}")

    @property
    def values(self) -> tuple[int, ...]:
        return VALUE_SETS[self.kind][1]

    @property
    def value_kind(self) -> str:
        return VALUE_SETS[self.kind][0]

    @property
    def signal_kind(self) -> str:
        """Kind of the function whose spectrum is analysed."""
        return "two_valued_pm1" if self.kind == "bool" else self.value_kind

    def total_exhaustive(self) -> int:
        k, L = len(self.values), self.spec.size
        if L * math.log2(k) > 62:
            return EXHAUSTIVE_CAP + 1
        return k ** L

    def __len__(self) -> int:
        return self.total_exhaustive() if self.mode == "exhaustive" else self.count

    @property
    def chunk_size(self) -> int:
        L, N = self.spec.size, ring_order(self.spec.q, self.signal_kind)
        return int(max(64, min(4096, 2 ** 21 // (L * N))))

    def chunks(self) -> list[tuple[int, int]]:
        size, total = self.chunk_size, len(self)
        return [(s, min(s + size, total)) for s in range(0, total, size)]


def gray_digits(ranks: np.ndarray, k: int, L: int) -> np.ndarray:
    """Reflected k-ary Gray code words for the given ranks; (len(ranks), L) digits.

    Digit L-1 is least significant. Consecutive ranks differ in exactly one
    digit, by +-1.
    """
    ranks = np.asarray(ranks, dtype=np.int64)
    base = np.empty((ranks.size, L), dtype=np.int64)
    r = ranks.copy()
    for pos in range(L - 1, -1, -1):
        base[:, pos] = r % k
        r //= k
    # a digit runs backwards when the number formed by the higher digits is odd
    parity = np.zeros(ranks.size, dtype=np.int64)
    out = np.empty_like(base)
    for pos in range(L):
        b = base[:, pos]
        out[:, pos] = np.where(parity == 0, b, k - 1 - b)
        parity = (parity * k + b) % 2
    return out


def _signal_codes(corpus: Corpus, codes: np.ndarray) -> np.ndarray:
    return 1 - 2 * codes if corpus.kind == "bool" else codes


def _exhaustive_chunk(corpus: Corpus, start: int, stop: int) -> tuple[np.ndarray, np.ndarray]:
    """Tables and group-ring spectra for Gray ranks [start, stop)."""
    q, n, L = corpus.spec.q, corpus.spec.n, corpus.spec.size
    values = np.asarray(corpus.values)
    digits = gray_digits(np.arange(start, stop), len(values), L)
    codes = values[digits]
    signal = _signal_codes(corpus, codes)
    gr = group_ring_values(signal, corpus.signal_kind, q)  # (C, L, N)
    N = gr.shape[-1]
    first = group_ring_transform(gr[:1], q, n)[0]
    if stop - start == 1:
        return codes, first[None]
    # single changed position per step
    delta = gr[1:] - gr[:-1]  # (C-1, L, N)
    pos = np.abs(digits[1:] - digits[:-1]).argmax(axis=1)
    dvec = delta[np.arange(stop - start - 1), pos]  # (C-1, N)
    step = N // q
    ip = inner_products(q, n)[pos]  # (C-1, L) = <x_changed, z>
    r = np.arange(N)
    idx = (r[None, None, :] + ip[:, :, None] * step) % N  # coefficient r of dvec * x^{-<x,z> step}
    dW = np.take_along_axis(dvec[:, None, :].repeat(L, axis=1), idx, axis=-1)
    spectra = np.concatenate([first[None], first[None] + np.cumsum(dW, axis=0)], axis=0)
    return codes, spectra


def _random_chunk(corpus: Corpus, start: int, stop: int, chunk_index: int) -> tuple[np.ndarray, np.ndarray]:
    q, n, L = corpus.spec.q, corpus.spec.n, corpus.spec.size
    rng = np.random.default_rng([corpus.seed, chunk_index])
    values = np.asarray(corpus.values)
    codes = values[rng.integers(0, len(values), size=(stop - start, L))]
    gr = group_ring_values(_signal_codes(corpus, codes), corpus.signal_kind, q)
    return codes, group_ring_transform(gr, q, n)


def corpus_chunk(corpus: Corpus, chunk_index: int) -> tuple[np.ndarray, np.ndarray]:
    start, stop = corpus.chunks()[chunk_index]
    if corpus.mode == "exhaustive":
        return _exhaustive_chunk(corpus, start, stop)
    return _random_chunk(corpus, start, stop, chunk_index)


def corpus_functions(corpus: Corpus) -> list[DiscreteFunction]:
    """Materialize every function of the corpus (small corpora only)."""
    out = []
    for c in range(len(corpus.chunks())):
        codes, _ = corpus_chunk(corpus, c)
        out.extend(DiscreteFunction(corpus.spec, corpus.value_kind, row) for row in codes)
    return out


# ---------------------------------------------------------------------------
# batched analysis
# ---------------------------------------------------------------------------

class Batch:
    """Per-function invariants for one chunk, computed on demand."""

    def __init__(self, corpus: Corpus, codes: np.ndarray, gr_spectra: np.ndarray, offset: int):
        self.corpus = corpus
        self.spec = corpus.spec
        self.q, self.n, self.L = corpus.spec.q, corpus.spec.n, corpus.spec.size
        self.codes = codes
        self.signal = _signal_codes(corpus, codes)
        self.gr = gr_spectra
        self.N = gr_spectra.shape[-1]
        self.offset = offset

    def __len__(self):
        return self.codes.shape[0]

    @cached_property
    def canon(self) -> np.ndarray:
        return reduce_group_ring(self.gr, self.N)

    @cached_property
    def support(self) -> np.ndarray:
        return self.canon.any(axis=-1)

    @cached_property
    def power(self) -> np.ndarray:
        return np.abs(canonical_to_complex(self.canon, self.N)) ** 2

    def degree(self, m: int) -> np.ndarray:
        return np.maximum(max_over_support(self.support, char_degree_table(self.q, self.n, m)), 0)

    @cached_property
    def deg0(self):
        return self.degree(0)

    @cached_property
    def deg1(self):
        return self.degree(1)

    @cached_property
    def deg2(self):
        return self.degree(2)

    @cached_property
    def constant(self) -> np.ndarray:
        return (self.codes == self.codes[:, :1]).all(axis=1)

    @cached_property
    def relevant(self) -> np.ndarray:
        return relevance_batch(self.codes, self.q, self.n)

    @cached_property
    def t(self) -> np.ndarray:
        return self.relevant.sum(axis=1)

    @cached_property
    def mixed_cycle(self) -> np.ndarray:
        return mixed_cycle_batch(self.codes, self.q, self.n)

    @cached_property
    def mixed_hamming(self) -> np.ndarray:
        return mixed_hamming_batch(self.codes, self.q, self.n)

    @cached_property
    def I_cycle(self):
        return self.mixed_cycle.sum(axis=1)

    @cached_property
    def I_hamming(self):
        return self.mixed_hamming.sum(axis=1)

    @cached_property
    def mismatch(self) -> list[np.ndarray]:
        return [retract_mismatch_batch(self.codes, self.q, self.n, i) for i in range(self.n)]

    @property
    def family(self) -> str:
        return "three" if self.corpus.kind == "three" else "two"

    def tightness(self) -> np.ndarray:
        return bnd.tightness_batch(self.family, self.q, self.t, self.deg0, self.deg1, self.deg2)


@dataclass
class LawResult:
    checked: np.ndarray
    violated: np.ndarray
    records: dict = field(default_factory=dict)


def _all(b: Batch):
    return np.ones(len(b), dtype=bool)


def law_parseval(b: Batch) -> LawResult:
    q, L = b.q, b.L
    sq = np.abs(b.signal) ** 2 if b.corpus.signal_kind != "three_valued_omega" else np.ones_like(b.signal)
    expected = L * sq.sum(axis=1)
    exact = exact_power_sum(b.canon, b.N)
    exact_ok = (exact[:, 0] == expected) & ~exact[:, 1:].any(axis=1)
    total = b.power.sum(axis=1)
    float_ok = np.abs(total - expected) <= 1e-9 * np.maximum(expected, 1)
    unimodular_ok = expected == q ** (2 * b.n)
    return LawResult(_all(b), ~(exact_ok & float_ok & unimodular_ok))


def law_spectral_I(b: Batch) -> LawResult:
    cw = cycle_weight_table(b.q, b.n)
    raw = (b.power * cw).sum(axis=1) / b.L
    if b.family == "three":
        cyc = 4 * raw / 3
        ham = b.q * (b.power * weight_table(b.q, b.n)).sum(axis=1) / (3 * b.L)
        bad = (np.abs(cyc - b.I_cycle) > ROUND_TOL) | (np.abs(ham - b.I_hamming) > ROUND_TOL)
        dev = np.maximum(np.abs(cyc - b.I_cycle), np.abs(ham - b.I_hamming))
    else:
        bad = np.abs(raw - b.I_cycle) > ROUND_TOL
        dev = np.abs(raw - b.I_cycle)
    return LawResult(_all(b), bad, {"max_deviation": float(dev.max(initial=0.0))})


def law_bounds(b: Batch) -> LawResult:
    nc = ~b.constant
    table = bnd.bound_table(b.family, b.q, b.deg0, b.deg1, b.deg2)
    bad = np.zeros(len(b), dtype=bool)
    for value in table.values():
        bad |= nc & (b.t > value + bnd.TOL)
    return LawResult(nc, bad)


def law_proof_steps(b: Batch) -> LawResult:
    q, n = b.q, b.n
    nc = ~b.constant
    d0 = b.deg0
    floor = np.power(float(q), n - d0)
    t = b.t
    tol = bnd.TOL
    bad = b.I_cycle < 2 * t * floor - tol
    scale = 4 / 3 if b.family == "three" else 1.0
    bad |= b.I_cycle > scale * bnd.PI2 * b.deg2 * np.power(float(q), n - 2) + tol
    bad |= b.I_cycle > scale * bnd.PI2 * b.deg1 * np.power(float(q), n - 1) / 2 + tol
    if b.family == "three":
        bad |= b.I_hamming < (q - 1) * t * floor - tol
        bad |= 3 * b.I_hamming > np.power(float(q), n + 1) * d0 + tol
    pairs = np.stack([(m > 0).sum(axis=(1, 2)) for m in b.mismatch], axis=1)
    bad |= (b.relevant & (pairs < 2 * q - 2)).any(axis=1)
    return LawResult(nc, nc & bad)


def law_support(b: Batch) -> LawResult:
    q, n = b.q, b.n
    pts = coordinate_table(q, n)
    touches = (pts[None, :, :] != 0) & ~b.relevant[:, None, :]
    vanishing_bad = (b.support & touches.any(axis=2)).any(axis=1)
    bad = vanishing_bad | (b.deg0 > b.t)
    checked = _all(b)
    if q >= 3:
        floor = np.power(float(q), n - b.deg0)
        for m in b.mismatch:
            bad |= ((m > 0) & (m < floor[:, None, None])).any(axis=(1, 2))
        if b.corpus.kind == "two":
            # indicator of the -1 set has the same deg_0 unless f is constant
            ind = (b.codes == -1).sum(axis=1)
            bad |= (ind > 0) & ~b.constant & (ind < floor)
    literal = int(((b.deg0 <= n - b.t)).sum())
    return LawResult(checked, bad, {"deg0_le_n_minus_t": literal, "deg0_le_t": int((b.deg0 <= b.t).sum())})


def law_degrees(b: Batch) -> LawResult:
    bad = np.zeros(len(b), dtype=bool)
    checked = np.zeros(len(b), dtype=bool)
    if b.q in (2, 3):
        checked[:] = True
        bad |= (b.deg1 != b.deg0) | (b.deg2 != b.deg0)
    if b.corpus.kind == "bool":
        checked[:] = True
        n = b.n
        anf = moebius_transform(b.codes, n)
        w = weight_table(2, n)
        deg_alg = np.maximum(max_over_support(anf != 0, w), 0)
        nnf = nnf_transform(b.codes, n)
        deg_num = np.maximum(max_over_support(nnf != 0, w), 0)
        bad |= deg_alg > deg_num
        bad |= deg_num != b.deg0
        bad |= (moebius_transform(anf, n) != b.codes).any(axis=1)
        # spectrum reflection under f + l_1: y in supp W_f <=> y+1 in supp W_{f+l_1}
        parity = coordinate_table(2, n).sum(axis=1) % 2
        shifted = 1 - 2 * (b.codes ^ parity[None, :])
        gr = group_ring_values(shifted, "two_valued_pm1", 2)
        supp2 = reduce_group_ring(group_ring_transform(gr, 2, n), 2).any(axis=-1)
        bad |= (b.support != supp2[:, ::-1]).any(axis=1)
    return LawResult(checked, bad)


def law_prop3(b: Batch) -> LawResult:
    if b.corpus.kind != "bool":
        return LawResult(np.zeros(len(b), dtype=bool), np.zeros(len(b), dtype=bool))
    n = b.n
    w = weight_table(2, n)
    anf = moebius_transform(b.codes, n)
    deg_alg = np.maximum(max_over_support(anf != 0, w), 0)
    d0 = b.deg0
    min_wt = np.where(b.support, w, n + 1).min(axis=1)
    literal = deg_alg <= np.minimum(d0, n - d0)
    proof_form = deg_alg <= np.minimum(d0, n - min_wt)
    exempt = deg_alg <= 1
    records = {
        "literal_holds": int(literal.sum()),
        "literal_fails": int((~literal).sum()),
        "literal_fails_exempt": int((~literal & exempt).sum()),
        "proof_form_holds": int(proof_form.sum()),
        "proof_form_fails_exempt": int((~proof_form & exempt).sum()),
        "proof_form_fails_nonexempt": int((~proof_form & ~exempt).sum()),
        "exempt": int(exempt.sum()),
    }
    # asserted: the inequality in the form its proof establishes, for deg_alg > 1
    return LawResult(~exempt, ~exempt & ~proof_form, records)


def law_prop2(b: Batch) -> LawResult:
    bad = np.zeros(len(b), dtype=bool)
    counts = {"prime_equals_deg0": 0, "num_at_least_deg1": 0}
    kind = b.corpus.signal_kind
    for j, row in enumerate(b.signal):
        rep = check_prop2(DiscreteFunction(b.spec, kind, row))
        counts["prime_equals_deg0"] += rep.prime_equals_deg0
        counts["num_at_least_deg1"] += rep.num_at_least_deg1
        bad[j] = not (rep.prime_equals_deg0 and rep.num_at_least_deg1)
    return LawResult(_all(b), bad, counts)


LAWS: dict[str, Callable[[Batch], LawResult]] = {
    "parseval": law_parseval,
    "spectral_I": law_spectral_I,
    "bounds": law_bounds,
    "proof_steps": law_proof_steps,
    "support": law_support,
    "degrees": law_degrees,
    "prop3": law_prop3,
    "prop2": law_prop2,
}
ALIASES = {"theorem1": "bounds", "theorem3": "bounds", "three_valued_bounds": "bounds"}
DEFAULT_LAWS = ("parseval", "spectral_I", "bounds", "proof_steps", "support", "degrees", "prop3")


def resolve_laws(names: Sequence[str]) -> list[str]:
    out = []
    for name in names:
        if name == "all":
            out.extend(DEFAULT_LAWS)
            continue
        key = ALIASES.get(name, name)
        if key not in LAWS:
            raise CorpusError(f"unknown law {name!r}; choose from {sorted(set(LAWS) | set(ALIASES) | {'all'})}")
        out.append(key)
    return list(dict.fromkeys(out))


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class ExtremalRecord:
    sort_key: tuple
    table: tuple = field(compare=False)
    t: int = field(compare=False)
    deg0: int = field(compare=False)
    deg1: int = field(compare=False)
    deg2: int = field(compare=False)
    best_bound: float = field(compare=False)
    tightness: float = field(compare=False)


@dataclass
class LawSummary:
    checked: int = 0
    violations: int = 0
    first_counterexample: dict | None = None
    records: dict = field(default_factory=dict)

    def merge(self, other: "LawSummary"):
        self.checked += other.checked
        self.violations += other.violations
        if self.first_counterexample is None:
            self.first_counterexample = other.first_counterexample
        for k, v in other.records.items():
            if k.startswith("max_"):
                self.records[k] = max(self.records.get(k, v), v)
            else:
                self.records[k] = self.records.get(k, 0) + v


@dataclass
class SweepSummary:
    corpus: Corpus
    laws: dict
    functions: int = 0
    nonconstant: int = 0
    extremal: list = field(default_factory=list)
    tightness_histogram: list = field(default_factory=list)
    digest: str = ""

    @property
    def violations(self) -> int:
        return sum(s.violations for s in self.laws.values())


def _extremal_candidates(b: Batch, top_k: int) -> list[ExtremalRecord]:
    tight = b.tightness()
    order = np.flatnonzero(~b.constant)
    if order.size > top_k:
        cutoff = np.sort(tight[order])[-top_k]
        order = order[tight[order] >= cutoff]
    best = np.min(np.stack(list(bnd.bound_table(b.family, b.q, b.deg0, b.deg1, b.deg2).values())), axis=0)
    recs = []
    for j in order:
        table = tuple(int(v) for v in b.codes[j])
        recs.append(ExtremalRecord((-float(tight[j]), table), table, int(b.t[j]), int(b.deg0[j]),
                                   int(b.deg1[j]), int(b.deg2[j]), float(best[j]), float(tight[j])))
    return heapq.nsmallest(top_k, recs)


def _run_chunk(corpus: Corpus, laws: Sequence[str], index: int, top_k: int):
    start, _ = corpus.chunks()[index]
    codes, gr = corpus_chunk(corpus, index)
    b = Batch(corpus, codes, gr, start)
    per_law = {}
    for name in laws:
        res = LAWS[name](b)
        bad = np.flatnonzero(res.violated)
        first = None
        if bad.size:
            j = int(bad[0])
            first = {"index": start + j, "table": [int(v) for v in codes[j]]}
        per_law[name] = LawSummary(int(res.checked.sum()), int(bad.size), first, dict(res.records))
    fingerprint = np.concatenate(
        [codes, np.stack([b.deg0, b.deg1, b.deg2, b.t, b.I_cycle, b.I_hamming], axis=1)], axis=1
    ).astype("<i8").tobytes()
    extremal = _extremal_candidates(b, top_k) if top_k else []
    tight = b.tightness()[~b.constant]
    hist = np.histogram(np.minimum(tight, 1.0), bins=HIST_BINS, range=(0.0, 1.0))[0]
    return len(b), int((~b.constant).sum()), per_law, fingerprint, extremal, hist


def sweep(corpus: Corpus, checks: Sequence[str] = DEFAULT_LAWS, *, threads: int = 1,
          top_k: int = 10) -> SweepSummary:
    """Run the named law checks over every function of the corpus."""
    laws = resolve_laws(checks)
    summary = SweepSummary(corpus, {name: LawSummary() for name in laws})
    digest = hashlib.sha256()
    digest.update(f"{corpus.spec.q},{corpus.spec.n},{corpus.kind},{corpus.mode},{len(corpus)},{corpus.seed}".encode())
    indices = range(len(corpus.chunks()))
    candidates: list[ExtremalRecord] = []

    def run(i):
        return _run_chunk(corpus, laws, i, top_k)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = pool.map(run, indices)
            results = list(results)
    else:
        results = map(run, indices)
    hist = np.zeros(HIST_BINS, dtype=np.int64)
    for count, nonconst, per_law, fingerprint, extremal, counts in results:
        hist += counts
        summary.functions += count
        summary.nonconstant += nonconst
        for name, part in per_law.items():
            summary.laws[name].merge(part)
        digest.update(fingerprint)
        candidates = heapq.nsmallest(top_k, candidates + extremal)
    summary.extremal = candidates
    summary.tightness_histogram = [int(v) for v in hist]
    summary.digest = digest.hexdigest()
    return summary


def search_extremal(corpus: Corpus | Sequence[DiscreteFunction], top_k: int = 10) -> list[ExtremalRecord]:
    """Top-k non-constant functions by tightness t / (smallest proved bound).

    Ties are broken by the truth table in lexicographic order. Accepts a
    corpus or an explicit list of two- or three-valued functions on one domain.
    """
    if isinstance(corpus, Corpus):
        records = sweep(corpus, [], top_k=top_k).extremal
    else:
        records = _extremal_from_functions(list(corpus), top_k)
    if not records:
        raise ValueError("no function in the corpus has an applicable bound")
    return records


def _extremal_from_functions(functions: list[DiscreteFunction], top_k: int) -> list[ExtremalRecord]:
    if not functions:
        raise ValueError("empty corpus")
    spec = functions[0].spec
    kinds = {f.kind for f in functions}
    if len(kinds) != 1 or {f.spec for f in functions} != {spec}:
        raise ValueError("functions must share one domain and kind")
    kind = {"two_valued_pm1": "two", "three_valued_omega": "three"}.get(kinds.pop())
    if kind is None:
        raise ValueError("extremal search needs two- or three-valued functions")
    corpus = Corpus(spec, kind, mode="random", count=len(functions))
    codes = np.stack([f.values for f in functions])
    gr = group_ring_transform(group_ring_values(codes, corpus.signal_kind, spec.q), spec.q, spec.n)
    return _extremal_candidates(Batch(corpus, codes, gr, 0), top_k)
