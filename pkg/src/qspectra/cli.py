"""Command-line entry point: ``qspectra analyze|verify|gen|spectrum``.

Exit status: 0 on success with no violations, 1 when a check fails,
2 on usage or parse errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import bounds as bnd
from .degrees import (
    UndefinedDegreeError,
    algebraic_degree,
    check_prop2,
    check_prop3,
    degree_profile,
    moebius,
    nnf,
    numerical_degree,
)
from .domain import DiscreteFunction, DomainError, DomainSpec, sym_rep, unflatten
from .explorer import (
    DEFAULT_LAWS,
    GENERATOR,
    HIST_BINS,
    CorpusError,
    Corpus,
    gen_fm,
    gen_named,
    resolve_laws,
    sweep,
)
from .io import SCHEMA_VERSION, TruthTableError, dumps_report, format_truth_table, read_truth_table, round_sig
from .sensitivity import (
    check_support_bounds,
    sensitivity_report,
    spectral_I_three_valued,
    spectral_I_three_valued_hamming,
    spectral_I_two_valued,
)
from .transform import NORMALIZATION, forward, parseval_exact, parseval_sum

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
PROP2_MAX_POINTS = 256
IDENTITY_TOL = 1e-6

I_UNITS = "edges of C_q^n (q=2: every hypercube edge counted twice)"
I_HAMMING_UNITS = "edges of H(n,q)"


class UsageError(Exception):
    pass


def _threads(value: int | None) -> int:
    if value is None:
        env = os.environ.get("QSPECTRA_THREADS", "").strip()
        if not env:
            return 1
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"QSPECTRA_THREADS must be an integer, got {env!r}") from None
    if value < 1:
        raise UsageError(f"thread count must be positive, got {value}")
    return value


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def _two_valued_view(f: DiscreteFunction):
    """(family, function analysed for the bounds, recoding note)."""
    if f.kind == "two_valued_pm1":
        return "two", f, None
    if f.kind == "boolean01":
        return "two", f.to_pm1(), "1-2f"
    if f.kind == "three_valued_omega":
        return "three", f, None
    if f.kind == "integer":
        distinct = np.unique(f.values)
        if len(distinct) == 2:
            a, b = (int(v) for v in distinct)
            g = DiscreteFunction(f.spec, "two_valued_pm1", np.where(f.values == a, 1, -1))
            return "two", g, f"{a}->1, {b}->-1"
        if len(distinct) == 1:
            return "two", DiscreteFunction(f.spec, "two_valued_pm1", np.ones(f.spec.size, dtype=np.int64)), "constant"
    return None, None, None


def _profile(s, max_abs=None):
    try:
        p = degree_profile(s, max_abs=max_abs)
    except UndefinedDegreeError:
        return None
    return {"deg0": p.deg0, "deg1": p.deg1, "deg2": p.deg2}


def _parseval_block(f: DiscreteFunction, s) -> dict:
    q_n = f.spec.size
    if f.exact:
        total = parseval_exact(s).rational_value()
        mass = int((np.abs(f.complex_values()) ** 2).round().sum())
        expected = q_n * mass
        return {"sum_abs_W_squared": int(total) if total is not None else None,
                "expected": expected, "exact": True, "holds": total == expected}
    total = parseval_sum(s)
    expected = q_n * float((np.abs(f.values) ** 2).sum())
    err = abs(total - expected) / max(expected, 1e-300)
    return {"sum_abs_W_squared": total, "expected": expected, "exact": False,
            "relative_error": err, "holds": err <= 1e-9}


def _not_applicable_entries(family: str, reason: str) -> list[dict]:
    return [{"name": name, "formula": formula, "value": None, "applicable": False,
             "asserted": asserted, "holds": None, "reason": reason}
            for name, formula, _, asserted, _ in bnd.FAMILIES[family]]


def build_analysis(f: DiscreteFunction, *, sensitivity: bool = True) -> dict:
    """Full pipeline for one function: transform, degrees, sensitivity, bounds."""
    q, n = f.spec.q, f.spec.n
    if sensitivity and not f.exact:
        raise UsageError("mixed-edge counting needs exact values; "
                         "rerun with --no-sensitivity for complex input")
    s = forward(f)
    max_abs = None if f.exact else float(np.abs(f.values).max())
    support = s.support(max_abs)
    report: dict = {
        "schema_version": SCHEMA_VERSION,
        "input": {"q": q, "n": n, "kind": f.kind, "points": f.spec.size},
        "normalization": NORMALIZATION,
        "constant": f.is_constant(),
        "spectrum": {"support_size": int(support.sum()),
                     "parseval": _parseval_block(f, s)},
        "degrees": _profile(s, max_abs),
    }
    checks = {"parseval": report["spectrum"]["parseval"]["holds"]}

    if q == 2 and f.kind in ("boolean01", "two_valued_pm1"):
        b = f if f.kind == "boolean01" else f.to_boolean()
        anf = moebius(b)
        p3 = check_prop3(b)
        report["boolean"] = {
            "algebraic_degree": algebraic_degree(anf),
            "numerical_degree": numerical_degree(nnf(b)),
            "anf_monomials": [list(m) for m in anf.monomials()],
            "walsh_degree": p3.deg0,
            "min_walsh_weight": p3.min_weight,
            "deg_alg_le_min_deg0_n_minus_deg0": p3.literal,
            "deg_alg_le_min_deg0_n_minus_minweight": p3.proof_form,
        }
    if f.spec.size <= PROP2_MAX_POINTS:
        p2 = check_prop2(f, s)
        report["interpolation"] = {
            "variable_degree": p2.deg_num_prime, "total_degree": p2.deg_num,
            "variable_degree_equals_deg0": p2.prime_equals_deg0,
            "total_degree_at_least_deg1": p2.num_at_least_deg1,
        }
        checks["interpolation"] = p2.prime_equals_deg0 and p2.num_at_least_deg1

    family, g, recoding = _two_valued_view(f)
    report["analysed_as"] = {"family": family, "recoding": recoding}
    if not sensitivity:
        report["sensitivity"] = None
        report["bounds"] = None
        report["checks"] = checks
        return report

    sr = sensitivity_report(f)
    sens = {
        "relevant_variables": sorted(sr.relevant),
        "t": sr.t,
        "I_cycle": sr.I_cycle,
        "I_cycle_units": I_UNITS,
        "I_hamming": sr.I_hamming,
        "I_hamming_units": I_HAMMING_UNITS,
        "per_direction_cycle": list(sr.per_direction_cycle),
        "per_direction_hamming": list(sr.per_direction_hamming),
    }
    if family is not None:
        gs = forward(g) if g is not f else s
        identities = {}
        if family == "two":
            identities["cycle"] = spectral_I_two_valued(gs)
        else:
            identities["cycle"] = spectral_I_three_valued(gs)
            identities["hamming"] = spectral_I_three_valued_hamming(gs)
        direct = {"cycle": sr.I_cycle, "hamming": sr.I_hamming}
        sens["spectral_identities"] = {}
        for name, value in identities.items():
            dev = abs(value - direct[name])
            ok = dev <= IDENTITY_TOL
            sens["spectral_identities"][name] = {"spectral": value, "direct": direct[name],
                                                 "deviation": dev, "holds": ok}
            checks[f"spectral_I_{name}"] = ok
    report["sensitivity"] = sens

    sup = check_support_bounds(f, s)
    report["support_checks"] = {
        "support": sup.support, "indicator_support": sup.indicator_support,
        "support_bound_holds": sup.support_ok,
        "min_retract_difference": sup.min_retract_difference,
        "retract_difference_bound_holds": sup.retract_difference_ok,
        "vanishing_outside_relevant": sup.vanishing_ok,
        "deg0_le_t": sup.deg0_le_t,
        "deg0_le_n_minus_t": sup.deg0_le_n_minus_t,
    }
    checks["support"] = sup.ok

    if family is None:
        report["bounds"] = {"family": None, "entries": [],
                            "reason": "bounds cover two- and three-valued functions only"}
    elif f.is_constant():
        report["bounds"] = {"family": family, "t": 0, "entries":
                            _not_applicable_entries(family, "constant function: deg_0 = 0"),
                            "tightness": None}
    else:
        prof = degree_profile(forward(g) if g is not f else s)
        rep = (bnd.bounds_two_valued if family == "two" else bnd.bounds_three_valued)(prof, q, sr.t)
        entries = []
        for e in rep.entries:
            entries.append({"name": e.name, "formula": e.formula, "value": e.value,
                            "applicable": e.applicable, "asserted": e.asserted,
                            "holds": e.holds, "margin": e.margin})
        report["bounds"] = {"family": family, "t": sr.t, "entries": entries,
                            "tightness": bnd.tightness(rep)}
        checks["bounds"] = not rep.violations()
    report["checks"] = checks
    return report


def cmd_analyze(args) -> int:
    f = read_truth_table(args.input)
    report = build_analysis(f, sensitivity=not args.no_sensitivity)
    sys.stdout.write(dumps_report(report))
    if args.figures:
        from . import plotting

        out = Path(args.figures)
        plotting.plot_power_by_weight(forward(f), out / "spectrum_by_weight.png")
        if report["sensitivity"] is not None:
            plotting.plot_mixed_edges(report["sensitivity"]["per_direction_cycle"],
                                      report["sensitivity"]["per_direction_hamming"],
                                      out / "mixed_edges.png")
    return EXIT_OK if all(report["checks"].values()) else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _law_names(raw: list[str] | None) -> list[str]:
    if not raw:
        return list(DEFAULT_LAWS)
    names = [part.strip() for item in raw for part in item.split(",") if part.strip()]
    try:
        return resolve_laws(names)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _table_text(table) -> str:
    """Truth table as one space-separated string in flat order."""
    return " ".join(str(int(v)) for v in table)


def _counterexample(first: dict | None) -> dict | None:
    if first is None:
        return None
    return {"index": first["index"], "table": _table_text(first["table"])}


def build_verify_summary(corpus: Corpus, laws: list[str], *, threads: int, top_k: int) -> dict:
    summary = sweep(corpus, laws, threads=threads, top_k=top_k)
    return {
        "schema_version": SCHEMA_VERSION,
        "corpus": {"q": corpus.spec.q, "n": corpus.spec.n, "kind": corpus.kind,
                   "mode": corpus.mode, "count": len(corpus),
                   "seed": corpus.seed if corpus.mode == "random" else None,
                   "generator": GENERATOR if corpus.mode == "random" else "reflected Gray code"},
        "functions": summary.functions,
        "nonconstant": summary.nonconstant,
        "violations": summary.violations,
        "laws": {name: {"checked": s.checked, "violations": s.violations,
                        "first_counterexample": _counterexample(s.first_counterexample),
                        "records": dict(sorted(s.records.items()))}
                 for name, s in summary.laws.items()},
        "extremal": [{"table": _table_text(r.table), "t": r.t, "deg0": r.deg0, "deg1": r.deg1,
                      "deg2": r.deg2, "best_bound": r.best_bound, "tightness": r.tightness}
                     for r in summary.extremal],
        "tightness_histogram": {"bins": HIST_BINS, "range": [0.0, 1.0],
                                "counts": summary.tightness_histogram},
        "digest": summary.digest,
    }


def _verify_tsv(doc: dict) -> str:
    rows = ["law\tchecked\tviolations"]
    for name, s in doc["laws"].items():
        rows.append(f"{name}\t{s['checked']}\t{s['violations']}")
    rows.append(f"total\t{doc['functions']}\t{doc['violations']}")
    return "\n".join(rows) + "\n"


def cmd_verify(args) -> int:
    laws = _law_names(args.law)
    threads = _threads(args.threads)
    try:
        spec = DomainSpec(args.q, args.n)
        if args.exhaustive:
            corpus = Corpus(spec, args.kind, "exhaustive")
        else:
            corpus = Corpus(spec, args.kind, "random", args.samples, args.seed)
    except (CorpusError, DomainError) as exc:
        raise UsageError(f"infeasible corpus: {exc}") from None
    doc = build_verify_summary(corpus, laws, threads=threads, top_k=args.top_k)
    sys.stdout.write(dumps_report(doc) if args.format == "json" else _verify_tsv(doc))
    if args.figures:
        from . import plotting

        out = Path(args.figures)
        plotting.plot_law_counts(doc["laws"], out / "law_counts.png")
        plotting.plot_tightness_histogram(doc["tightness_histogram"]["counts"], out / "tightness.png")
    return EXIT_OK if doc["violations"] == 0 else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def _parse_z(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"--z expects comma-separated integers, got {text!r}") from None


def generate(args) -> DiscreteFunction:
    fam = args.family
    if fam == "fm":
        if args.m is None or args.n is None:
            raise UsageError("fm needs --m and --n")
        f = gen_fm(args.m, args.n)
        return f.to_pm1() if args.pm1 else f
    z = _parse_z(args.z)
    n = args.n
    if fam == "character":
        if z is None:
            raise UsageError("character needs --z")
        n = len(z) if n is None else n
    if n is None:
        raise UsageError(f"{fam} needs --n")
    q = args.q if args.q is not None else 2
    return gen_named(fam, DomainSpec(q, n), i=args.i, c=args.c, z=z)


def cmd_gen(args) -> int:
    try:
        f = generate(args)
    except (ValueError, DomainError) as exc:
        raise UsageError(str(exc)) from None
    text = format_truth_table(f)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def _fmt_real(x: float) -> str:
    v = round_sig(x)
    if v == 0:
        v = 0.0
    return str(int(v)) if v.is_integer() else repr(v)


def _fmt_complex(w: complex, tol: float) -> str:
    re = w.real if abs(w.real) > tol else 0.0
    im = w.imag if abs(w.imag) > tol else 0.0
    if im == 0:
        return _fmt_real(re)
    if re == 0:
        return f"{_fmt_real(im)}i"
    sign = "-" if im < 0 else "+"
    return f"{_fmt_real(re)}{sign}{_fmt_real(abs(im))}i"


def spectrum_lines(f: DiscreteFunction) -> list[str]:
    s = forward(f)
    q = f.spec.q
    max_abs = None if f.exact else float(np.abs(f.values).max())
    support = s.support(max_abs)
    tol = 1e-8 * q ** (f.spec.n / 2) * (max_abs or 1.0)
    lines, irrational = [], False
    for flat in np.flatnonzero(support):
        z = ",".join(str(sym_rep(c, q)) for c in unflatten(int(flat), f.spec))
        w = s[int(flat)]
        if f.exact:
            val = w.rational_value()
            w_text = str(val) if val is not None else str(w)
            p = w * w.conj()
            pval = p.rational_value()
            p_text = str(pval) if pval is not None else str(p)
            irrational |= val is None or pval is None
        else:
            w_text = _fmt_complex(w, tol)
            p_text = _fmt_real(abs(w) ** 2)
        lines.append(f"z=({z})\tW={w_text}\t|W|^2={p_text}")
    if irrational:
        lines.insert(0, f"# w = exp(2*pi*i/{s.order})")
    return lines


def cmd_spectrum(args) -> int:
    f = read_truth_table(args.input)
    sys.stdout.write("".join(line + "\n" for line in spectrum_lines(f)))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

FAMILIES = ("fm", "xor_all", "jmath", "dictator", "majority", "constant", "character")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qspectra",
                                     description="Spectral invariants of functions on Z_q^n")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="JSON report for one truth-table file")
    p.add_argument("input", help="truth-table file")
    p.add_argument("--no-sensitivity", action="store_true",
                   help="skip mixed-edge counts and bounds (allows complex input)")
    p.add_argument("--figures", metavar="DIR", help="also write PNG figures to DIR")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="sweep a corpus and check the laws")
    p.add_argument("--law", action="append",
                   help="law name(s), comma separated or repeated; 'all' for every law")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("two", "three", "bool"), required=True)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int, metavar="K")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, help="worker threads (default: $QSPECTRA_THREADS or 1)")
    p.add_argument("--top-k", type=int, default=10, help="extremal functions to keep")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--figures", metavar="DIR", help="also write PNG figures to DIR")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a truth table for a named family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--i", type=int, default=1, help="dictator variable (1-based)")
    p.add_argument("--c", type=int, default=1, help="constant value")
    p.add_argument("--z", help="character index, e.g. 1,2")
    p.add_argument("--pm1", action="store_true", help="fm as the +-1 function 1-2f")
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("spectrum", help="list the nonzero coefficients W_f(z)")
    p.add_argument("input", help="truth-table file")
    p.set_defaults(func=cmd_spectrum)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, TruthTableError) as exc:
        print(f"qspectra {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"qspectra {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
