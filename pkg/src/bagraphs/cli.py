"""Command-line interface: generation, analysis, formula evaluation,
self-verification, and sweep campaigns with stable file formats.

Exit codes: 0 success, 1 verification failure, 2 usage/validation error,
3 resource-budget violation.  All randomness flows from --seed/--stream;
rerunning a command with identical flags reproduces its output files byte
for byte.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import sys
import time
from fractions import Fraction

from . import __version__, experiments, formulas, gen, urn
from .analysis import analyze
from .experiments import ResourceBudgetError, run_sweep, set_thread_count
from .formulas import ThresholdParams, threshold_k
from .model import ModelParams, SeedSpec, UndirectedGraph

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

_CLI_MODEL_NAMES = {"bilateral": "bilateral", "unilateral": "unilateral", "er": "erdos_renyi"}

SWEEP_COLUMNS = (
    "n", "k", "trials", "master_seed", "frac_connected", "ci_low", "ci_high",
    "mean_isolated", "frac_has_isolated", "mean_degree", "mean_min_degree",
)


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


def _write_manifest(out_path: str, command: str, config: dict, started: float) -> None:
    manifest = {
        "command": command,
        "config": config,
        "version": __version__,
        "wall_clock_seconds": round(time.time() - started, 3),
        "started_unix": round(started, 3),
    }
    with open(out_path + ".manifest.json", "w", newline="\n") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")


def _echo_config(config: dict) -> None:
    print("config: " + json.dumps(config, sort_keys=True), file=sys.stderr)


def cmd_generate(args: argparse.Namespace) -> int:
    started = time.time()
    kind = _CLI_MODEL_NAMES[args.model]
    if kind == "erdos_renyi":
        params = ModelParams(n=args.n, model_kind=kind, p=args.p)
    else:
        if args.k is None:
            raise ValueError("--k is required for preference-based models")
        params = ModelParams(n=args.n, k=args.k, model_kind=kind)
    seed = SeedSpec(args.seed, args.stream)
    graph = gen.generate(params, seed)
    with open(args.out, "w", newline="\n") as fh:
        fh.write("u,v\n")
        for u, v in graph.edges:
            fh.write(f"{u},{v}\n")
    config = {
        "n": args.n, "k": args.k, "p": args.p, "model": kind,
        "master_seed": args.seed, "stream_index": args.stream, "out": args.out,
    }
    _write_manifest(args.out, "generate", config, started)
    print(f"wrote {graph.edge_count} edges to {args.out}")
    return EXIT_OK


def _load_edge_csv(path: str, n: int) -> UndirectedGraph:
    edges = []
    with open(path, "r") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if lineno == 1:
                if line != "u,v":
                    raise ValueError(f'line 1: expected header "u,v", got {line!r}')
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected two fields, got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ValueError(f"line {lineno}: non-integer vertex id in {line!r}") from None
            if u == v:
                raise ValueError(f"line {lineno}: self-loop {u},{v}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"line {lineno}: vertex id out of range for n={n}")
            edges.append((u, v))
    return UndirectedGraph(n, edges)


def cmd_analyze(args: argparse.Namespace) -> int:
    graph = _load_edge_csv(args.in_path, args.n)
    report = analyze(graph)
    _echo_config({"in": args.in_path, "n": args.n})
    print(report.to_json())
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    started = time.time()
    threads = set_thread_count(args.threads)
    seed = SeedSpec(args.seed, args.stream)
    kind = _CLI_MODEL_NAMES[args.model]
    if kind == "erdos_renyi":
        raise ValueError("sweeps cover the preference-based families; use bilateral or unilateral")
    if (args.k_list is None) == (args.t_list is None):
        raise ValueError("exactly one of --k-list / --t-list is required")

    rows = []
    resolved: dict[str, list[int]] = {}
    for n in args.n_list:
        if args.k_list is not None:
            ks = args.k_list
        else:
            ks = [threshold_k(n, ThresholdParams(t=t), formulas.T_FORM) for t in args.t_list]
            resolved[str(n)] = ks
        rows.extend(
            run_sweep([n], ks, args.trials, seed, kind,
                      memory_budget_bytes=args.memory_budget)
        )

    with open(args.out, "w", newline="\n") as fh:
        fh.write(",".join(SWEEP_COLUMNS) + "\n")
        for c in rows:
            fh.write(
                f"{c.n},{c.k},{c.trials},{c.master_seed},{c.frac_connected!r},"
                f"{c.wilson_ci_low!r},{c.wilson_ci_high!r},{c.mean_isolated!r},"
                f"{c.frac_has_isolated!r},{c.mean_degree!r},{c.mean_min_degree!r}\n"
            )
    config = {
        "n_list": args.n_list, "k_list": args.k_list, "t_list": args.t_list,
        "resolved_k_by_n": resolved or None, "trials": args.trials,
        "master_seed": args.seed, "stream_index": args.stream, "model": kind,
        "threads": threads, "memory_budget": args.memory_budget, "out": args.out,
    }
    _write_manifest(args.out, "sweep", config, started)
    print(f"wrote {len(rows)} cells to {args.out}")
    return EXIT_OK


def _print_fraction(label: str, value: Fraction) -> None:
    print(f"{label} = {value.numerator}/{value.denominator}")


def cmd_formulas(args: argparse.Namespace) -> int:
    mode = args.submode
    if mode == "mean-degree":
        print(f"{formulas.mean_degree_limit(args.k)!r}")
        if args.k <= formulas.EXACT_MAX_K:
            _print_fraction("exact", formulas.mean_degree_limit_exact(args.k))
    elif mode == "asymptotic":
        print(f"{formulas.mean_degree_asymptotic(args.k)!r}")
    elif mode == "conn-prob":
        ranks = [args.i] if args.i is not None else range(1, args.k + 1)
        for i in ranks:
            v = formulas.conn_prob_by_rank(i, args.k)
            print(f"i={i}: {v.numerator}/{v.denominator} = {float(v)!r}")
    elif mode == "window":
        w = formulas.an_window(args.n, args.t)
        print(f"lower = {w.lower!r}")
        print(f"upper = {w.upper!r}")
        print(f"p_bar = {w.p_bar!r}")
        print(f"p_underbar = {w.p_underbar!r}")
    elif mode == "pi-bound":
        print(f"{formulas.component_bound_pi(args.n, args.t)!r}")
    elif mode == "negbin":
        if args.sum:
            _print_fraction(f"sum_j<k pmf(k={args.k})", formulas.negbin_lower_sum(args.k))
        elif args.j is not None:
            _print_fraction(f"pmf(k={args.k}, j={args.j})", formulas.negbin_pmf(args.k, args.j))
        else:
            raise ValueError("negbin needs --j or --sum")
    return EXIT_OK


def verify_suites(max_m: int = 9, max_k: int = 64) -> tuple[dict, list[str]]:
    """Run the enumeration-oracle and exact-identity suites.

    Returns (per-suite check counts, failure descriptions); empty failure
    list means everything agreed exactly.
    """
    counts: dict[str, int] = {}
    failures: list[str] = []

    c = 0
    for spec in urn.all_specs_up_to(max_m):
        for m in range(0, spec.total + 1):
            for j in range(0, min(m, spec.m0) + 1):
                got = urn.exact_first_window_pmf(spec, m, j)
                want = urn.enumeration_first_window_pmf(spec, m, j)
                c += 1
                if got != want:
                    failures.append(
                        f"first-window: spec={spec.type_counts} m={m} j={j} "
                        f"formula={got} enumeration={want}"
                    )
    counts["first-window-vs-enumeration"] = c

    c = 0
    for spec in urn.all_specs_up_to(max_m):
        ranges = [range(mj + 1) for mj in spec.type_counts[1:]]
        for ivec in itertools.product(*ranges):
            got = urn.exact_before_first_type0_pmf(spec, ivec)
            want = urn.enumeration_before_first_type0_pmf(spec, ivec)
            c += 1
            if got != want:
                failures.append(
                    f"before-first-type0: spec={spec.type_counts} counts={ivec} "
                    f"formula={got} enumeration={want}"
                )
    counts["before-first-type0-vs-enumeration"] = c

    c = 0
    for spec in urn.all_specs_up_to(min(max_m, 7)):
        for m in range(0, spec.total + 1):
            total = sum(
                (urn.exact_first_window_pmf(spec, m, j)
                 for j in range(0, min(m, spec.m0) + 1)),
                start=Fraction(0),
            )
            c += 1
            if total != 1:
                failures.append(f"normalization: spec={spec.type_counts} m={m} sum={total}")
    counts["first-window-normalization"] = c

    c = 0
    for k in range(1, max_k + 1):
        c += 1
        if formulas.negbin_lower_sum(k) != Fraction(1, 2):
            failures.append(f"negbin half-sum: k={k} got {formulas.negbin_lower_sum(k)}")
        summation = sum(
            (formulas.negbin_pmf(k, j) * j for j in range(k)), start=Fraction(0)
        )
        c += 1
        if summation != formulas.negbin_partial_mean(k):
            failures.append(f"negbin partial mean: k={k}")
        total = sum(
            (formulas.conn_prob_by_rank(i, k) for i in range(1, k + 1)), start=Fraction(0)
        )
        c += 1
        if total != formulas.mean_degree_limit_exact(k):
            failures.append(f"per-rank sum vs mean degree: k={k}")
    counts["negbin-and-degree-identities"] = c

    c = 0
    for k in range(1, 7):
        cap = 4 * (k + 1) ** 2
        partial = sum(
            (urn.negmulti_shell_sum(k, nn) for nn in range(1, cap + 1)), start=Fraction(0)
        )
        remainder = 1 - partial
        c += 1
        if remainder != Fraction(k, k + 1) ** cap:
            failures.append(f"shell remainder identity: k={k}")
        if not float(remainder) <= math.exp(-4 * (k + 1)):
            failures.append(f"shell remainder bound: k={k}")
    counts["shell-remainder"] = c

    return counts, failures


def cmd_verify(args: argparse.Namespace) -> int:
    counts, failures = verify_suites(args.max_m, args.max_k)
    for name, c in counts.items():
        print(f"{name}: {c} checks")
    if failures:
        print(f"FAILED {len(failures)} checks; first: {failures[0]}")
        return EXIT_VERIFY_FAILED
    print("all suites passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bagraphs",
        description="Bilateral-agreement random graph laboratory",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate one graph as an edge-list CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--model", choices=sorted(_CLI_MODEL_NAMES), default="bilateral")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("analyze", help="print the JSON analysis report of an edge list")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="Monte Carlo sweep over (n, k) cells")
    p.add_argument("--n-list", type=_int_list, required=True)
    p.add_argument("--k-list", type=_int_list)
    p.add_argument("--t-list", type=_float_list,
                   help="threshold multipliers; resolved to k = floor(t log n) per n")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--model", choices=["bilateral", "unilateral"], default="bilateral")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--memory-budget", type=int,
                   default=experiments.DEFAULT_MEMORY_BUDGET_BYTES)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("formulas", help="evaluate closed forms")
    fsub = p.add_subparsers(dest="submode", required=True)
    q = fsub.add_parser("mean-degree")
    q.add_argument("--k", type=int, required=True)
    q = fsub.add_parser("asymptotic")
    q.add_argument("--k", type=int, required=True)
    q = fsub.add_parser("conn-prob")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--i", type=int)
    q = fsub.add_parser("window")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--t", type=float, required=True)
    q = fsub.add_parser("pi-bound")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--t", type=float, required=True)
    q = fsub.add_parser("negbin")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--j", type=int)
    q.add_argument("--sum", action="store_true")
    p.set_defaults(func=cmd_formulas)

    p = sub.add_parser("verify", help="run enumeration-oracle and identity suites")
    p.add_argument("--max-m", type=int, default=9)
    p.add_argument("--max-k", type=int, default=64)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ResourceBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
