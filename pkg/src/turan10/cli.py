"""Command-line interface.

Exit codes: 0 all certified inequalities hold, 1 a certified inequality
failed (the regression tripwire), 2 usage or input error.  Every randomized
command echoes its effective seed in the JSON envelope printed to stdout;
re-running with that seed reproduces the numeric fields (wall-clock timings
excepted).  Human output rounds to 7 significant digits; files and JSON carry
full precision.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import certificates, evaluator, numtheory, pipeline, selector, tuples
from .errors import DomainError, ResourceError, SearchError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


def _fmt(x: float) -> str:
    return f"{x:.7g}"


def _emit(payload: dict, fmt: str, human_lines: list[str]) -> None:
    if fmt == "json":
        print(json.dumps(payload))
    else:
        for line in human_lines:
            print(line)


def _write_json(path: str | None, payload: dict) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")


def _search_config(args) -> selector.SearchConfig:
    return selector.SearchConfig(strategy=args.strategy, trials=args.trials,
                                 seed=args.seed, moment_order=args.moment_order)


def _config_echo(args) -> dict:
    """Reproduction knobs, echoed so a run can be replayed from its output."""
    return {"strategy": args.strategy, "trials": args.trials, "seed": args.seed,
            "moment_order": args.moment_order}


def _add_search_args(sub, default_strategy="auto", default_trials=512):
    sub.add_argument("--strategy", default=default_strategy,
                     choices=["auto", "exhaustive", "random", "greedy", "greedy+random"])
    sub.add_argument("--trials", type=int, default=default_trials)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--moment-order", type=int, default=selector.DEFAULT_MOMENT_ORDER,
                     help="N in the 2N-th moment surrogate")


def _add_common(sub):
    sub.add_argument("--format", default="human", choices=["json", "human"])
    sub.add_argument("--out", default=None, help="write the result JSON here")


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "montgomery":
        if args.p is None:
            raise DomainError("montgomery requires --p")
        t = tuples.montgomery(args.p)
    elif kind == "montmod":
        if args.n is None or args.m is None:
            raise DomainError("montmod requires --n and --m")
        t = tuples.montgomery_modified(args.n, args.m)
    elif kind == "bose":
        if args.q is None:
            raise DomainError("bose requires --q")
        t = tuples.bose_tuple(args.q)
    elif kind == "singer":
        if args.q is None:
            raise DomainError("singer requires --q")
        t = tuples.singer_tuple(args.q)
    elif kind == "erdos-renyi":
        if args.n is None or args.m is None:
            raise DomainError("erdos-renyi requires --n and --m")
        t = tuples.erdos_renyi_random(args.n, args.m, seed=args.seed,
                                      max_retries=args.max_retries)
    else:  # pragma: no cover - argparse restricts choices
        raise DomainError(f"unknown kind {kind}")

    if args.tuple_out:
        tuples.save_tuple(t, args.tuple_out)
    payload = {"command": "construct", "kind": kind, "n": t.n}
    if isinstance(t, tuples.RootTuple):
        payload["M"] = t.M
        human = f"{kind}: n={t.n} M={t.M}"
    else:
        prov = dict(t.provenance)
        payload.update({"seed": prov.get("seed"), "bound": prov.get("bound"),
                        "attempts": prov.get("attempts"),
                        "achieved": prov.get("achieved")})
        human = (f"{kind}: n={t.n} seed={prov.get('seed')} "
                 f"bound={_fmt(prov.get('bound', float('nan')))} "
                 f"attempts={prov.get('attempts')}")
    if args.tuple_out:
        payload["tuple_file"] = args.tuple_out
    _emit(payload, args.format, [human])
    _write_json(args.out, payload)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    t = tuples.load_tuple(args.tuple)
    nu_hi = args.nu_max
    method = args.method
    if isinstance(t, tuples.FloatTuple) and method != "direct":
        method = "direct"  # float tuples always take the direct path
    discrepancy = None
    if method == "fft":
        prof = evaluator.power_sums_fft(t, nu_hi, with_values=True)
    elif method == "direct":
        prof = evaluator.power_sums_direct(t, 1, nu_hi)
    else:  # both
        prof = evaluator.power_sums_fft(t, nu_hi, with_values=True)
        discrepancy = evaluator.max_discrepancy(t, nu_hi)
    if args.profile:
        evaluator.write_profile_csv(prof, args.profile)
    payload = dict(prof.summary())
    payload.update({"command": "evaluate", "method": method})
    if discrepancy is not None:
        payload["max_discrepancy"] = discrepancy
    human = [f"n={prof.n} nu={prof.nu_lo}..{prof.nu_hi} "
             f"max|S|={_fmt(prof.max_abs)} at nu={prof.argmax_nu}"]
    if discrepancy is not None:
        human.append(f"fft/direct max discrepancy {_fmt(discrepancy)}")
    _emit(payload, args.format, human)
    _write_json(args.out, payload)
    if discrepancy is not None and discrepancy > 1e-6:
        print("error: fft and direct paths disagree beyond 1e-6", file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


def cmd_certify(args) -> int:
    t = tuples.load_tuple(args.tuple)
    cert = certificates.full_certificate(t)
    payload = cert.to_json()
    payload["command"] = "certify"
    human = []
    for c in cert.checks:
        mark = "ok " if c.passed else "FAIL"
        human.append(f"[{mark}] {c.name:<24} nu<={c.nu_hi:<8} "
                     f"bound={_fmt(c.bound)} achieved={_fmt(c.achieved)}")
    _emit(payload, args.format, human)
    _write_json(args.out, payload)
    return EXIT_OK if cert.all_passed else EXIT_CHECK_FAILED


def _record_payload(command: str, record: pipeline.DeltaRecord, args) -> dict:
    payload = record.to_json()
    payload.update({"command": command, "seed": args.seed,
                    "config": _config_echo(args)})
    return payload


def _record_human(record: pipeline.DeltaRecord) -> str:
    return (f"n={record.n} method={record.method} p={record.p} gap={record.gap} "
            f"score={_fmt(record.subset_score)} achieved={_fmt(record.achieved_max)} "
            f"delta_hat={_fmt(record.delta_hat)}")


def _check_record(record: pipeline.DeltaRecord, bound: float) -> bool:
    ok = record.delta_hat >= -1e-6
    ok &= record.achieved_max <= bound + record.subset_score + 1e-6
    return ok


def cmd_theorem1(args) -> int:
    ftuple, record = pipeline.theorem1_tuple(args.n, _search_config(args))
    if args.tuple_out:
        tuples.save_tuple(ftuple, args.tuple_out)
    payload = _record_payload("theorem1", record, args)
    _emit(payload, args.format, [_record_human(record)])
    _write_json(args.out, payload)
    return EXIT_OK if _check_record(record, math.sqrt(record.p)) else EXIT_CHECK_FAILED


def cmd_theorem2(args) -> int:
    ftuple, record = pipeline.theorem2_tuple(args.n, args.m, _search_config(args))
    if args.tuple_out:
        tuples.save_tuple(ftuple, args.tuple_out)
    payload = _record_payload("theorem2", record, args)
    _emit(payload, args.format, [_record_human(record)])
    _write_json(args.out, payload)
    return EXIT_OK if _check_record(record, math.sqrt(record.p)) else EXIT_CHECK_FAILED


def cmd_trim(args) -> int:
    ftuple, record = pipeline.trim_tuple(args.n)
    if args.tuple_out:
        tuples.save_tuple(ftuple, args.tuple_out)
    payload = record.to_json()
    payload["command"] = "trim"  # trim is deterministic: no seed to echo
    _emit(payload, args.format, [_record_human(record)])
    _write_json(args.out, payload)
    ok = record.delta_hat >= -1e-6
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_sweep(args) -> int:
    methods = tuple(s.strip() for s in args.methods.split(",") if s.strip())
    cfg = selector.SearchConfig(strategy=args.strategy, trials=args.trials,
                                seed=args.seed, moment_order=args.moment_order)
    records, aggregates = pipeline.delta_sweep(
        args.n_lo, args.n_hi, methods=methods, seed=args.seed, config=cfg,
        workers=args.workers)
    if args.csv:
        pipeline.write_sweep_csv(records, args.csv)
    _write_json(args.out, aggregates)
    payload = {"command": "sweep", "seed": args.seed, "methods": list(methods),
               "n_lo": args.n_lo, "n_hi": args.n_hi,
               "config": _config_echo(args), "aggregates": aggregates}
    human = [f"n in [{args.n_lo}, {args.n_hi}]: "
             f"sum delta^2 = {_fmt(aggregates['sum_delta_sq'])}, "
             f"max delta = {_fmt(aggregates['max_delta'])}, "
             f"count above n^(1/4) = {aggregates['count_exceed_n14']}"]
    _emit(payload, args.format, human)
    bad = [r for r in records if r.delta_hat < -1e-6]
    return EXIT_OK if not bad else EXIT_CHECK_FAILED


def cmd_gauss_check(args) -> int:
    try:
        cases, worst = numtheory.verify_gauss_table(args.pmax)
    except AssertionError as exc:
        print(f"FAIL: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    payload = {"command": "gauss-check", "pmax": args.pmax, "cases": cases,
               "max_error": worst}
    _emit(payload, args.format,
          [f"all {cases} (p, j, a) magnitudes match the case table "
           f"(worst error {worst:.3e})"])
    _write_json(args.out, payload)
    return EXIT_OK


def cmd_bounds(args) -> int:
    a_lo, a_hi = certificates.envelope_A(args.alpha)
    b_lo, b_hi = certificates.envelope_B(args.alpha)
    payload = {"command": "bounds", "alpha": args.alpha,
               "A": [a_lo, a_hi], "B": [b_lo, b_hi]}
    human = [f"alpha={args.alpha}: A=({_fmt(a_lo)}, {_fmt(a_hi)}) "
             f"B=({_fmt(b_lo)}, {_fmt(b_hi)})"]
    if args.n is not None and args.m is not None:
        er = certificates.erdos_renyi_bound(args.n, args.m)
        payload["erdos_renyi"] = er
        human.append(f"sqrt(6 n log(m+1)) = {_fmt(er)}")
        if args.m >= args.n:
            ncs = certificates.ncs_lower_bound(args.n, args.m)
            payload["ncs"] = ncs
            human.append(f"ncs lower bound = {_fmt(ncs)}")
    _emit(payload, args.format, human)
    _write_json(args.out, payload)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="turan10",
        description="Flat-spectrum unimodular tuples: constructions, "
                    "certificates, and sweep experiments.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("construct", help="build a tuple and write it as JSON")
    sub.add_argument("--kind", required=True,
                     choices=["montgomery", "montmod", "bose", "singer", "erdos-renyi"])
    sub.add_argument("--p", type=int)
    sub.add_argument("--n", type=int)
    sub.add_argument("--m", type=int)
    sub.add_argument("--q", type=int)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--max-retries", type=int, default=tuples.ERDOS_RENYI_RETRIES)
    sub.add_argument("--tuple-out", default=None, help="tuple JSON path")
    _add_common(sub)
    sub.set_defaults(func=cmd_construct)

    sub = subs.add_parser("evaluate", help="power-sum profile of a tuple file")
    sub.add_argument("--tuple", required=True)
    sub.add_argument("--nu-max", type=int, required=True)
    sub.add_argument("--method", default="fft", choices=["fft", "direct", "both"])
    sub.add_argument("--profile", default=None, help="profile CSV path")
    _add_common(sub)
    sub.set_defaults(func=cmd_evaluate)

    sub = subs.add_parser("certify", help="run all bound checks on a tuple file")
    sub.add_argument("--tuple", required=True)
    _add_common(sub)
    sub.set_defaults(func=cmd_certify)

    sub = subs.add_parser("theorem1", help="n-tuple via prime jump + removal")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--tuple-out", default=None)
    _add_search_args(sub)
    _add_common(sub)
    sub.set_defaults(func=cmd_theorem1)

    sub = subs.add_parser("theorem2", help="n-tuple via progression primes")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--tuple-out", default=None)
    _add_search_args(sub)
    _add_common(sub)
    sub.set_defaults(func=cmd_theorem2)

    sub = subs.add_parser("trim", help="n-tuple by trimming a larger construction")
    sub.add_argument("--n", type=int, required=True)
    sub.add_argument("--tuple-out", default=None)
    _add_common(sub)
    sub.set_defaults(func=cmd_trim)

    sub = subs.add_parser("sweep", help="delta_hat records over a range of n")
    sub.add_argument("--n-lo", type=int, required=True)
    sub.add_argument("--n-hi", type=int, required=True)
    sub.add_argument("--methods", default="theorem1,trim")
    sub.add_argument("--workers", type=int, default=1)
    sub.add_argument("--csv", default=None, help="records CSV path")
    _add_search_args(sub, default_strategy="random", default_trials=128)
    _add_common(sub)
    sub.set_defaults(func=cmd_sweep)

    sub = subs.add_parser("gauss-check", help="verify the Gauss-sum case table")
    sub.add_argument("--pmax", type=int, default=97)
    _add_common(sub)
    sub.set_defaults(func=cmd_gauss_check)

    sub = subs.add_parser("bounds", help="envelope and reference bound values")
    sub.add_argument("--alpha", type=float, required=True)
    sub.add_argument("--n", type=int)
    sub.add_argument("--m", type=int)
    _add_common(sub)
    sub.set_defaults(func=cmd_bounds)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (DomainError, ResourceError, SearchError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
