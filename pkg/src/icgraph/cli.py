"""Command-line front end.

Subcommands: energy, emax, emin, trace, classify, verify, spectrum.
Output formats: table (default), json, csv. Output on stdout is
byte-for-byte deterministic for identical inputs and flags; wall-clock
timing goes to stderr, and only under --timing.

JSON carries every energy, order and divisor as a decimal string so no
consumer is forced through a lossy double; small structural numbers
(s, r, step, u, v, exponents, delta entries, eigenvalues) stay JSON
numbers. CSV for trace has the fixed column order
step,label,u,v,before,after,r,energy; other commands emit key,value
rows (spectrum: k,eigenvalue; verify: p,s,ok,emax).

Exit codes: 0 success, 1 usage error, 2 resource cap exceeded,
3 verification discrepancy.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from typing import Optional, Sequence

from .energy import (
    classify_energy,
    emax_closed,
    emin_closed,
    energy_general,
    energy_prime_power,
    koolen_moulton_check,
    spectrum_gcd_graph,
)
from .model import (
    PrimePowerOrder,
    ResourceLimitError,
    check_divisor_set,
    divisor_set_of,
    format_ints,
    parse_ints,
)
from .numtheory import factorize, is_prime, primes_up_to
from .search import (
    PRIME_POWER_EXPONENT_CAP,
    brute_force_emax_prime_power,
    verify_theorem,
)
from .transform import Trace, normalize

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RESOURCE = 2
EXIT_DISCREPANCY = 3


class UsageError(Exception):
    """Bad command line or invalid instance; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; 2 is taken by resource
    # caps here, so route parse errors through UsageError instead.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _emit(text: str) -> None:
    sys.stdout.write(text)
    if not text.endswith("\n"):
        sys.stdout.write("\n")


def _emit_json(record: dict) -> None:
    _emit(json.dumps(record, indent=2, sort_keys=True))


def _emit_csv(rows: list[list], header: list[str]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _emit(buf.getvalue())


def _emit_kv(record_results: dict) -> None:
    rows = [[key, _flat(value)] for key, value in sorted(record_results.items())]
    _emit_csv(rows, ["key", "value"])


def _flat(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ";".join(_flat(v) for v in value)
    return str(value)


def _table(lines: list[str]) -> None:
    _emit("\n".join(lines))


def _columns(rows: list[list[str]]) -> list[str]:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return [
        "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip()
        for row in rows
    ]


def _prime_power_shape(n: int) -> Optional[tuple[int, int]]:
    fac = factorize(n)
    if len(fac) == 1:
        return fac[0]
    return None


def _exponent_of(d: int, p: int) -> int:
    e = 0
    while d % p == 0:
        d //= p
        e += 1
    if d != 1:
        raise UsageError(f"divisor is not a power of {p}")
    return e


def _parse_prime(value: str) -> int:
    p = int(value)
    if not is_prime(p):
        raise UsageError(f"--p must be prime, got {p}")
    return p


def _instance_from_args(args) -> tuple[int, tuple[int, ...], Optional[PrimePowerOrder], Optional[tuple[int, ...]]]:
    """Resolve (--p, --s, --exponents) or (--n, --divisors) to one instance.

    Returns (n, divisor set, order or None, exponents or None); the last
    two are filled whenever n is a prime power.
    """
    by_pp = args.p is not None or args.s is not None or args.exponents is not None
    by_n = args.n is not None or args.divisors is not None
    if by_pp and by_n:
        raise UsageError("give either --p/--s/--exponents or --n/--divisors, not both")
    if by_pp:
        if args.p is None or args.s is None or args.exponents is None:
            raise UsageError("--p, --s and --exponents belong together")
        order = PrimePowerOrder(args.p, args.s)
        exponents = parse_ints(args.exponents)
        ds = divisor_set_of(exponents, order)
        return order.n, ds, order, exponents
    if args.n is None or args.divisors is None:
        raise UsageError("--n and --divisors belong together")
    n = int(args.n)
    ds = check_divisor_set(n, parse_ints(args.divisors))
    shape = _prime_power_shape(n) if n > 1 else None
    if shape:
        p, s = shape
        order = PrimePowerOrder(p, s)
        exponents = tuple(_exponent_of(d, p) for d in ds)
        return n, ds, order, exponents
    return n, ds, None, None


def cmd_energy(args) -> int:
    n, ds, order, exponents = _instance_from_args(args)
    method = args.method
    if method is None:
        method = "formula" if order is not None else "spectral"
    if method in ("formula", "both") and order is None:
        raise UsageError(f"--method {method} needs a prime power order, {n} is not one")

    results: dict = {}
    if method in ("formula", "both"):
        results["energy_formula"] = str(energy_prime_power(order, exponents))
    if method in ("spectral", "both"):
        results["energy_spectral"] = str(energy_general(n, ds))
    if method == "both":
        results["agreement"] = results["energy_formula"] == results["energy_spectral"]
    results["energy"] = results.get("energy_formula", results.get("energy_spectral"))

    record = {
        "command": "energy",
        "inputs": {
            "n": str(n),
            "divisors": [str(d) for d in ds],
            "exponents": list(exponents) if exponents is not None else None,
            "p": str(order.p) if order else None,
            "s": order.s if order else None,
            "method": method,
        },
        "results": results,
    }
    if args.format == "json":
        _emit_json(record)
    elif args.format == "csv":
        _emit_kv(results)
    else:
        lines = [f"order n = {n}", f"divisor set D = {format_ints(ds)}"]
        if exponents is not None:
            lines.append(f"exponent tuple a = {format_ints(exponents)}")
        if "energy_formula" in results:
            lines.append(f"energy (formula)  = {results['energy_formula']}")
        if "energy_spectral" in results:
            lines.append(f"energy (spectral) = {results['energy_spectral']}")
        if "agreement" in results:
            lines.append(f"agreement = {'yes' if results['agreement'] else 'NO'}")
        _table(lines)
    if method == "both" and not results["agreement"]:
        return EXIT_DISCREPANCY
    return EXIT_OK


def cmd_emax(args) -> int:
    order = PrimePowerOrder(args.p, args.s)
    value, tuples = emax_closed(order)
    sets = [divisor_set_of(t, order) for t in tuples]
    results: dict = {
        "emax": str(value),
        "maximizer_exponents": [list(t) for t in tuples],
        "maximizer_divisor_sets": [[str(d) for d in ds] for ds in sets],
    }
    agreement = None
    if args.brute:
        report = brute_force_emax_prime_power(order, jobs=args.jobs)
        agreement = report.emax == value and sorted(report.maximizers) == sorted(sets)
        results["brute_emax"] = str(report.emax)
        results["brute_maximizer_divisor_sets"] = [
            [str(d) for d in ds] for ds in report.maximizers
        ]
        results["brute_examined"] = report.examined
        results["agreement"] = agreement

    record = {
        "command": "emax",
        "inputs": {"p": str(order.p), "s": order.s, "brute": bool(args.brute)},
        "results": results,
    }
    if args.format == "json":
        _emit_json(record)
    elif args.format == "csv":
        _emit_kv(results)
    else:
        lines = [f"order n = {order} = {order.n}", f"emax = {value}"]
        for t, ds in zip(tuples, sets):
            lines.append(f"maximizer a = {format_ints(t)}  D = {format_ints(ds)}")
        if args.brute:
            lines.append(f"brute force over {results['brute_examined']} sets: emax = {results['brute_emax']}")
            lines.append(f"agreement = {'yes' if agreement else 'NO'}")
        _table(lines)
    if agreement is False:
        return EXIT_DISCREPANCY
    return EXIT_OK


def cmd_emin(args) -> int:
    order = PrimePowerOrder(args.p, args.s)
    value, sets = emin_closed(order)
    results = {
        "emin": str(value),
        "minimizer_divisor_sets": [[str(d) for d in ds] for ds in sets],
    }
    record = {
        "command": "emin",
        "inputs": {"p": str(order.p), "s": order.s},
        "results": results,
    }
    if args.format == "json":
        _emit_json(record)
    elif args.format == "csv":
        _emit_kv(results)
    else:
        lines = [f"order n = {order} = {order.n}", f"emin = {value}"]
        lines.append("minimizers: " + " ".join(format_ints(ds) for ds in sets))
        _table(lines)
    return EXIT_OK


def _trace_json(trace: Trace) -> dict:
    order = trace.order
    initial = trace.initial
    first_energy = (
        trace.steps[0].energy_before
        if trace.steps
        else energy_prime_power(order, _tuple_of(initial))
    )
    last_energy = trace.steps[-1].energy_after if trace.steps else first_energy
    return {
        "command": "trace",
        "inputs": {"p": str(order.p), "s": order.s, "delta": list(initial)},
        "initial": {
            "vector": list(initial),
            "r": len(initial) + 1,
            "energy": str(first_energy),
        },
        "steps": [
            {
                "step": i + 1,
                "label": step.label.value,
                "u": step.u,
                "v": step.v,
                "before": list(step.before),
                "after": list(step.after),
                "r": len(step.after) + 1,
                "energy_before": str(step.energy_before),
                "energy_after": str(step.energy_after),
                "strict": step.strict,
            }
            for i, step in enumerate(trace.steps)
        ],
        "terminal": {
            "vector": list(trace.terminal),
            "r": len(trace.terminal) + 1,
            "energy": str(last_energy),
        },
    }


def _tuple_of(d: Sequence[int]) -> tuple[int, ...]:
    from .model import delta_inverse

    return delta_inverse(d)


def cmd_trace(args) -> int:
    order = PrimePowerOrder(args.p, args.s)
    d0 = parse_ints(args.delta)
    trace = normalize(d0, order)
    record = _trace_json(trace)
    if args.format == "json":
        _emit_json(record)
    elif args.format == "csv":
        rows = [
            [
                step["step"],
                step["label"],
                step["u"],
                "" if step["v"] is None else step["v"],
                format_ints(step["before"]),
                format_ints(step["after"]),
                step["r"],
                step["energy_after"],
            ]
            for step in record["steps"]
        ]
        _emit_csv(rows, ["step", "label", "u", "v", "before", "after", "r", "energy"])
    else:
        rows = [["step", "label", "u", "v", "vector", "r", "energy"]]
        rows.append(
            [
                "0",
                "-",
                "-",
                "-",
                format_ints(record["initial"]["vector"]),
                str(record["initial"]["r"]),
                record["initial"]["energy"],
            ]
        )
        for step in record["steps"]:
            rows.append(
                [
                    str(step["step"]),
                    step["label"],
                    str(step["u"]),
                    "-" if step["v"] is None else str(step["v"]),
                    format_ints(step["after"]),
                    str(step["r"]),
                    step["energy_after"],
                ]
            )
        _table(_columns(rows))
    return EXIT_OK


def cmd_classify(args) -> int:
    n = int(args.n)
    ds = check_divisor_set(n, parse_ints(args.divisors))
    energy = energy_general(n, ds)
    threshold = 2 * (n - 1)
    results = {
        "energy": str(energy),
        "threshold": str(threshold),
        "classification": classify_energy(n, energy),
        "koolen_moulton_ok": koolen_moulton_check(n, energy),
    }
    record = {
        "command": "classify",
        "inputs": {"n": str(n), "divisors": [str(d) for d in ds]},
        "results": results,
    }
    if args.format == "json":
        _emit_json(record)
    elif args.format == "csv":
        _emit_kv(results)
    else:
        _table(
            [
                f"order n = {n}",
                f"divisor set D = {format_ints(ds)}",
                f"energy = {energy}",
                f"complete graph threshold 2(n-1) = {threshold}",
                f"classification = {results['classification']}",
                f"koolen-moulton bound satisfied = {'yes' if results['koolen_moulton_ok'] else 'NO'}",
            ]
        )
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.smax > PRIME_POWER_EXPONENT_CAP:
        raise ResourceLimitError(
            f"--smax {args.smax} exceeds the enumeration cap {PRIME_POWER_EXPONENT_CAP}"
        )
    if args.pmax < 2:
        raise UsageError(f"--pmax must be >= 2, got {args.pmax}")
    if args.smax < 1:
        raise UsageError(f"--smax must be >= 1, got {args.smax}")
    cases = []
    failures = 0
    for p in primes_up_to(args.pmax):
        for s in range(1, args.smax + 1):
            order = PrimePowerOrder(p, s)
            ok, problems = verify_theorem(order, jobs=args.jobs)
            value, _ = emax_closed(order)
            if not ok:
                failures += 1
            cases.append(
                {"p": str(p), "s": s, "ok": ok, "emax": str(value), "problems": problems}
            )
    record = {
        "command": "verify",
        "inputs": {"pmax": args.pmax, "smax": args.smax},
        "cases": cases,
        "results": {"cases": len(cases), "failures": failures, "all_ok": failures == 0},
    }
    if args.format == "json":
        _emit_json(record)
    elif args.format == "csv":
        rows = [[c["p"], c["s"], _flat(c["ok"]), c["emax"]] for c in cases]
        _emit_csv(rows, ["p", "s", "ok", "emax"])
    else:
        lines = []
        for c in cases:
            status = "ok" if c["ok"] else "MISMATCH"
            lines.append(f"p={c['p']} s={c['s']} emax={c['emax']} {status}")
            lines.extend(f"  {problem}" for problem in c["problems"])
        lines.append(
            f"{len(cases)} cases, {failures} failures"
            if failures
            else f"all {len(cases)} cases agree"
        )
        _table(lines)
    return EXIT_DISCREPANCY if failures else EXIT_OK


def cmd_spectrum(args) -> int:
    n = int(args.n)
    ds = check_divisor_set(n, parse_ints(args.divisors))
    spec = spectrum_gcd_graph(n, ds)
    energy = sum(abs(x) for x in spec)
    distinct: dict[int, int] = {}
    for lam in spec:
        distinct[lam] = distinct.get(lam, 0) + 1
    results = {
        "degree": spec[0],
        "energy": str(energy),
        "distinct": [[lam, mult] for lam, mult in sorted(distinct.items())],
    }
    record = {
        "command": "spectrum",
        "inputs": {"n": str(n), "divisors": [str(d) for d in ds]},
        "results": results,
        "eigenvalues": spec,
    }
    if args.format == "json":
        _emit_json(record)
    elif args.format == "csv":
        _emit_csv([[k, lam] for k, lam in enumerate(spec)], ["k", "eigenvalue"])
    else:
        lines = [
            f"order n = {n}",
            f"divisor set D = {format_ints(ds)}",
            f"degree = {spec[0]}",
            "eigenvalue . multiplicity:",
        ]
        lines.extend(
            f"  {lam} . {mult}" for lam, mult in sorted(distinct.items(), reverse=True)
        )
        lines.append(f"energy = {energy}")
        _table(lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="icgraph",
        description="Exact energies of integral circulant (gcd) graphs.",
    )
    parser.add_argument(
        "--timing", action="store_true", help="print wall time to stderr"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format", choices=("table", "json", "csv"), default="table"
        )

    p_energy = sub.add_parser("energy", help="energy of one gcd graph")
    p_energy.add_argument("--p", type=_parse_prime)
    p_energy.add_argument("--s", type=int)
    p_energy.add_argument("--exponents")
    p_energy.add_argument("--n", type=int)
    p_energy.add_argument("--divisors")
    p_energy.add_argument("--method", choices=("formula", "spectral", "both"))
    add_format(p_energy)
    p_energy.set_defaults(func=cmd_energy)

    p_emax = sub.add_parser("emax", help="maximal energy over divisor sets of p^s")
    p_emax.add_argument("--p", type=_parse_prime, required=True)
    p_emax.add_argument("--s", type=int, required=True)
    p_emax.add_argument("--brute", action="store_true", help="cross-check by enumeration")
    p_emax.add_argument("--jobs", type=int, default=1)
    add_format(p_emax)
    p_emax.set_defaults(func=cmd_emax)

    p_emin = sub.add_parser("emin", help="minimal energy over divisor sets of p^s")
    p_emin.add_argument("--p", type=_parse_prime, required=True)
    p_emin.add_argument("--s", type=int, required=True)
    add_format(p_emin)
    p_emin.set_defaults(func=cmd_emin)

    p_trace = sub.add_parser("trace", help="rewrite a delta vector to the maximum")
    p_trace.add_argument("--p", type=_parse_prime, required=True)
    p_trace.add_argument("--s", type=int, required=True)
    p_trace.add_argument("--delta", required=True)
    add_format(p_trace)
    p_trace.set_defaults(func=cmd_trace)

    p_classify = sub.add_parser("classify", help="hyper/hypoenergetic classification")
    p_classify.add_argument("--n", type=int, required=True)
    p_classify.add_argument("--divisors", required=True)
    add_format(p_classify)
    p_classify.set_defaults(func=cmd_classify)

    p_verify = sub.add_parser("verify", help="closed forms vs brute force sweep")
    p_verify.add_argument("--pmax", type=int, required=True)
    p_verify.add_argument("--smax", type=int, required=True)
    p_verify.add_argument("--jobs", type=int, default=1)
    add_format(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_spectrum = sub.add_parser("spectrum", help="all eigenvalues of one gcd graph")
    p_spectrum.add_argument("--n", type=int, required=True)
    p_spectrum.add_argument("--divisors", required=True)
    add_format(p_spectrum)
    p_spectrum.set_defaults(func=cmd_spectrum)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    started = time.perf_counter()
    try:
        args = parser.parse_args(argv)
        code = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if getattr(args, "timing", False):
        print(f"elapsed {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return code


def main_entry() -> None:
    raise SystemExit(main())
