"""Command-line front end.

Subcommands: field, spectrum, boomerang, charsum, constants, sweep, verify.
Machine-readable results go to stdout, diagnostics to stderr.  Exit codes:
0 all checks pass, 1 at least one exception/failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np
from sympy import factorint

from .characters import (
    boomerang_constants,
    conic_count_brute,
    conic_count_closed,
    jacobsthal_sum,
    theorem2_constants,
    theorem6_constants,
    weil_sum_brute,
    weil_sum_quadratic_closed,
)
from .gf import FieldConstructionError, build_field
from .nh_family import NHParams
from .spectra import FunctionTable, boomerang_spectrum, differential_spectrum
from .verifier import CLAIMS, SweepConfig, default_jobs, sweep, verify_claim


class UsageError(ValueError):
    pass


def _field_from_args(args):
    if getattr(args, "q", None) is not None:
        fac = factorint(args.q)
        if len(fac) != 1:
            raise UsageError(f"q = {args.q} is not a prime power")
        ((p, n),) = fac.items()
        return build_field(int(p), int(n))
    if getattr(args, "p", None) is None:
        raise UsageError("need --q or --p [--n]")
    return build_field(args.p, args.n)


def parse_u_token(field, token):
    """Element codes, or small rationals like '1/3', '-1', resolved in-field."""
    token = token.strip()
    if "/" in token:
        num_s, den_s = token.split("/", 1)
        try:
            num, den = int(num_s), int(den_s)
        except ValueError as exc:
            raise UsageError(f"bad u token {token!r}") from exc
        den_code = field.embed(den)
        if den_code == 0:
            raise UsageError(
                f"u = {token} is undefined in characteristic {field.p} "
                f"(the denominator vanishes); such claims assume p does not divide {den}"
            )
        return field.mul(field.embed(num), field.inv(den_code))
    try:
        val = int(token)
    except ValueError as exc:
        raise UsageError(f"bad u token {token!r}") from exc
    if token.startswith(("+", "-")):
        return field.embed(val)
    if not 0 <= val < field.q:
        raise UsageError(f"u code {val} out of range for q = {field.q}")
    return val


def _cmd_field(args):
    field = _field_from_args(args)
    info = {
        "p": field.p,
        "n": field.n,
        "q": field.q,
        "modulus": list(field.modulus) if field.modulus else None,
        "generator": field.generator,
    }
    if field.q % 4 == 3:
        info["cij_counts"] = field.cij_partition().counts
    print(json.dumps(info, indent=2, sort_keys=True))
    return 0


def _spectrum_payload(args, boomerang):
    field = _field_from_args(args)
    if args.family != "nh":
        raise UsageError(f"unknown family {args.family!r}")
    params = NHParams(args.r, parse_u_token(field, args.u))
    table = FunctionTable.from_nh(field, params)
    reduction = params if args.reduced else None
    if boomerang:
        spec = boomerang_spectrum(table, reduction=reduction)
        payload = {
            "q": field.q,
            "u": params.u,
            "r": params.r,
            "beta": spec.uniformity,
            "spectrum": spec.to_json_dict(),
        }
    else:
        spec = differential_spectrum(table, reduction=reduction)
        payload = {
            "q": field.q,
            "u": params.u,
            "r": params.r,
            "delta": spec.uniformity,
            "spectrum": spec.to_json_dict(),
            "locally_apn": spec.locally_apn,
        }
    print(json.dumps(payload, sort_keys=True))
    return 0


def _cmd_charsum_selftest(args):
    """Closed forms vs brute-force oracles over all q <= qmax; prints a table."""
    failures = 0
    rows = []
    from .verifier import enumerate_prime_powers

    for p, n, q in enumerate_prime_powers(3, args.qmax + 1, p_ne=(2,)):
        field = build_field(p, n)
        ok_quad = all(
            weil_sum_quadratic_closed(field, a2, a1, a0) == weil_sum_brute(field, [a0, a1, a2])
            for a2 in range(1, min(q, 6))
            for a1 in range(min(q, 5))
            for a0 in range(min(q, 5))
        )
        ok_conic = all(
            np.array_equal(
                conic_count_brute(field, a1, a2),
                np.array([conic_count_closed(field, a1, a2, b) for b in range(q)]),
            )
            for a1 in range(1, min(q, 4))
            for a2 in range(1, min(q, 4))
        )
        ok_quartic = weil_sum_brute(field, [field.neg(1), 0, 0, 0, 1]) == -1 if q % 4 == 3 else True
        ok_jac = (
            all(jacobsthal_sum(field, 2, a) == 0 for a in range(1, q))
            if (n == 1 and q % 4 == 3)
            else True
        )
        ok = ok_quad and ok_conic and ok_quartic and ok_jac
        failures += not ok
        rows.append((q, "pass" if ok else "FAIL"))
    width = max(len(str(q)) for q, _ in rows)
    print(f"{'q':>{width}}  result")
    for q, res in rows:
        print(f"{q:>{width}}  {res}")
    return 1 if failures else 0


def _cmd_constants(args):
    which = {
        "thm2": theorem2_constants,
        "thm6": theorem6_constants,
        "boomerang": boomerang_constants,
    }
    m1, m2 = which[args.which]()
    print(f"m1={m1} m2={m2}")
    return 0


def _cmd_sweep(args):
    for claim in args.claims:
        if claim not in CLAIMS:
            raise UsageError(f"unknown claim {claim!r}; known: {', '.join(sorted(CLAIMS))}")
    config = SweepConfig(
        claims=tuple(args.claims),
        min_q=args.min,
        max_q=args.max,
        jobs=args.jobs,
        u_mode=args.u_mode,
        seed=args.seed,
    )
    report = sweep(config)
    rendered = {
        "csv": lambda: report.to_csv(with_timing=args.timing),
        "json": lambda: report.to_json(with_timing=args.timing),
        "text": report.to_text,
    }[args.format]()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rendered)
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(rendered)
    summary = report.summary
    print(
        f"pass={summary['pass']} exception={summary['exception']} skipped={summary['skipped']}",
        file=sys.stderr,
    )
    return 0 if report.ok else 1


def _cmd_verify(args):
    fac = factorint(args.q)
    if len(fac) != 1:
        raise UsageError(f"q = {args.q} is not a prime power")
    ((p, n),) = fac.items()
    bad = 0
    for claim in args.claims:
        if claim not in CLAIMS:
            raise UsageError(f"unknown claim {claim!r}")
        for row in verify_claim(claim, int(p), int(n), args.q, u_mode=args.u_mode, seed=args.seed):
            print(
                json.dumps(
                    {k: v for k, v in row.__dict__.items() if k != "elapsed_ms"}, sort_keys=True
                )
            )
            bad += row.status == "exception"
    return 1 if bad else 0


def build_parser():
    parser = argparse.ArgumentParser(prog="nhsbox", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_field_args(sp):
        sp.add_argument("--q", type=int, help="prime power (alternative to --p/--n)")
        sp.add_argument("--p", type=int, help="characteristic")
        sp.add_argument("--n", type=int, default=1, help="extension degree")

    sp = sub.add_parser("field", help="print field construction data")
    add_field_args(sp)
    sp.set_defaults(fn=_cmd_field)

    for name, boom in (("spectrum", False), ("boomerang", True)):
        sp = sub.add_parser(name, help=f"{'boomerang' if boom else 'differential'} spectrum (JSON)")
        add_field_args(sp)
        sp.add_argument("--family", default="nh")
        sp.add_argument("--r", type=int, default=2)
        sp.add_argument("--u", required=True, help="element code or rational token like 1/3")
        sp.add_argument("--reduced", action="store_true", help="use the row a=1 reduction")
        sp.set_defaults(fn=lambda a, boom=boom: _spectrum_payload(a, boom))

    sp = sub.add_parser("charsum", help="character-sum self tests")
    sub2 = sp.add_subparsers(dest="charsum_command", required=True)
    st = sub2.add_parser("selftest", help="closed forms vs brute oracles")
    st.add_argument("--qmax", type=int, default=81)
    st.set_defaults(fn=_cmd_charsum_selftest)

    sp = sub.add_parser("constants", help="reproduce bound constants")
    sp.add_argument("--which", choices=("thm2", "thm6", "boomerang"), required=True)
    sp.set_defaults(fn=_cmd_constants)

    sp = sub.add_parser("sweep", help="verify claims over a q range")
    sp.add_argument("--min", type=int, required=True)
    sp.add_argument("--max", type=int, required=True)
    sp.add_argument("--claims", nargs="+", required=True)
    sp.add_argument("--jobs", type=int, default=default_jobs())
    sp.add_argument("--u-mode", default="default", help="all | sample:K:SEED | default")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="write the report to a file instead of stdout")
    sp.add_argument("--format", choices=("csv", "json", "text"), default="csv")
    sp.add_argument("--timing", action="store_true", help="include measured elapsed_ms")
    sp.set_defaults(fn=_cmd_sweep)

    sp = sub.add_parser("verify", help="run claims at a single q")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--claims", nargs="+", required=True)
    sp.add_argument("--u-mode", default="default")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, FieldConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
