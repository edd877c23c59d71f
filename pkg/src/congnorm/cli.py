"""Command-line front end: normalizer and lattice queries, element membership,
indices, and the verification sweeps, with table or JSON output.

Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 internal
disagreement between a closed form and its definition-level value.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .gammastar import (
    DenominatorTooLarge,
    DeterminantNotOne,
    NotExactDivisor,
    elem_new,
    index_over_gamma0,
    matrix_of,
    normalize_presentation,
    sigma_level,
)
from .lattice import (
    LatticeND,
    discriminant_kernel,
    gram,
    iso_invariants,
    saut_plus_sigma,
)
from .normalizer import (
    normalizer_of,
    sigma_kernel_closed_form,
    sigma_pm_kernel,
    sigma_torsion_closed_form,
)
from .numtheory import square_part
from .subgroups import (
    ResidueSubgroup,
    pm_extend,
    subgroup_generated,
    subgroup_kernel,
    subgroup_torsion,
)
from .verify import run_suite

ENV_MAX_LEVEL = "CONGNORM_MAX_LEVEL"

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_DISAGREEMENT = 3


class UsageError(ValueError):
    pass


@dataclass
class Report:
    command: str
    inputs: dict
    results: dict
    status: str = "ok"
    checks: list = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "inputs": _jsonable(self.inputs),
            "results": _jsonable(self.results),
            "status": self.status,
        }
        if self.checks:
            out["checks"] = _jsonable(self.checks)
        return out


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    return str(value)


def _emit(report: Report, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report.to_dict(), sort_keys=True, indent=2))
        return
    data = report.to_dict()
    print(f"command: {data['command']}")
    for section in ("inputs", "results"):
        for k, v in data[section].items():
            print(f"  {k}: {v}")
    if report.checks:
        bad = [c for c in report.checks if not c.get("ok", True)]
        print(f"  checks: {len(report.checks)} run, {len(bad)} failed")
        for c in bad[:20]:
            print(f"    FAIL {c['case']}: expected {c['expected']}, got {c['got']}")
    print(f"status: {data['status']}")


def parse_subgroup(n: int, spec: str) -> tuple[ResidueSubgroup, dict]:
    """Parse kernel:D=..., torsion:m=..., gen:a,b,... or pm:<inner spec>."""
    try:
        if spec.startswith("pm:"):
            inner, meta = parse_subgroup(n, spec[3:])
            return pm_extend(inner), {"pm": True, **meta}
        kind, _, rest = spec.partition(":")
        if kind == "kernel":
            key, _, val = rest.partition("=")
            if key != "D":
                raise UsageError(f"kernel spec needs D=<divisor>, got {rest!r}")
            d = int(val)
            return subgroup_kernel(n, d), {"kind": "kernel", "D": d}
        if kind == "torsion":
            key, _, val = rest.partition("=")
            if key != "m":
                raise UsageError(f"torsion spec needs m=<divisor>, got {rest!r}")
            m = int(val)
            return subgroup_torsion(n, m), {"kind": "torsion", "m": m}
        if kind == "gen":
            gens = [int(x) for x in rest.split(",") if x]
            return subgroup_generated(n, gens), {"kind": "gen", "gens": gens}
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc
    raise UsageError(f"unknown subgroup spec {spec!r}")


def _parse_elem(n: int, text: str):
    parts = text.split(",")
    if len(parts) != 5:
        raise UsageError("element spec is mu,a,b,c,d with rationals as p/q")
    try:
        mu = int(parts[0])
        a, b, c, d = (Fraction(p) for p in parts[1:])
        return elem_new(n, mu, a, b, c, d)
    except (ValueError, NotExactDivisor, DenominatorTooLarge, DeterminantNotOne) as exc:
        raise UsageError(str(exc)) from exc


def cmd_normalizer(args) -> tuple[Report, int]:
    n = args.level
    h, meta = parse_subgroup(n, args.subgroup)
    spec = normalizer_of(n, h)
    results = {
        "sigma": spec.sigma,
        "is_full_group": spec.is_full_group,
        "subgroup_order": len(h),
        "index_over_gamma0": index_over_gamma0(n, spec.sigma),
        "group": f"Gamma0*^{spec.sigma}({n})" + ("" if spec.is_full_group else " (proper subset)"),
    }
    code = EXIT_OK
    closed = None
    if meta.get("kind") == "kernel" and not meta.get("pm"):
        closed = sigma_kernel_closed_form(n, meta["D"])
    elif meta.get("kind") == "kernel" and meta.get("pm"):
        closed = sigma_pm_kernel(n, meta["D"])
    elif meta.get("kind") == "torsion" and not meta.get("pm"):
        closed = sigma_torsion_closed_form(n, meta["m"])
    if closed is not None:
        results["sigma_closed_form"] = closed
        results["closed_form_agrees"] = closed == spec.sigma
        if closed != spec.sigma:
            code = EXIT_DISAGREEMENT
    report = Report(
        "normalizer",
        {"level": n, "subgroup": args.subgroup},
        results,
        "ok" if code == EXIT_OK else "disagreement",
    )
    return report, code


def cmd_lattice(args) -> tuple[Report, int]:
    n, d = args.n, args.d
    if d < 1 or n % d != 0:
        raise UsageError(f"D = {d} must divide N = {n}")
    lat = LatticeND(n, d)
    query = args.query
    results: dict = {}
    if query in ("saut", "all"):
        results["saut_sigma"] = saut_plus_sigma(lat)
        results["saut_group"] = f"Gamma0*^{saut_plus_sigma(lat)}({n})"
    if query in ("kernel", "all"):
        kern = discriminant_kernel(lat)
        results["kernel"] = f"Gamma_H({n}) with H = squares trivial mod {d}"
        results["kernel_residues"] = list(kern.h.elements)
    if query in ("gram", "all"):
        results["gram"] = gram(lat)
    if query in ("disc", "all"):
        results["disc_orders"] = list(lat.disc_orders)
    if query in ("iso", "all"):
        rescale, counts, factors = iso_invariants(lat)
        results["rescale_min"] = rescale
        results["order_p_subgroup_counts"] = [list(c) for c in counts]
        results["disc_invariant_factors"] = list(factors)
    if not results:
        raise UsageError(f"unknown lattice query {query!r}")
    return Report("lattice", {"N": n, "D": d, "query": query}, results), EXIT_OK


def cmd_element(args) -> tuple[Report, int]:
    n = args.level
    elem = _parse_elem(n, args.elem)
    canon = normalize_presentation(elem)
    mat = matrix_of(canon)
    results = {
        "sigma_level": sigma_level(elem),
        "canonical": {
            "mu": canon.mu,
            "a": canon.a,
            "b": canon.b,
            "c": canon.c,
            "d": canon.d,
        },
        "matrix": [[str(mat.e), str(mat.f)], [str(mat.g), str(mat.h)]],
        "summands": list(canon.summands),
    }
    code = EXIT_OK
    if args.subgroup:
        from .normalizer import normalizes_element

        h, _ = parse_subgroup(n, args.subgroup)
        results["normalizes"] = normalizes_element(elem, h)
    return Report("element", {"level": n, "elem": args.elem}, results), code


def cmd_index(args) -> tuple[Report, int]:
    n, sigma = args.level, args.sigma
    s_n = square_part(n).s
    if sigma < 1 or s_n % sigma != 0:
        raise UsageError(f"sigma = {sigma} must divide s_N = {s_n}")
    results = {
        "index_over_gamma0": index_over_gamma0(n, sigma),
        "s_N": s_n,
        "gcd_sN_24": gcd(s_n, 24),
    }
    return Report("index", {"level": n, "sigma": sigma}, results), EXIT_OK


def cmd_verify(args) -> tuple[Report, int]:
    max_level = args.max_level
    cap = os.environ.get(ENV_MAX_LEVEL)
    if cap is not None:
        try:
            max_level = min(max_level, int(cap))
        except ValueError:
            raise UsageError(f"{ENV_MAX_LEVEL} must be an integer, got {cap!r}")
    rows = run_suite(args.suite, max_level, args.oracle_bound)
    bad = [r for r in rows if not r["ok"]]
    results = {
        "suite": args.suite,
        "max_level": max_level,
        "checked": len(rows),
        "failed": len(bad),
    }
    status = "ok" if not bad else "fail"
    report = Report("verify", {"suite": args.suite, "max_level": max_level}, results, status, rows)
    return report, EXIT_OK if not bad else EXIT_VERIFY_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="congnorm",
        description="Normalizers of congruence groups and lattice automorphisms, exactly.",
    )
    parser.add_argument("--format", choices=("table", "json"), default="table")
    sub = parser.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("normalizer", help="normalizer of Gamma_H at a level")
    p_norm.add_argument("--level", type=int, required=True)
    p_norm.add_argument(
        "--subgroup", required=True, help="kernel:D=..., torsion:m=..., gen:a,b,..., pm:<spec>"
    )
    p_norm.set_defaults(func=cmd_normalizer)

    p_lat = sub.add_parser("lattice", help="lattice L(N, D) data")
    p_lat.add_argument("--N", dest="n", type=int, required=True)
    p_lat.add_argument("--D", dest="d", type=int, required=True)
    p_lat.add_argument(
        "query", nargs="?", default="all", choices=("saut", "kernel", "gram", "disc", "iso", "all")
    )
    p_lat.set_defaults(func=cmd_lattice)

    p_elem = sub.add_parser("element", help="membership and sigma-level of one element")
    p_elem.add_argument("--level", type=int, required=True)
    p_elem.add_argument("--elem", required=True, help="mu,a,b,c,d with rationals as p/q")
    p_elem.add_argument("--subgroup", default=None)
    p_elem.set_defaults(func=cmd_element)

    p_idx = sub.add_parser("index", help="index of Gamma0(N) in Gamma0*^sigma(N)")
    p_idx.add_argument("--level", type=int, required=True)
    p_idx.add_argument("--sigma", type=int, required=True)
    p_idx.set_defaults(func=cmd_index)

    p_ver = sub.add_parser("verify", help="run a verification sweep")
    p_ver.add_argument("--suite", default="all", choices=("closed-forms", "oracle", "lattice", "all"))
    p_ver.add_argument("--max-level", type=int, default=60)
    p_ver.add_argument("--oracle-bound", type=int, default=30)
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        report, code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
