"""Command-line interface.

Subcommands: field-info, solve (trinomial | affine), spectra (ddt | fbct |
sozd), verify (--theorem t1..t4 | --registry) and registry.  Machine output
goes to stdout (JSON; CSV via --csv), human-readable progress to stderr.

Exit codes: 0 success, 1 verification mismatch or property violation (the
report is always written first), 2 usage or configuration error.  Output is
byte-deterministic for a fixed configuration, independent of --jobs.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from dataclasses import dataclass

import numpy as np

from .closed_forms import registry_cases, verify_registry, verify_theorem
from .errors import SpectraError, WrongLengthError
from .fields import Field, parse_field_spec
from .spectra import (
    PowerMap,
    TableMap,
    ddt_row_power,
    ddt_table,
    fbct_property_check,
    property_report_to_dict,
    sozd_row_power,
    sozd_table,
    differential_uniformity,
    sozd_uniformity,
    summary_to_dict,
    write_row_csv,
    write_table_csv,
)


def load_table_map(field: Field, path: str) -> TableMap:
    """Read a lookup table: one image encoding per line, enumeration order."""
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if len(lines) != field.order:
        raise WrongLengthError(
            f"{path}: {len(lines)} entries, field has {field.order}"
        )
    return TableMap(tuple(field.parse_element(ln) for ln in lines))


@dataclass(frozen=True)
class RunConfig:
    """Canonicalized spectra-run configuration; round-trips through its
    canonical argv string."""

    op: str
    field_spec: str
    power: int | None
    table_path: str | None
    mode: str
    method: str
    jobs: int
    csv_path: str | None
    check_properties: bool

    def canonical(self) -> str:
        argv = ["spectra", self.op, "--field", self.field_spec]
        if self.power is not None:
            argv += ["--power", str(self.power)]
        if self.table_path is not None:
            argv += ["--table", self.table_path]
        argv += [f"--{self.mode}", "--method", self.method, "--jobs", str(self.jobs)]
        if self.csv_path is not None:
            argv += ["--csv", self.csv_path]
        if self.check_properties:
            argv += ["--check-properties"]
        return shlex.join(argv)

    @classmethod
    def from_args(cls, args, field: Field) -> "RunConfig":
        return cls(
            op=args.table_kind,
            field_spec=field.spec_string(),
            power=args.power,
            table_path=args.table,
            mode="row" if args.row else "full",
            method=args.method,
            jobs=args.jobs,
            csv_path=args.csv,
            check_properties=args.check_properties,
        )

    @classmethod
    def parse(cls, text: str) -> "RunConfig":
        args = build_parser().parse_args(shlex.split(text))
        return cls.from_args(args, parse_field_spec(args.field))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sbox-spectra",
        description="DDT / FBCT / second-order zero differential spectra over F_{p^n}",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("field-info", help="describe a field spec")
    p_info.add_argument("--field", required=True, help="p=<p>;n=<n>;mod=<c0,...,cn>")
    p_info.add_argument("--power", type=int, help="also report gcd facts for x^d")

    p_solve = sub.add_parser("solve", help="root solvers over F_{2^n}")
    solve_sub = p_solve.add_subparsers(dest="solver", required=True)
    p_tri = solve_sub.add_parser("trinomial", help="roots of x^(2^k) + a x + b")
    p_tri.add_argument("--field", required=True)
    p_tri.add_argument("--k", type=int, required=True)
    p_tri.add_argument("--a", required=True)
    p_tri.add_argument("--b", required=True)
    p_tri.add_argument("--roots", action="store_true", help="enumerate all roots")
    p_aff = solve_sub.add_parser("affine", help="root count of sum a_i x^(2^i) + b")
    p_aff.add_argument("--field", required=True)
    p_aff.add_argument("--coeffs", required=True, help="c0,...,c_{n-1} encodings")
    p_aff.add_argument("--b", required=True)

    p_spec = sub.add_parser("spectra", help="compute a spectrum table")
    p_spec.add_argument("table_kind", choices=("ddt", "fbct", "sozd"))
    p_spec.add_argument("--field", required=True)
    group = p_spec.add_mutually_exclusive_group(required=True)
    group.add_argument("--power", type=int, help="power map exponent d")
    group.add_argument("--table", help="lookup table file, one image per line")
    mode = p_spec.add_mutually_exclusive_group()
    mode.add_argument("--full", action="store_true", help="full table (default)")
    mode.add_argument("--row", action="store_true", help="row at a = 1 (power maps)")
    p_spec.add_argument("--method", choices=("auto", "fast", "bruteforce"), default="auto")
    p_spec.add_argument("--jobs", type=int, default=1)
    p_spec.add_argument("--csv", help="write the table as CSV to this path")
    p_spec.add_argument("--check-properties", action="store_true",
                        help="check structural FBCT identities (p = 2)")

    p_ver = sub.add_parser("verify", help="diff closed-form claims against computation")
    what = p_ver.add_mutually_exclusive_group(required=True)
    what.add_argument("--theorem", choices=("t1", "t2", "t3", "t4"))
    what.add_argument("--registry", action="store_true")
    p_ver.add_argument("--m", type=int, help="t1/t2 parameter")
    p_ver.add_argument("--p", type=int, help="t3 characteristic")
    p_ver.add_argument("--k", type=int, help="t3 exponent parameter")
    p_ver.add_argument("--n", type=int, help="t3/t4 degree")
    p_ver.add_argument("--condition", choices=("exact", "stated"), default="exact")
    p_ver.add_argument("--max-size", type=int, default=1024, help="registry size bound")
    p_ver.add_argument("--jobs", type=int, default=1)
    p_ver.add_argument("--json", help="also write the report to this path")

    p_reg = sub.add_parser("registry", help="list (or check) the cross-check registry")
    p_reg.add_argument("--check", action="store_true", help="compute and compare")
    p_reg.add_argument("--max-size", type=int, default=1024)
    p_reg.add_argument("--jobs", type=int, default=1)
    p_reg.add_argument("--json", help="also write the report to this path")

    return parser


def _emit(obj: dict, json_path: str | None = None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    sys.stdout.write(text)
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(text)


def _cmd_field_info(args) -> int:
    field = parse_field_spec(args.field)
    out = {
        "spec": field.spec_string(),
        "p": field.p,
        "n": field.n,
        "order": field.order,
        "modulus": list(field.modulus),
    }
    if args.power is not None:
        facts = field.power_facts(args.power)
        out["power"] = {
            "d": args.power,
            "gcd": facts.g,
            "is_permutation": facts.is_permutation,
        }
    _emit(out)
    return 0


def _cmd_solve(args) -> int:
    field = parse_field_spec(args.field)
    from . import solvers

    if args.solver == "trinomial":
        res = solvers.solve_linearized_trinomial(
            field, args.k, field.parse_element(args.a), field.parse_element(args.b),
            enumerate_roots=args.roots,
        )
        out = {"kind": res.kind, "count": res.count}
        if res.kind == "unique":
            out["root"] = res.root
            out["root_text"] = field.format_element(res.root)
        if res.kind == "subspace":
            out["representative"] = res.representative
            out["direction"] = res.direction
        if res.roots is not None:
            out["roots"] = list(res.roots)
    else:
        coeffs = [field.parse_element(c) for c in args.coeffs.split(",")]
        count = solvers.affine_root_count(field, coeffs, field.parse_element(args.b))
        out = {"count": count}
    _emit(out)
    return 0


def _cmd_spectra(args) -> int:
    field = parse_field_spec(args.field)
    if args.table_kind == "fbct" and field.p != 2:
        raise SpectraError("fbct requires characteristic 2; use sozd for odd p")
    kind = "ddt" if args.table_kind == "ddt" else "sozd"
    fmap = PowerMap(args.power) if args.power is not None else load_table_map(field, args.table)
    config = RunConfig.from_args(args, field)
    print(f"# {config.canonical()}", file=sys.stderr)

    if args.row:
        if args.power is None:
            raise SpectraError("--row needs a power map")
        if args.check_properties:
            raise SpectraError("--check-properties needs the full table")
        row = ddt_row_power(field, args.power) if kind == "ddt" else sozd_row_power(field, args.power)
        if args.csv:
            with open(args.csv, "w") as fh:
                write_row_csv(field, kind, str(args.power), row, fh)
        if kind == "ddt":
            uniformity = int(row.max())
            domain = "a != 0 (from the a = 1 row of a power map)"
        elif field.p == 2:
            uniformity = int(row[2:].max()) if field.order > 2 else 0
            domain = "a, b nonzero and a != b (from the a = 1 row of a power map)"
        else:
            uniformity = int(row[1:].max())
            domain = "a, b nonzero (from the a = 1 row of a power map)"
        hist_vals, hist_counts = _row_histogram(row)
        _emit({
            "row": "a=1",
            "uniformity": uniformity,
            "histogram": [[v, c] for v, c in zip(hist_vals, hist_counts)],
            "domain": domain,
        })
        return 0

    table = (ddt_table if kind == "ddt" else sozd_table)(
        field, fmap, method=args.method, jobs=args.jobs
    )
    if args.csv:
        with open(args.csv, "w") as fh:
            write_table_csv(table, fh)
    summary = (
        differential_uniformity(field, table=table)
        if kind == "ddt"
        else sozd_uniformity(table)
    )
    out = summary_to_dict(summary)
    exit_code = 0
    if args.check_properties:
        if not table.is_fbct:
            raise SpectraError("--check-properties applies to FBCT tables (p = 2)")
        report = fbct_property_check(table)
        out["properties"] = property_report_to_dict(report)
        if not report.ok:
            exit_code = 1
    _emit(out)
    return exit_code


def _row_histogram(row):
    vals, counts = np.unique(row, return_counts=True)
    return [int(v) for v in vals], [int(c) for c in counts]


def _cmd_verify(args) -> int:
    if args.registry:
        report = verify_registry(max_size=args.max_size, jobs=args.jobs)
        _emit(report.to_dict(), args.json)
        print(
            f"registry: {report.matched} matched, {report.mismatched} mismatched, "
            f"{report.skipped} skipped",
            file=sys.stderr,
        )
        return 0 if report.ok else 1

    params = {}
    if args.theorem in ("t1", "t2"):
        if args.m is None:
            raise SpectraError(f"--theorem {args.theorem} needs --m")
        params["m"] = args.m
    elif args.theorem == "t3":
        if None in (args.p, args.k, args.n):
            raise SpectraError("--theorem t3 needs --p, --k and --n")
        params.update(p=args.p, k=args.k, n=args.n, condition=args.condition)
    else:
        if args.n is None:
            raise SpectraError("--theorem t4 needs --n")
        params["n"] = args.n
    report = verify_theorem(args.theorem, jobs=args.jobs, **params)
    _emit(report.to_dict(), args.json)
    print(
        f"{report.target} {report.params}: uniformity claimed={report.uniformity_claimed} "
        f"actual={report.uniformity_actual} agrees={report.agrees} "
        f"mismatches={report.mismatch_count}",
        file=sys.stderr,
    )
    return 0 if report.ok else 1


def _cmd_registry(args) -> int:
    if args.check:
        report = verify_registry(max_size=args.max_size, jobs=args.jobs)
        _emit(report.to_dict(), args.json)
        return 0 if report.ok else 1
    rows = [
        {
            "name": c.name,
            "pattern": c.pattern,
            "p": c.p,
            "n": c.n,
            "d": c.d,
            "params": c.params,
            "expected": c.expected,
        }
        for c in registry_cases()
    ]
    _emit({"rows": rows}, args.json)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse handles usage errors with code 2
        return int(exc.code or 0)
    try:
        if args.command == "field-info":
            return _cmd_field_info(args)
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "spectra":
            return _cmd_spectra(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "registry":
            return _cmd_registry(args)
        parser.error(f"unknown command {args.command!r}")
    except (SpectraError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
