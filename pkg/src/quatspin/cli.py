"""Command-line front end: verification runs and machine-readable reports.

Subcommands
-----------
verify      run the structure/decomposition/identity/constant suites plus the
            so(3) representation checks; exit 0 iff every check passes
constants   table of computed vs closed-form block constants for one m
bounds      eigenvalue-bound coefficient table (universal, per-configuration,
            and comparison rows) for one m
decompose   the (r, k) block lattice with dimensions and eigenvalues
so3-check   randomized search statistics for top-weight-exposing rotations

JSON is the canonical format (sorted keys, stable byte output); csv and
table are projections of the same rows.  Rationals are serialized as "p/q"
strings; purely imaginary eigenvalues by their imaginary part, under a
field name that says so.  Exit codes: 0 success, 1 verification failure,
2 usage error, 3 resource refusal.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .bounds import build_bound_report
from .clifford import build_clifford_model, corrupt_gamma
from .decomposition import decompose, decomposition_report
from .errors import (
    DimensionError,
    DomainError,
    QuatspinError,
    ResourceLimitError,
)
from .exact import ExactScalar
from .projectors import (
    ProjectorCalculus,
    closed_form_A,
    compute_A,
    constants_report,
    verify_lemma_identities,
)
from .quaternionic import (
    build_adapted_basis,
    build_kaehler_operators,
    build_standard_triple,
    structure_report,
)
from .report import VerificationReport
from .so3 import build_irrep, find_rotation_with_top_component, irrep_report, random_vector


@dataclass(frozen=True)
class RunConfig:
    """Shared run parameters embedded in every report."""

    m_values: tuple
    backend: str
    tolerance: float
    fmt: str
    seed: int
    out: str | None


@dataclass
class CommandResult:
    exit_code: int
    payload: dict
    fieldnames: list
    rows: list
    preamble: list = field(default_factory=list)
    table_text: str | None = None


# ------------------------------------------------------------ argument types


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonnegative_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return value


def _rational(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational (like 4 or 5/2): {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _m_range(text):
    parts = text.split("..")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}")
    lo, hi = (_positive_int(p) for p in parts)
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


# ------------------------------------------------------------------- parsing


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quatspin",
        description="Exact verification of quaternionic spinor algebra "
                    "identities, block constants, and eigenvalue bounds.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, backend_default="exact"):
        p.add_argument("--backend", choices=("exact", "float"),
                       default=backend_default,
                       help="arithmetic backend (default %(default)s)")
        p.add_argument("--tolerance", type=_positive_float, default=1e-10,
                       help="float-backend residual tolerance (default %(default)s)")
        p.add_argument("--format", choices=("json", "csv", "table"),
                       default="json", help="output format (default %(default)s)")
        p.add_argument("--seed", type=_nonnegative_int, default=0,
                       help="seed for randomized sampling (default %(default)s)")
        p.add_argument("--out", default=None, help="write the report to a file")

    p = sub.add_parser("verify", help="run the full verification matrix")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--m", type=_positive_int, default=None,
                       help="single quaternionic dimension")
    group.add_argument("--m-range", type=_m_range, default=None, metavar="A..B",
                       help="inclusive dimension range (default 1..2)")
    p.add_argument("--flip-gamma", type=_nonnegative_int, default=None,
                   help=argparse.SUPPRESS)
    add_common(p)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("constants", help="computed vs closed-form block constants")
    p.add_argument("--m", type=_positive_int, default=2,
                   help="quaternionic dimension (default %(default)s)")
    add_common(p)
    p.set_defaults(handler=cmd_constants)

    p = sub.add_parser("bounds", help="eigenvalue-bound coefficient table")
    p.add_argument("--m", type=_positive_int, default=2,
                   help="quaternionic dimension (default %(default)s)")
    p.add_argument("--kappa", type=_rational, default=Fraction(4),
                   help="scalar curvature as a positive rational (default 4)")
    p.add_argument("--complex-dimension", type=_positive_int, default=None,
                   help="complex dimension for the Kaehler comparison "
                        "(default 2m)")
    add_common(p)
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser("decompose", help="joint (r, k) block lattice")
    p.add_argument("--m", type=_positive_int, default=2,
                   help="quaternionic dimension (default %(default)s)")
    add_common(p)
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("so3-check", help="randomized top-weight rotation search")
    p.add_argument("--max-r", type=_nonnegative_int, default=10,
                   help="largest highest weight (default %(default)s)")
    p.add_argument("--trials", type=_positive_int, default=100,
                   help="random vectors per weight (default %(default)s)")
    p.add_argument("--budget", type=_positive_int, default=1000,
                   help="rotation samples per search (default %(default)s)")
    p.add_argument("--threshold", type=_positive_float, default=1e-8,
                   help="float acceptance threshold (default %(default)s)")
    add_common(p, backend_default="float")
    p.set_defaults(handler=cmd_so3_check)

    return parser


def _config_from(args):
    if getattr(args, "m_range", None) is not None:
        lo, hi = args.m_range
        m_values = tuple(range(lo, hi + 1))
    elif getattr(args, "m", None) is not None:
        m_values = (args.m,)
    else:
        m_values = (1, 2)
    return RunConfig(m_values=m_values, backend=args.backend,
                     tolerance=args.tolerance, fmt=args.format,
                     seed=args.seed, out=args.out)


# ------------------------------------------------------------------ commands


def _entry_rows(segment, report):
    return [{"segment": segment, **e.as_dict()} for e in report.sorted_entries()]


def cmd_verify(args):
    config = _config_from(args)
    tol = config.tolerance if config.backend == "float" else None
    rows = []
    model_hashes = {}
    for m in config.m_values:
        model = build_clifford_model(m, kind=config.backend)
        triple = build_standard_triple(model)
        ops = build_kaehler_operators(model, triple)
        basis = build_adapted_basis(model, triple)
        dec = decompose(model, ops, tol)
        if args.flip_gamma is not None:
            model = corrupt_gamma(model, args.flip_gamma)
        calc = ProjectorCalculus(model, triple, ops, basis)
        report = VerificationReport()
        report.extend(structure_report(model, triple, ops, tol).entries)
        report.extend(decomposition_report(dec, model, triple, tol).entries)
        report.extend(verify_lemma_identities(model, triple, ops, basis,
                                              dec, calc, tol).entries)
        report.extend(constants_report(model, dec, calc, tol).entries)
        rows.extend(_entry_rows(f"m={m}", report))
        model_hashes[str(m)] = model.content_hash()
    rows.extend(_entry_rows("so3", irrep_report(10)))

    failures = [r for r in rows if r["status"] == "fail"]
    counts = {"pass": 0, "fail": 0, "info": 0}
    for r in rows:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    payload = {
        "command": "verify",
        "backend": config.backend,
        "tolerance": config.tolerance,
        "seed": config.seed,
        "m_values": list(config.m_values),
        "flip_gamma": args.flip_gamma,
        "model_hashes": model_hashes,
        "counts": counts,
        "ok": not failures,
        "entries": rows,
        "failures": failures,
    }
    fieldnames = ["segment", "check_id", "subject", "status", "residual", "note"]
    preamble = [f"backend={config.backend} m_values={list(config.m_values)} "
                f"pass={counts['pass']} fail={counts['fail']} info={counts['info']}"]
    return CommandResult(0 if not failures else 1, payload, fieldnames, rows,
                         preamble)


def cmd_constants(args):
    config = _config_from(args)
    tol = config.tolerance if config.backend == "float" else None
    m = args.m
    model = build_clifford_model(m, kind=config.backend)
    triple = build_standard_triple(model)
    ops = build_kaehler_operators(model, triple)
    basis = build_adapted_basis(model, triple)
    dec = decompose(model, ops, tol)
    calc = ProjectorCalculus(model, triple, ops, basis)

    rows = []
    mismatches = 0
    for blk in dec.nonzero_blocks():
        for variant in ("--", "+-", "-+", "++"):
            closed = closed_form_A(m, blk.r, blk.k, variant)
            got = compute_A(model, dec, calc, blk.r, blk.k, variant, tol)
            if config.backend == "float":
                match = abs(got - complex(closed)) <= max(10 * config.tolerance, 1e-8)
                computed = f"{got.real:.12g}"
            else:
                match = got == ExactScalar(closed)
                computed = str(got)
            mismatches += 0 if match else 1
            rows.append({
                "r": blk.r, "k": blk.k, "variant": variant,
                "computed": computed, "closed": str(closed), "match": match,
                "note": "twistor normalization undefined (A = 0)"
                        if closed == 0 else "",
            })
    payload = {
        "command": "constants",
        "backend": config.backend,
        "tolerance": config.tolerance,
        "m": m,
        "model_hash": model.content_hash(),
        "ok": mismatches == 0,
        "counts": {"match": len(rows) - mismatches, "mismatch": mismatches},
        "rows": rows,
    }
    fieldnames = ["r", "k", "variant", "computed", "closed", "match", "note"]
    return CommandResult(0 if mismatches == 0 else 1, payload, fieldnames, rows)


def _coefficient_dict(coeff):
    return {
        "a": str(coeff.a_value),
        "two_a_plus_one": str(coeff.two_a_plus_one),
        "coefficient": None if coeff.value is None else str(coeff.value),
        "flag": coeff.flag,
    }


def cmd_bounds(args):
    config = _config_from(args)
    report = build_bound_report(args.m, args.kappa, args.complex_dimension)
    rows = []
    flat_rows = []
    for row in report.rows:
        first = _coefficient_dict(row.first)
        second = _coefficient_dict(row.second)
        rows.append({"r": row.r, "k": row.k, "case": row.case,
                     "first": first, "second": second})
        flat = {"r": row.r, "k": row.k, "case": row.case}
        flat.update({f"first_{k}": ("" if v is None else v)
                     for k, v in first.items()})
        flat.update({f"second_{k}": ("" if v is None else v)
                     for k, v in second.items()})
        flat_rows.append(flat)
    comparisons = report.comparisons
    payload = {
        "command": "bounds",
        "m": report.m,
        "kappa": str(report.kappa),
        "universal": {
            "coefficient": str(report.universal),
            "value": str(report.universal_value),
        },
        "comparisons": {
            "complex_dimension": comparisons.complex_dimension,
            "friedrich": str(comparisons.friedrich),
            "kirchberg_odd": str(comparisons.kirchberg_odd),
            "kirchberg_even": str(comparisons.kirchberg_even),
            "applicable_parity": comparisons.applicable_parity,
        },
        "rows": rows,
    }
    fieldnames = ["r", "k", "case",
                  "first_a", "first_two_a_plus_one", "first_coefficient",
                  "first_flag",
                  "second_a", "second_two_a_plus_one", "second_coefficient",
                  "second_flag"]
    preamble = [
        f"m={report.m} kappa={report.kappa} universal coefficient "
        f"{report.universal} -> bound {report.universal_value}",
        f"friedrich {comparisons.friedrich}  kirchberg "
        f"odd {comparisons.kirchberg_odd} / even {comparisons.kirchberg_even} "
        f"(m_c={comparisons.complex_dimension}, {comparisons.applicable_parity})",
    ]
    return CommandResult(0, payload, fieldnames, flat_rows, preamble)


def cmd_decompose(args):
    config = _config_from(args)
    tol = config.tolerance if config.backend == "float" else None
    m = args.m
    model = build_clifford_model(m, kind=config.backend)
    triple = build_standard_triple(model)
    ops = build_kaehler_operators(model, triple)
    dec = decompose(model, ops, tol)
    blocks = [{"r": b.r, "k": b.k, "dim": b.dim,
               "omega_eig": b.omega_eig, "omega1_eig_im": b.weight_im}
              for b in dec.nonzero_blocks()]
    payload = {
        "command": "decompose",
        "backend": config.backend,
        "m": m,
        "model_hash": model.content_hash(),
        "spinor_dim": model.spinor_dim,
        "dim_sum": sum(b["dim"] for b in blocks),
        "blocks": blocks,
    }
    fieldnames = ["r", "k", "dim", "omega_eig", "omega1_eig_im"]
    table = _decompose_grid(m, dec)
    return CommandResult(0, payload, fieldnames, blocks, table_text=table)


def _decompose_grid(m, dec):
    """Render the lattice as a grid: rows r, columns k, cells dim or blank."""
    by_pos = {(b.r, b.k): b for b in dec.nonzero_blocks()}
    header = ["r\\k"] + [f"k={k} (im {2 * m - 2 * k})" for k in range(2 * m + 1)]
    lines = [header]
    for r in range(m + 1):
        row = [f"r={r} (omega {6 * m - 4 * r * (r + 2)})"]
        for k in range(2 * m + 1):
            blk = by_pos.get((r, k))
            row.append("" if blk is None else str(blk.dim))
        lines.append(row)
    total = sum(b.dim for b in dec.nonzero_blocks())
    widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
    out = []
    for line in lines:
        out.append("  ".join(c.ljust(w) for c, w in zip(line, widths)).rstrip())
    out.append(f"dim sum = {total} = 2^{{2m}} = {2 ** (2 * m)}")
    return "\n".join(out) + "\n"


def cmd_so3_check(args):
    config = _config_from(args)
    tol = config.tolerance if config.backend == "float" else None
    rows = []
    total_exhaustions = 0
    for r in range(args.max_r + 1):
        irrep = build_irrep(r, kind=config.backend)
        successes = 0
        max_used = 0
        for trial in range(args.trials):
            rng = np.random.default_rng([config.seed, r, trial])
            v = random_vector(rng, irrep.dim, config.backend)
            outcome = find_rotation_with_top_component(
                irrep, v, budget=args.budget, seed=config.seed + trial,
                threshold=args.threshold, tol=tol)
            successes += 1 if outcome.found else 0
            max_used = max(max_used, outcome.samples_used)
        exhaustions = args.trials - successes
        total_exhaustions += exhaustions
        rows.append({"r": r, "trials": args.trials, "successes": successes,
                     "exhaustions": exhaustions, "max_samples_used": max_used})
    payload = {
        "command": "so3-check",
        "backend": config.backend,
        "max_r": args.max_r,
        "trials": args.trials,
        "budget": args.budget,
        "threshold": args.threshold,
        "seed": config.seed,
        "total_exhaustions": total_exhaustions,
        "ok": total_exhaustions == 0,
        "rows": rows,
    }
    fieldnames = ["r", "trials", "successes", "exhaustions", "max_samples_used"]
    return CommandResult(0 if total_exhaustions == 0 else 1, payload,
                         fieldnames, rows)


# ------------------------------------------------------------------ emission


def _format_csv(fieldnames, rows):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fieldnames, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row.get(k, ""))
                         for k in fieldnames})
    return buf.getvalue()


def _format_table(fieldnames, rows, preamble):
    cells = [[str("" if row.get(k) is None else row.get(k, ""))
              for k in fieldnames] for row in rows]
    widths = [max([len(k)] + [len(c[i]) for c in cells])
              for i, k in enumerate(fieldnames)]
    lines = list(preamble)
    lines.append("  ".join(k.ljust(w) for k, w in zip(fieldnames, widths)).rstrip())
    lines.append("  ".join("-" * w for w in widths))
    for c in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(c, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _render(result, fmt):
    if fmt == "json":
        return json.dumps(result.payload, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _format_csv(result.fieldnames, result.rows)
    if result.table_text is not None:
        return result.table_text
    return _format_table(result.fieldnames, result.rows, result.preamble)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        result = args.handler(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, DimensionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QuatspinError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = _render(result, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
