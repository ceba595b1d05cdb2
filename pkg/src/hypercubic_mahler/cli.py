"""Command-line front end.

::

    hypercubic-mahler compute --n 3 --z 6
    hypercubic-mahler compute --n 1 --k 2
    hypercubic-mahler verify --identity eq15 --grid 3.05
    hypercubic-mahler table --diagonal --n-list 2..10

Exit codes: 0 success, 1 an identity failed, 2 domain error, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import MahlerError, UnknownIdentity
from .mahler import MahlerQuery, Route, evaluate
from .specfun import ToleranceConfig
from .verify import (
    Verdict,
    errata,
    parse_identity,
    reports_to_csv,
    reports_to_json,
    run_full_suite,
    verify_identity,
)

EXIT_OK = 0
EXIT_IDENTITY_FAILED = 1
EXIT_DOMAIN = 2
EXIT_USAGE = 64

DIAGONAL_CAP = 30
_LN2 = math.log(2.0)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class CliConfig:
    """Validated command-line settings."""

    subcommand: str
    n: Optional[int] = None
    z: Optional[list] = None
    k: Optional[float] = None
    route: str = "auto"
    tol: float = 1e-12
    fmt: str = "text"
    out: Optional[str] = None
    threads: int = 1


def fmt_float(x) -> str:
    """15 significant digits; empty for missing values."""
    if x is None:
        return ""
    x = float(x)
    if not math.isfinite(x):
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    return f"{x:.15g}"


def parse_int_list(text: str) -> list[int]:
    """``"1,3,5"``, ``"2..10"`` or a mix such as ``"1,4..6"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise UsageError(f"empty range {part!r}")
            out.extend(range(lo_i, hi_i + 1))
        else:
            out.append(int(part))
    if not out:
        raise UsageError("empty integer list")
    return out


def parse_float_list(text: str) -> list[float]:
    vals = [float(p) for p in text.split(",") if p.strip()]
    if not vals:
        raise UsageError("empty list")
    return vals


def _write(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _pmap(fn, items, threads: int):
    if threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads or None) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# compute


def cmd_compute(cfg: CliConfig) -> int:
    tol = ToleranceConfig(cfg.tol, cfg.tol)
    zs = [0.5 * cfg.k] if cfg.k is not None else list(cfg.z)

    def run(z):
        return evaluate(MahlerQuery(cfg.n, z, Route(cfg.route), tol))

    try:
        results = _pmap(run, zs, cfg.threads)
    except MahlerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    records = []
    for z, res in zip(zs, results):
        rec = {
            "n": cfg.n,
            "z": z,
            "J": res.value,
            "err_estimate": res.error_estimate,
            "route": res.route.value,
            "evaluations": res.evaluations,
            "mahler_measure": _LN2 + res.value,
        }
        if cfg.k is not None:
            rec["k"] = cfg.k
        records.append(rec)

    if cfg.fmt == "json":
        text = json.dumps(records if len(records) > 1 else records[0], indent=2) + "\n"
    elif cfg.fmt == "csv":
        header = ["n", "z", "J", "err_estimate", "route", "evaluations", "mahler_measure"]
        rows = [
            [r["n"], fmt_float(r["z"]), fmt_float(r["J"]), fmt_float(r["err_estimate"]),
             r["route"], r["evaluations"], fmt_float(r["mahler_measure"])]
            for r in records
        ]
        text = _csv_text(header, rows)
    else:
        lines = []
        for r in records:
            head = f"J_{r['n']}({fmt_float(r['z'])}) = {fmt_float(r['J'])}"
            if cfg.k is not None:
                head = f"m(P) = {fmt_float(r['mahler_measure'])}  [k = {fmt_float(cfg.k)}, {head}]"
            lines.append(
                f"{head}  error estimate {fmt_float(r['err_estimate'])}"
                f"  route {r['route']}  evaluations {r['evaluations']}"
            )
        text = "\n".join(lines) + "\n"
    _write(text, cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify


def _render_reports_text(reports) -> str:
    lines = [f"{'identity':<9} {'argument':>9} {'lhs':>22} {'rhs':>22} {'abs_diff':>10} {'tol':>7}  verdict     note"]
    for r in reports:
        lines.append(
            f"{r.id.value:<9} {fmt_float(r.argument):>9} {fmt_float(r.lhs):>22} {fmt_float(r.rhs):>22} "
            f"{(f'{r.abs_diff:.2e}' if math.isfinite(r.abs_diff) else 'nan'):>10} {r.tol:>7.0e}  "
            f"{r.verdict.value:<11} {r.note}"
        )
    counts = {v: sum(r.verdict is v for r in reports) for v in Verdict}
    lines.append(
        f"{len(reports)} reports: {counts[Verdict.PASS]} pass, {counts[Verdict.FAIL]} fail, "
        f"{counts[Verdict.UNRESOLVED]} unresolved"
    )
    return "\n".join(lines) + "\n"


def cmd_verify(cfg: CliConfig, identity: Optional[str], grid: Optional[list],
               errata_path: Optional[str]) -> int:
    tol = ToleranceConfig(cfg.tol, cfg.tol)
    if identity is None:
        reports = run_full_suite(tol, threads=cfg.threads)
    else:
        reports = verify_identity(identity, grid, tol, threads=cfg.threads)
    if cfg.fmt == "json":
        text = reports_to_json(reports) + "\n"
    elif cfg.fmt == "csv":
        text = reports_to_csv(reports)
    else:
        text = _render_reports_text(reports)
    _write(text, cfg.out)
    if errata_path:
        with open(errata_path, "w", encoding="utf-8") as fh:
            json.dump(errata(tol), fh, indent=2)
            fh.write("\n")
    failed = any(r.verdict is Verdict.FAIL for r in reports)
    return EXIT_IDENTITY_FAILED if failed else EXIT_OK


# ---------------------------------------------------------------------------
# table

TABLE_HEADER = ("n", "z", "J", "err_estimate", "route", "status")


def cmd_table(cfg: CliConfig, n_list: list[int], z_list: Optional[list], diagonal: bool) -> int:
    tol = ToleranceConfig(cfg.tol, cfg.tol)
    if diagonal:
        kept = [d for d in n_list if d <= DIAGONAL_CAP]
        if len(kept) < len(n_list):
            print(
                f"warning: diagonal mode is capped at d = {DIAGONAL_CAP}; "
                f"dropped {sorted(set(n_list) - set(kept))}",
                file=sys.stderr,
            )
        pairs = [(d, float(d)) for d in kept]
    else:
        pairs = [(n, z) for n in n_list for z in z_list]

    def run(pair):
        n, z = pair
        try:
            res = evaluate(MahlerQuery(n, z, Route(cfg.route), tol))
        except MahlerError as exc:
            return (n, z, None, None, "", f"error: {exc}")
        return (n, z, res.value, res.error_estimate, res.route.value, "ok")

    rows = _pmap(run, pairs, cfg.threads)
    if cfg.fmt == "json":
        text = json.dumps([dict(zip(TABLE_HEADER, r)) for r in rows], indent=2) + "\n"
    else:
        text = _csv_text(
            TABLE_HEADER,
            [(n, fmt_float(z), fmt_float(j), fmt_float(e), route, status)
             for n, z, j, e, route, status in rows],
        )
    _write(text, cfg.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hypercubic-mahler",
                description="Hyper-cubic Mahler measures J_n(z) and identity checks.")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(sp, formats=("text", "json", "csv"), default="text"):
        sp.add_argument("--tol", type=float, default=1e-12,
                        help="absolute and relative tolerance (default 1e-12)")
        sp.add_argument("--format", choices=formats, default=default, dest="fmt")
        sp.add_argument("--out", help="write to this file instead of stdout")
        sp.add_argument("--threads", type=int, default=1, help="worker threads (0 = auto)")

    c = sub.add_parser("compute", help="evaluate J_n(z) or the Mahler measure")
    c.add_argument("--n", type=int, required=True, help="dimension n >= 0")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--z", type=float)
    g.add_argument("--z-range", nargs=3, metavar=("START", "STOP", "COUNT"),
                   help="COUNT evenly spaced z values from START to STOP")
    g.add_argument("--k", type=float, help="Mahler-measure coefficient, z = k / 2")
    c.add_argument("--route", choices=[r.value for r in Route], default="auto")
    common(c)

    v = sub.add_parser("verify", help="run the identity harness")
    v.add_argument("--identity", help="identity id such as eq9 or EQ15_J3 (default: all)")
    v.add_argument("--grid", help="comma-separated grid overriding the default")
    v.add_argument("--errata", metavar="PATH", help="also write the errata report as JSON")
    common(v)

    t = sub.add_parser("table", help="CSV table of J_n(z) for plotting")
    t.add_argument("--n-list", required=True, help="e.g. 1,2,3 or 2..10")
    g2 = t.add_mutually_exclusive_group(required=True)
    g2.add_argument("--z-list", help="comma-separated z values")
    g2.add_argument("--diagonal", action="store_true", help="z = n (J_d(d))")
    t.add_argument("--route", choices=[r.value for r in Route], default="auto")
    common(t, formats=("csv", "json"), default="csv")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not (args.tol > 0 and math.isfinite(args.tol)):
        parser.error("--tol must be a positive number")
    if args.threads < 0:
        parser.error("--threads must be >= 0")
    cfg = CliConfig(args.subcommand, route=getattr(args, "route", "auto"), tol=args.tol,
                    fmt=args.fmt, out=args.out, threads=args.threads)
    try:
        if args.subcommand == "compute":
            cfg.n = args.n
            if args.z_range is not None:
                try:
                    start, stop, count = float(args.z_range[0]), float(args.z_range[1]), int(args.z_range[2])
                except ValueError:
                    raise UsageError("--z-range needs START STOP COUNT (COUNT an integer)") from None
                if count < 1:
                    raise UsageError("--z-range COUNT must be >= 1")
                cfg.z = [float(x) for x in np.linspace(start, stop, count)]
            elif args.z is not None:
                cfg.z = [args.z]
            else:
                cfg.k = args.k
            return cmd_compute(cfg)
        if args.subcommand == "verify":
            identity = None
            if args.identity is not None:
                try:
                    identity = parse_identity(args.identity)
                except UnknownIdentity:
                    raise UsageError(f"unknown identity {args.identity!r}") from None
            grid = parse_float_list(args.grid) if args.grid is not None else None
            if grid is not None and identity is None:
                raise UsageError("--grid needs --identity")
            return cmd_verify(cfg, identity, grid, args.errata)
        n_list = parse_int_list(args.n_list)
        z_list = None if args.diagonal else parse_float_list(args.z_list)
        return cmd_table(cfg, n_list, z_list, args.diagonal)
    except (UsageError, ValueError) as exc:
        parser.error(str(exc))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
