"""Command-line front end: ``folideg <command> ...``.

Exit codes: 0 success, 1 invalid input, 2 unsupported degree vector.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import degrees as deg
from .algebra import random_homogeneous
from .forms import check_foliation_conditions, euler_identity_check, omega_from_polys, zariski_tangent_dim
from .weighted import (DegreeVector, base_locus_member, component_dim, fiber_dim,
                       hilbert_coeffs)

EXIT_OK, EXIT_INVALID, EXIT_UNSUPPORTED = 0, 1, 2


class UsageError(ValueError):
    pass


@dataclass
class Report:
    command: str
    params: dict
    results: list[dict] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        return cls(data["command"], data["params"], data["results"])


def parse_degrees(text: str) -> tuple[int, ...]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"malformed degree list {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise UsageError(f"degrees must be positive integers, got {text!r}")
    return tuple(sorted(values))


def _threads() -> int:
    raw = os.environ.get("FOLIDEG_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"FOLIDEG_THREADS must be an integer, got {raw!r}") from None


def _ordered_map(fn, items: Sequence) -> list:
    workers = min(_threads(), len(items))
    if workers <= 1:
        return [fn(*it) for it in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(fn, *it) for it in items]
        return [f.result() for f in futures]


def degree_record(r: int, degrees: tuple[int, ...]) -> dict:
    res = deg.degree_dispatch(deg.DegreeSpec(r, degrees))
    if isinstance(res, deg.NoMethod):
        return {"r": r, "degrees": list(degrees), "degree": None, "dimension": component_dim(r, degrees),
                "method": res.method, "status": res.status, "millis": 0, "message": res.message}
    return {"r": r, "degrees": list(res.degrees), "degree": str(res.degree),
            "dimension": res.dimension, "method": res.method, "status": res.status,
            "millis": res.millis}


def verify_record(r: int, degrees: tuple[int, ...], seed: int) -> dict:
    rng = random.Random(seed)
    attempts = 0
    while True:
        attempts += 1
        F = [random_homogeneous(r + 1, d, rng) for d in degrees]
        if not base_locus_member(F, r):
            break
        if attempts > 50:
            raise UsageError("could not draw a tuple outside the base locus")
    omega = omega_from_polys(F)
    plucker, integrable = check_foliation_conditions(omega, len(degrees) - 1, r)
    tangent = zariski_tangent_dim(omega, len(degrees) - 1, r)
    comp = component_dim(r, degrees)
    return {"r": r, "degrees": list(degrees), "seed": seed, "attempts": attempts,
            "euler_identity": euler_identity_check(omega),
            "plucker": plucker, "integrable": integrable,
            "tangent_dim": tangent, "component_dim": comp,
            "smooth_point": tangent == comp}


def _fmt_degree_row(rec: dict) -> str:
    d = ",".join(map(str, rec["degrees"]))
    if rec["degree"] is None:
        return f"r={rec['r']} d=({d}) unsupported: {rec.get('message', '')}"
    return (f"r={rec['r']} d=({d}) degree={rec['degree']} dim={rec['dimension']} "
            f"method={rec['method']} status={rec['status']}")


def _render_text(report: Report) -> str:
    cmd = report.command
    lines = []
    if cmd in ("degree",):
        lines = [_fmt_degree_row(r) for r in report.results]
    elif cmd.startswith("table"):
        key = report.params.get("column", "r")
        lines.append(f"{key:>4} | deg")
        lines.append("-----+" + "-" * 44)
        for rec in report.results:
            label = rec["r"] if key == "r" else rec["degrees"][-1]
            value = rec["degree"] if rec["degree"] is not None else "unsupported"
            flag = "" if rec["status"] == deg.EXACT else f"  [{rec['status']}]"
            lines.append(f"{label:>4} | {value}{flag}")
    elif cmd == "dim":
        for rec in report.results:
            lines.append(f"r={rec['r']} d=({','.join(map(str, rec['degrees']))}) "
                         f"component_dim={rec['component_dim']} fiber_dim={rec['fiber_dim']}")
    elif cmd == "hilbert":
        for rec in report.results:
            lines.append(" ".join(str(c) for c in rec["coefficients"]))
    elif cmd == "verify":
        for rec in report.results:
            lines.append(" ".join(f"{k}={v}" for k, v in rec.items()))
    elif cmd == "interp-check":
        for rec in report.results:
            lines.append(f"t={rec['t']} polynomial={rec['polynomial']} degree={rec['degree']} "
                         f"{'match' if rec['match'] else 'MISMATCH'}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="folideg", description="Degrees of spaces of foliations.")
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    def add_rd(sp, need_r=True):
        if need_r:
            sp.add_argument("--r", type=int, required=True)
        sp.add_argument("--degrees", required=True, help="comma-separated, e.g. 2,2,2")

    add_rd(sub.add_parser("degree", help="degree and dimension of R(r, d)"))
    add_rd(sub.add_parser("dim", help="component and fiber dimensions"))
    v = sub.add_parser("verify", help="check a random foliation of type d")
    add_rd(v)
    v.add_argument("--seed", type=int, default=0)
    h = sub.add_parser("hilbert", help="weighted Hilbert series coefficients")
    add_rd(h, need_r=False)
    h.add_argument("--emax", type=int, required=True)
    t = sub.add_parser("table", help="reproduce a degree table")
    tsub = t.add_subparsers(dest="table", required=True)
    t1 = tsub.add_parser("222")
    t1.add_argument("--rmin", type=int, default=3)
    t1.add_argument("--rmax", type=int, required=True)
    t2 = tsub.add_parser("2odd")
    t2.add_argument("--r", type=int, required=True)
    t2.add_argument("--mmax", type=int, required=True)
    t3 = tsub.add_parser("linear")
    t3.add_argument("--q", type=int, required=True)
    t3.add_argument("--r", type=int, required=True)
    t3.add_argument("--dmax", type=int, required=True)
    ic = sub.add_parser("interp-check", help="compare (2, 2m+1) degrees on P^3 with the interpolation")
    ic.add_argument("--mmax", type=int, default=5)
    for sp in (sub.choices["degree"], sub.choices["dim"], sub.choices["verify"],
               sub.choices["hilbert"], sub.choices["interp-check"], t1, t2, t3):
        sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    return p


def execute(args) -> tuple[Report, int]:
    cmd = args.command
    if cmd == "degree":
        degrees = parse_degrees(args.degrees)
        rec = degree_record(args.r, degrees)
        code = EXIT_UNSUPPORTED if rec["degree"] is None else EXIT_OK
        return Report(cmd, {"r": args.r, "degrees": list(degrees)}, [rec]), code
    if cmd == "dim":
        degrees = parse_degrees(args.degrees)
        rec = {"r": args.r, "degrees": list(degrees),
               "component_dim": component_dim(args.r, degrees),
               "fiber_dim": fiber_dim(len(degrees) - 1, degrees)}
        return Report(cmd, {"r": args.r, "degrees": list(degrees)}, [rec]), EXIT_OK
    if cmd == "verify":
        degrees = parse_degrees(args.degrees)
        if args.r < 1 or len(degrees) > args.r:
            raise UsageError(f"need 1 <= q + 1 <= r, got {len(degrees)} polynomials for r={args.r}")
        rec = verify_record(args.r, degrees, args.seed)
        return Report(cmd, {"r": args.r, "degrees": list(degrees), "seed": args.seed}, [rec]), EXIT_OK
    if cmd == "hilbert":
        degrees = parse_degrees(args.degrees)
        if args.emax < 0:
            raise UsageError("--emax must be nonnegative")
        rec = {"degrees": list(degrees), "coefficients": hilbert_coeffs(DegreeVector(degrees), args.emax)}
        return Report(cmd, {"degrees": list(degrees), "emax": args.emax}, [rec]), EXIT_OK
    if cmd == "table":
        return _table(args), EXIT_OK
    if cmd == "interp-check":
        rows = deg.interpolation_check_23(3, args.mmax)
        recs = [{"m": row.m, "t": row.t, "polynomial": str(row.polynomial),
                 "degree": str(row.degree), "match": row.match} for row in rows]
        return Report(cmd, {"r": 3, "mmax": args.mmax}, recs), EXIT_OK
    raise UsageError(f"unknown command {cmd}")


def _table(args) -> Report:
    which = args.table
    if which == "222":
        if args.rmin < 3 or args.rmax < args.rmin:
            raise UsageError("need 3 <= rmin <= rmax")
        items = [(r, (2, 2, 2)) for r in range(args.rmin, args.rmax + 1)]
        params = {"table": which, "rmin": args.rmin, "rmax": args.rmax, "column": "r"}
    elif which == "2odd":
        if args.r < 2 or args.mmax < 1:
            raise UsageError("need r >= 2 and mmax >= 1")
        items = [(args.r, (2, 2 * m + 1)) for m in range(1, args.mmax + 1)]
        params = {"table": which, "r": args.r, "mmax": args.mmax, "column": "d1"}
    else:
        if args.q < 1 or args.r < args.q or args.dmax < 2:
            raise UsageError("need 1 <= q <= r and dmax >= 2")
        items = [(args.r, (1,) * args.q + (d,)) for d in range(2, args.dmax + 1)]
        params = {"table": which, "q": args.q, "r": args.r, "dmax": args.dmax, "column": "d"}
    return Report(f"table {which}", params, _ordered_map(degree_record, items))


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        report, code = execute(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    fmt = getattr(args, "format", "text")
    print(report.to_json() if fmt == "json" else _render_text(report))
    if code == EXIT_UNSUPPORTED:
        print(f"error: {report.results[0]['message']}", file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())
