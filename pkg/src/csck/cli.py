"""Command-line front end.

Subcommands: ``character``, ``evaluate``, ``scan``, ``locate``, ``verify``,
``sample-face``.  Reports are emitted as text, JSON or CSV on stdout (or
``--out``); diagnostics go to stderr only.  All numbers in reports are exact
strings ("p/q" or decimal integers); ``--approx`` adds float fields *beside*
the exact ones, never instead.

Exit codes: 0 success, 2 invalid input or usage, 3 internal invariant
violation (a proven identity failed, i.e. a bug), 4 verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__, cone, verification
from .character import Dims, InvariantViolation, KahlerClass, compute_obstruction, slope
from .cone import CSV_HEADER, DEFAULT_WIDTH, SIGN_NAMES
from .exact import parse_rational

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INVARIANT = 3
EXIT_VERIFY = 4


def _parse_class(text: str) -> KahlerClass:
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"expected three comma-separated coordinates, got {text!r}")
    return KahlerClass(*(parse_rational(p) for p in parts))


def _parse_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(text)
    if lo > hi:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csck",
        description="Exact cscK obstruction computations for P(H_m (+) H_n) over CP^m x CP^n.",
    )
    parser.add_argument("--version", action="version", version=f"csck {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, formats: tuple[str, ...]) -> None:
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", type=Path, default=None, help="write the report to a file instead of stdout")
        p.add_argument("--no-meta", action="store_true", help="suppress the run-metadata header")
        p.add_argument("--approx", action="store_true", help="add float fields beside the exact ones")

    p = sub.add_parser("character", help="emit g, h and the obstruction polynomial F")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    add_common(p, ("text", "json"))

    p = sub.add_parser("evaluate", help="evaluate F, the slope and the region label at one class")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--class", dest="cls", required=True, help="x,y,z with rational entries")
    add_common(p, ("json", "text", "csv"))

    p = sub.add_parser("scan", help="batch verdicts over dimension pairs")
    p.add_argument("-m", "--m", dest="m_range", required=True, help="range a..b (or single value)")
    p.add_argument("-n", "--n", dest="n_range", required=True, help="range a..b (or single value)")
    p.add_argument("--all-pairs", action="store_true", help="include pairs with m >= n")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers (result is order-independent)")
    p.add_argument("--width", default=None, help="witness isolation width (rational, default 1/2^20)")
    add_common(p, ("csv", "json", "text"))

    p = sub.add_parser("locate", help="isolate zero classes of F on a segment")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--from", dest="start", required=True, help="segment start x,y,z")
    p.add_argument("--to", dest="end", required=True, help="segment end x,y,z")
    p.add_argument("--width", default=None, help="isolation width (rational, default 1/2^20)")
    add_common(p, ("json", "text"))

    p = sub.add_parser("verify", help="run the verification battery")
    p.add_argument("--deep", action="store_true", help="add the cyclotomic congruence battery")
    add_common(p, ("text", "json"))

    p = sub.add_parser("sample-face", help="signs on the interior lattice of the face x+y+z=1")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--resolution", type=int, required=True)
    add_common(p, ("csv", "json", "text"))

    return parser


def _meta(args: argparse.Namespace, params: dict) -> dict:
    return {
        "tool": "csck",
        "version": __version__,
        "command": args.command,
        "params": params,
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }


def _emit(args: argparse.Namespace, text: str) -> None:
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_json(args: argparse.Namespace, payload: dict, params: dict) -> None:
    if not args.no_meta:
        payload = {"meta": _meta(args, params), **payload}
    _emit(args, json.dumps(payload, indent=2) + "\n")


def _meta_lines(args: argparse.Namespace, params: dict) -> list[str]:
    if args.no_meta:
        return []
    meta = _meta(args, params)
    return [f"# {k}={meta[k]}" for k in ("tool", "version", "command", "generated_at")] + [
        f"# params={json.dumps(params)}"
    ]


def _cmd_character(args: argparse.Namespace) -> int:
    d = Dims(args.m, args.n)
    polys = compute_obstruction(d)
    params = {"m": args.m, "n": args.n}
    if args.format == "json":
        _emit_json(args, polys.to_json(), params)
    else:
        lines = _meta_lines(args, params)
        lines.append(str(polys.F))
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_evaluate(args: argparse.Namespace) -> int:
    d = Dims(args.m, args.n)
    cls = _parse_class(args.cls)
    value = compute_obstruction(d).F.evaluate(cls)
    sgn = 1 if value > 0 else (-1 if value < 0 else 0)
    mu = slope(d, cls) if cls.x * cls.y * cls.z != 0 else None
    region = cone.in_kahler_triangle(d, cls)
    if value != 0:
        csck: bool | None = False
    elif region == cone.REGION_INSIDE:
        csck = True
    else:
        csck = None  # F vanishes but the class is not certified Kahler
    params = {"m": args.m, "n": args.n, "class": [str(v) for v in cls]}
    payload = {
        "m": args.m,
        "n": args.n,
        "class": [str(v) for v in cls],
        "F": str(value),
        "mu": None if mu is None else str(mu),
        "sign": SIGN_NAMES[sgn],
        "kahler_region": region,
        "cscK_in_class": csck,
    }
    if args.approx:
        payload["F_approx"] = float(value)
        payload["mu_approx"] = None if mu is None else float(mu)
    if args.format == "json":
        _emit_json(args, payload, params)
    elif args.format == "csv":
        header = "m,n,x,y,z,F,mu,sign,kahler_region,cscK_in_class"
        row = [
            str(args.m),
            str(args.n),
            str(cls.x),
            str(cls.y),
            str(cls.z),
            str(value),
            "" if mu is None else str(mu),
            SIGN_NAMES[sgn],
            region,
            "" if csck is None else ("true" if csck else "false"),
        ]
        if args.approx:
            header += ",F_approx,mu_approx"
            row += [repr(float(value)), "" if mu is None else repr(float(mu))]
        lines = _meta_lines(args, params) + [header, ",".join(row)]
        _emit(args, "\n".join(lines) + "\n")
    else:
        lines = _meta_lines(args, params)
        for key in ("F", "mu", "sign", "kahler_region", "cscK_in_class"):
            lines.append(f"{key} = {payload[key]}")
        if args.approx:
            lines.append(f"F_approx = {payload['F_approx']}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_scan(args: argparse.Namespace) -> int:
    m_lo, m_hi = _parse_range(args.m_range)
    n_lo, n_hi = _parse_range(args.n_range)
    if args.jobs < 1:
        raise ValueError("--jobs must be at least 1")
    width = DEFAULT_WIDTH if args.width is None else parse_rational(args.width)
    if width <= 0:
        raise ValueError("--width must be positive")
    rows = cone.scan_range(
        m_lo, m_hi, n_lo, n_hi, all_pairs=args.all_pairs, jobs=args.jobs, width=width
    )
    params = {
        "m": f"{m_lo}..{m_hi}",
        "n": f"{n_lo}..{n_hi}",
        "all_pairs": args.all_pairs,
    }
    if args.format == "json":
        json_rows = []
        for row in rows:
            obj = row.to_json()
            if args.approx:
                obj["limit_l1_approx"] = float(row.limit1)
                obj["limit_l2_approx"] = float(row.limit2)
                obj["F_at_c1_approx"] = float(row.f_at_c1)
            json_rows.append(obj)
        _emit_json(args, {"rows": json_rows}, params)
    elif args.format == "csv":
        header = CSV_HEADER
        if args.approx:
            header += ",limit_l1_approx,limit_l2_approx,F_at_c1_approx"
        lines = _meta_lines(args, params) + [header]
        for row in rows:
            fields = row.csv_fields()
            if args.approx:
                fields += [repr(float(row.limit1)), repr(float(row.limit2)), repr(float(row.f_at_c1))]
            lines.append(",".join(fields))
        _emit(args, "\n".join(lines) + "\n")
    else:
        lines = _meta_lines(args, params)
        for row in rows:
            lines.append(
                f"m={row.m} n={row.n} limit_l1={row.limit1} limit_l2={row.limit2} "
                f"F_at_c1={row.f_at_c1} ke_admissible={str(row.ke_admissible).lower()} "
                f"sign_change_found={str(row.sign_change_found).lower()} "
                f"paper_backed={str(row.paper_backed).lower()}"
            )
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_locate(args: argparse.Namespace) -> int:
    d = Dims(args.m, args.n)
    start = _parse_class(args.start)
    end = _parse_class(args.end)
    width = DEFAULT_WIDTH if args.width is None else parse_rational(args.width)
    if width <= 0:
        raise ValueError("--width must be positive")
    report = cone.isolate_on_segment(d, start, end, width)
    params = {
        "m": args.m,
        "n": args.n,
        "from": [str(v) for v in start],
        "to": [str(v) for v in end],
        "width": str(width),
    }
    if args.format == "json":
        payload = report.to_json()
        if args.approx:
            for interval_obj, root in zip(payload["intervals"], report.roots):
                interval_obj["lo_approx"] = float(root.interval.lo)
                interval_obj["hi_approx"] = float(root.interval.hi)
                interval_obj["midpoint_class_approx"] = [float(v) for v in root.midpoint_class]
        _emit_json(args, payload, params)
    else:
        lines = _meta_lines(args, params)
        lines.append(f"sign_from = {SIGN_NAMES[report.sign_start]}")
        lines.append(f"sign_to = {SIGN_NAMES[report.sign_end]}")
        if report.identically_zero:
            lines.append("identically zero along the segment")
        elif not report.roots:
            lines.append("no roots in (0, 1)")
        for root in report.roots:
            inside = "inside certified triangle" if root.inside_certified else "Kahler status unknown"
            lines.append(
                f"root in ({root.interval.lo}, {root.interval.hi}); "
                f"midpoint class {root.midpoint_class}; {inside}"
            )
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    results = verification.run_checks(deep=args.deep)
    params = {"deep": args.deep}
    failed = [r for r in results if not r.passed]
    if args.format == "json":
        _emit_json(args, {"results": [r.to_json() for r in results], "failures": len(failed)}, params)
    else:
        lines = _meta_lines(args, params)
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"{status} {r.name}: {r.detail} [{r.elapsed:.2f}s]")
        lines.append(f"{len(results) - len(failed)}/{len(results)} checks passed")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_VERIFY if failed else EXIT_OK


def _cmd_sample_face(args: argparse.Namespace) -> int:
    d = Dims(args.m, args.n)
    samples = cone.sample_face(d, args.resolution)
    params = {"m": args.m, "n": args.n, "resolution": args.resolution}
    if args.format == "json":
        sample_objs = []
        for s in samples:
            obj = s.to_json()
            if args.approx:
                obj["point_approx"] = [float(s.point.x), float(s.point.y), float(s.point.z)]
            sample_objs.append(obj)
        _emit_json(args, {"samples": sample_objs}, params)
    elif args.format == "csv":
        header = "x,y,z,sign,region"
        if args.approx:
            header += ",x_approx,y_approx,z_approx"
        lines = _meta_lines(args, params) + [header]
        for s in samples:
            row = f"{s.point.x},{s.point.y},{s.point.z},{SIGN_NAMES[s.sign]},{s.region}"
            if args.approx:
                row += f",{float(s.point.x)!r},{float(s.point.y)!r},{float(s.point.z)!r}"
            lines.append(row)
        _emit(args, "\n".join(lines) + "\n")
    else:
        lines = _meta_lines(args, params)
        for s in samples:
            lines.append(f"({s.point.x}, {s.point.y}, {s.point.z}) sign={SIGN_NAMES[s.sign]} region={s.region}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


_COMMANDS = {
    "character": _cmd_character,
    "evaluate": _cmd_evaluate,
    "scan": _cmd_scan,
    "locate": _cmd_locate,
    "verify": _cmd_verify,
    "sample-face": _cmd_sample_face,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
