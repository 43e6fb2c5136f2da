"""Command-line front end.

Exit codes: 0 every check agrees, 2 a mathematical disagreement, 3 a
hypothesis violation, 4 a usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .exact_linalg import FieldSpec, field_from_char, is_prime
from .series import (
    CollapseRangeViolation,
    SeriesError,
    exterior_series,
    flag_series,
    hilbert_Rn,
    quotient_series,
    regrade,
    w_series,
)
from .truncated_ideal import (
    Case,
    HypothesisViolation,
    TruncatedIdeal,
    certify_generation,
    min_generators,
    prescribed_generators,
    socle,
    verify_theorem,
)

EXIT_OK, EXIT_DISAGREE, EXIT_HYPOTHESIS, EXIT_USAGE = 0, 2, 3, 4
GRADING_FACTOR = {"algebraic": 1, "complex": 2, "real": 1}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> list[int]:
    """``"3"``, ``"2..5"`` or ``"1,2,7"``."""
    out: list[int] = []
    try:
        for chunk in text.split(","):
            chunk = chunk.strip()
            if ".." in chunk:
                lo, hi = chunk.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise UsageError(f"empty range {chunk!r}")
                out.extend(range(lo, hi + 1))
            elif chunk:
                out.append(int(chunk))
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}") from exc
    if not out:
        raise UsageError(f"empty range {text!r}")
    return sorted(set(out))


def parse_char(text: str) -> list[int]:
    chars = parse_range(text)
    for p in chars:
        if p != 0 and not is_prime(p):
            raise UsageError(f"characteristic must be 0 or prime, got {p}")
    return chars


@dataclass
class RunConfig:
    command: str
    n: list[int]
    d: list[int]
    char: list[int]
    max_degree: int | None = None
    grading: str | None = None
    format: str = "text"
    case: str | None = None
    kind: str | None = None
    up_to: int | None = None
    timings: bool = False

    def single(self) -> tuple[int, int, FieldSpec]:
        if len(self.n) != 1 or len(self.d) != 1 or len(self.char) != 1:
            raise UsageError(f"{self.command} takes a single n, d and char")
        return self.n[0], self.d[0], field_from_char(self.char[0])


# ---------------------------------------------------------------------------
# reports


def _poly_terms(f) -> list[list]:
    return [[list(p.abbreviated()) or [0], str(c)] for p, c in
            sorted(f.terms.items(), key=lambda kv: (-kv[0].degree, tuple(-a for a in kv[0].parts)))]


def cmd_generators(cfg: RunConfig) -> tuple[dict, int]:
    n, d, F = cfg.single()
    factor = GRADING_FACTOR[cfg.grading or "algebraic"]
    t = TruncatedIdeal(n, d, F)
    label, gens = prescribed_generators(n, d, F)
    start = time.perf_counter()
    cert = certify_generation(gens, t, cfg.max_degree)
    mg = min_generators(t, cfg.max_degree)
    report = {
        "command": "generators",
        "params": {"n": n, "d": d, "char": F.characteristic, "grading": cfg.grading or "algebraic",
                   "max_degree": cert.verified_through_degree * factor},
        "verdict": cert.verdict,
        "tables": {
            "theorem": label,
            "generators": [{"orbit_sum": str(g), "degree": g.degree * factor} for g in gens],
            "dimensions": [{"degree": k * factor, "span": s, "ideal": i} for k, s, i in cert.table],
            "min_generators": {"total": mg.total,
                               "per_degree": [[k * factor, v] for k, v in sorted(mg.per_degree.items()) if v]},
        },
    }
    if cfg.timings:
        report["timings"] = {"seconds": round(time.perf_counter() - start, 4)}
    code = EXIT_DISAGREE if cert.failed_degree is not None else EXIT_OK
    return report, code


def cmd_socle(cfg: RunConfig) -> tuple[dict, int]:
    n, d, F = cfg.single()
    factor = GRADING_FACTOR[cfg.grading or "algebraic"]
    start = time.perf_counter()
    rep = socle(TruncatedIdeal(n, d, F))
    elements = []
    for k in rep.degrees():
        for f in rep.per_degree[k]:
            elements.append({"degree": k * factor, "element": str(f), "terms": _poly_terms(f)})
    report = {
        "command": "socle",
        "params": {"n": n, "d": d, "char": F.characteristic, "grading": cfg.grading or "algebraic"},
        "verdict": "complete_intersection" if rep.dimension == 1 else "not_complete_intersection",
        "tables": {"dimension": rep.dimension, "elements": elements},
    }
    if cfg.timings:
        report["timings"] = {"seconds": round(time.perf_counter() - start, 4)}
    return report, EXIT_OK


SERIES_KINDS = ("exterior", "flag", "w", "quotient", "hilbert")


def build_series(kind: str, n: int, d: int | None, grading: str | None, up_to: int | None):
    if kind in ("exterior", "w", "quotient") and d is None:
        raise UsageError(f"--kind {kind} needs --d")
    if kind in ("exterior", "w"):
        if grading not in (None, "complex"):
            raise UsageError(f"{kind} series exist in the complex grading only")
        s = exterior_series(n, d) if kind == "exterior" else w_series(n, d)
        return s, "complex"
    if kind == "flag":
        grading = grading or "complex"
        s = flag_series(n)
        return (s if grading == "complex" else regrade(s, 1, 2)), grading
    grading = grading or "algebraic"
    if kind == "quotient":
        s = quotient_series(n, d)
    else:
        s = hilbert_Rn(n, 20 if up_to is None else up_to)
    return regrade(s, GRADING_FACTOR[grading]), grading


def cmd_series(cfg: RunConfig) -> tuple[dict, int]:
    if len(cfg.n) != 1 or len(cfg.d) > 1:
        raise UsageError("series takes a single n and d")
    d = cfg.d[0] if cfg.d else None
    s, grading = build_series(cfg.kind, cfg.n[0], d, cfg.grading, cfg.up_to)
    report = {
        "command": "series",
        "params": {"kind": cfg.kind, "n": cfg.n[0], "d": d, "grading": grading},
        "verdict": "ok",
        "tables": {"series": str(s), "coefficients": s.to_list()},
    }
    return report, EXIT_OK


def _verify_point(args):
    case, n, d, char, max_degree = args
    start = time.perf_counter()
    try:
        v = verify_theorem(case, n, d, field_from_char(char), max_degree)
        row = v.as_dict()
    except HypothesisViolation as exc:
        row = {"case": case, "n": n, "d": d, "char": char, "verdict": "hypothesis_violation",
               "checks": {"message": str(exc)}}
    row["seconds"] = round(time.perf_counter() - start, 4)
    return row


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("TRUNSYM_THREADS", "1")))
    except ValueError:
        return 1


def cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.case is None:
        raise UsageError("verify needs --case")
    try:
        case = Case(cfg.case).value
    except ValueError as exc:
        raise UsageError(f"unknown case {cfg.case!r}") from exc
    points = [(case, n, d, p, cfg.max_degree) for n in cfg.n for d in cfg.d for p in cfg.char]
    start = time.perf_counter()
    workers = min(_workers(), len(points))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_verify_point, points))
    else:
        rows = [_verify_point(pt) for pt in points]
    rows.sort(key=lambda r: (r["n"], r["d"], r["char"]))
    counts: dict[str, int] = {}
    for r in rows:
        key = r["verdict"].split(" ")[0]
        counts[key] = counts.get(key, 0) + 1
    seconds = {f'{r["n"]},{r["d"]},{r["char"]}': r.pop("seconds") for r in rows}
    if counts.get("disagree"):
        code = EXIT_DISAGREE
    elif counts.get("hypothesis_violation"):
        code = EXIT_HYPOTHESIS
    else:
        code = EXIT_OK
    report = {
        "command": "verify",
        "params": {"case": case, "n": cfg.n, "d": cfg.d, "char": cfg.char, "max_degree": cfg.max_degree},
        "verdict": "agree" if code == EXIT_OK else ("disagree" if code == EXIT_DISAGREE else "hypothesis_violation"),
        "tables": {"points": rows, "summary": dict(sorted(counts.items()))},
    }
    if cfg.timings:
        report["timings"] = {"total_seconds": round(time.perf_counter() - start, 4), "points": seconds}
    return report, code


COMMANDS = {"generators": cmd_generators, "socle": cmd_socle, "series": cmd_series, "verify": cmd_verify}


# ---------------------------------------------------------------------------
# text rendering


def render_text(report: dict) -> str:
    cmd = report["command"]
    params = " ".join(f"{k}={v}" for k, v in report["params"].items() if v is not None)
    lines = [f"{cmd}: {params}"]
    tables = report["tables"]
    if cmd == "generators":
        lines.append(f"theorem: {tables['theorem']}")
        lines.append("generators: " + ", ".join(g["orbit_sum"] for g in tables["generators"]))
        lines.append("degree  span  ideal")
        for row in tables["dimensions"]:
            lines.append(f"{row['degree']:>6}  {row['span']:>4}  {row['ideal']:>5}")
        mg = tables["min_generators"]
        per = ", ".join(f"{k}:{v}" for k, v in mg["per_degree"])
        lines.append(f"min_generators: {mg['total']} ({per})")
        lines.append(f"verdict: {report['verdict']}")
    elif cmd == "socle":
        for e in tables["elements"]:
            lines.append(f"degree {e['degree']}: {e['element']}")
        lines.append(f"socle dimension: {tables['dimension']}")
        lines.append(f"verdict: {report['verdict']}")
    elif cmd == "series":
        lines.append(tables["series"])
    else:
        for r in tables["points"]:
            extra = ", ".join(f"{k}={v}" for k, v in r["checks"].items())
            lines.append(f"n={r['n']} d={r['d']} char={r['char']}: {r['verdict']}  [{extra}]")
        lines.append("summary: " + ", ".join(f"{k}={v}" for k, v in tables["summary"].items()))
    if "timings" in report:
        lines.append(f"timings: {json.dumps(report['timings'], sort_keys=True)}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="trunsym", description="Truncated symmetric polynomial computations")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    def common(p, d_required=True):
        p.add_argument("--n", required=True)
        p.add_argument("--d", required=d_required)
        p.add_argument("--char", default="0")
        p.add_argument("--grading", choices=sorted(GRADING_FACTOR))
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--timings", action="store_true", help="append wall-clock timings to the report")

    for name in ("generators", "socle"):
        p = sub.add_parser(name)
        common(p)
        if name == "generators":
            p.add_argument("--max-degree", type=int)
    p = sub.add_parser("series")
    common(p, d_required=False)
    p.add_argument("--kind", choices=SERIES_KINDS, required=True)
    p.add_argument("--up-to", type=int, help="truncation degree for --kind hilbert")
    p = sub.add_parser("verify")
    common(p)
    p.add_argument("--case", required=True, choices=[c.value for c in Case])
    p.add_argument("--max-degree", type=int)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help or an argparse usage error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        cfg = RunConfig(
            command=args.command,
            n=parse_range(args.n),
            d=parse_range(args.d) if args.d is not None else [],
            char=parse_char(args.char),
            max_degree=getattr(args, "max_degree", None),
            grading=args.grading,
            format=args.format,
            case=getattr(args, "case", None),
            kind=getattr(args, "kind", None),
            up_to=getattr(args, "up_to", None),
            timings=args.timings,
        )
        report, code = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"trunsym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HypothesisViolation, CollapseRangeViolation) as exc:
        print(f"trunsym: hypothesis violation: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except (SeriesError, ValueError) as exc:
        print(f"trunsym: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.format == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print(render_text(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
