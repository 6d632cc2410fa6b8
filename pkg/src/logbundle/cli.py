"""Command-line entry point: ``logbundle <command> [options]``.

Every command prints one canonical JSON report on standard output.
Exit codes: 0 success, 2 validation failure, 3 budget exhausted,
64 usage error, 65 schema error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from dataclasses import dataclass
from typing import Sequence

from . import __version__
from .arrangement import (
    Arrangement,
    check_normal_crossings,
    parse_arrangement,
    random_arrangement,
    require_normal_crossings,
)
from .cubicrec import build_system_H, hermite_verify, reconstruct_all
from .errors import (
    ComputationBudgetExceeded,
    FamilyMismatch,
    LogBundleError,
    NonRealField,
    ParseError,
    SchemaError,
    UsageError,
)
from .exactalg.field import field_from_descriptor
from .logpres import c1_from_dual_side, chern_and_classify, log_resolution, rank_of_omega, reduce_presentation
from .modres.linalg import inverse, rank
from .planegeom import (
    line_coefficients,
    line_parametrization,
    normalize_projective,
    pair_invariant,
    pi2_from_presentation,
    pi2_invariant,
    pole,
    projectively_equal,
)
from .svg import DEFAULT_WINDOW, emit_svg
from .instability import (
    CHARTS,
    brute_force_oracle,
    is_unstable,
    porteous_count,
    porteous_series,
    restriction_matrix,
    unstable_conics_pipeline,
    unstable_lines,
)
from .instability.lines import DEFAULT_TOL
from .instability.oracle import DEFAULT_MAX_CANDIDATES

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_BUDGET = 3
EXIT_USAGE = 64
EXIT_SCHEMA = 65

COMMANDS = ("validate", "resolve", "chern", "classify", "pole", "pair", "cubic", "unstable-test",
            "unstable-lines", "porteous", "oracle", "reduce", "plot", "unstable-conics")
NO_INPUT = {"porteous"}

ENV_DEFAULTS = {
    "tol": ("LOGBUNDLE_TOL", float, DEFAULT_TOL),
    "budget_spairs": ("LOGBUNDLE_BUDGET_SPAIRS", int, None),
    "oracle_max_candidates": ("LOGBUNDLE_ORACLE_MAX_CANDIDATES", int, DEFAULT_MAX_CANDIDATES),
}


@dataclass
class CommandReport:
    command: str
    input_digest: str | None
    payload: dict
    config: dict
    timing: float = 0.0
    status: str = "ok"
    error: dict | None = None
    include_timing: bool = True

    def to_dict(self) -> dict:
        out = {
            "command": self.command,
            "input_digest": self.input_digest,
            "config": self.config,
            "result": self.payload,
            "status": self.status,
        }
        if self.error is not None:
            out["error"] = self.error
        if self.include_timing:
            out["timing_s"] = f"{self.timing:.3f}"
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False)

    def payload_json(self) -> str:
        return json.dumps(self.payload, sort_keys=True, ensure_ascii=False)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-i", "--input", metavar="FILE", help="arrangement JSON document")
    common.add_argument("--field", help="override the document field, e.g. Q or F_101")
    common.add_argument("--tol", type=float, help="numeric tolerance")
    common.add_argument("--budget-spairs", type=int, help="S-pair cap for Groebner computations")
    common.add_argument("--chart", choices=("0", "1", "2", "all"), default="all")
    common.add_argument("--setting", choices=("conics", "lines"), default="lines")
    common.add_argument("--svg", metavar="FILE", help="also write an SVG figure")
    common.add_argument("--seed", type=int, help="seed for random arrangements")
    common.add_argument("--oracle-max-candidates", type=int)
    common.add_argument("--no-timing", action="store_true", help="omit wall-clock timing from the report")

    parser = _Parser(prog="logbundle", description="Logarithmic bundles of plane line/conic arrangements.")
    parser.add_argument("--version", action="version", version=f"logbundle {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    sub.add_parser("validate", parents=[common], help="parse, check normal crossings, re-serialize")
    p = sub.add_parser("resolve", parents=[common], help="minimal free resolution of the log bundle")
    p.add_argument("--method", choices=("explicit", "gauss"), default="explicit")
    sub.add_parser("chern", parents=[common], help="Chern data from the resolution")
    sub.add_parser("classify", parents=[common], help="family and moduli label")
    sub.add_parser("pole", parents=[common], help="pole of the line for a line+conic arrangement")
    sub.add_parser("pair", parents=[common], help="jumping line and pair for 2 lines + conic")
    sub.add_parser("cubic", parents=[common], help="cubic reconstruction for 3 lines + conic")
    p = sub.add_parser("unstable-test", parents=[common], help="test curves for instability")
    p.add_argument("--curve", action="append", default=[], help="test curve as a polynomial in x0, x1, x2")
    sub.add_parser("unstable-lines", parents=[common], help="all unstable lines")
    sub.add_parser("porteous", parents=[common], help="expected number of unstable lines or conics")
    p = sub.add_parser("oracle", parents=[common], help="brute-force search over F_p-rational curves")
    p.add_argument("--candidates", choices=("lines", "conics"), default="lines")
    p = sub.add_parser("reduce", parents=[common], help="drop one component from the presentation")
    p.add_argument("--drop", type=int, help="component index (default: last)")
    p = sub.add_parser("plot", parents=[common], help="SVG picture of a real arrangement")
    p.add_argument("--unstable-lines", dest="with_unstable", action="store_true",
                   help="overlay the real unstable lines")
    p.add_argument("--window", type=float, nargs=4, metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    p = sub.add_parser("unstable-conics", parents=[common], help="dimension and degree of the unstable-conic locus")
    p.add_argument("--method", choices=("gb", "hilbert"), default="gb")
    return parser


def _config(args) -> dict:
    cfg = {}
    for key, (env, conv, default) in ENV_DEFAULTS.items():
        val = getattr(args, key, None)
        if val is None and env in os.environ:
            try:
                val = conv(os.environ[env])
            except ValueError as exc:
                raise UsageError(f"bad value for {env}: {exc}") from None
        cfg[key] = default if val is None else val
    if cfg["tol"] <= 0:
        raise UsageError("--tol must be positive")
    cfg["chart"] = args.chart
    cfg["setting"] = args.setting
    cfg["field"] = args.field
    cfg["seed"] = args.seed
    for extra in ("method", "drop", "candidates", "curve", "window", "with_unstable"):
        if hasattr(args, extra):
            cfg[extra] = getattr(args, extra)
    return cfg


def _canonical_config(cfg: dict) -> dict:
    out = {}
    for k, v in cfg.items():
        if isinstance(v, float):
            v = f"{v:g}"
        elif isinstance(v, (list, tuple)) and v and isinstance(v[0], float):
            v = [f"{x:g}" for x in v]
        out[k] = v
    return out


def _load(args, cfg) -> Arrangement:
    if not args.input:
        raise UsageError(f"{args.command} needs -i <file>")
    try:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None
    if cfg["field"] is not None:
        if not isinstance(doc, dict):
            raise SchemaError("document must be an object")
        try:
            doc["field"] = field_from_descriptor(cfg["field"]).descriptor()
        except (ParseError, ValueError) as exc:
            raise UsageError(f"bad --field: {exc}") from None
    return parse_arrangement(doc)


def _digest(arr: Arrangement | None) -> str | None:
    if arr is None:
        return None
    return hashlib.sha256(arr.to_json().encode("utf-8")).hexdigest()


def _lines_conics(arr: Arrangement, family: str):
    if arr.family() != family:
        raise FamilyMismatch(f"{family} arrangement expected, got {arr.family()}")
    lines = [f for f in arr.components if f.degree() == 1]
    conics = [f for f in arr.components if f.degree() == 2]
    return lines, conics


def _strs(field, vec) -> list[str]:
    return [field.to_str(v) for v in vec]


def _require_real(arr: Arrangement):
    if arr.field.characteristic:
        raise NonRealField("only arrangements over Q can be plotted")


def _write_svg(path: str, text: str) -> dict:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    return {"path": path, "sha256": hashlib.sha256(text.encode("utf-8")).hexdigest()}


# -- commands ---------------------------------------------------------------


def cmd_validate(arr, cfg, args):
    report = check_normal_crossings(arr)
    payload = {
        "arrangement": arr.to_document(),
        "family": arr.family(),
        "degrees": list(arr.degrees),
        "normal_crossings": report.to_json(),
    }
    return payload, (EXIT_OK if report.ok else EXIT_VALIDATION)


def cmd_resolve(arr, cfg, args):
    pres = log_resolution(arr, method=cfg["method"], budget=cfg["budget_spairs"])
    out = pres.to_json()
    out["betti"] = pres.betti_shape()
    out["shape"] = pres.omega_resolution.shape_string()
    return out, EXIT_OK


def cmd_chern(arr, cfg, args):
    pres = log_resolution(arr)
    out = chern_and_classify(pres).to_json()
    out["rank"] = rank_of_omega(pres)
    out["c1_dual_side"] = c1_from_dual_side(pres)
    return out, EXIT_OK


def cmd_classify(arr, cfg, args):
    pres = log_resolution(arr)
    ch = chern_and_classify(pres)
    return {"family": arr.family(), "label": ch.label, "normalized": [ch.normalized_c1, ch.normalized_c2],
            "shape": pres.omega_resolution.shape_string()}, EXIT_OK


def _pole_data(arr):
    (L,), (C,) = _lines_conics(arr, "1L+1C")
    field = arr.field
    P = normalize_projective(field, pole(L, C))
    pres = log_resolution(arr)
    data = pi2_from_presentation(pres)
    P2 = normalize_projective(field, pi2_invariant(data))
    return P, P2, projectively_equal(field, P, P2)


def cmd_pole(arr, cfg, args):
    P, P2, same = _pole_data(arr)
    field = arr.field
    out = {"pole": _strs(field, P), "pi2_point": _strs(field, P2), "consistent": same}
    if args.svg:
        out["svg"] = _write_svg(args.svg, emit_svg(arr, {"points": [P]}))
    return out, EXIT_OK


def _pair_points(field, inv) -> list[tuple]:
    """Real points cut out on the jumping line by the binary form."""
    a, b, c = (float(inv.binary_form.coefficient(e)) for e in ((2, 0), (1, 1), (0, 2)))
    B0, B1 = line_parametrization(field, inv.jumping_line)
    roots = []
    if a:
        disc = b * b - 4 * a * c
        if disc < 0:
            return []
        r = disc ** 0.5
        roots = [((-b - r) / (2 * a), 1.0), ((-b + r) / (2 * a), 1.0)]
    else:
        roots = [(1.0, 0.0), (-c, b)]
    return [tuple(s * float(u) + t * float(v) for u, v in zip(B0, B1)) for s, t in roots]


def cmd_pair(arr, cfg, args):
    (L1, L2), (C,) = _lines_conics(arr, "2L+1C")
    inv = pair_invariant(L1, L2, C)
    out = inv.to_json()
    out["discriminant"] = arr.field.to_str(inv.discriminant())
    if args.svg:
        _require_real(arr)
        extras = {"lines": [inv.jumping_line], "points": _pair_points(arr.field, inv)}
        out["svg"] = _write_svg(args.svg, emit_svg(arr, extras))
    return out, EXIT_OK


def cmd_cubic(arr, cfg, args):
    lines, (C,) = _lines_conics(arr, "3L+1C")
    require_normal_crossings(arr)
    field = arr.field
    T = [[field.convert(v) for v in line_coefficients(L)] for L in lines]
    f4 = C.linear_substitution(inverse(field, T))
    H = build_system_H(f4)
    recs = reconstruct_all(f4)
    items = []
    for r in recs:
        item = r.to_json()
        item["residuals_zero"] = all(p.is_zero() for p in r.residuals())
        h = hermite_verify(r.g, f4)
        item["hermite"] = {"in_span": h.in_span, "smooth": h.smooth}
        items.append(item)
    return {
        "coordinate_lines": [_strs(field, row) for row in T],
        "f4": str(f4),
        "rank_H": rank(field, H),
        "kernel_dimension": len(recs),
        "reconstructions": items,
    }, EXIT_OK


def cmd_unstable_test(arr, cfg, args):
    pres = log_resolution(arr)
    ring = arr.ring
    curves = [ring.parse(t) for t in cfg["curve"]] if cfg["curve"] else list(arr.components)
    tests = []
    for g in curves:
        M = restriction_matrix(pres, g)
        tests.append({"curve": str(g), "shape": list(M.shape), "rank": M.rank(), "unstable": is_unstable(pres, g)})
    return {"tests": tests, "all_unstable": all(t["unstable"] for t in tests)}, EXIT_OK


def _charts(cfg) -> tuple:
    return CHARTS if cfg["chart"] == "all" else (int(cfg["chart"]),)


def cmd_unstable_lines(arr, cfg, args):
    report = unstable_lines(arr, tol=cfg["tol"], charts=_charts(cfg), budget=cfg["budget_spairs"])
    out = report.to_json()
    if args.svg:
        extras = {"lines": [s.line for s in report.real_lines()]}
        out["svg"] = _write_svg(args.svg, emit_svg(arr, extras))
    return out, EXIT_OK


def cmd_porteous(arr, cfg, args):
    s = cfg["setting"]
    series = porteous_series(s)
    return {"setting": s, "count": porteous_count(s), "series": list(series.coeffs)}, EXIT_OK


def cmd_oracle(arr, cfg, args):
    if arr is None:
        field = field_from_descriptor(cfg["field"] or "F_7")
        rng = random.Random(cfg["seed"] if cfg["seed"] is not None else 0)
        arr = random_arrangement(field, [2, 2, 2], rng)
    found = brute_force_oracle(arr, candidates=cfg["candidates"], max_candidates=cfg["oracle_max_candidates"])
    field = arr.field
    out = {"arrangement": arr.to_document(), "candidates": cfg["candidates"]}
    if cfg["candidates"] == "lines":
        out["unstable"] = [_strs(field, L) for L in found]
        sym = unstable_lines(arr, strict=False, budget=cfg["budget_spairs"])
        out["symbolic"] = [_strs(field, L) for L in sym.rational_lines]
        out["agree"] = sorted(found) == sorted(sym.rational_lines)
    else:
        out["unstable"] = [str(g) for g in found]
    out["count"] = len(found)
    return out, EXIT_OK


def _summary(pres) -> dict:
    ch = chern_and_classify(pres)
    return {"betti": pres.betti_shape(), "shape": pres.omega_resolution.shape_string(), "chern": ch.to_json()}


def cmd_reduce(arr, cfg, args):
    pres = log_resolution(arr)
    drop = len(arr) - 1 if cfg["drop"] is None else cfg["drop"]
    red = reduce_presentation(pres, drop)
    direct = log_resolution(red.arr)
    a, b = _summary(red), _summary(direct)
    return {"dropped": drop, "reduced": a, "direct": b, "agree": a == b}, EXIT_OK


def cmd_plot(arr, cfg, args):
    if not args.svg:
        raise UsageError("plot needs --svg <file>")
    window = tuple(cfg["window"]) if cfg["window"] else DEFAULT_WINDOW
    extras: dict = {}
    fam = arr.family()
    _require_real(arr)
    if fam == "1L+1C":
        P, _, _ = _pole_data(arr)
        extras["points"] = [P]
    elif fam == "2L+1C":
        (L1, L2), (C,) = _lines_conics(arr, fam)
        inv = pair_invariant(L1, L2, C)
        extras = {"lines": [inv.jumping_line], "points": _pair_points(arr.field, inv)}
    if cfg["with_unstable"]:
        report = unstable_lines(arr, tol=cfg["tol"], charts=_charts(cfg), budget=cfg["budget_spairs"])
        extras.setdefault("lines", [])
        extras["lines"] = list(extras["lines"]) + [s.line for s in report.real_lines()]
    text = emit_svg(arr, extras, window=window)
    return {"family": fam, "extra_lines": len(extras.get("lines", ())),
            "extra_points": len(extras.get("points", ())), "svg": _write_svg(args.svg, text)}, EXIT_OK


def cmd_unstable_conics(arr, cfg, args):
    budget = cfg["budget_spairs"] if cfg["budget_spairs"] is not None else 200_000
    locus = unstable_conics_pipeline(arr, method=cfg["method"], budget=budget)
    return locus.to_json(), EXIT_OK


HANDLERS = {
    "validate": cmd_validate,
    "resolve": cmd_resolve,
    "chern": cmd_chern,
    "classify": cmd_classify,
    "pole": cmd_pole,
    "pair": cmd_pair,
    "cubic": cmd_cubic,
    "unstable-test": cmd_unstable_test,
    "unstable-lines": cmd_unstable_lines,
    "porteous": cmd_porteous,
    "oracle": cmd_oracle,
    "reduce": cmd_reduce,
    "plot": cmd_plot,
    "unstable-conics": cmd_unstable_conics,
}


def _error(exc: BaseException) -> dict:
    out = {"type": type(exc).__name__, "message": str(exc)}
    report = getattr(exc, "report", None)
    if report is not None:
        out["report"] = report.to_json()
    return out


def run_command(argv: Sequence[str]) -> tuple[CommandReport, int]:
    """Parse ``argv``, run the command, return the report and exit code."""
    argv = list(argv)
    name = next((a for a in argv if a in HANDLERS), argv[0] if argv else "")
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
    except UsageError as exc:
        return CommandReport(name, None, {}, {}, status="usage error", error=_error(exc)), EXIT_USAGE
    report = CommandReport(args.command, None, {}, _canonical_config(cfg), include_timing=not args.no_timing)
    start = time.perf_counter()
    code = EXIT_OK
    try:
        arr = None
        if args.command not in NO_INPUT and (args.input or args.command != "oracle"):
            arr = _load(args, cfg)
        report.input_digest = _digest(arr)
        payload, code = HANDLERS[args.command](arr, cfg, args)
        report.payload = payload
        if code == EXIT_VALIDATION:
            report.status = "validation failed"
    except UsageError as exc:
        report.status, report.error, code = "usage error", _error(exc), EXIT_USAGE
    except SchemaError as exc:
        report.status, report.error, code = "schema error", _error(exc), EXIT_SCHEMA
    except ComputationBudgetExceeded as exc:
        report.status, report.error, code = "budget exhausted", _error(exc), EXIT_BUDGET
    except LogBundleError as exc:
        report.status, report.error, code = "validation failed", _error(exc), EXIT_VALIDATION
    report.timing = time.perf_counter() - start
    return report, code


def main(argv: Sequence[str] | None = None) -> int:
    report, code = run_command(sys.argv[1:] if argv is None else argv)
    if code == EXIT_USAGE and report.error:
        print(f"logbundle: {report.error['message']}", file=sys.stderr)
    print(report.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
