"""Command-line interface: ``pgst classify|curve|figure1|certify|control``.

Exit status: 0 success, 2 usage, 3 domain, 4 I/O, 5 non-convergence.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass
import io
import json
import logging
import math
from pathlib import Path
import sys
from typing import Callable

import numpy as np

from .classifier import classify
from .control import cospectral_diagonal, internal_transfer_implication, strongly_cospectral, walk_matrix
from .errors import ConvergenceError, DomainError, PGSTError
from .evolution import fidelity_many
from .relations import bound_k, bound_report, dependence_witness
from .search import default_grid_step, earliest_time, figure1_table
from .spectrum import path_spectrum
from .svg import line_chart

log = logging.getLogger("pgst")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4
EXIT_NONCONVERGENCE = 5

CERTIFY_T_START = 16.0
CERTIFY_T_LIMIT = 1e6


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    epsilon: float = 0.01
    t_max: float | None = None
    grid_step: float | None = None
    output_format: str | None = None
    output_path: Path | None = None
    precision_digits: int = 12

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise UsageError(f"--epsilon must lie in (0, 1), got {self.epsilon}")
        if self.t_max is not None and not self.t_max > 0:
            raise UsageError(f"--t-max must be positive, got {self.t_max}")
        if self.grid_step is not None and not self.grid_step > 0:
            raise UsageError(f"--grid-step must be positive, got {self.grid_step}")
        if not 6 <= self.precision_digits <= 17:
            raise UsageError(f"--digits must lie in [6, 17], got {self.precision_digits}")


def _num(x: float, digits: int) -> str:
    return f"{x:.{digits}g}"


def _csv(header: list[str], rows, digits: int) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(
            "" if v is None else str(v) if isinstance(v, (int, np.integer)) else _num(v, digits)
            for v in row) + "\n")
    return buf.getvalue()


def _json_lines(records) -> str:
    return "".join(json.dumps(r, sort_keys=False) + "\n" for r in records)


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output_path is None:
        sys.stdout.write(text)
        return
    cfg.output_path.write_text(text, encoding="utf-8", newline="\n")


def parse_range(text: str) -> list[int]:
    """'8' -> [8]; '2..10' -> [2, ..., 10] (inclusive)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"malformed n or range: {text!r} (expected N or A..B)") from None


def parse_subset(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"malformed vertex list: {text!r}") from None


def cmd_classify(args, cfg: RunConfig) -> int:
    ns = parse_range(args.n)
    if min(ns) < 2:
        raise UsageError("chain length must be >= 2")
    _emit(_json_lines(classify(n).to_dict() for n in ns), cfg)
    return EXIT_OK


def fidelity_curve(n: int, t_max: float, grid_step: float):
    spec = path_spectrum(n)
    count = int(math.floor(t_max / grid_step + 1e-9)) + 1
    t = np.arange(count) * grid_step
    return t, fidelity_many(spec, t)


def cmd_curve(args, cfg: RunConfig) -> int:
    if args.n < 2:
        raise UsageError("chain length must be >= 2")
    if cfg.t_max is None:
        raise UsageError("curve needs --t-max")
    step = cfg.grid_step or float(default_grid_step(path_spectrum(args.n)))
    t, f = fidelity_curve(args.n, cfg.t_max, step)
    fmt = cfg.output_format or "csv"
    if fmt == "csv":
        text = _csv(["t", "fidelity"], zip(t.tolist(), f.tolist()), cfg.precision_digits)
    elif fmt == "json":
        text = json.dumps({"n": args.n, "t": t.tolist(), "fidelity": f.tolist()}) + "\n"
    else:
        text = line_chart(t.tolist(), f.tolist(), title=f"|U(t)_1,n| for n={args.n}",
                          xlabel="t", ylabel="fidelity", integer_x=False)
    _emit(text, cfg)
    if args.plot:
        from .plotting import plot_fidelity_curve
        plot_fidelity_curve(t, f, args.n, args.plot, threshold=1 - cfg.epsilon)
    return EXIT_OK


def cmd_figure1(args, cfg: RunConfig) -> int:
    rows = figure1_table(cfg.epsilon)
    ok = [r for r in rows if r.converged]
    fmt = cfg.output_format or "csv"
    if fmt == "csv":
        text = _csv(["n", "t_star", "log_t_star"],
                    ((r.n, r.t_star, r.log_t_star) for r in rows), cfg.precision_digits)
    elif fmt == "json":
        text = _json_lines({"n": r.n, "t_star": r.t_star, "log_t_star": r.log_t_star,
                            "converged": r.converged} for r in rows)
    else:
        text = _figure1_svg(ok, cfg.epsilon)
    _emit(text, cfg)
    if args.svg:
        Path(args.svg).write_text(_figure1_svg(ok, cfg.epsilon), encoding="utf-8", newline="\n")
    if args.plot:
        from .plotting import plot_earliest_times
        plot_earliest_times([r.n for r in ok], [r.log_t_star for r in ok], args.plot, cfg.epsilon)
    for r in rows:
        if not r.converged:
            log.error("n=%d: no crossing of %g by t=%g", r.n, 1 - cfg.epsilon, r.t_max)
    return EXIT_OK


def _figure1_svg(rows, epsilon: float) -> str:
    return line_chart([r.n for r in rows], [r.log_t_star for r in rows],
                      title=f"log of earliest t with fidelity > {1 - epsilon:g}",
                      xlabel="n", ylabel="log t*")


def certify_record(n: int, epsilon: float, t_max: float | None = None) -> dict:
    c = classify(n)
    record = {"n": n, "pgst": c.pgst, "theta_degree": c.theta_degree}
    if c.pgst:
        record["form"] = c.describe()
        spec = path_spectrum(n)
        horizon = t_max or CERTIFY_T_START
        while True:
            result = earliest_time(spec, epsilon, horizon)
            if result.converged or t_max is not None or horizon >= CERTIFY_T_LIMIT:
                break
            horizon *= 2.0
        record["transfer"] = result.to_dict()
    else:
        record["witness"] = dependence_witness(n).to_dict()
        record["bound"] = bound_report(n).to_dict() if bound_k(n) is not None else None
    return record


def cmd_certify(args, cfg: RunConfig) -> int:
    if args.n < 2:
        raise UsageError("chain length must be >= 2")
    record = certify_record(args.n, cfg.epsilon, cfg.t_max)
    _emit(json.dumps(record) + "\n", cfg)
    if record["pgst"] and not record["transfer"]["converged"]:
        return EXIT_NONCONVERGENCE
    return EXIT_OK


def control_record(n: int, subset: list[int]) -> dict:
    w = walk_matrix(n, subset)
    record = {
        "n": n,
        "subset": list(w.subset),
        "controllable": w.controllable,
        "determinant": str(w.determinant),
        "cospectral_pair": None,
    }
    if len(w.subset) == 1:
        k = w.subset[0]
        mirror = n + 1 - k
        record["cospectral_pair"] = {
            "u": k,
            "v": mirror,
            "cospectral": cospectral_diagonal(n, k, mirror),
            "strongly_cospectral": strongly_cospectral(n, k, mirror),
        }
        record["internal_transfer"] = internal_transfer_implication(n, k).to_dict()
    return record


def cmd_control(args, cfg: RunConfig) -> int:
    subset = parse_subset(args.subset)
    if args.n < 2:
        raise UsageError("chain length must be >= 2")
    if not subset or any(not 1 <= v <= args.n for v in subset):
        raise UsageError(f"vertices must lie in 1..{args.n}")
    _emit(json.dumps(control_record(args.n, subset)) + "\n", cfg)
    return EXIT_OK


def _global_flags(parser: argparse.ArgumentParser) -> None:
    s = argparse.SUPPRESS
    parser.add_argument("--epsilon", type=float, default=s, help="fidelity tolerance (default 0.01)")
    parser.add_argument("--t-max", type=float, default=s, help="time horizon")
    parser.add_argument("--grid-step", type=float, default=s, help="scan step")
    parser.add_argument("--format", choices=("csv", "json", "svg"), default=s, dest="format")
    parser.add_argument("--out", type=Path, default=s, help="write primary output here")
    parser.add_argument("--digits", type=int, default=s, help="significant digits in CSV (6-17)")
    parser.add_argument("-v", "--verbose", action="store_true", default=s)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgst", description="Pretty good state transfer on uniform XY chains.")
    _global_flags(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="PGST verdict for n or an inclusive range A..B")
    p.add_argument("n")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("curve", help="fidelity |U(t)_{1,n}| on a uniform grid (CSV)")
    p.add_argument("n", type=int)
    p.add_argument("--plot", type=Path, help="also render a matplotlib figure here")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("figure1", help="earliest times with fidelity > 1 - epsilon, n = 2..7")
    p.add_argument("--svg", type=Path, help="also write a standalone SVG chart here")
    p.add_argument("--plot", type=Path, help="also render a matplotlib figure here")
    p.set_defaults(func=cmd_figure1)

    p = sub.add_parser("certify", help="witness, bound, or transfer time for n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("control", help="walk-matrix controllability of a vertex set")
    p.add_argument("n", type=int)
    p.add_argument("subset", help="vertex or comma-separated vertices")
    p.set_defaults(func=cmd_control)

    for action in sub.choices.values():
        _global_flags(action)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    get = lambda name, default=None: getattr(args, name, default)  # noqa: E731
    logging.basicConfig(level=logging.INFO if get("verbose") else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        cfg = RunConfig(
            epsilon=get("epsilon", 0.01),
            t_max=get("t_max"),
            grid_step=get("grid_step"),
            output_format=get("format"),
            output_path=get("out"),
            precision_digits=get("digits", 12),
        )
        handler: Callable[[argparse.Namespace, RunConfig], int] = args.func
        return handler(args, cfg)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"pgst: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"pgst: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    except (DomainError, PGSTError) as exc:
        print(f"pgst: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"pgst: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
