"""``krawx`` command line.

::

    krawx eval|table|validate|oracle [suite] [--N <int>] [--N-max <int>]
          [--indices r,s,i,k] [--euler a,b,c] [--degrees] [--route <name>]
          [--tol <float>] [--format csv|json] [--seed <int>] [--serial]
          [--output <path>]

Exit codes: 0 success or suite passed, 1 usage error or suite failed,
2 singular parameters, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

from . import suites
from .bikraw import BiKrawArgs, SingularParameterError, all_indices
from .oscrep import matrix_element_oracle
from .polyfun import PreconditionError
from .rotations import EulerAngles

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_USAGE, EXIT_SINGULAR, EXIT_IO = 0, 1, 2, 3
COMMANDS = ("eval", "table", "validate", "oracle")
ROUTES = ("aomoto", "genfun", "interbasis", "quadrature", "matexp")
FORMATS = ("csv", "json")
CANONICAL_ANGLES = EulerAngles(0.3, 0.7, 0.2)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    N: int = 0
    indices: tuple[int, int, int, int] | None = None
    angles: EulerAngles = CANONICAL_ANGLES
    route: str = "aomoto"
    tolerance: float | None = None
    output_format: str = "csv"
    seed: int = 0
    suite: str | None = None
    n_max: int | None = None
    serial: bool = False
    output: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.N < 0 or (self.n_max is not None and self.n_max < 0):
            raise UsageError("N must be non-negative")
        if self.tolerance is not None and not self.tolerance > 0:
            raise UsageError("tolerance must be positive")
        if self.route not in ROUTES:
            raise UsageError(f"unknown route {self.route!r}; choose from {', '.join(ROUTES)}")
        if self.output_format not in FORMATS:
            raise UsageError(f"unknown format {self.output_format!r}")
        if self.seed < 0:
            raise UsageError("seed must be non-negative")
        if self.indices is not None:
            r, s, i, k = self.indices
            if min(self.indices) < 0 or r + s > self.N or i + k > self.N:
                raise UsageError(f"indices {self.indices} out of range for N={self.N}")


@dataclass
class ValidationReport:
    suite: str
    cases_run: int
    max_defect: float
    tolerance: float
    passed: bool
    records: list = field(default_factory=list)

    def to_json(self) -> dict:
        body = asdict(self)
        body["pass"] = body.pop("passed")
        return {"schema_version": SCHEMA_VERSION, **body}


def fmt(x: float) -> str:
    """17 significant digits, enough to round-trip a double."""
    return format(x, ".17g")


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output is None:
        sys.stdout.write(text)
        return
    with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=True) + "\n"


def _value(cfg: RunConfig, indices) -> float:
    r, s, i, k = indices
    return suites.route_value(cfg.route, BiKrawArgs(r, s, i, k, cfg.N), cfg.angles)


def run_eval(cfg: RunConfig) -> int:
    if cfg.indices is None:
        raise UsageError("eval needs --indices r,s,i,k")
    value = _value(cfg, cfg.indices)
    r, s, i, k = cfg.indices
    echo = {"route": cfg.route, "N": cfg.N, "r": r, "s": s, "i": i, "k": k, "euler": list(cfg.angles)}
    if cfg.output_format == "json":
        _emit(_json({"schema_version": SCHEMA_VERSION, **echo, "value": value}), cfg)
    else:
        a, b, c = cfg.angles
        row = [cfg.route, cfg.N, r, s, i, k, fmt(a), fmt(b), fmt(c), fmt(value)]
        _emit(_csv(["route", "N", "r", "s", "i", "k", "alpha", "beta", "gamma", "value"], [row]), cfg)
    return EXIT_OK


def run_oracle(cfg: RunConfig) -> int:
    """Raw matrix element ``<i,k,l| U(R) |r,s,t>`` from the representation."""
    if cfg.indices is None:
        raise UsageError("oracle needs --indices r,s,i,k")
    r, s, i, k = cfg.indices
    N = cfg.N
    z = matrix_element_oracle(N, cfg.angles, (i, k, N - i - k), (r, s, N - r - s))
    if cfg.output_format == "json":
        _emit(_json({"schema_version": SCHEMA_VERSION, "N": N, "r": r, "s": s, "i": i, "k": k,
                     "euler": list(cfg.angles), "real": z.real, "imag": z.imag}), cfg)
    else:
        _emit(_csv(["N", "r", "s", "i", "k", "real", "imag"], [[N, r, s, i, k, fmt(z.real), fmt(z.imag)]]), cfg)
    return EXIT_OK


def run_table(cfg: RunConfig) -> int:
    idx = list(all_indices(cfg.N))
    if cfg.serial:
        values = [_value(cfg, t) for t in idx]
    else:
        # map preserves input order, so the output is identical either way
        with ThreadPoolExecutor() as pool:
            values = list(pool.map(lambda t: _value(cfg, t), idx))
    if cfg.output_format == "json":
        rows = [{"r": r, "s": s, "i": i, "k": k, "value": v} for (r, s, i, k), v in zip(idx, values)]
        _emit(_json({"schema_version": SCHEMA_VERSION, "route": cfg.route, "N": cfg.N,
                     "euler": list(cfg.angles), "rows": rows}), cfg)
    else:
        _emit(_csv(["r", "s", "i", "k", "value"], [[*t, fmt(v)] for t, v in zip(idx, values)]), cfg)
    return EXIT_OK


def run_validate(cfg: RunConfig) -> ValidationReport:
    if cfg.suite not in suites.SUITES:
        raise UsageError(f"unknown suite {cfg.suite!r}; choose from {', '.join(suites.SUITES)}")
    spec = suites.SUITES[cfg.suite]
    n_max = spec.n_max if cfg.n_max is None else cfg.n_max
    tol = spec.tolerance if cfg.tolerance is None else cfg.tolerance
    records = spec.run(n_max, cfg.seed)
    worst = max((rec.defect for rec in records), default=0.0)
    return ValidationReport(
        suite=cfg.suite,
        cases_run=len(records),
        max_defect=worst,
        tolerance=tol,
        passed=bool(worst <= tol),
        records=[asdict(rec) for rec in records],
    )


def _report_text(report: ValidationReport, output_format: str) -> str:
    if output_format == "json":
        return _json(report.to_json())
    rows = [[json.dumps(r["labels"], sort_keys=True), fmt(r["value"]), fmt(r["defect"])] for r in report.records]
    summary = f"# suite={report.suite} cases={report.cases_run} max_defect={fmt(report.max_defect)} " \
              f"tol={fmt(report.tolerance)} pass={str(report.passed).lower()}\n"
    return summary + _csv(["labels", "value", "defect"], rows)


def _ints(text: str, count: int, what: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"{what} must be {count} comma-separated integers, got {text!r}") from None
    if len(vals) != count:
        raise UsageError(f"{what} must be {count} comma-separated integers, got {text!r}")
    return vals


def _angles(text: str, degrees: bool) -> EulerAngles:
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"--euler must be a,b,c, got {text!r}") from None
    if len(vals) != 3 or not all(math.isfinite(v) for v in vals):
        raise UsageError(f"--euler must be three finite numbers, got {text!r}")
    if degrees:
        vals = [math.radians(v) for v in vals]
    return EulerAngles(*vals)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="krawx", description="Bivariate Krawtchouk polynomials and oscillator overlaps.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("suite", nargs="?", help="validation suite: " + ", ".join(suites.SUITES))
    p.add_argument("--N", type=int, default=0, dest="N")
    p.add_argument("--N-max", type=int, default=None, dest="n_max")
    p.add_argument("--indices")
    p.add_argument("--euler")
    p.add_argument("--degrees", action="store_true", help="read --euler in degrees")
    p.add_argument("--route", default="aomoto", choices=ROUTES)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--format", default="csv", choices=FORMATS, dest="output_format")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--serial", action="store_true", help="single-threaded evaluation")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    return p


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    if ns.suite is not None and ns.command != "validate":
        raise UsageError(f"unexpected argument {ns.suite!r}")
    return RunConfig(
        command=ns.command,
        N=ns.N,
        indices=_ints(ns.indices, 4, "--indices") if ns.indices else None,
        angles=_angles(ns.euler, ns.degrees) if ns.euler else CANONICAL_ANGLES,
        route=ns.route,
        tolerance=ns.tol,
        output_format=ns.output_format,
        seed=ns.seed,
        suite=ns.suite,
        n_max=ns.n_max,
        serial=ns.serial,
        output=ns.output,
    )


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        if cfg.command == "eval":
            return run_eval(cfg)
        if cfg.command == "oracle":
            return run_oracle(cfg)
        if cfg.command == "table":
            return run_table(cfg)
        report = run_validate(cfg)
        _emit(_report_text(report, cfg.output_format), cfg)
        return EXIT_OK if report.passed else EXIT_USAGE
    except UsageError as exc:
        print(f"krawx: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SingularParameterError as exc:
        print(f"krawx: singular parameters: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except PreconditionError as exc:
        print(f"krawx: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"krawx: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
