"""Command-line driver: CSV/JSON I/O around the transform, inversion and
verification pipelines.

Exit codes: 0 success, 2 input/validation error, 3 domain/range error,
4 solver non-convergence.  All outputs are deterministic: identical inputs and
configuration produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .errors import ConvergenceError, DomainError, InvariantError
from .jost import jost_residual, solve_jost_ode, solve_jost_volterra
from .liouville import (
    MomentumProfile,
    PotentialProfile,
    compute_potential,
    forward_coordinate,
)
from .numerics import Grid1D, SampledFunction
from .recovery import admissible_x_interval, compute_H, recover_m
from .solitary import SolitaryWaveSpec, solitary_profile, traveling_wave_residual
from .spectrum import find_eigenvalues
from .solitary import solitary_potential_profile

__all__ = ["RunConfig", "main", "entrypoint"]

CONFIG_ENV_VAR = "CHSCATTER_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    """Grid bounds, tolerances and solver knobs for one CLI invocation.

    ``None`` bounds mean "derive from the data": the x-range of an inversion
    defaults to the admissible interval of H (with a margin), and the y-range
    of a forward transform defaults to the image of the x-domain.
    """

    xmin: float | None = None
    xmax: float | None = None
    dx: float = 1e-3
    ymin: float | None = None
    ymax: float | None = None
    dy: float = 1e-3
    decay_tol: float = 1e-10
    method: str = "ode"
    tol: float = 1e-12
    max_iter: int = 50
    spectrum_tol: float = 1e-9
    c: float | None = None
    y0: float = 0.0
    output: str | None = None

    def __post_init__(self):
        if self.dx <= 0.0 or self.dy <= 0.0:
            raise InvariantError("grid spacings must be positive")
        if self.xmin is not None and self.xmax is not None and self.xmin >= self.xmax:
            raise InvariantError(f"x-bounds must be ordered, got [{self.xmin}, {self.xmax}]")
        if self.ymin is not None and self.ymax is not None and self.ymin >= self.ymax:
            raise InvariantError(f"y-bounds must be ordered, got [{self.ymin}, {self.ymax}]")
        if self.decay_tol <= 0.0 or self.tol <= 0.0 or self.spectrum_tol <= 0.0:
            raise InvariantError("tolerances must be positive")
        if self.max_iter < 1:
            raise InvariantError("max-iter must be at least 1")
        if self.method not in ("ode", "volterra"):
            raise InvariantError(f"method must be 'ode' or 'volterra', got {self.method!r}")


def _parse_speed(text: str) -> float:
    """Parse a speed given as a decimal or a fraction like '8/3'."""
    if "/" in text:
        num, _, den = text.partition("/")
        try:
            return float(num) / float(den)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvariantError(f"cannot parse speed {text!r}: {exc}") from exc
    try:
        return float(text)
    except ValueError as exc:
        raise InvariantError(f"cannot parse speed {text!r}") from exc


def load_config(path: str | None) -> dict:
    """Read a JSON config file; fall back to $CHSCATTER_CONFIG when unset."""
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
        if path is None:
            return {}
    p = Path(path)
    if not p.is_file():
        raise InvariantError(f"config file not found: {path}")
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise InvariantError(f"{path}: invalid JSON config: {exc}") from exc
    if not isinstance(data, dict):
        raise InvariantError(f"{path}: config must be a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise InvariantError(f"{path}: unknown config keys {sorted(unknown)}")
    return data


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then config file, then explicit flags (flags win)."""
    cfg = RunConfig(**load_config(args.config))
    overrides = {}
    for f in fields(RunConfig):
        flag = getattr(args, f.name, None)
        if flag is not None:
            overrides[f.name] = flag
    return replace(cfg, **overrides) if overrides else cfg


def read_profile_csv(path: str) -> SampledFunction:
    """Read a `coord,value` CSV into a SampledFunction on a uniform grid."""
    p = Path(path)
    if not p.is_file():
        raise InvariantError(f"input file not found: {path}")
    lines = p.read_text().splitlines()
    if not lines or lines[0].strip() != "coord,value":
        raise InvariantError(f"{path}:1: expected header 'coord,value'")
    coords, values = [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise InvariantError(f"{path}:{lineno}: malformed row {line!r}")
        try:
            coords.append(float(parts[0]))
            values.append(float(parts[1]))
        except ValueError:
            raise InvariantError(f"{path}:{lineno}: malformed row {line!r}") from None
    if len(coords) < 2:
        raise InvariantError(f"{path}: need at least 2 data rows")
    c = np.asarray(coords)
    n = len(c)
    dx = (c[-1] - c[0]) / (n - 1)
    if dx <= 0.0:
        raise InvariantError(f"{path}: coordinate column must be increasing")
    drift = np.max(np.abs(c - (c[0] + dx * np.arange(n))))
    if drift > 1e-9 * max(1.0, abs(dx)):
        raise InvariantError(
            f"{path}: coordinate column is not a uniform grid (max drift {drift:.3e})"
        )
    return SampledFunction(Grid1D(float(c[0]), float(dx), n), np.asarray(values))


def _format_rows(grid: Grid1D, values: np.ndarray) -> str:
    x = grid.points()
    rows = ["coord,value"]
    rows.extend(f"{float(xi)!r},{float(vi)!r}" for xi, vi in zip(x, values))
    return "\n".join(rows) + "\n"


def write_profile_csv(path: Path, grid: Grid1D, values: np.ndarray) -> None:
    """Write the profile CSV and its `.plot.csv` companion.

    Values are serialised with shortest round-trip decimal representation, so
    reading the file back reproduces the 64-bit values exactly.  The companion
    carries the same rows; its coordinate column is monotone by construction
    of :class:`Grid1D`.
    """
    text = _format_rows(grid, values)
    path.write_text(text)
    path.with_suffix(".plot.csv").write_text(text)


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n")


def _auto_ygrid(ymap_values: np.ndarray, cfg: RunConfig) -> Grid1D:
    ylo = cfg.ymin if cfg.ymin is not None else float(ymap_values[0])
    yhi = cfg.ymax if cfg.ymax is not None else float(ymap_values[-1])
    n = int(np.floor((yhi - ylo) / cfg.dy)) + 1
    while ylo + (n - 1) * cfg.dy > ymap_values[-1] and n > 2:
        n -= 1
    return Grid1D(ylo, cfg.dy, max(n, 2))


def _auto_xgrid(admissible: tuple[float, float], cfg: RunConfig, margin: float = 0.5) -> Grid1D:
    lo = cfg.xmin if cfg.xmin is not None else admissible[0] + margin
    hi = cfg.xmax if cfg.xmax is not None else admissible[1] - margin
    return Grid1D.from_bounds(lo, hi, cfg.dx)


def _output_path(cfg: RunConfig, default: str) -> Path:
    return Path(cfg.output) if cfg.output is not None else Path(default)


def cmd_forward(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    m = MomentumProfile(read_profile_csv(args.input), decay_tol=cfg.decay_tol)
    ymap = forward_coordinate(m)
    ygrid = _auto_ygrid(ymap.values, cfg)
    Q = compute_potential(m, ygrid)
    out = _output_path(cfg, "potential.csv")
    write_profile_csv(out, Q.grid, Q.values)
    print(f"wrote {out} and {out.with_suffix('.plot.csv')}")
    return 0


def cmd_invert(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    Q = PotentialProfile(read_profile_csv(args.input))
    if cfg.method == "volterra":
        f = solve_jost_volterra(Q, tol=cfg.tol, max_iter=cfg.max_iter)
    else:
        f = solve_jost_ode(Q)
    xgrid = _auto_xgrid(admissible_x_interval(compute_H(f)), cfg)
    result = recover_m(f, xgrid)
    out = _output_path(cfg, "momentum.csv")
    write_profile_csv(out, result.m.grid, result.m.values)
    diag = result.diagnostics
    _write_json(
        out.with_suffix(".diagnostics.json"),
        {
            "method": cfg.method,
            "tail_correction": diag.tail_correction,
            "min_f": diag.min_f,
            "h_range": list(diag.h_range),
            "admissible_x": list(diag.admissible_x),
            "jost_residual": jost_residual(f, Q),
            "amp_minus": f.amp_minus,
        },
    )
    print(f"wrote {out}, companion plot CSV and diagnostics JSON")
    return 0


def cmd_roundtrip(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    sf = read_profile_csv(args.input)
    m0 = MomentumProfile(sf, decay_tol=cfg.decay_tol)
    ymap = forward_coordinate(m0)
    Q = compute_potential(m0, _auto_ygrid(ymap.values, cfg))
    if cfg.method == "volterra":
        f = solve_jost_volterra(Q, tol=cfg.tol, max_iter=cfg.max_iter)
    else:
        f = solve_jost_ode(Q)
    admissible = admissible_x_interval(compute_H(f))
    g = sf.grid
    lo = cfg.xmin if cfg.xmin is not None else max(g.x0, admissible[0] + 1.0)
    hi = cfg.xmax if cfg.xmax is not None else min(g.last, admissible[1] - 1.0)
    i0 = int(np.ceil((lo - g.x0) / g.dx - 1e-9))
    i1 = int(np.floor((hi - g.x0) / g.dx + 1e-9))
    if i1 - i0 < 1:
        raise DomainError(
            f"comparison window [{lo}, {hi}] contains fewer than 2 input grid nodes"
        )
    window = Grid1D(g.point(i0), g.dx, i1 - i0 + 1)
    result = recover_m(f, window)
    err = float(np.max(np.abs(result.m.values - sf.values[i0 : i1 + 1])))
    out = _output_path(cfg, "roundtrip.json")
    _write_json(
        out,
        {
            "method": cfg.method,
            "sup_error": err,
            "x_window": [window.x0, window.last],
            "nodes_compared": window.n,
            "admissible_x": list(admissible),
        },
    )
    print(f"round-trip sup error {err:.6e} on [{window.x0}, {window.last}], wrote {out}")
    return 0


def cmd_solitary(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    if cfg.c is None:
        raise InvariantError("cmd solitary requires --c (wave speed)")
    if not cfg.c > 2.0:
        raise InvariantError(f"speed must exceed 2, got c={cfg.c}")
    spec = SolitaryWaveSpec(c=cfg.c, y0=cfg.y0)
    xgrid = None
    if cfg.xmin is not None and cfg.xmax is not None:
        xgrid = Grid1D.from_bounds(cfg.xmin, cfg.xmax, cfg.dx)
    result = solitary_profile(spec, xgrid=xgrid, dy=cfg.dy, dx=cfg.dx)
    residual = traveling_wave_residual(result.m, spec.c)
    out = _output_path(cfg, "solitary.csv")
    write_profile_csv(out, result.m.grid, result.m.values)
    _write_json(
        out.with_suffix(".report.json"),
        {
            "c": spec.c,
            "y0": spec.y0,
            "traveling_wave_residual": residual,
            "max_phi": float(np.max(result.m.values)),
            "x_range": [result.m.grid.x0, result.m.grid.last],
            "admissible_x": list(result.diagnostics.admissible_x),
        },
    )
    print(f"wrote {out}; traveling-wave residual {residual:.6e}")
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    cfg = resolve_config(args)
    if args.input is None and cfg.c is None:
        raise InvariantError("cmd spectrum requires an input potential CSV or --c")
    if args.input is not None:
        Q = PotentialProfile(read_profile_csv(args.input))
    else:
        if not cfg.c > 2.0:
            raise InvariantError(f"speed must exceed 2, got c={cfg.c}")
        Q = solitary_potential_profile(SolitaryWaveSpec(c=cfg.c, y0=cfg.y0), dy=cfg.dy)
    report = find_eigenvalues(Q, tol=cfg.spectrum_tol)
    out = _output_path(cfg, "spectrum.json")
    _write_json(
        out,
        {
            "mu": [float(v) for v in report.mu_values],
            "lambda": [float(v) for v in report.lambda_values],
            "discarded_trials": report.discarded_trials,
            "scan_points": report.scan_points,
        },
    )
    print(f"found {len(report.mu_values)} eigenvalue(s), wrote {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chscatter",
        description="Inverse-scattering pipeline: momentum <-> potential transforms, "
        "solitary waves, and bound-state spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV_VAR})")
        p.add_argument("--xmin", type=float)
        p.add_argument("--xmax", type=float)
        p.add_argument("--dx", type=float)
        p.add_argument("--ymin", type=float)
        p.add_argument("--ymax", type=float)
        p.add_argument("--dy", type=float)
        p.add_argument("--c", type=_parse_speed, help="wave speed (decimal or fraction like 8/3)")
        p.add_argument("--y0", type=float)
        p.add_argument("--method", choices=["ode", "volterra"])
        p.add_argument("--tol", type=float)
        p.add_argument("--max-iter", dest="max_iter", type=int)
        p.add_argument("--decay-tol", dest="decay_tol", type=float)
        p.add_argument("--spectrum-tol", dest="spectrum_tol", type=float)
        p.add_argument("--output")

    p = sub.add_parser("forward", help="momentum CSV -> potential CSV")
    p.add_argument("input")
    add_common(p)
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("invert", help="potential CSV -> momentum CSV + diagnostics JSON")
    p.add_argument("input")
    add_common(p)
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("roundtrip", help="momentum CSV -> forward -> invert -> report JSON")
    p.add_argument("input")
    add_common(p)
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("solitary", help="solitary-wave profile CSV + residual report")
    add_common(p)
    p.set_defaults(func=cmd_solitary)

    p = sub.add_parser("spectrum", help="eigenvalue JSON from a potential CSV or --c")
    p.add_argument("input", nargs="?")
    add_common(p)
    p.set_defaults(func=cmd_spectrum)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


def entrypoint() -> None:
    raise SystemExit(main())
