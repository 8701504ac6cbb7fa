"""Command-line entry point: ``rspol pdist | moments | verify``.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or config error.
Relative output paths resolve under $RSPOL_OUTPUT_DIR when it is set.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .pol_phase import analytic_distribution, analytic_moment, pol_distribution
from .verify import VerifyConfig, run_verify
from .xi_rep import ModeConfig, OnePhotonState

log = logging.getLogger("rspol")

OUTPUT_DIR_ENV = "RSPOL_OUTPUT_DIR"
PDIST_TOL = 1e-8
MOMENT_TOL = 1e-8
NORM_WARN_TOL = 1e-6

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    cutoff: int = 12
    margin: int | None = None
    radial_order: int | None = None
    angular_order: int = 64
    theta_count: int = 64
    phi: float = 0.0
    cplus: str = "1,0"
    cminus: str = "0,0"
    out: str | None = None
    format: str = "csv"


def parse_complex(text) -> complex:
    """'re,im' (or a bare real) -> complex."""
    if isinstance(text, (int, float)):
        return complex(text)
    if isinstance(text, (list, tuple)) and len(text) == 2:
        return complex(float(text[0]), float(text[1]))
    parts = str(text).split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ConfigError(f"cannot parse amplitude {text!r}; expected 're,im'")


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def build_config(args: argparse.Namespace) -> RunConfig:
    """Defaults, then the JSON config file, then explicit flags."""
    cfg = RunConfig()
    if args.config:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {args.config}: {exc}") from exc
        known = {f.name for f in fields(RunConfig)}
        for key, value in data.items():
            key = key.replace("-", "_")
            if key not in known:
                raise ConfigError(f"unknown config key {key!r}")
            setattr(cfg, key, value)
    for f in fields(RunConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            setattr(cfg, f.name, value)
    for name in ("cutoff", "angular_order", "theta_count"):
        if int(getattr(cfg, name)) < 1:
            raise ConfigError(f"{name} must be positive")
    if cfg.radial_order is not None and int(cfg.radial_order) < 1:
        raise ConfigError("radial_order must be positive")
    if cfg.margin is not None and int(cfg.margin) < 1:
        raise ConfigError("margin must be positive")
    if cfg.format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {cfg.format!r}")
    return cfg


def state_from_config(cfg: RunConfig) -> OnePhotonState:
    cp, cm = parse_complex(cfg.cplus), parse_complex(cfg.cminus)
    norm2 = abs(cp) ** 2 + abs(cm) ** 2
    if norm2 == 0 or not np.isfinite(norm2):
        raise ConfigError("amplitudes must be finite and not both zero")
    if abs(norm2 - 1.0) > NORM_WARN_TOL:
        log.warning("|c+|^2 + |c-|^2 = %.17g; normalizing", norm2)
    return OnePhotonState.normalized(cp, cm, ModeConfig(float(cfg.phi)))


def resolve_output(out: str | None, default_name: str) -> Path | None:
    base = os.environ.get(OUTPUT_DIR_ENV)
    if out is None:
        return Path(base) / default_name if base else None
    path = Path(out)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def emit(text: str, path: Path | None):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from exc


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def cmd_pdist(cfg: RunConfig) -> int:
    state = state_from_config(cfg)
    radial = int(cfg.radial_order) if cfg.radial_order is not None else 4
    dist = pol_distribution(state, int(cfg.theta_count), radial)
    exact = analytic_distribution(state, dist.theta)
    delta = np.abs(dist.values - exact)
    sup = float(delta.max())
    ok = sup <= PDIST_TOL
    if cfg.format == "csv":
        text = _csv(["theta", "P", "P_analytic", "abs_delta"],
                    [[fmt(t), fmt(p), fmt(e), fmt(d)] for t, p, e, d in zip(dist.theta, dist.values, exact, delta)])
    else:
        text = _json({
            "c_plus": [state.c_plus.real, state.c_plus.imag],
            "c_minus": [state.c_minus.real, state.c_minus.imag],
            "theta_count": int(cfg.theta_count),
            "radial_order": radial,
            "rows": [{"theta": float(t), "P": float(p), "P_analytic": float(e), "abs_delta": float(d)}
                     for t, p, e, d in zip(dist.theta, dist.values, exact, delta)],
            "sup_delta": sup,
            "tolerance": PDIST_TOL,
            "pass": ok,
        })
    emit(text, resolve_output(cfg.out, f"pdist.{cfg.format}"))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_moments(cfg: RunConfig) -> int:
    state = state_from_config(cfg)
    radial = int(cfg.radial_order) if cfg.radial_order is not None else 4
    dist = pol_distribution(state, int(cfg.theta_count), radial)
    rows = []
    for order in (1, 2, 3, 4):
        value = dist.moment(order)
        target = complex(analytic_moment(state, order))
        rows.append((order, value, target, abs(value - target)))
    ok = all(d <= MOMENT_TOL for *_, d in rows)
    if cfg.format == "csv":
        text = _csv(["order", "re", "im", "target_re", "target_im", "abs_delta"],
                    [[o, fmt(v.real), fmt(v.imag), fmt(t.real), fmt(t.imag), fmt(d)] for o, v, t, d in rows])
    else:
        text = _json({
            "moments": [{"order": o, "value": [v.real, v.imag], "target": [t.real, t.imag], "abs_delta": d}
                        for o, v, t, d in rows],
            "tolerance": MOMENT_TOL,
            "pass": ok,
        })
    emit(text, resolve_output(cfg.out, f"moments.{cfg.format}"))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(cfg: RunConfig) -> int:
    vcfg = VerifyConfig(
        cutoff=int(cfg.cutoff),
        margin=None if cfg.margin is None else int(cfg.margin),
        radial_order=int(cfg.radial_order) if cfg.radial_order is not None else 40,
        angular_order=int(cfg.angular_order),
        phi=float(cfg.phi),
    )
    try:
        runs = run_verify(vcfg)
    except MemoryError as exc:
        raise ConfigError(f"cutoff {vcfg.cutoff} exhausts memory: {exc}") from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    emit(_json({"runs": runs}), resolve_output(cfg.out, "verify.json"))
    for r in runs:
        log.info("%-14s residual=%-24s tol=%-8g %s", r["equation_tag"], fmt(r["residual"]), r["tolerance"],
                 "pass" if r["pass"] else "FAIL")
    return EXIT_OK if all(r["pass"] for r in runs) else EXIT_FAIL


def _add_state_args(p):
    p.add_argument("--cplus", help="left-handed amplitude 're,im'")
    p.add_argument("--cminus", help="right-handed amplitude 're,im'")
    p.add_argument("--theta-count", dest="theta_count", type=int)
    p.add_argument("--radial-order", dest="radial_order", type=int)
    p.add_argument("--phi", type=float)


def _add_output_args(p):
    p.add_argument("--out", help="output path (stdout if omitted)")
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--config", help="JSON config file; flags override it")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rspol", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pdist", help="circular-polarization distribution P(theta) of a one-photon state")
    _add_state_args(p)
    _add_output_args(p)

    p = sub.add_parser("moments", help="moments <e^{i k Theta}>, k = 1..4, of a one-photon state")
    _add_state_args(p)
    _add_output_args(p)

    p = sub.add_parser("verify", help="run the operator invariant suite and write a JSON report")
    p.add_argument("--cutoff", type=int)
    p.add_argument("--margin", type=int)
    p.add_argument("--radial-order", dest="radial_order", type=int)
    p.add_argument("--angular-order", dest="angular_order", type=int)
    p.add_argument("--phi", type=float)
    _add_output_args(p)
    return parser


COMMANDS = {"pdist": cmd_pdist, "moments": cmd_moments, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        cfg = build_config(args)
        return COMMANDS[args.command](cfg)
    except (ConfigError, ValueError) as exc:
        print(f"rspol: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
