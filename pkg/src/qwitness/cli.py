"""Command-line front end.

Commands emit one delimited table each (CSV by default, JSON mirror via
--format json) and can render the matching figure next to the data with
--plot.  Exit codes: 0 success, 1 verification failure, 2 usage or
configuration error, 3 output I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import verify as verification
from . import witness
from .dynamics import SystemParams
from .errors import DomainError
from .witness import ProtocolConfig

DEFAULTS = {
    "omega": 1.0,
    "gamma0": 0.1,
    "nbar": 0.0,
    "tau_min": 0.0,
    "tau_max": 40.0,
    "tau_steps": 401,
    "epsilons": [0.25, 0.5, 0.75, 1.0],
    "gammas": [0.05, 0.1, 0.2, 0.5],
    "shots": 100_000,
    "seed": 1,
    "out": "-",
    "format": "csv",
    "tol": 1e-9,
    "plot": None,
    "config": None,
}

# Per-command overrides of the shared defaults.
COMMAND_DEFAULTS = {
    "strength-curve": {"epsilons": [i / 100.0 for i in range(101)]},
    "eff-strength": {"epsilons": [1.0]},
}

HEADERS = {
    "witness-scan": ["tau", "epsilon", "p_unmeasured", "p_measured", "witness", "epsilon_eff"],
    "strength-curve": ["epsilon", "f", "f_derivative"],
    "eff-strength": ["tau", "gamma", "epsilon_eff"],
    "monte-carlo": ["tau", "epsilon", "estimate", "stderr", "closed_form"],
}


class _UsageError(Exception):
    pass


def _comma_floats(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwitness",
        description="Damped-qubit witness sweeps, verification and sampling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, sweep=True, epsilons=True):
        p.add_argument("--omega", type=float, default=None, help="qubit frequency")
        p.add_argument("--gamma0", type=float, default=None, help="spontaneous decay rate")
        p.add_argument("--nbar", type=float, default=None, help="thermal occupation")
        p.add_argument("--config", default=None, help="JSON file with flag defaults")
        if sweep:
            p.add_argument("--tau-min", type=float, default=None, dest="tau_min")
            p.add_argument("--tau-max", type=float, default=None, dest="tau_max")
            p.add_argument("--tau-steps", type=int, default=None, dest="tau_steps")
        if epsilons:
            p.add_argument(
                "--epsilons", type=_comma_floats, default=None,
                help="comma-separated measurement strengths",
            )

    def add_output(p):
        p.add_argument("--out", default=None, help="output path, - for stdout")
        p.add_argument("--format", choices=["csv", "json"], default=None)
        p.add_argument("--plot", default=None, help="also render a png figure here")

    p = sub.add_parser("witness-scan", help="witness vs time for several strengths")
    add_common(p)
    add_output(p)

    p = sub.add_parser("strength-curve", help="amplitude factor and its derivative")
    add_common(p, sweep=False)
    add_output(p)

    p = sub.add_parser("eff-strength", help="effective strength vs time per damping rate")
    add_common(p)
    p.add_argument(
        "--gammas", type=_comma_floats, default=None,
        help="comma-separated spontaneous decay rates",
    )
    add_output(p)

    p = sub.add_parser("monte-carlo", help="sampled witness estimates with error bars")
    add_common(p)
    p.add_argument("--shots", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    add_output(p)

    p = sub.add_parser("verify", help="cross-check the independent code paths")
    add_common(p, sweep=False, epsilons=False)
    p.add_argument("--tol", type=float, default=None, help="integrator tolerance")
    p.add_argument("--seed", type=int, default=None)

    return parser


def _merge_settings(args: argparse.Namespace) -> dict:
    """Apply precedence: explicit flags > config file > built-in defaults."""
    settings = dict(DEFAULTS)
    settings.update(COMMAND_DEFAULTS.get(args.command, {}))
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            with open(config_path) as fh:
                file_settings = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise _UsageError(f"cannot read config file {config_path}: {exc}") from exc
        if not isinstance(file_settings, dict):
            raise _UsageError(f"config file {config_path} must hold a JSON object")
        unknown = set(file_settings) - set(DEFAULTS)
        if unknown:
            raise _UsageError(f"unknown config keys: {sorted(unknown)}")
        settings.update(file_settings)
    for key in DEFAULTS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


def _validated_params(settings: dict) -> SystemParams:
    try:
        return SystemParams(
            omega=float(settings["omega"]),
            gamma0=float(settings["gamma0"]),
            nbar=float(settings["nbar"]),
        )
    except DomainError as exc:
        raise _UsageError(str(exc)) from exc


def _tau_grid(settings: dict) -> np.ndarray:
    steps = int(settings["tau_steps"])
    lo, hi = float(settings["tau_min"]), float(settings["tau_max"])
    if steps < 1:
        raise _UsageError(f"tau-steps must be >= 1, got {steps}")
    if lo < 0:
        raise _UsageError(f"tau-min must be nonnegative, got {lo}")
    if lo > hi:
        raise _UsageError(f"tau-min {lo} exceeds tau-max {hi}")
    return np.linspace(lo, hi, steps)


def _checked_epsilons(values) -> list[float]:
    epsilons = [float(v) for v in values]
    if not epsilons:
        raise _UsageError("need at least one epsilon")
    bad = [e for e in epsilons if not 0.0 <= e <= 1.0]
    if bad:
        raise _UsageError(f"epsilons outside [0, 1]: {bad}")
    return epsilons


def _format_value(value) -> str:
    if value is None:
        return ""
    return format(float(value), ".17g")


def _render(header: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "csv":
        lines = [",".join(header)]
        lines.extend(",".join(_format_value(v) for v in row) for row in rows)
        return "\n".join(lines) + "\n"
    objects = [dict(zip(header, row)) for row in rows]
    return json.dumps(objects, indent=2) + "\n"


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".qwitness-tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def _emit(settings: dict, command: str, rows: list[list]) -> None:
    text = _render(HEADERS[command], rows, settings["format"])
    if settings["out"] == "-":
        sys.stdout.write(text)
    else:
        _write_atomic(settings["out"], text)
    if settings.get("plot"):
        from . import plotting

        renderers = {
            "witness-scan": plotting.witness_scan_figure,
            "strength-curve": plotting.strength_curve_figure,
            "eff-strength": plotting.eff_strength_figure,
            "monte-carlo": plotting.monte_carlo_figure,
        }
        renderers[command](rows, settings["plot"])


def _cmd_witness_scan(settings: dict) -> int:
    params = _validated_params(settings)
    taus = _tau_grid(settings)
    epsilons = _checked_epsilons(settings["epsilons"])
    points = witness.sweep(params, taus, epsilons)
    rows = [
        [p.tau, p.epsilon, p.p_unmeasured, p.p_measured, p.witness, p.epsilon_eff]
        for p in points
    ]
    _emit(settings, "witness-scan", rows)
    return 0


def _cmd_strength_curve(settings: dict) -> int:
    epsilons = _checked_epsilons(settings["epsilons"])
    rows = []
    for eps in epsilons:
        slope = eps / math.sqrt(1.0 - eps * eps) if eps < 1.0 else None
        rows.append([eps, witness.amplitude_factor(eps), slope])
    _emit(settings, "strength-curve", rows)
    return 0


def _cmd_eff_strength(settings: dict) -> int:
    taus = _tau_grid(settings)
    epsilons = _checked_epsilons(settings["epsilons"])
    if len(epsilons) != 1:
        raise _UsageError("eff-strength takes a single epsilon")
    epsilon = epsilons[0]
    gammas = [float(g) for g in settings["gammas"]]
    if not gammas:
        raise _UsageError("need at least one gamma0 value")
    if any(g < 0 for g in gammas):
        raise _UsageError(f"gamma0 values must be nonnegative: {gammas}")
    rows = []
    for gamma0 in gammas:
        params = SystemParams(
            omega=float(settings["omega"]), gamma0=gamma0, nbar=float(settings["nbar"])
        )
        for tau in taus:
            config = ProtocolConfig(params=params, tau=float(tau), epsilon=epsilon)
            rows.append([float(tau), params.gamma, witness.effective_strength(config)])
    _emit(settings, "eff-strength", rows)
    return 0


def _cmd_monte_carlo(settings: dict) -> int:
    params = _validated_params(settings)
    taus = _tau_grid(settings)
    epsilons = _checked_epsilons(settings["epsilons"])
    shots = int(settings["shots"])
    if shots < 100:
        raise _UsageError(f"shots must be >= 100, got {shots}")
    seed = int(settings["seed"])
    rows = []
    for index_eps, eps in enumerate(epsilons):
        for index_tau, tau in enumerate(taus):
            config = ProtocolConfig(params=params, tau=float(tau), epsilon=eps)
            # One deterministic sub-seed per grid cell.
            cell_seed = seed + index_eps * len(taus) + index_tau
            estimate, stderr = witness.witness_monte_carlo(config, shots, cell_seed)
            rows.append(
                [float(tau), eps, estimate, stderr, witness.witness_closed_form(config)]
            )
    _emit(settings, "monte-carlo", rows)
    return 0


def _cmd_verify(settings: dict) -> int:
    params = _validated_params(settings)
    tol = float(settings["tol"])
    if tol <= 0:
        raise _UsageError(f"tol must be positive, got {tol}")
    results = verification.run_verification(params, tol=tol, seed=int(settings["seed"]))
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(
            f"{result.name}: max deviation {result.max_deviation:.3e} "
            f"(tolerance {result.tolerance:g}) {status}"
        )
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"verification: FAIL ({', '.join(failed)})")
        return 1
    print(f"verification: PASS ({len(results)} suites)")
    return 0


_COMMANDS = {
    "witness-scan": _cmd_witness_scan,
    "strength-curve": _cmd_strength_curve,
    "eff-strength": _cmd_eff_strength,
    "monte-carlo": _cmd_monte_carlo,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = _merge_settings(args)
        return _COMMANDS[args.command](settings)
    except (_UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"output error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
