"""
Command-line interface.

    erhydrogen hfs --alpha 1e6 --entropy ln2 --format json
    erhydrogen bound hyperfine --precision 1e-12 --entropy ln2
    erhydrogen bound neutrality --charge-limit 1e-20 --entropy 1
    erhydrogen oracle verify --x 1e-3 --topology traversable

Every command emits one or more records. JSON output is one object per
line with ``schema_version`` "1"; CSV has a header row and one record per
line; ``table`` is for people. Shifted quantities are always printed as
``base``, ``relative_delta`` and the reconstructed ``value``.

Exit codes: 0 success, 1 computation or domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .constants import DEFAULT_DATASET, constant_units, load_constants
from .constraints import (
    DEFAULT_NEUTRALITY_ENTROPY,
    bound_alpha_from_hyperfine,
    bound_alpha_from_neutrality,
    residual_charge,
)
from .entanglement import (
    TrapPairConfig,
    TwoQubitState,
    coupling_ratio,
    oscillator_entropy,
    reference_trap_pair,
    two_qubit_entropy,
)
from .exceptions import ConfigurationError, ERHydrogenError
from .oracle import RadialProblem, solve_radial, verify_scaling
from .spectrum import all_transitions, bohr_energy, bohr_radius, hyperfine_base, line_splitting
from .suppression import SuppressionConfig, Topology, effective_charges, parse_topology

SCHEMA_VERSION = "1"
DATASET_ENV = "ERHYDROGEN_DATASET"
FORMATS = ("json", "csv", "table")


@dataclass
class Result:
    name: str
    value: object
    unit: str
    provenance: str = "analytic"


@dataclass
class OutputRecord:
    command: str
    inputs: dict
    results: list = field(default_factory=list)
    schema_version: str = SCHEMA_VERSION
    timestamp: str | None = None

    def add(self, name, value, unit, provenance="analytic"):
        self.results.append(Result(name, value, unit, provenance))

    def add_shift(self, name, shift, unit, provenance="analytic"):
        self.add(f"{name}.base", shift.base, unit, provenance)
        self.add(f"{name}.relative_delta", shift.relative_delta, "1", provenance)
        self.add(f"{name}.value", shift.value, unit, provenance)

    def to_dict(self):
        out = {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": {k: _jsonable(v) for k, v in self.inputs.items()},
            "results": [
                {"name": r.name, "value": _jsonable(r.value), "unit": r.unit, "provenance": r.provenance}
                for r in self.results
            ],
        }
        if self.timestamp is not None:
            out["timestamp"] = self.timestamp
        return out


def _jsonable(value):
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, (Topology,)):
        return value.value
    return value


# ----------------------------------------------------------------- parsing


def parse_entropy(text: str) -> float:
    """Accept a number or one of the tokens ``ln2`` / ``ln(2)``."""
    token = text.strip().lower().replace(" ", "")
    if token in ("ln2", "ln(2)", "log2"):
        return math.log(2.0)
    try:
        value = float(token)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid entropy {text!r}: use a number or 'ln2'") from None
    if not (value >= 0 and math.isfinite(value)):
        raise argparse.ArgumentTypeError(f"entropy must be finite and >= 0, got {text!r}")
    return value


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text!r}")
    return value


def _topology(text):
    try:
        return parse_topology(text)
    except ERHydrogenError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _amplitudes(text):
    try:
        values = [complex(part.replace(" ", "")) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"amplitudes must be 4 comma-separated numbers, got {text!r}") from None
    if len(values) != 4:
        raise argparse.ArgumentTypeError(f"expected 4 amplitudes, got {len(values)}")
    return values


def read_config(path) -> dict:
    """Parse a ``key = value`` file; ``#`` starts a comment."""
    settings = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in ("dataset", "topology", "format"):
            raise ConfigurationError(f"{path}:{lineno}: unknown key {key!r}")
        settings[key] = value
    return settings


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output format (default json)")
    common.add_argument("--reproducible", action="store_true", help="omit timestamps")
    common.add_argument("--config", default=None, help="key = value file presetting dataset/topology/format")
    common.add_argument("--dataset", default=None, help=f"constants dataset (env {DATASET_ENV}, default {DEFAULT_DATASET})")

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--alpha", type=_positive_float, required=True)
    model.add_argument("--entropy", type=parse_entropy, default=math.log(2.0), help="nats, or 'ln2' (default)")
    model.add_argument("--topology", type=_topology, default=None)

    parser = argparse.ArgumentParser(prog="erhydrogen", description="Hydrogen under ER = EPR charge suppression.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("constants", parents=[common], help="print the constants table")
    p.set_defaults(handler=cmd_constants)

    p = sub.add_parser("spectrum", parents=[common, model], help="modified Bohr levels and radius")
    p.add_argument("--n-max", type=int, default=3)
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("hfs", parents=[common, model], help="the three split hyperfine transitions")
    p.set_defaults(handler=cmd_hfs)

    p = sub.add_parser("charge", parents=[common, model], help="effective and residual charges")
    p.set_defaults(handler=cmd_charge)

    bound = sub.add_parser("bound", help="lower bounds on alpha").add_subparsers(dest="source", metavar="SOURCE")
    bound.required = True
    p = bound.add_parser("hyperfine", parents=[common], help="from hyperfine precision")
    p.add_argument("--precision", type=_positive_float, default=1e-12)
    p.add_argument("--entropy", type=parse_entropy, default=math.log(2.0))
    p.add_argument("--topology", type=_topology, default=None)
    p.set_defaults(handler=cmd_bound_hyperfine)
    p = bound.add_parser("neutrality", parents=[common], help="from atomic neutrality")
    p.add_argument("--charge-limit", type=_positive_float, default=1e-20)
    p.add_argument("--entropy", type=parse_entropy, default=DEFAULT_NEUTRALITY_ENTROPY)
    p.add_argument("--topology", type=_topology, default=None)
    p.set_defaults(handler=cmd_bound_neutrality)

    ent = sub.add_parser("entropy", help="entanglement entropy").add_subparsers(dest="system", metavar="SYSTEM")
    ent.required = True
    p = ent.add_parser("qubit", parents=[common], help="pure two-qubit spin state")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--state", choices=("singlet", "triplet0", "product"), default=None)
    group.add_argument("--amplitudes", type=_amplitudes, default=None, help="uu,ud,du,dd")
    p.set_defaults(handler=cmd_entropy_qubit)
    p = ent.add_parser("oscillator", parents=[common], help="two charges in coupled harmonic traps")
    p.add_argument("--coupling", type=float, default=None, help="electron-proton preset at this coupling ratio")
    p.add_argument("--separation", type=_positive_float, default=None, help="metres")
    for name in ("mass-1", "mass-2", "freq-1", "freq-2"):
        p.add_argument(f"--{name}", type=_positive_float, default=None)
    p.add_argument("--charge-1", type=float, default=None, help="coulombs")
    p.add_argument("--charge-2", type=float, default=None, help="coulombs")
    p.set_defaults(handler=cmd_entropy_oscillator)

    orc = sub.add_parser("oracle", help="numerical Schroedinger checks").add_subparsers(dest="action", metavar="ACTION")
    orc.required = True
    p = orc.add_parser("solve", parents=[common], help="radial eigensolve")
    p.add_argument("--charge-product", type=_positive_float, default=1.0)
    p.add_argument("--l", type=int, default=0, dest="ell")
    p.add_argument("--n-levels", type=int, default=3)
    p.add_argument("--rmax", type=float, default=60.0)
    p.add_argument("--grid-points", type=int, default=6000)
    p.set_defaults(handler=cmd_oracle_solve)
    p = orc.add_parser("verify", parents=[common], help="check energy/size scaling at resolvable x")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--topology", type=_topology, default=None)
    p.add_argument("--grid-points", type=int, default=6000)
    p.set_defaults(handler=cmd_oracle_verify)
    return parser


# ---------------------------------------------------------------- commands


def _model_config(args):
    return SuppressionConfig(args.entropy, args.alpha, args.topology)


def _model_inputs(args):
    return {"alpha": args.alpha, "entropy": args.entropy, "topology": args.topology.value, "dataset": args.dataset}


def cmd_constants(args, constants):
    units = constant_units(constants.dataset)
    rec = OutputRecord("constants", {"dataset": args.dataset})
    for name, unit in units.items():
        rec.add(name, getattr(constants, name), unit)
    rec.add("rydberg_energy", constants.rydberg_energy_ev, "eV")
    rec.add("bohr_radius", constants.bohr_radius, "m")
    rec.add("hc", constants.hc_ev_cm, "eV*cm")
    return [rec]


def cmd_spectrum(args, constants):
    config = _model_config(args)
    records = []
    for n in range(1, args.n_max + 1):
        rec = OutputRecord("spectrum", {**_model_inputs(args), "n": n})
        rec.add("x", config.x, "1")
        rec.add_shift("energy", bohr_energy(n, config, constants), "eV")
        records.append(rec)
    rec = OutputRecord("spectrum", {**_model_inputs(args), "n": "radius"})
    rec.add("x", config.x, "1")
    rec.add_shift("bohr_radius", bohr_radius(config, constants), "m")
    records.append(rec)
    return records


def cmd_hfs(args, constants):
    config = _model_config(args)
    gap = line_splitting(config, constants)
    records = []
    for tr in all_transitions(config, constants):
        rec = OutputRecord("hfs", {**_model_inputs(args), "transition": tr.kind.value})
        rec.add("x", config.x, "1")
        rec.add("energy.base", tr.reference_energy, "eV")
        rec.add("energy.standard", tr.standard_energy, "eV")
        rec.add("energy.relative_delta", tr.relative_delta, "1")
        rec.add("energy.value", tr.energy, "eV")
        rec.add("wavelength", tr.wavelength, "cm")
        rec.add("wavelength_shift_from_21cm", tr.wavelength_shift_from_21cm, "cm")
        rec.add("singlet_line_gap", gap, "cm")
        if tr.standard_coefficient == 0.0:
            rec.add(
                "note",
                "degenerate without suppression; wavelength grows as alpha^2 "
                "(about 1e14 cm at alpha = 1e6, 1e16 cm at alpha = 1e7 for s = ln 2)",
                "",
            )
        records.append(rec)
    return records


def cmd_charge(args, constants):
    config = _model_config(args)
    charges = effective_charges(config, constants)
    rec = OutputRecord("charge", _model_inputs(args))
    rec.add("x", config.x, "1")
    rec.add_shift("electron_charge", charges.electron, "C")
    rec.add_shift("proton_charge", charges.proton, "C")
    rec.add("residual_charge", residual_charge(config, constants), "e")
    return [rec]


def _bound_record(command, bound, inputs):
    rec = OutputRecord(command, inputs)
    rec.add("alpha_min", bound.alpha_min if bound.bounded else "none", "1")
    rec.add("bounded", bound.bounded, "")
    rec.add("forward_check", bound.forward(), "1")
    return rec


def cmd_bound_hyperfine(args, constants):
    bound = bound_alpha_from_hyperfine(args.precision, args.entropy, args.topology)
    inputs = {"precision": args.precision, "entropy": args.entropy, "topology": args.topology.value}
    return [_bound_record("bound hyperfine", bound, inputs)]


def cmd_bound_neutrality(args, constants):
    bound = bound_alpha_from_neutrality(args.charge_limit, args.entropy, args.topology)
    inputs = {"charge_limit": args.charge_limit, "entropy": args.entropy, "topology": args.topology.value}
    return [_bound_record("bound neutrality", bound, inputs)]


def cmd_entropy_qubit(args, constants):
    if args.amplitudes is not None:
        state = TwoQubitState(tuple(args.amplitudes))
        label = ",".join(format(a) for a in args.amplitudes)
    else:
        label = args.state or "singlet"
        state = {
            "singlet": TwoQubitState.singlet,
            "triplet0": TwoQubitState.triplet_zero,
            "product": TwoQubitState.product,
        }[label]()
    rec = OutputRecord("entropy qubit", {"state": label})
    rec.add("entropy", two_qubit_entropy(state).entropy, "nat")
    return [rec]


def cmd_entropy_oscillator(args, constants):
    explicit = [args.mass_1, args.mass_2, args.freq_1, args.freq_2, args.separation, args.charge_1, args.charge_2]
    if all(v is None for v in explicit[:4] + explicit[5:]):
        config = reference_trap_pair(
            constants,
            coupling=0.999 if args.coupling is None else args.coupling,
            separation=1e-6 if args.separation is None else args.separation,
        )
    elif any(v is None for v in explicit):
        raise ConfigurationError("explicit trap configuration needs all of --mass-1/2, --freq-1/2, --separation, --charge-1/2")
    else:
        config = TrapPairConfig(*explicit, vacuum_permittivity=constants.vacuum_permittivity)
    inputs = {
        "mass_1": config.mass_1, "mass_2": config.mass_2,
        "trap_freq_1": config.trap_freq_1, "trap_freq_2": config.trap_freq_2,
        "separation": config.separation, "charge_1": config.charge_1, "charge_2": config.charge_2,
    }
    rec = OutputRecord("entropy oscillator", inputs)
    rec.add("coupling_ratio", coupling_ratio(config), "1")
    rec.add("entropy", oscillator_entropy(config, constants).entropy, "nat")
    return [rec]


def _spectrum_records(command, report, inputs):
    records = []
    ratios = report.convergence_ratios
    for i, ((n, energy), (_, ref)) in enumerate(zip(report.eigenvalues, report.analytic_reference)):
        rec = OutputRecord(command, {**inputs, "n": n})
        rec.add("energy", energy, "eV", "oracle")
        rec.add("analytic_energy", ref, "eV")
        rec.add("relative_error", abs(energy / ref - 1.0), "1", "oracle")
        rec.add("grid_halving_ratio", ratios[i], "1", "oracle")
        rec.add("virial_ratio", report.virial_ratios[i], "1", "oracle")
        records.append(rec)
    rec = OutputRecord(command, {**inputs, "n": "summary"})
    rec.add("max_relative_error", report.max_relative_error, "1", "oracle")
    rec.add("fitted_decay_length", report.fitted_decay_length, "a0", "oracle")
    rec.add("grid_spacing", report.grid_spacing, "a0", "oracle")
    records.append(rec)
    return records


def cmd_oracle_solve(args, constants):
    problem = RadialProblem(args.charge_product, args.ell, args.rmax, args.grid_points)
    report = solve_radial(problem, args.n_levels, constants)
    inputs = {"charge_product": args.charge_product, "l": args.ell, "rmax": args.rmax, "grid_points": args.grid_points}
    return _spectrum_records("oracle solve", report, inputs)


def cmd_oracle_verify(args, constants):
    report = verify_scaling(args.x, args.topology, constants, grid_points=args.grid_points)
    rec = OutputRecord("oracle verify", {"x": args.x, "topology": args.topology.value, "grid_points": args.grid_points})
    rec.add("energy_ratio", report.energy_ratio, "1", "oracle")
    rec.add("expected_energy_ratio", report.expected_energy_ratio, "1")
    rec.add("energy_ratio_error", report.energy_error, "1", "oracle")
    rec.add("decay_length_ratio", report.decay_length_ratio, "1", "oracle")
    rec.add("expected_decay_length_ratio", report.expected_decay_length_ratio, "1")
    rec.add("decay_length_ratio_error", report.decay_length_error, "1", "oracle")
    rec.add("tolerance", report.tolerance, "1")
    rec.add("passed", report.passed, "")
    return [rec]


# ------------------------------------------------------------------ output


def _flatten(record):
    row = {"schema_version": record.schema_version, "command": record.command}
    for key, value in record.inputs.items():
        row[f"in.{key}"] = _jsonable(value)
    for r in record.results:
        row[f"{r.name} [{r.unit}]" if r.unit else r.name] = _jsonable(r.value)
    if record.timestamp is not None:
        row["timestamp"] = record.timestamp
    return row


def render(records, fmt) -> str:
    if fmt == "json":
        return "".join(json.dumps(rec.to_dict(), sort_keys=True) + "\n" for rec in records)
    if fmt == "csv":
        rows = [_flatten(rec) for rec in records]
        columns = []
        for row in rows:
            columns.extend(k for k in row if k not in columns)
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    lines = []
    for rec in records:
        inputs = " ".join(f"{k}={_jsonable(v)}" for k, v in rec.inputs.items())
        lines.append(f"# {rec.command}  {inputs}".rstrip())
        width = max((len(r.name) for r in rec.results), default=0)
        for r in rec.results:
            value = f"{r.value:.12g}" if isinstance(r.value, float) else str(r.value)
            lines.append(f"  {r.name:<{width}}  {value:>22}  {r.unit:<6} {r.provenance}".rstrip())
        if rec.timestamp is not None:
            lines.append(f"  timestamp  {rec.timestamp}")
    return "\n".join(lines) + "\n"


def _error_record(command, exc):
    rec = OutputRecord(command or "", {})
    rec.add("error.type", type(exc).__name__, "")
    rec.add("error.message", str(exc), "")
    return rec


def run(argv=None, stdout=None) -> int:
    """Entry point; returns the process exit code."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    command = args.command
    for extra in ("source", "system", "action"):
        if getattr(args, extra, None):
            command = f"{command} {getattr(args, extra)}"
    fmt = args.format or "json"
    try:
        settings = read_config(args.config) if args.config else {}
        fmt = args.format or settings.get("format", "json")
        if fmt not in FORMATS:
            raise ConfigurationError(f"unknown format {fmt!r} in config file")
        args.dataset = args.dataset or os.environ.get(DATASET_ENV) or settings.get("dataset", DEFAULT_DATASET)
        if hasattr(args, "topology"):
            args.topology = args.topology or parse_topology(settings.get("topology", Topology.NONTRAVERSABLE))
        constants = load_constants(args.dataset)
        records = args.handler(args, constants)
    except ERHydrogenError as exc:
        stdout.write(render([_error_record(command, exc)], fmt))
        print(f"erhydrogen: error: {exc}", file=sys.stderr)
        return 1

    if not args.reproducible:
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        for rec in records:
            rec.timestamp = stamp
    stdout.write(render(records, fmt))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
