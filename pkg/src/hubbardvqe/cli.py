"""Command-line interface.

Subcommands: exact (oracle spectra), vqe (variational energies), sweep
(exact + VQE gap diagrams with an error summary), circuit-dump (ansatz
slot listing).  Options may come from a flat JSON config file
(--config); explicit flags override file values and unknown config keys
are rejected.  Exit codes: 0 success, 2 configuration error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .ansatz import AnsatzConfig, build_ansatz
from .exactdiag import exact_spectrum
from .hamiltonian import TermError, sector_basis
from .lattice import GeometryError, parse_geometry
from .observables import (
    DEFAULT_U_GRID,
    ExactSource,
    GapDiagram,
    VqeSource,
    build_diagram,
    error_summary,
)
from .output import (
    diagram_csv_text,
    diagram_json_dict,
    json_text,
    svg_heatmap_text,
    write_text,
)
from .vqe import LevelOrderError, NumericalError, OptimizerSchedule, solve_levels


class ConfigError(ValueError):
    pass


def _parse_sector(value) -> tuple[int, int]:
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return int(value[0]), int(value[1])
    parts = str(value).split(",")
    if len(parts) != 2:
        raise ConfigError(f"sector must look like 'N_UP,N_DOWN', got {value!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ConfigError(f"sector must be two integers, got {value!r}") from exc


def _parse_u_grid(value) -> tuple[float, ...]:
    if isinstance(value, (list, tuple)):
        return tuple(float(v) for v in value)
    try:
        return tuple(float(v) for v in str(value).split(","))
    except ValueError as exc:
        raise ConfigError(f"u-grid must be comma-separated numbers, got {value!r}") from exc


def _parse_formats(value) -> tuple[str, ...]:
    formats = tuple(str(value).split(",")) if not isinstance(value, (list, tuple)) else tuple(value)
    for fmt in formats:
        if fmt not in ("csv", "json", "svg"):
            raise ConfigError(f"unknown output format {fmt!r} (want csv, json, or svg)")
    return formats


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a flat JSON object")
    return data


def _merge(args: argparse.Namespace, defaults: dict) -> dict:
    """defaults < config file < explicit flags."""
    settings = dict(defaults)
    if getattr(args, "config", None):
        config = _load_config(args.config)
        unknown = sorted(set(config) - set(defaults))
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        settings.update(config)
    for key in defaults:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return settings


def _emit(text: str, out: str | None) -> None:
    if out:
        write_text(out, text)
    else:
        sys.stdout.write(text)


def _schedule(settings: dict) -> OptimizerSchedule:
    return OptimizerSchedule(
        stage1_iters=int(settings["stage1_iters"]),
        stage2_iters=int(settings["stage2_iters"]),
        restarts=int(settings["restarts"]),
        seed=int(settings["seed"]),
    )


def _ansatz_config(settings: dict) -> AnsatzConfig:
    return AnsatzConfig(
        layers=int(settings["layers"]),
        use_fswap=bool(settings["fswap"]),
        variant=str(settings["variant"]),
    )


EXACT_DEFAULTS = {
    "geometry": "1x4", "u": 0.0, "sector": "2,2", "k": 1,
    "out": None, "format": "json",
}


def cmd_exact(args: argparse.Namespace) -> int:
    settings = _merge(args, EXACT_DEFAULTS)
    geometry = parse_geometry(str(settings["geometry"]))
    n_up, n_down = _parse_sector(settings["sector"])
    result = exact_spectrum(geometry, float(settings["u"]), n_up, n_down, int(settings["k"]))
    if settings["format"] == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["level", "energy"])
        for level, energy in enumerate(result.energies):
            writer.writerow([level, repr(energy)])
        _emit(buffer.getvalue(), settings["out"])
    else:
        _emit(json_text({
            "geometry": geometry.tag(),
            "u": float(settings["u"]),
            "sector": [n_up, n_down],
            "energies": list(result.energies),
            "truncated": result.truncated,
        }), settings["out"])
    return 0


VQE_DEFAULTS = {
    "geometry": "1x4", "u": 0.0, "sector": "2,2", "levels": 0,
    "layers": 2, "variant": "modified_hopping", "fswap": True,
    "restarts": 5, "stage1_iters": 500, "stage2_iters": 50, "seed": 0,
    "out": None, "trace": None,
}


def cmd_vqe(args: argparse.Namespace) -> int:
    settings = _merge(args, VQE_DEFAULTS)
    geometry = parse_geometry(str(settings["geometry"]))
    n_up, n_down = _parse_sector(settings["sector"])
    max_level = int(settings["levels"])
    trace: list | None = [] if settings["trace"] else None
    results = solve_levels(
        geometry, float(settings["u"]), n_up, n_down, max_level,
        config=_ansatz_config(settings), schedule=_schedule(settings), trace=trace,
    )
    if settings["trace"]:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["iter", "stage", "objective"])
        for row in trace:
            writer.writerow([row[0], row[1], repr(row[2])])
        write_text(settings["trace"], buffer.getvalue())
    _emit(json_text({
        "geometry": geometry.tag(),
        "u": float(settings["u"]),
        "sector": [n_up, n_down],
        "seed": int(settings["seed"]),
        "ansatz": {
            "layers": int(settings["layers"]),
            "variant": str(settings["variant"]),
            "use_fswap": bool(settings["fswap"]),
        },
        "schedule": {
            "stage1_iters": int(settings["stage1_iters"]),
            "stage2_iters": int(settings["stage2_iters"]),
            "restarts": int(settings["restarts"]),
        },
        "levels": [
            {
                "level": r.level,
                "energy": r.energy,
                "mean": r.mean,
                "std_dev": r.std_dev,
                "runs": list(r.runs),
                "overlaps_with_priors": list(r.overlaps_with_priors),
                "params": [float(p) for p in r.params],
            }
            for r in results
        ],
    }), settings["out"])
    return 0


SWEEP_DEFAULTS = {
    "geometry": "1x4", "u_grid": ",".join(str(u) for u in DEFAULT_U_GRID),
    "levels": 0, "layers": 2, "variant": "modified_hopping", "fswap": True,
    "restarts": 5, "stage1_iters": 500, "stage2_iters": 50, "seed": 0,
    "workers": 0, "out": None, "format": "csv,json",
}


def _merge_diagrams(parts: list[GapDiagram], u_values: tuple[float, ...]) -> GapDiagram:
    cells = {}
    for part in parts:
        cells.update(part.cells)
    first = parts[0]
    return GapDiagram(first.geometry_tag, first.energy_source, first.level, u_values, cells)


def _build_vqe_diagram(geometry, u_values, level, config, schedule, workers) -> GapDiagram:
    if workers <= 1 or len(u_values) == 1:
        return build_diagram(VqeSource(geometry, config, schedule), geometry, u_values, level)
    # one source per U column: cell seeds are keyed, so the split changes nothing
    def column(u):
        return build_diagram(VqeSource(geometry, config, schedule), geometry, (u,), level)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(column, u_values))
    return _merge_diagrams(parts, u_values)


def cmd_sweep(args: argparse.Namespace) -> int:
    settings = _merge(args, SWEEP_DEFAULTS)
    geometry = parse_geometry(str(settings["geometry"]))
    u_values = _parse_u_grid(settings["u_grid"])
    if not u_values:
        raise ConfigError("u-grid must contain at least one value")
    level = int(settings["levels"])
    formats = _parse_formats(settings["format"])
    workers = int(settings["workers"]) or (os.cpu_count() or 1)
    prefix = settings["out"] or f"sweep_{geometry.tag()}"

    exact_diagram = build_diagram(ExactSource(geometry), geometry, u_values, level)
    vqe_diagram = _build_vqe_diagram(
        geometry, u_values, level, _ansatz_config(settings), _schedule(settings), workers
    )
    summary = {
        "geometry": geometry.tag(),
        "level": level,
        "seed": int(settings["seed"]),
        "u_values": list(u_values),
        "errors": error_summary(vqe_diagram, exact_diagram),
    }
    metadata = {"seed": int(settings["seed"])}
    for diagram in (exact_diagram, vqe_diagram):
        base = f"{prefix}_{diagram.energy_source}"
        if "csv" in formats:
            write_text(base + ".csv", diagram_csv_text(diagram))
        if "json" in formats:
            write_text(base + ".json", json_text(diagram_json_dict(diagram, metadata)))
        if "svg" in formats:
            for quantity in ("energy", "charge_gap", "spin_gap"):
                write_text(f"{base}_{quantity}.svg", svg_heatmap_text(diagram, quantity))
    write_text(prefix + "_summary.json", json_text(summary))
    sys.stdout.write(json_text(summary))
    return 0


DUMP_DEFAULTS = {
    "geometry": "1x4", "sector": "2,2", "layers": 2,
    "variant": "modified_hopping", "fswap": True, "out": None,
}


def cmd_circuit_dump(args: argparse.Namespace) -> int:
    settings = _merge(args, DUMP_DEFAULTS)
    geometry = parse_geometry(str(settings["geometry"]))
    n_up, n_down = _parse_sector(settings["sector"])
    circuit = build_ansatz(geometry, n_up, n_down, _ansatz_config(settings))
    header = f"# {geometry.tag()} sector=({n_up},{n_down}) n_params={circuit.n_params}"
    if circuit.flags:
        header += " flags=" + ",".join(circuit.flags)
    _emit(header + "\n" + circuit.summary() + "\n", settings["out"])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hubbard-vqe",
        description="Fermi-Hubbard energies via VQE with an exact-diagonalization oracle",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="flat JSON config file; flags override its values")
        p.add_argument("--geometry", help="lattice as ROWSxCOLS, e.g. 2x2 or 1x4")
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("exact", help="exact sector spectrum")
    common(p)
    p.add_argument("--u", type=float, help="interaction strength U/t")
    p.add_argument("--sector", help="occupation as N_UP,N_DOWN")
    p.add_argument("-k", "--k", type=int, dest="k", help="number of eigenvalues")
    p.add_argument("--format", choices=("json", "csv"))
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("vqe", help="variational energies for one sector")
    common(p)
    p.add_argument("--u", type=float)
    p.add_argument("--sector", help="occupation as N_UP,N_DOWN")
    p.add_argument("--levels", type=int, help="highest level to solve (0..2)")
    p.add_argument("--layers", type=int)
    p.add_argument("--variant", choices=("modified_hopping", "plain_hopping", "number_preserving"))
    p.add_argument("--fswap", action=argparse.BooleanOptionalAction)
    p.add_argument("--restarts", type=int)
    p.add_argument("--stage1-iters", type=int, dest="stage1_iters")
    p.add_argument("--stage2-iters", type=int, dest="stage2_iters")
    p.add_argument("--seed", type=int)
    p.add_argument("--trace", help="write an (iter,stage,objective) CSV trace here")
    p.set_defaults(func=cmd_vqe)

    p = sub.add_parser("sweep", help="exact + VQE gap diagrams over a U grid")
    common(p)
    p.add_argument("--u-grid", dest="u_grid", help="comma-separated U values")
    p.add_argument("--levels", type=int, help="diagram level (0 or 2)")
    p.add_argument("--layers", type=int)
    p.add_argument("--variant", choices=("modified_hopping", "plain_hopping", "number_preserving"))
    p.add_argument("--fswap", action=argparse.BooleanOptionalAction)
    p.add_argument("--restarts", type=int)
    p.add_argument("--stage1-iters", type=int, dest="stage1_iters")
    p.add_argument("--stage2-iters", type=int, dest="stage2_iters")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, help="parallel U columns (0 = all cores)")
    p.add_argument("--format", help="comma list from csv,json,svg")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("circuit-dump", help="print the ansatz slot listing")
    common(p)
    p.add_argument("--sector", help="occupation as N_UP,N_DOWN")
    p.add_argument("--layers", type=int)
    p.add_argument("--variant", choices=("modified_hopping", "plain_hopping", "number_preserving"))
    p.add_argument("--fswap", action=argparse.BooleanOptionalAction)
    p.set_defaults(func=cmd_circuit_dump)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, GeometryError, TermError, LevelOrderError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
