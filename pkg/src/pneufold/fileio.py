"""File formats: CSV datasets, material files, actuator config documents.

All numeric output is written with 9 significant digits and no timestamps,
so identical inputs always produce byte-identical files.

Formats
-------
stress-strain CSV   header ``strain,stress_mpa``; engineering strain,
                    nominal stress.  One sample per line, strictly
                    increasing strain.
angle CSV           header ``pressure_kpa,angle_deg``.
contour CSV         header ``x_mm,y_mm``; ordered points.
sweep CSV           header ``pressure_kpa,lambda,phi_rad,theta_rad,theta_deg,residual``.
shape CSV           header ``x_mm,y_mm,heading_rad``; one row per vertex.
material JSON       keys ``c10,c01,c11,c20,c02,d`` in MPa / MPa^-1,
                    optional ``c30``.
config JSON         blocks ``geometry``, ``actuator``, optional ``solver``
                    and exactly one material source: an inline ``material``
                    block or a ``material_file`` path (resolved relative to
                    the config file).
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable

from .errors import InputError
from .material import MooneyRivlinModel, StressStrainSample

_MATERIAL_KEYS = ("c10", "c01", "c11", "c20", "c02", "d")
_GEOMETRY_KEYS = ("a", "b", "l_c", "h1", "t_w", "t_c", "alpha", "H1", "depth")


def fmt9(value: float) -> str:
    """Format a float with 9 significant digits (stable across runs)."""
    return format(float(value), ".9g")


def _read_rows(path: str | Path, expected_header: list[str]) -> list[list[float]]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise InputError(f"file not found: {path}") from None
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None

    reader = csv.reader(text.splitlines())
    try:
        header = next(reader)
    except StopIteration:
        raise InputError(f"{path}: empty file, expected header {','.join(expected_header)}")
    if [h.strip() for h in header] != expected_header:
        raise InputError(
            f"{path}: expected header {','.join(expected_header)!r}, "
            f"got {','.join(header)!r}"
        )
    rows: list[list[float]] = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(expected_header):
            raise InputError(
                f"{path}:{lineno}: expected {len(expected_header)} columns, got {len(row)}"
            )
        try:
            values = [float(cell) for cell in row]
        except ValueError as exc:
            raise InputError(f"{path}:{lineno}: {exc}") from None
        if not all(math.isfinite(v) for v in values):
            raise InputError(f"{path}:{lineno}: non-finite value")
        rows.append(values)
    return rows


def read_stress_strain_csv(path: str | Path) -> list[StressStrainSample]:
    rows = _read_rows(path, ["strain", "stress_mpa"])
    return [StressStrainSample(strain=r[0], stress=r[1]) for r in rows]


def read_angle_csv(path: str | Path) -> list[tuple[float, float]]:
    rows = _read_rows(path, ["pressure_kpa", "angle_deg"])
    return [(r[0], r[1]) for r in rows]


def read_contour_csv(path: str | Path) -> list[tuple[float, float]]:
    rows = _read_rows(path, ["x_mm", "y_mm"])
    return [(r[0], r[1]) for r in rows]


def write_sweep_csv(path: str | Path, states: Iterable) -> None:
    """States must expose pressure_kpa, lambda_star, phi, theta, theta_deg,
    residual (the core BendingState and the service schema both do)."""
    lines = ["pressure_kpa,lambda,phi_rad,theta_rad,theta_deg,residual"]
    for s in states:
        lines.append(
            ",".join(
                fmt9(v)
                for v in (s.pressure_kpa, s.lambda_star, s.phi, s.theta, s.theta_deg, s.residual)
            )
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_shape_csv(path: str | Path, vertices: Iterable[tuple[float, float, float]]) -> None:
    lines = ["x_mm,y_mm,heading_rad"]
    for x, y, heading in vertices:
        lines.append(f"{fmt9(x)},{fmt9(y)},{fmt9(heading)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def material_to_dict(model: MooneyRivlinModel) -> dict:
    doc = {
        "c10": model.c10,
        "c01": model.c01,
        "c11": model.c11,
        "c20": model.c20,
        "c02": model.c02,
        "d": model.d_incompressible,
    }
    if model.c30 != 0.0:
        doc["c30"] = model.c30
    return doc


def material_from_dict(doc: dict, source: str = "material") -> MooneyRivlinModel:
    if not isinstance(doc, dict):
        raise InputError(f"{source}: expected a JSON object")
    unknown = sorted(set(doc) - set(_MATERIAL_KEYS) - {"c30"})
    if unknown:
        raise InputError(f"{source}: unknown keys {unknown}")
    missing = [k for k in _MATERIAL_KEYS if k not in doc]
    if missing:
        raise InputError(f"{source}: missing keys {missing}")
    try:
        values = {k: float(doc[k]) for k in _MATERIAL_KEYS}
        c30 = float(doc.get("c30", 0.0))
    except (TypeError, ValueError) as exc:
        raise InputError(f"{source}: {exc}") from None
    return MooneyRivlinModel(
        c10=values["c10"],
        c01=values["c01"],
        c11=values["c11"],
        c20=values["c20"],
        c02=values["c02"],
        d_incompressible=values["d"],
        c30=c30,
    )


def write_material_json(path: str | Path, model: MooneyRivlinModel) -> None:
    Path(path).write_text(
        json.dumps(material_to_dict(model), indent=2) + "\n", encoding="utf-8"
    )


def read_material_json(path: str | Path) -> MooneyRivlinModel:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"file not found: {path}") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot parse {path}: {exc}") from None
    return material_from_dict(doc, source=str(path))


def load_config_document(path: str | Path) -> dict:
    """Load an actuator config file into the JSON shape the service accepts.

    Resolves a ``material_file`` reference (relative to the config file's
    directory) into an inline material block and checks block/key sanity.
    Numeric validation is left to the model layer.
    """
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"file not found: {path}") from None
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot parse {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: config must be a JSON object")

    known_blocks = {"geometry", "material", "material_file", "actuator", "solver"}
    unknown = sorted(set(doc) - known_blocks)
    if unknown:
        raise InputError(f"{path}: unknown top-level keys {unknown}")
    for block in ("geometry", "actuator"):
        if block not in doc or not isinstance(doc[block], dict):
            raise InputError(f"{path}: missing required block {block!r}")

    has_inline = "material" in doc
    has_file = "material_file" in doc
    if has_inline == has_file:
        raise InputError(
            f"{path}: exactly one material source required "
            "('material' block or 'material_file' path)"
        )
    if has_file:
        mat_path = Path(doc["material_file"])
        if not mat_path.is_absolute():
            mat_path = path.parent / mat_path
        material = material_to_dict(read_material_json(mat_path))
    else:
        material = material_to_dict(material_from_dict(doc["material"], source=f"{path}: material"))

    geometry = dict(doc["geometry"])
    unknown_geo = sorted(set(geometry) - set(_GEOMETRY_KEYS) - {"h_ee_override"})
    if unknown_geo:
        raise InputError(f"{path}: unknown geometry keys {unknown_geo}")
    missing_geo = [k for k in _GEOMETRY_KEYS if k not in geometry]
    if missing_geo:
        raise InputError(f"{path}: missing geometry keys {missing_geo}")

    actuator = dict(doc["actuator"])
    unknown_act = sorted(set(actuator) - {"n_folds", "area_a", "pitch"})
    if unknown_act:
        raise InputError(f"{path}: unknown actuator keys {unknown_act}")
    for key in ("n_folds", "area_a"):
        if key not in actuator:
            raise InputError(f"{path}: missing actuator key {key!r}")

    solver = dict(doc.get("solver", {}))
    unknown_solver = sorted(set(solver) - {"lambda_max", "solver_tol"})
    if unknown_solver:
        raise InputError(f"{path}: unknown solver keys {unknown_solver}")

    return {
        "geometry": geometry,
        "material": material,
        "actuator": actuator,
        "solver": solver,
    }
