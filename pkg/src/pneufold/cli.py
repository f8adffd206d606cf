"""Command-line client for the actuator toolkit.

The CLI owns all file I/O (CSV datasets, config documents, output tables)
and delegates every computation to the HTTP service as JSON.  By default
the service runs in-process over an ASGI transport, so no server needs to
be up; set ``PNEUFOLD_SERVER`` to a base URL (e.g. ``http://host:8000``) to
target a remote instance instead.

Exit codes: 0 success, 2 input/validation error, 3 numeric/solver failure.
Outputs carry no timestamps and use fixed 9-significant-digit formatting,
so identical inputs produce byte-identical files.
"""

from __future__ import annotations

import argparse
import asyncio
import os
import sys

import httpx

from . import __version__, fileio
from .errors import InputError

SERVER_ENV_VAR = "PNEUFOLD_SERVER"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3


def _call(method: str, path: str, payload: dict | None = None) -> tuple[int, dict]:
    """Send one request to the service; in-process unless PNEUFOLD_SERVER is set."""
    base = os.environ.get(SERVER_ENV_VAR)
    if base:
        with httpx.Client(base_url=base, timeout=300.0) as client:
            resp = client.request(method, path, json=payload)
            return resp.status_code, resp.json()

    from .service.app import app

    async def _go() -> tuple[int, dict]:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://pneufold.internal", timeout=300.0
        ) as client:
            resp = await client.request(method, path, json=payload)
            return resp.status_code, resp.json()

    return asyncio.run(_go())


def _error_message(body: dict) -> str:
    detail = body.get("detail", body)
    if isinstance(detail, dict):
        return detail.get("message", str(detail))
    if isinstance(detail, list):  # FastAPI request-validation errors
        parts = []
        for item in detail:
            loc = ".".join(str(p) for p in item.get("loc", []))
            parts.append(f"{loc}: {item.get('msg', '')}")
        return "; ".join(parts)
    return str(detail)


def _fail(status: int, body: dict) -> int:
    print(f"error: {_error_message(body)}", file=sys.stderr)
    return EXIT_NUMERIC if status == 409 else EXIT_INPUT if status in (400, 404, 422) else EXIT_NUMERIC


def _print_state(state: dict) -> None:
    radius = state.get("radius_mm")
    rows = [
        ("pressure_kpa", fileio.fmt9(state["pressure_kpa"])),
        ("lambda_star", fileio.fmt9(state["lambda_star"])),
        ("phi_rad", fileio.fmt9(state["phi_rad"])),
        ("theta_rad", fileio.fmt9(state["theta_rad"])),
        ("theta_deg", fileio.fmt9(state["theta_deg"])),
        ("radius_mm", "inf" if radius is None else fileio.fmt9(radius)),
        ("residual", fileio.fmt9(state["residual"])),
    ]
    for name, value in rows:
        print(f"{name:<14}{value}")


def _load_config_payload(path: str) -> dict:
    return fileio.load_config_document(path)


def cmd_fit_material(args: argparse.Namespace) -> int:
    samples = fileio.read_stress_strain_csv(args.input)
    payload = {
        "samples": [{"strain": s.strain, "stress_mpa": s.stress} for s in samples]
    }
    status, body = _call("POST", "/material/fit", payload)
    if status != 200:
        return _fail(status, body)
    model = fileio.material_from_dict(body["material"], source="service response")
    fileio.write_material_json(args.out, model)
    for key in ("c10", "c01", "c11", "c20", "c02", "d"):
        print(f"{key:<18}{fileio.fmt9(body['material'][key])} MPa")
    print(f"{'residual_norm':<18}{fileio.fmt9(body['residual_norm'])} MPa")
    print(f"{'condition_number':<18}{fileio.fmt9(body['condition_number'])}")
    for note in body.get("warnings", []):
        print(f"warning: {note}", file=sys.stderr)
    print(f"wrote material to {args.out}")
    return EXIT_OK


def cmd_eval(args: argparse.Namespace) -> int:
    model = fileio.read_material_json(args.material)
    payload = {"material": fileio.material_to_dict(model), "stretch": args.stretch}
    status, body = _call("POST", "/material/eval", payload)
    if status != 200:
        return _fail(status, body)
    uni, plane = body["uniaxial"], body["plane_strain"]
    print(f"{'stretch':<26}{fileio.fmt9(body['stretch'])}")
    print(f"{'uniaxial i1':<26}{fileio.fmt9(uni['i1'])}")
    print(f"{'uniaxial i2':<26}{fileio.fmt9(uni['i2'])}")
    print(f"{'uniaxial energy (MPa)':<26}{fileio.fmt9(uni['energy_mpa'])}")
    print(f"{'nominal stress (MPa)':<26}{fileio.fmt9(body['nominal_stress_mpa'])}")
    print(f"{'plane-strain i1 = i2':<26}{fileio.fmt9(plane['i1'])}")
    print(f"{'plane-strain energy (MPa)':<26}{fileio.fmt9(plane['energy_mpa'])}")
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    payload = {
        "config": _load_config_payload(args.config),
        "pressure_kpa": args.pressure,
    }
    status, body = _call("POST", "/bending/solve", payload)
    if status != 200:
        return _fail(status, body)
    _print_state(body)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    payload = {
        "config": _load_config_payload(args.config),
        "p_min_kpa": args.pmin,
        "p_max_kpa": args.pmax,
        "step_kpa": args.step,
    }
    status, body = _call("POST", "/bending/sweep", payload)
    if status == 200:
        states = [_StateRow(s) for s in body["states"]]
        fileio.write_sweep_csv(args.out, states)
        print(f"wrote {len(states)} states to {args.out}")
        return EXIT_OK
    detail = body.get("detail", {})
    if status == 409 and isinstance(detail, dict) and "states" in detail:
        states = [_StateRow(s) for s in detail["states"]]
        fileio.write_sweep_csv(args.out, states)
        print(
            f"error: {detail.get('message', 'sweep saturated')}\n"
            f"wrote {len(states)} partial states to {args.out}",
            file=sys.stderr,
        )
        return EXIT_NUMERIC
    return _fail(status, body)


class _StateRow:
    """Adapter giving sweep-CSV attribute names to a service state dict."""

    def __init__(self, state: dict):
        self.pressure_kpa = state["pressure_kpa"]
        self.lambda_star = state["lambda_star"]
        self.phi = state["phi_rad"]
        self.theta = state["theta_rad"]
        self.theta_deg = state["theta_deg"]
        self.residual = state["residual"]


def cmd_calibrate_alpha(args: argparse.Namespace) -> int:
    data = fileio.read_angle_csv(args.data)
    payload = {
        "config": _load_config_payload(args.config),
        "data": [{"pressure_kpa": p, "angle_deg": a} for p, a in data],
        "alpha_min": args.alpha_min,
        "alpha_max": args.alpha_max,
    }
    status, body = _call("POST", "/bending/calibrate-alpha", payload)
    if status != 200:
        return _fail(status, body)
    err = body["max_relative_error"]
    print(f"{'alpha':<20}{fileio.fmt9(body['alpha'])}")
    print(f"{'max_rel_error':<20}{fileio.fmt9(err)} ({fileio.fmt9(100.0 * err)}%)")
    print(f"{'evaluations':<20}{body['evaluations']}")
    return EXIT_OK


def cmd_shape(args: argparse.Namespace) -> int:
    payload = {
        "config": _load_config_payload(args.config),
        "pressure_kpa": args.pressure,
        "mask": args.mask,
    }
    status, body = _call("POST", "/vel/shape", payload)
    if status != 200:
        return _fail(status, body)
    vertices = [(v["x_mm"], v["y_mm"], v["heading_rad"]) for v in body["vertices"]]
    fileio.write_shape_csv(args.out, vertices)
    print(f"wrote {len(vertices)} vertices to {args.out}")
    return EXIT_OK


def cmd_conform(args: argparse.Namespace) -> int:
    contour = fileio.read_contour_csv(args.contour)
    payload = {
        "config": _load_config_payload(args.config),
        "pressure_kpa": args.pressure,
        "contour": [{"x_mm": x, "y_mm": y} for x, y in contour],
        "mask": args.mask,
        "optimize": args.optimize,
        "epsilon_mm": args.epsilon,
    }
    status, body = _call("POST", "/vel/conform", payload)
    if status != 200:
        return _fail(status, body)
    print(f"{'mask':<16}{body['mask']}")
    print(f"{'contact_ratio':<16}{body['contact_ratio']:.3f}")
    print(f"{'rms_mm':<16}{fileio.fmt9(body['rms_distance_mm'])}")
    print(f"{'theta_deg':<16}{fileio.fmt9(body['state']['theta_deg'])}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pneufold",
        description=(
            "Fold-based pneumatic actuator toolkit: material fitting, "
            "pressure-to-angle prediction and constraint-pattern search. "
            f"Set {SERVER_ENV_VAR} to use a remote service."
        ),
    )
    parser.add_argument("--version", action="version", version=f"pneufold {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fit-material", help="fit Mooney-Rivlin coefficients to tensile data")
    p.add_argument("--input", required=True, help="stress-strain CSV (strain,stress_mpa)")
    p.add_argument("--out", required=True, help="material JSON output path")
    p.set_defaults(func=cmd_fit_material)

    p = sub.add_parser("eval", help="evaluate a material at one stretch ratio")
    p.add_argument("--material", required=True, help="material JSON file")
    p.add_argument("--stretch", required=True, type=float, help="stretch ratio (lambda)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("solve", help="solve the bend equilibrium at one pressure")
    p.add_argument("--config", required=True, help="actuator config JSON")
    p.add_argument("--pressure", required=True, type=float, help="gauge pressure, kPa")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="solve over a pressure range, write CSV")
    p.add_argument("--config", required=True, help="actuator config JSON")
    p.add_argument("--pmin", required=True, type=float, help="first pressure, kPa")
    p.add_argument("--pmax", required=True, type=float, help="last pressure, kPa")
    p.add_argument("--step", type=float, default=10.0, help="pressure step, kPa (default 10)")
    p.add_argument("--out", required=True, help="sweep CSV output path")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("calibrate-alpha", help="fit the aspect-ratio exponent to angle data")
    p.add_argument("--config", required=True, help="actuator config JSON")
    p.add_argument("--data", required=True, help="angle CSV (pressure_kpa,angle_deg)")
    p.add_argument("--alpha-min", type=float, default=0.0, help="search lower bound (default 0)")
    p.add_argument("--alpha-max", type=float, default=3.0, help="search upper bound (default 3)")
    p.set_defaults(func=cmd_calibrate_alpha)

    p = sub.add_parser("shape", help="reconstruct the backbone for a constraint mask")
    p.add_argument("--config", required=True, help="actuator config JSON")
    p.add_argument("--pressure", required=True, type=float, help="gauge pressure, kPa")
    p.add_argument("--mask", required=True, help="fold mask, '1'=free '0'=constrained, proximal first")
    p.add_argument("--out", required=True, help="shape CSV output path")
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("conform", help="score or optimize conformity against a contour")
    p.add_argument("--config", required=True, help="actuator config JSON")
    p.add_argument("--pressure", required=True, type=float, help="gauge pressure, kPa")
    p.add_argument("--contour", required=True, help="contour CSV (x_mm,y_mm)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--mask", help="fold mask to score")
    group.add_argument("--optimize", action="store_true", help="search all masks exhaustively")
    p.add_argument("--epsilon", type=float, default=2.0, help="contact tolerance, mm (default 2)")
    p.set_defaults(func=cmd_conform)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except httpx.HTTPError as exc:
        print(f"error: service request failed: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
