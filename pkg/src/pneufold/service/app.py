"""HTTP compute service exposing the actuator toolkit.

All endpoints are stateless pure computations over the request body; no
files are touched server-side.  Error contract:

* 422 -- invalid input (schema violations and core precondition failures),
* 409 -- numerically infeasible computation (pressure saturation, rank
  deficiency, non-monotone material, infeasible calibration); the detail
  object names the error class, and a saturated sweep additionally carries
  the states solved before the failing pressure.

Run with ``uvicorn pneufold.service.app:app``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, bending, errors, material, vel
from . import schemas

app = FastAPI(
    title="pneufold",
    version=__version__,
    description=(
        "Mooney-Rivlin material fitting, energy-balance bend prediction and "
        "variable-effective-length pattern search for fold-based pneumatic "
        "soft actuators"
    ),
)


def _error_detail(exc: errors.PneufoldError) -> dict:
    return {"error": type(exc).__name__, "message": str(exc)}


@app.exception_handler(errors.PneufoldError)
async def pneufold_error_handler(request: Request, exc: errors.PneufoldError):
    status = 422 if isinstance(exc, errors.InputError) else 409
    return JSONResponse(status_code=status, content={"detail": _error_detail(exc)})


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.post("/material/fit", response_model=schemas.FitResponse)
def fit_material(req: schemas.FitRequest) -> schemas.FitResponse:
    samples = [
        material.StressStrainSample(strain=row.strain, stress=row.stress_mpa)
        for row in req.samples
    ]
    report = material.fit_mooney_rivlin(samples)
    return schemas.FitResponse(
        material=schemas.MaterialDoc.from_model(report.model),
        residual_norm=report.residual_norm,
        condition_number=report.condition_number,
        warnings=list(report.warnings),
    )


@app.post("/material/eval", response_model=schemas.EvalResponse)
def eval_material(req: schemas.EvalRequest) -> schemas.EvalResponse:
    model = req.material.to_model()
    uni = material.invariants_uniaxial(req.stretch)
    plane = material.invariants_plane_strain(req.stretch)
    return schemas.EvalResponse(
        stretch=req.stretch,
        uniaxial=schemas.KinematicsOut(
            i1=uni.i1, i2=uni.i2,
            energy_mpa=material.strain_energy_density(model, uni),
        ),
        plane_strain=schemas.KinematicsOut(
            i1=plane.i1, i2=plane.i2,
            energy_mpa=material.strain_energy_density(model, plane),
        ),
        nominal_stress_mpa=material.nominal_stress_uniaxial(model, req.stretch),
    )


@app.post("/bending/solve", response_model=schemas.BendingStateOut)
def solve(req: schemas.SolveRequest) -> schemas.BendingStateOut:
    state = bending.solve_equilibrium(req.config.to_config(), req.pressure_kpa)
    return schemas.BendingStateOut.from_state(state)


@app.post("/bending/sweep", response_model=schemas.SweepResponse)
def sweep(req: schemas.SweepRequest):
    config = req.config.to_config()
    try:
        states = bending.pressure_sweep(
            config, req.p_min_kpa, req.p_max_kpa, req.step_kpa
        )
    except errors.SaturationError as exc:
        detail = _error_detail(exc)
        detail["pressure_kpa"] = exc.pressure_kpa
        detail["states"] = [
            schemas.BendingStateOut.from_state(s).model_dump()
            for s in exc.partial_states or []
        ]
        return JSONResponse(status_code=409, content={"detail": detail})
    return schemas.SweepResponse(
        states=[schemas.BendingStateOut.from_state(s) for s in states]
    )


@app.post("/bending/calibrate-alpha", response_model=schemas.CalibrateResponse)
def calibrate_alpha(req: schemas.CalibrateRequest) -> schemas.CalibrateResponse:
    result = bending.calibrate_alpha(
        req.config.to_config(),
        [(row.pressure_kpa, row.angle_deg) for row in req.data],
        alpha_min=req.alpha_min,
        alpha_max=req.alpha_max,
    )
    return schemas.CalibrateResponse(
        alpha=result.alpha,
        max_relative_error=result.max_relative_error,
        evaluations=result.evaluations,
    )


@app.post("/vel/shape", response_model=schemas.ShapeResponse)
def shape(req: schemas.ShapeRequest) -> schemas.ShapeResponse:
    config = req.config.to_config()
    state = bending.solve_equilibrium(config, req.pressure_kpa)
    mask = vel.SegmentMask.from_string(req.mask)
    pitch = req.pitch_mm if req.pitch_mm is not None else config.effective_pitch()
    backbone = vel.backbone_shape(config, state, mask, pitch)
    return schemas.ShapeResponse(
        vertices=[
            schemas.VertexOut(x_mm=x, y_mm=y, heading_rad=h)
            for x, y, h in backbone.vertices
        ],
        pitch_mm=pitch,
        state=schemas.BendingStateOut.from_state(state),
    )


@app.post("/vel/conform", response_model=schemas.ConformResponse)
def conform(req: schemas.ConformRequest) -> schemas.ConformResponse:
    if req.optimize == (req.mask is not None):
        raise errors.InputError(
            "provide exactly one of 'mask' or 'optimize': "
            f"mask={req.mask!r}, optimize={req.optimize}"
        )
    config = req.config.to_config()
    state = bending.solve_equilibrium(config, req.pressure_kpa)
    contour = vel.ContourProfile(points=tuple((p.x_mm, p.y_mm) for p in req.contour))
    pitch = req.pitch_mm if req.pitch_mm is not None else config.effective_pitch()

    if req.optimize:
        mask, score = vel.optimize_mask(
            config, state, contour, pitch, req.epsilon_mm, n_stations=req.stations
        )
    else:
        mask = vel.SegmentMask.from_string(req.mask)
        backbone = vel.backbone_shape(config, state, mask, pitch)
        score = vel.conformity_score(
            backbone, contour, req.epsilon_mm, n_stations=req.stations
        )
    return schemas.ConformResponse(
        mask=mask.to_string(),
        contact_ratio=score.contact_ratio,
        rms_distance_mm=score.rms_distance,
        state=schemas.BendingStateOut.from_state(state),
    )
