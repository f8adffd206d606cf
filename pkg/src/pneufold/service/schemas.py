"""Pydantic request/response models for the HTTP service.

These mirror the core dataclasses one-to-one; numeric validation beyond
basic typing is delegated to the core layer so that the CLI, the service
and direct library use all enforce identical rules.
"""

from __future__ import annotations

import math

from pydantic import BaseModel, Field

from .. import bending, geometry, material, vel


class MaterialDoc(BaseModel):
    """Mooney-Rivlin coefficients, MPa; ``d`` must stay 0 (incompressible)."""

    c10: float
    c01: float
    c11: float
    c20: float
    c02: float
    d: float = 0.0
    c30: float = 0.0

    def to_model(self) -> material.MooneyRivlinModel:
        return material.MooneyRivlinModel(
            c10=self.c10, c01=self.c01, c11=self.c11, c20=self.c20, c02=self.c02,
            d_incompressible=self.d, c30=self.c30,
        )

    @classmethod
    def from_model(cls, model: material.MooneyRivlinModel) -> "MaterialDoc":
        return cls(
            c10=model.c10, c01=model.c01, c11=model.c11, c20=model.c20,
            c02=model.c02, d=model.d_incompressible, c30=model.c30,
        )


class GeometryDoc(BaseModel):
    """Raw fold dimensions, mm; ``depth`` is the finger depth."""

    a: float
    b: float
    l_c: float
    h1: float
    t_w: float
    t_c: float
    alpha: float
    H1: float
    depth: float
    h_ee_override: float | None = None


class ActuatorDoc(BaseModel):
    n_folds: int
    area_a: float          # pressurized area, mm^2
    pitch: float | None = None   # backbone mm per fold; default 2*x_e


class SolverDoc(BaseModel):
    lambda_max: float = 2.5
    solver_tol: float | None = None


class ConfigDoc(BaseModel):
    """Full actuator configuration as it appears in config files."""

    geometry: GeometryDoc
    material: MaterialDoc
    actuator: ActuatorDoc
    solver: SolverDoc = Field(default_factory=SolverDoc)

    def to_config(self) -> bending.ActuatorConfig:
        geo = geometry.ConnectorGeometry(
            a=self.geometry.a, b=self.geometry.b, l_c=self.geometry.l_c,
            h1=self.geometry.h1, t_w=self.geometry.t_w, t_c=self.geometry.t_c,
            alpha=self.geometry.alpha, H1=self.geometry.H1,
            h_ee_override=self.geometry.h_ee_override,
        )
        return bending.ActuatorConfig(
            geometry=geo,
            depth=self.geometry.depth,
            material=self.material.to_model(),
            n_folds=self.actuator.n_folds,
            area_a=self.actuator.area_a,
            lambda_max=self.solver.lambda_max,
            solver_tol=self.solver.solver_tol,
            pitch=self.actuator.pitch,
        )


class StressStrainRow(BaseModel):
    strain: float
    stress_mpa: float


class FitRequest(BaseModel):
    samples: list[StressStrainRow]


class FitResponse(BaseModel):
    material: MaterialDoc
    residual_norm: float
    condition_number: float
    warnings: list[str] = Field(default_factory=list)


class EvalRequest(BaseModel):
    material: MaterialDoc
    stretch: float


class KinematicsOut(BaseModel):
    i1: float
    i2: float
    energy_mpa: float


class EvalResponse(BaseModel):
    stretch: float
    uniaxial: KinematicsOut
    plane_strain: KinematicsOut
    nominal_stress_mpa: float


class SolveRequest(BaseModel):
    config: ConfigDoc
    pressure_kpa: float


class BendingStateOut(BaseModel):
    """Equilibrium record; ``radius_mm`` is null for a straight actuator."""

    pressure_kpa: float
    lambda_star: float
    phi_rad: float
    theta_rad: float
    theta_deg: float
    residual: float
    radius_mm: float | None

    @classmethod
    def from_state(cls, state: bending.BendingState) -> "BendingStateOut":
        return cls(
            pressure_kpa=state.pressure_kpa,
            lambda_star=state.lambda_star,
            phi_rad=state.phi,
            theta_rad=state.theta,
            theta_deg=state.theta_deg,
            residual=state.residual,
            radius_mm=None if math.isinf(state.radius) else state.radius,
        )

    # Column names used by the sweep CSV writer.
    @property
    def phi(self) -> float:
        return self.phi_rad

    @property
    def theta(self) -> float:
        return self.theta_rad


class SweepRequest(BaseModel):
    config: ConfigDoc
    p_min_kpa: float
    p_max_kpa: float
    step_kpa: float = 10.0


class SweepResponse(BaseModel):
    states: list[BendingStateOut]


class AngleRow(BaseModel):
    pressure_kpa: float
    angle_deg: float


class CalibrateRequest(BaseModel):
    config: ConfigDoc
    data: list[AngleRow]
    alpha_min: float = 0.0
    alpha_max: float = 3.0


class CalibrateResponse(BaseModel):
    alpha: float
    max_relative_error: float
    evaluations: int


class ShapeRequest(BaseModel):
    config: ConfigDoc
    pressure_kpa: float
    mask: str
    pitch_mm: float | None = None


class VertexOut(BaseModel):
    x_mm: float
    y_mm: float
    heading_rad: float


class ShapeResponse(BaseModel):
    vertices: list[VertexOut]
    pitch_mm: float
    state: BendingStateOut


class PointIn(BaseModel):
    x_mm: float
    y_mm: float


class ConformRequest(BaseModel):
    config: ConfigDoc
    pressure_kpa: float
    contour: list[PointIn]
    mask: str | None = None
    optimize: bool = False
    epsilon_mm: float = 2.0
    pitch_mm: float | None = None
    stations: int = vel.DEFAULT_STATIONS


class ConformResponse(BaseModel):
    mask: str
    contact_ratio: float
    rms_distance_mm: float
    state: BendingStateOut


class HealthResponse(BaseModel):
    status: str
    version: str
