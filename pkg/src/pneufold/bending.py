"""Energy-balance bending model for the fold-based actuator.

At a constant gauge pressure the actuator settles where the rate at which
pressure work is released equals the rate at which strain energy is stored
in the expanding walls, both taken with respect to the wall stretch:

    g(lam) = v_tt * dW/dlam  -  P * A * (H1 - h_e)/2 * (x_e / h_ee)  =  0

(The bare sum of the two gradients cannot vanish for lam > 1 since both
are positive; the pressure term enters the potential with a negative sign,
which also yields the required lam* = 1 at P = 0.)

The pressure-side gradient is independent of lam, the strain-side gradient
starts at 0 and grows, so the equilibrium stretch lam* is found by a
bracketed bisection on [1, lambda_max], preceded by a geometric scan that
certifies the bracket and flags non-monotone (pathological) materials.
No derivative-based iteration is used; the solve is deterministic across
platforms at tolerance level.

From lam* the bend follows as per-connector angle phi = (x_e/h_ee)*(lam*-1)
and total angle theta = n_folds * phi.

Units: mm, N, MPa internally; pressures cross the API in kPa.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, replace

from . import material as mat
from .errors import CalibrationError, InputError, SaturationError, SolverError
from .geometry import ConnectorGeometry, EquivalentConnector, equivalent_connector

KPA_TO_MPA = 1e-3

#: Points in the bracketing scan of [1, lambda_max]; offsets from 1 are
#: geometric so roots arbitrarily close to 1 still land in the first cell.
_SCAN_POINTS = 49
_SCAN_SMALLEST_FRACTION = 1e-12
_MAX_BISECTIONS = 200


@dataclass(frozen=True)
class ActuatorConfig:
    """Complete actuator description.

    ``area_a`` is the pressurized cross-section area in mm^2 (not derivable
    from the connector geometry; it must be supplied).  ``solver_tol`` is an
    absolute residual tolerance in N*mm per unit stretch; when None it is
    taken as 1e-9 of the problem scale P*A*H1 at each pressure.  ``pitch``
    is the backbone length one fold occupies, defaulting to the full fold
    pitch 2*x_e.
    """

    geometry: ConnectorGeometry
    depth: float
    material: mat.MooneyRivlinModel
    n_folds: int
    area_a: float
    lambda_max: float = 2.5
    solver_tol: float | None = None
    pitch: float | None = None

    def __post_init__(self):
        if not (isinstance(self.n_folds, int) and self.n_folds >= 1):
            raise InputError(f"n_folds must be an integer >= 1, got {self.n_folds!r}")
        if not (math.isfinite(self.area_a) and self.area_a > 0.0):
            raise InputError(f"area_a must be > 0, got {self.area_a!r}")
        if not (math.isfinite(self.lambda_max) and self.lambda_max > 1.0):
            raise InputError(f"lambda_max must be > 1, got {self.lambda_max!r}")
        if self.solver_tol is not None and not (
            math.isfinite(self.solver_tol) and self.solver_tol > 0.0
        ):
            raise InputError(f"solver_tol must be > 0, got {self.solver_tol!r}")
        if self.pitch is not None and not (
            math.isfinite(self.pitch) and self.pitch > 0.0
        ):
            raise InputError(f"pitch must be > 0, got {self.pitch!r}")
        connector = equivalent_connector(self.geometry, self.depth)
        if connector.h_e >= self.geometry.H1:
            raise InputError(
                f"equivalent height h_e={connector.h_e:.6g} reaches the section "
                f"height H1={self.geometry.H1:.6g}; the pressure moment arm "
                "(H1 - h_e)/2 must be positive"
            )

    def connector(self) -> EquivalentConnector:
        """Equivalent-connector dimensions for this geometry and depth."""
        return equivalent_connector(self.geometry, self.depth)

    def effective_pitch(self) -> float:
        """Backbone length per fold, mm: explicit ``pitch`` or 2*x_e."""
        return self.pitch if self.pitch is not None else 2.0 * self.connector().x_e


@dataclass(frozen=True)
class BendingState:
    """Equilibrium at one pressure.

    ``radius`` is the bend radius of one connector in mm (infinite when the
    actuator is straight); ``residual`` the absolute equilibrium gradient
    mismatch at the returned stretch.
    """

    pressure_kpa: float
    lambda_star: float
    phi: float        # per-connector angle, rad
    theta: float      # total angle, rad; always n_folds * phi
    residual: float
    radius: float     # mm; math.inf at phi == 0

    @property
    def theta_deg(self) -> float:
        return math.degrees(self.theta)


def air_work_gradient(config: ActuatorConfig, pressure_kpa: float) -> float:
    """Pressure-side energy gradient, N*mm per unit stretch.

    P*A*(H1 - h_e)/2 * (x_e/h_ee) with P converted to MPa; constant in the
    stretch, linear in the pressure.
    """
    if not (math.isfinite(pressure_kpa) and pressure_kpa >= 0.0):
        raise InputError(f"pressure must be >= 0 kPa, got {pressure_kpa!r}")
    conn = config.connector()
    moment_arm = (config.geometry.H1 - conn.h_e) / 2.0
    return (
        pressure_kpa * KPA_TO_MPA * config.area_a * moment_arm * (conn.x_e / conn.h_ee)
    )


def strain_work_gradient(config: ActuatorConfig, lam: float) -> float:
    """Strain-side energy gradient v_tt * dW/dlam, N*mm per unit stretch.

    Uses the analytic plane-strain derivative of the full five-coefficient
    energy; exactly 0 at lam = 1.
    """
    if not (math.isfinite(lam) and lam >= 1.0):
        raise InputError(f"stretch must be >= 1, got {lam!r}")
    conn = config.connector()
    return conn.v_tt * mat.plane_strain_energy_derivative(config.material, lam)


def equilibrium_residual(config: ActuatorConfig, pressure_kpa: float, lam: float) -> float:
    """g(lam) = strain_work_gradient - air_work_gradient; the root is lam*."""
    return strain_work_gradient(config, lam) - air_work_gradient(config, pressure_kpa)


def _solver_tolerance(config: ActuatorConfig, pressure_kpa: float) -> float:
    if config.solver_tol is not None:
        return config.solver_tol
    scale = pressure_kpa * KPA_TO_MPA * config.area_a * config.geometry.H1
    return 1e-9 * scale


def _zero_state(pressure_kpa: float) -> BendingState:
    return BendingState(
        pressure_kpa=pressure_kpa,
        lambda_star=1.0,
        phi=0.0,
        theta=0.0,
        residual=0.0,
        radius=math.inf,
    )


def solve_equilibrium(config: ActuatorConfig, pressure_kpa: float) -> BendingState:
    """Find the equilibrium stretch for one pressure and return the bend.

    P = 0 short-circuits to the exact straight state.  Raises
    :class:`SaturationError` when even lambda_max cannot store the supplied
    pressure work (the bracket never closes) and :class:`SolverError` when
    the strain gradient is non-monotone over the scan.
    """
    target = air_work_gradient(config, pressure_kpa)
    if target == 0.0:
        return _zero_state(pressure_kpa)

    conn = config.connector()
    model = config.material
    v_tt = conn.v_tt

    def g(lam: float) -> float:
        return v_tt * mat.plane_strain_energy_derivative(model, lam) - target

    # Geometric scan: certify a sign change and monotone storage gradient.
    span = config.lambda_max - 1.0
    offsets = [0.0] + [
        span * _SCAN_SMALLEST_FRACTION ** (1.0 - k / (_SCAN_POINTS - 1))
        for k in range(_SCAN_POINTS)
    ]
    values = [g(1.0 + off) for off in offsets]
    mono_slack = 1e-12 * max(abs(v) for v in values)
    for i in range(1, len(values)):
        if values[i] < values[i - 1] - mono_slack:
            raise SolverError(
                "strain-energy gradient is non-monotone over "
                f"[{1.0 + offsets[i - 1]:.6g}, {1.0 + offsets[i]:.6g}] "
                f"({values[i - 1] + target:.6g} -> {values[i] + target:.6g} N*mm); "
                "the material model is non-physical in this range"
            )

    bracket = None
    for i in range(1, len(values)):
        if values[i] >= 0.0:
            bracket = (1.0 + offsets[i - 1], 1.0 + offsets[i])
            break
    if bracket is None:
        raise SaturationError(
            f"pressure {pressure_kpa:.6g} kPa needs a storage gradient of "
            f"{target:.6g} N*mm but the walls only reach "
            f"{values[-1] + target:.6g} N*mm at lambda_max={config.lambda_max:.6g}; "
            "raise lambda_max or lower the pressure",
            pressure_kpa=pressure_kpa,
            gradient_at_lambda_max=values[-1] + target,
            required_gradient=target,
        )

    lo, hi = bracket
    for _ in range(_MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if g(mid) < 0.0:
            lo = mid
        else:
            hi = mid

    lam_star = 0.5 * (lo + hi)
    residual = abs(g(lam_star))
    # Below the rounding floor of g itself the residual is irreducible, so
    # a user tolerance tighter than that cannot be enforced.
    machine_floor = 64.0 * sys.float_info.epsilon * max(target, values[-1] + target)
    tol = max(_solver_tolerance(config, pressure_kpa), machine_floor)
    if residual > tol:
        raise SolverError(
            f"bisection stalled at residual {residual:.3e} N*mm "
            f"(tolerance {tol:.3e}) for pressure {pressure_kpa:.6g} kPa"
        )

    phi = (conn.x_e / conn.h_ee) * (lam_star - 1.0)
    theta = config.n_folds * phi
    radius = conn.x_e / phi if phi > 0.0 else math.inf
    return BendingState(
        pressure_kpa=pressure_kpa,
        lambda_star=lam_star,
        phi=phi,
        theta=theta,
        residual=residual,
        radius=radius,
    )


def sweep_pressures(p_min: float, p_max: float, step: float) -> list[float]:
    """Inclusive pressure grid p_min, p_min+step, ..., p_max."""
    if not (math.isfinite(p_min) and math.isfinite(p_max) and p_min >= 0.0):
        raise InputError(f"pressures must be finite and >= 0, got [{p_min!r}, {p_max!r}]")
    if p_max < p_min:
        raise InputError(f"p_max={p_max!r} must be >= p_min={p_min!r}")
    if not (math.isfinite(step) and step > 0.0):
        raise InputError(f"step must be > 0 kPa, got {step!r}")
    count = int(math.floor((p_max - p_min) / step + 1e-9)) + 1
    return [p_min + k * step for k in range(count)]


def pressure_sweep(
    config: ActuatorConfig, p_min: float, p_max: float, step: float
) -> list[BendingState]:
    """Solve the equilibrium over an inclusive pressure grid.

    The bend angle must come out non-decreasing in pressure (the storage
    gradient grows with stretch); a violation means the solve went wrong
    and raises :class:`SolverError`.  A saturation partway through is
    re-raised annotated with the failing pressure and the states solved so
    far (``partial_states``).
    """
    states: list[BendingState] = []
    for pressure in sweep_pressures(p_min, p_max, step):
        try:
            state = solve_equilibrium(config, pressure)
        except SaturationError as exc:
            raise SaturationError(
                f"sweep saturated at {pressure:.6g} kPa: {exc}",
                pressure_kpa=pressure,
                gradient_at_lambda_max=exc.gradient_at_lambda_max,
                required_gradient=exc.required_gradient,
                partial_states=states,
            ) from exc
        if states and state.theta < states[-1].theta - 1e-12 * max(1.0, states[-1].theta):
            raise SolverError(
                f"bend angle decreased between {states[-1].pressure_kpa:.6g} and "
                f"{pressure:.6g} kPa; equilibrium solve is inconsistent"
            )
        states.append(state)
    return states


@dataclass(frozen=True)
class CalibrationResult:
    """Best-fit aspect-ratio exponent and the error it achieves."""

    alpha: float
    max_relative_error: float
    evaluations: int


def _max_relative_angle_error(
    config: ActuatorConfig, data: list[tuple[float, float]]
) -> float:
    """Worst relative mismatch between predicted and measured bend angles.

    Angle pairs with a zero measured angle score 0 when the prediction is
    also (numerically) zero and infinity otherwise.  Unsolvable pressures
    score infinity, marking the candidate infeasible rather than fatal.
    """
    worst = 0.0
    for pressure, angle_deg in data:
        try:
            state = solve_equilibrium(config, pressure)
        except (SaturationError, SolverError):
            return math.inf
        predicted = state.theta_deg
        if angle_deg == 0.0:
            err = 0.0 if abs(predicted) < 1e-12 else math.inf
        else:
            err = abs(predicted - angle_deg) / abs(angle_deg)
        worst = max(worst, err)
    return worst


def calibrate_alpha(
    config: ActuatorConfig,
    data: list[tuple[float, float]],
    alpha_min: float = 0.0,
    alpha_max: float = 3.0,
    grid_points: int = 61,
) -> CalibrationResult:
    """Pick the aspect-ratio exponent that best reproduces measured angles.

    Minimizes the maximum relative angle error over ``data`` (pressure kPa,
    angle deg) pairs: a coarse grid scan over [alpha_min, alpha_max] picks
    the best cell, then a golden-section refinement narrows it.  Ties are
    broken toward the smallest alpha.  Candidates with any unsolvable
    pressure are infeasible; if every candidate is infeasible a
    :class:`CalibrationError` is raised.
    """
    if len(data) < 3:
        raise InputError(f"calibration needs at least 3 data points, got {len(data)}")
    if not (0.0 <= alpha_min <= alpha_max <= 3.0):
        raise InputError(
            f"alpha range [{alpha_min!r}, {alpha_max!r}] must lie inside [0, 3]"
        )
    for pressure, _ in data:
        if not (math.isfinite(pressure) and pressure >= 0.0):
            raise InputError(f"calibration pressure must be >= 0 kPa, got {pressure!r}")

    evaluations = 0

    def objective(alpha: float) -> float:
        nonlocal evaluations
        evaluations += 1
        candidate = replace(config, geometry=replace(config.geometry, alpha=alpha))
        return _max_relative_angle_error(candidate, data)

    if alpha_max == alpha_min:
        err = objective(alpha_min)
        if math.isinf(err):
            raise CalibrationError(
                "no feasible exponent: the single candidate cannot solve all pressures"
            )
        return CalibrationResult(alpha_min, err, evaluations)

    grid = [
        alpha_min + (alpha_max - alpha_min) * k / (grid_points - 1)
        for k in range(grid_points)
    ]
    scores = [objective(alpha) for alpha in grid]
    best_idx = min(range(len(grid)), key=lambda i: (scores[i], grid[i]))
    best_alpha, best_err = grid[best_idx], scores[best_idx]
    if math.isinf(best_err):
        raise CalibrationError(
            "no feasible exponent in the requested range: every candidate left "
            "at least one pressure unsolvable"
        )

    # Golden-section refinement inside the bracketing cells.
    lo = grid[max(best_idx - 1, 0)]
    hi = grid[min(best_idx + 1, len(grid) - 1)]
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = objective(x1), objective(x2)
    for _ in range(80):
        if hi - lo < 1e-12:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = objective(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = objective(x2)
    for candidate, err in ((x1, f1), (x2, f2)):
        if err < best_err or (err == best_err and candidate < best_alpha):
            best_alpha, best_err = candidate, err

    return CalibrationResult(best_alpha, best_err, evaluations)
