"""Mooney-Rivlin hyperelastic material model for printed TPU.

Implements the two-invariant polynomial strain-energy density

    W = C10*(I1-3) + C01*(I2-3) + C11*(I1-3)*(I2-3)
        + C20*(I1-3)^2 + C02*(I2-3)^2 [+ C30*(I1-3)^3]

for an incompressible solid (J = 1, so the volumetric series vanishes),
together with the two kinematic families the actuator model needs:

* uniaxial tension  (l1 = L, l2 = l3 = L^-1/2) -- what a tensile test applies,
* plane strain      (l1 = L, l2 = L^-1, l3 = 1) -- how the connector wall
  stretches while the fold depth stays fixed.

Stress here is nominal (engineering): force per undeformed area, the
quantity a universal testing machine exports.  Units are MPa throughout.

All functions are pure and all values immutable; concurrent use is safe.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ConditioningError, InputError, InsufficientDataError

#: Minimum sample count accepted by :func:`fit_mooney_rivlin`.  Five
#: coefficients are fitted, so anything below six rows cannot even
#: overdetermine the system.
MIN_FIT_SAMPLES = 6


def _require_positive_finite(lam: float) -> float:
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0.0:
        raise InputError(f"stretch ratio must be finite and > 0, got {lam!r}")
    return lam


@dataclass(frozen=True)
class StrainInvariants:
    """First and second deviatoric strain invariants plus volume ratio.

    For any real stretch state of an incompressible solid i1 >= 3 and
    i2 >= 3, with equality exactly at the undeformed state; j is pinned
    to 1.
    """

    i1: float
    i2: float
    j: float = 1.0

    def __post_init__(self):
        slack = 1e-9
        if not (math.isfinite(self.i1) and math.isfinite(self.i2)):
            raise InputError("strain invariants must be finite")
        if self.i1 < 3.0 - slack or self.i2 < 3.0 - slack:
            raise InputError(
                f"invariants below undeformed value 3: i1={self.i1}, i2={self.i2}"
            )
        if self.j != 1.0:
            raise InputError("volume ratio j must be 1 (incompressible)")


@dataclass(frozen=True)
class MooneyRivlinModel:
    """Five-coefficient Mooney-Rivlin material, MPa.

    Negative coefficients are legal (the NinjaFlex fit has them); the only
    hard constraints are finiteness and ``d_incompressible == 0``, because
    the whole bending model is built on exact incompressibility.

    ``c30`` is a third-order reduced-polynomial extension, kept at 0 unless
    a material file supplies it.
    """

    c10: float
    c01: float
    c11: float
    c20: float
    c02: float
    d_incompressible: float = 0.0
    c30: float = 0.0

    def __post_init__(self):
        for name in ("c10", "c01", "c11", "c20", "c02", "c30"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InputError(f"coefficient {name} must be finite, got {value!r}")
        if self.d_incompressible != 0.0:
            raise InputError(
                "d_incompressible must be 0 (incompressible material); "
                f"got {self.d_incompressible!r}"
            )


@dataclass(frozen=True)
class StressStrainSample:
    """One tensile-test point: engineering strain (stretch - 1) and nominal
    stress in MPa."""

    strain: float
    stress: float

    def __post_init__(self):
        if not (math.isfinite(self.strain) and math.isfinite(self.stress)):
            raise InputError("strain and stress must be finite")
        if self.strain <= -1.0:
            raise InputError(f"engineering strain must be > -1, got {self.strain}")


def validate_samples(samples: list[StressStrainSample]) -> None:
    """Check dataset-level invariants: strictly increasing strain, and a
    zero-strain sample (if present, it is necessarily first) carries zero
    stress within tolerance."""
    for prev, cur in zip(samples, samples[1:]):
        if cur.strain <= prev.strain:
            raise InputError(
                f"strains must be strictly increasing; got {prev.strain} then {cur.strain}"
            )
    if samples and samples[0].strain == 0.0:
        scale = max(abs(s.stress) for s in samples)
        if abs(samples[0].stress) > 1e-9 * scale + 1e-12:
            raise InputError(
                f"sample at strain 0 must have stress 0, got {samples[0].stress}"
            )


def invariants_uniaxial(lam: float) -> StrainInvariants:
    """Invariants for incompressible uniaxial tension at stretch ``lam``.

    i1 = lam^2 + 2/lam,  i2 = 2*lam + 1/lam^2.
    """
    lam = _require_positive_finite(lam)
    return StrainInvariants(
        i1=lam * lam + 2.0 / lam,
        i2=2.0 * lam + 1.0 / (lam * lam),
    )


def invariants_plane_strain(lam: float) -> StrainInvariants:
    """Invariants for plane-strain stretching at ``lam`` (third direction
    held at stretch 1).

    Both invariants collapse to lam^2 + lam^-2 + 1; the identity i1 == i2
    is exact in this kinematic family.
    """
    lam = _require_positive_finite(lam)
    i = lam * lam + 1.0 / (lam * lam) + 1.0
    return StrainInvariants(i1=i, i2=i)


def strain_energy_density(model: MooneyRivlinModel, inv: StrainInvariants) -> float:
    """Strain-energy density in MPa for the given invariants.

    Exactly 0 at the undeformed state (i1 = i2 = 3).
    """
    e1 = inv.i1 - 3.0
    e2 = inv.i2 - 3.0
    return (
        model.c10 * e1
        + model.c01 * e2
        + model.c11 * e1 * e2
        + model.c20 * e1 * e1
        + model.c02 * e2 * e2
        + model.c30 * e1 * e1 * e1
    )


def _uniaxial_stress_basis(lam: float) -> tuple[float, float, float, float, float]:
    """Per-coefficient contributions to the uniaxial nominal stress.

    The stress is linear in (c10, c01, c11, c20, c02); these are the basis
    functions multiplying each coefficient.
    """
    e1 = lam * lam + 2.0 / lam - 3.0
    e2 = 2.0 * lam + 1.0 / (lam * lam) - 3.0
    di1 = 2.0 * lam - 2.0 / (lam * lam)
    di2 = 2.0 - 2.0 / (lam * lam * lam)
    return (
        di1,                       # c10
        di2,                       # c01
        e2 * di1 + e1 * di2,       # c11
        2.0 * e1 * di1,            # c20
        2.0 * e2 * di2,            # c02
    )


def nominal_stress_uniaxial(model: MooneyRivlinModel, lam: float) -> float:
    """Nominal (engineering) uniaxial stress in MPa at stretch ``lam``.

    Analytic derivative of the strain-energy density along the uniaxial
    incompressible path; 0 at lam = 1.
    """
    lam = _require_positive_finite(lam)
    b10, b01, b11, b20, b02 = _uniaxial_stress_basis(lam)
    stress = (
        model.c10 * b10
        + model.c01 * b01
        + model.c11 * b11
        + model.c20 * b20
        + model.c02 * b02
    )
    if model.c30 != 0.0:
        e1 = lam * lam + 2.0 / lam - 3.0
        di1 = 2.0 * lam - 2.0 / (lam * lam)
        stress += model.c30 * 3.0 * e1 * e1 * di1
    return stress


def plane_strain_energy_derivative(model: MooneyRivlinModel, lam: float) -> float:
    """d/dlam of the plane-strain strain-energy density, MPa per unit stretch.

    With e = lam^2 + lam^-2 - 2 shared by both invariants:

        dW/dlam = [ (C10 + C01) + 2*(C11 + C20 + C02)*e + 3*C30*e^2 ]
                  * (2*lam - 2*lam^-3)

    which is 0 at lam = 1 and reduces term-for-term to the classic
    reduced-polynomial gradient when c01 = c11 = c02 = 0.
    """
    lam = _require_positive_finite(lam)
    e = lam * lam + 1.0 / (lam * lam) - 2.0
    de = 2.0 * lam - 2.0 / (lam * lam * lam)
    return (
        (model.c10 + model.c01)
        + 2.0 * (model.c11 + model.c20 + model.c02) * e
        + 3.0 * model.c30 * e * e
    ) * de


@dataclass(frozen=True)
class FitReport:
    """Result of a stress-strain fit: the model plus quality diagnostics."""

    model: MooneyRivlinModel
    residual_norm: float        # L2 norm of stress residuals, MPa
    condition_number: float     # of the design matrix
    warnings: tuple[str, ...] = field(default_factory=tuple)


def fit_mooney_rivlin(samples: list[StressStrainSample]) -> FitReport:
    """Fit the five Mooney-Rivlin coefficients to uniaxial tensile data.

    Nominal stress is linear in the coefficients, so the least-squares
    minimizer of

        sum_k ( stress(model, 1 + strain_k) - stress_k )^2

    is found by a direct linear solve, deterministic to machine precision.
    ``d_incompressible`` is pinned at 0 and ``c30`` is not fitted.

    Raises :class:`InsufficientDataError` below six samples and
    :class:`ConditioningError` when the basis is rank deficient.  A warning
    is recorded (and emitted via :mod:`warnings`) if the fitted curve has a
    negative stress slope anywhere on the data range, since such a fit
    extrapolates non-physically.
    """
    if len(samples) < MIN_FIT_SAMPLES:
        raise InsufficientDataError(
            f"need at least {MIN_FIT_SAMPLES} stress-strain samples, got {len(samples)}"
        )
    validate_samples(samples)
    if samples[-1].strain <= 0.0:
        raise InputError("samples must span positive strain")

    stretches = np.array([1.0 + s.strain for s in samples], dtype=float)
    stresses = np.array([s.stress for s in samples], dtype=float)

    design = np.array([_uniaxial_stress_basis(lam) for lam in stretches], dtype=float)
    coeffs, _, rank, singular = np.linalg.lstsq(design, stresses, rcond=None)
    cond = float(singular[0] / singular[-1]) if singular[-1] > 0.0 else math.inf
    if rank < design.shape[1]:
        raise ConditioningError(
            f"stress basis is rank deficient (rank {rank} of {design.shape[1]}, "
            f"condition number {cond:.3e}); spread the strain range",
            condition_number=cond,
        )

    model = MooneyRivlinModel(
        c10=float(coeffs[0]),
        c01=float(coeffs[1]),
        c11=float(coeffs[2]),
        c20=float(coeffs[3]),
        c02=float(coeffs[4]),
    )
    residual_norm = float(np.linalg.norm(design @ coeffs - stresses))

    notes: list[str] = []
    lam_grid = np.linspace(stretches[0], stretches[-1], 512)
    sigma = np.array([nominal_stress_uniaxial(model, lam) for lam in lam_grid])
    if np.any(np.diff(sigma) < 0.0):
        msg = (
            "fitted model has a negative stress slope inside the data range; "
            "treat extrapolation with care"
        )
        notes.append(msg)
        warnings.warn(msg, stacklevel=2)

    return FitReport(
        model=model,
        residual_norm=residual_norm,
        condition_number=cond,
        warnings=tuple(notes),
    )
