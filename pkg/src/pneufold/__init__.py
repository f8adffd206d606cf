"""pneufold: modeling and optimization for fold-based pneumatic bending actuators.

Core layers:

* :mod:`pneufold.material` -- Mooney-Rivlin energy, stress, fitting
* :mod:`pneufold.geometry` -- equivalent-connector dimensions, wall volumes
* :mod:`pneufold.bending`  -- pressure/angle equilibrium, sweeps, calibration
* :mod:`pneufold.vel`      -- constraint masks, backbone shapes, conformity
* :mod:`pneufold.service`  -- FastAPI wrapper (JSON compute endpoints)
* :mod:`pneufold.cli`      -- command-line client over the service
"""

__version__ = "0.1.0"

from .bending import (
    ActuatorConfig,
    BendingState,
    CalibrationResult,
    air_work_gradient,
    calibrate_alpha,
    pressure_sweep,
    solve_equilibrium,
    strain_work_gradient,
)
from .geometry import ConnectorGeometry, EquivalentConnector, equivalent_connector
from .material import (
    FitReport,
    MooneyRivlinModel,
    StrainInvariants,
    StressStrainSample,
    fit_mooney_rivlin,
    invariants_plane_strain,
    invariants_uniaxial,
    nominal_stress_uniaxial,
    strain_energy_density,
)
from .vel import (
    BackboneShape,
    ConformityScore,
    ContourProfile,
    SegmentMask,
    backbone_shape,
    conformity_score,
    optimize_mask,
    resample_backbone,
)

__all__ = [
    "__version__",
    "ActuatorConfig",
    "BendingState",
    "CalibrationResult",
    "air_work_gradient",
    "calibrate_alpha",
    "pressure_sweep",
    "solve_equilibrium",
    "strain_work_gradient",
    "ConnectorGeometry",
    "EquivalentConnector",
    "equivalent_connector",
    "FitReport",
    "MooneyRivlinModel",
    "StrainInvariants",
    "StressStrainSample",
    "fit_mooney_rivlin",
    "invariants_plane_strain",
    "invariants_uniaxial",
    "nominal_stress_uniaxial",
    "strain_energy_density",
    "BackboneShape",
    "ConformityScore",
    "ContourProfile",
    "SegmentMask",
    "backbone_shape",
    "conformity_score",
    "optimize_mask",
    "resample_backbone",
]
