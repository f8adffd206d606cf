"""Equivalent-connector geometry for one bellows fold.

A fold is reduced to a rectangular-plate abstraction with three derived
dimensions:

    x_e = a/2 + l_c                     equivalent half-pitch length
    h_e = (a/b) * (h1 + (a/2)**alpha)   equivalent height
    t_e = (t_w + t_c) / 2               equivalent thickness

``(a/2)**alpha`` is evaluated on the numeric millimetre value of ``a/2``;
``alpha`` is a calibration exponent, so the unit convention is a documented
choice rather than something to repair.

The stored strain energy is lumped at a single height ``h_ee`` above the
bottom layer.  The printed form of that height is a volume ratio, which is
dimensionless; here it is computed as the volume-weighted *centroid* height
of the energy-storing walls, which is a proper length and serves as the
lever arm of the bend kinematics.  The wall stack used for centroids, from
the base up:

    bottom wall  spans [0, t_c]                      centroid t_c/2
    side walls   span  [H1 - t_c - h1, H1 - t_c]     centroid H1 - t_c - h1/2
    top wall     spans [H1 - t_c, H1]                centroid H1 - t_c/2

with plate areas: side walls a x h1 (two of them, thickness t_w), top and
bottom walls a x depth (thickness t_c each).  The total wall volume in the
centroid denominator includes the bottom layer.  Set ``h_ee_override`` on
the geometry to bypass this interpretation entirely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError


@dataclass(frozen=True)
class ConnectorGeometry:
    """Raw fold dimensions, all lengths in mm.

    ``a``/``b`` are the expanding plate's short and long spans, ``l_c`` the
    connector length, ``h1`` the connector height, ``t_w``/``t_c`` the
    vertical/top wall thicknesses, ``alpha`` the aspect-ratio exponent and
    ``H1`` the overall section height.
    """

    a: float
    b: float
    l_c: float
    h1: float
    t_w: float
    t_c: float
    alpha: float
    H1: float
    h_ee_override: float | None = None

    def __post_init__(self):
        bad: list[str] = []
        for name in ("a", "b", "l_c", "h1", "t_w", "t_c", "H1"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                bad.append(f"{name}={value!r} (must be > 0)")
        if math.isfinite(self.b) and math.isfinite(self.a) and self.b < self.a:
            bad.append(f"b={self.b!r} (must be >= a={self.a!r})")
        if math.isfinite(self.H1) and math.isfinite(self.h1) and self.H1 <= self.h1:
            bad.append(f"H1={self.H1!r} (must exceed h1={self.h1!r})")
        if not (math.isfinite(self.alpha) and 0.0 <= self.alpha <= 3.0):
            bad.append(f"alpha={self.alpha!r} (must lie in [0, 3])")
        if self.h_ee_override is not None and not (
            math.isfinite(self.h_ee_override) and 0.0 < self.h_ee_override <= self.H1
        ):
            bad.append(
                f"h_ee_override={self.h_ee_override!r} (must lie in (0, H1])"
            )
        if bad:
            raise InputError("invalid connector geometry: " + "; ".join(bad))


@dataclass(frozen=True)
class EquivalentConnector:
    """Derived fold dimensions (mm), wall volumes (mm^3) and the
    energy-centroid height ``h_ee`` (mm)."""

    x_e: float
    h_e: float
    t_e: float
    h_ee: float
    v_s: float   # one side wall
    v_t: float   # top wall
    v_b: float   # bottom wall
    v_tt: float  # total energy-storing volume, 2*v_s + v_t + v_b

    def __post_init__(self):
        for name in ("x_e", "h_e", "t_e", "h_ee", "v_s", "v_t", "v_b", "v_tt"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise InputError(f"equivalent connector field {name} must be > 0, got {value!r}")


def equivalent_connector(geom: ConnectorGeometry, depth: float) -> EquivalentConnector:
    """Convert raw fold dimensions into the equivalent connector.

    ``depth`` is the finger depth in mm (extent of the fold along the axis
    the cross-section is taken across); it sets the top/bottom plate spans.
    """
    if not (math.isfinite(depth) and depth > 0.0):
        raise InputError(f"invalid connector geometry: depth={depth!r} (must be > 0)")

    x_e = geom.a / 2.0 + geom.l_c
    h_e = (geom.a / geom.b) * (geom.h1 + (geom.a / 2.0) ** geom.alpha)
    t_e = (geom.t_w + geom.t_c) / 2.0

    v_s = geom.a * geom.h1 * geom.t_w
    v_t = geom.a * depth * geom.t_c
    v_b = geom.a * depth * geom.t_c
    v_tt = 2.0 * v_s + v_t + v_b

    if geom.h_ee_override is not None:
        h_ee = geom.h_ee_override
    else:
        z_side = geom.H1 - geom.t_c - geom.h1 / 2.0
        z_top = geom.H1 - geom.t_c / 2.0
        z_bottom = geom.t_c / 2.0
        if z_side <= 0.0:
            raise InputError(
                "invalid connector geometry: side walls extend below the base "
                f"(H1 - t_c - h1/2 = {z_side!r}); increase H1 or set h_ee_override"
            )
        h_ee = (2.0 * v_s * z_side + v_t * z_top + v_b * z_bottom) / v_tt

    return EquivalentConnector(
        x_e=x_e, h_e=h_e, t_e=t_e, h_ee=h_ee,
        v_s=v_s, v_t=v_t, v_b=v_b, v_tt=v_tt,
    )
