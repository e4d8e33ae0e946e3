"""Field geometry: combined fields, the angle between their axes, dipole tilt.

Everything lives in the lab x-z plane with the electric field along +z and
the magnetic field rotated by ``theta_eb`` toward +x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from casex.errors import DegenerateAxisError
from casex.molecule import ElectronicState, stark_scale, zeeman_scale

__all__ = [
    "AXIS_TOL_GHZ",
    "FieldConfig",
    "CombinedField",
    "cos_sin",
    "field_scales",
    "combined_field",
    "combined_vector",
    "theta_c",
    "is_collinear",
    "axis_projection",
    "axis_angle",
    "tilt_angle",
]

AXIS_TOL_GHZ = 1e-12


def _normalize_angle(theta: float) -> float:
    # remainder() is exact and lands in [-pi, pi]
    return abs(math.remainder(theta, 2 * math.pi))


def cos_sin(theta: float) -> tuple:
    """cos and sin of an angle in [0, pi], exact at 0, pi/2 and pi.

    Reflecting through pi/2 makes cos vanish exactly at the float nearest
    pi/2, which keeps perpendicular-field degeneracies bitwise exact.
    """
    c = math.sin(math.pi / 2 - theta)
    s = math.sin(theta) if theta <= math.pi / 2 else math.sin(math.pi - theta)
    return c, s


@dataclass(frozen=True)
class FieldConfig:
    """Field magnitudes (kV/cm, Gauss) and the angle between them (radians).

    Angles outside [0, pi] are folded back into it; only the unsigned angle
    between the two fields is physical.
    """

    e_kvcm: float
    b_gauss: float
    theta_eb: float = 0.0

    def __post_init__(self):
        for name in ("e_kvcm", "b_gauss", "theta_eb"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if self.e_kvcm < 0:
            raise ValueError(f"e_kvcm must be >= 0, got {self.e_kvcm}")
        if self.b_gauss < 0:
            raise ValueError(f"b_gauss must be >= 0, got {self.b_gauss}")
        object.__setattr__(self, "theta_eb", _normalize_angle(self.theta_eb))

    @classmethod
    def from_degrees(cls, e_kvcm: float, b_gauss: float, theta_deg: float) -> "FieldConfig":
        return cls(e_kvcm, b_gauss, math.radians(theta_deg))


@dataclass(frozen=True)
class CombinedField:
    kappa: int
    magnitude_ghz: float
    angle_to_e: float


def field_scales(state: ElectronicState, cfg: FieldConfig) -> tuple:
    """(d*E, |g|*mu_B*B) in GHz."""
    return stark_scale(state, cfg.e_kvcm), zeeman_scale(state, cfg.b_gauss)


def _check_kappa(kappa: int) -> int:
    if kappa not in (1, -1):
        raise ValueError(f"kappa must be +1 or -1, got {kappa!r}")
    return kappa


def combined_vector(state: ElectronicState, cfg: FieldConfig, kappa: int) -> tuple:
    """(x, z) components of d*E + kappa*|g|*mu_B*B in GHz."""
    _check_kappa(kappa)
    a, b = field_scales(state, cfg)
    c, s = cos_sin(cfg.theta_eb)
    return kappa * b * s, a + kappa * b * c


def combined_field(state: ElectronicState, cfg: FieldConfig, kappa: int) -> CombinedField:
    """Magnitude and orientation of the combined field for branch ``kappa``.

    The magnitude equals ``sqrt(a^2 + b^2 + 2*kappa*a*b*cos(theta_eb))``; it
    is evaluated from components to avoid cancellation when the two terms
    nearly oppose.
    """
    cx, cz = combined_vector(state, cfg, kappa)
    return CombinedField(
        kappa=kappa,
        magnitude_ghz=math.hypot(cx, cz),
        angle_to_e=math.atan2(abs(cx), cz),
    )


def _require_axis(magnitude: float, kappa: int) -> None:
    if magnitude < AXIS_TOL_GHZ:
        sign = "+" if kappa > 0 else "-"
        raise DegenerateAxisError(
            f"combined field C{sign} vanishes (|C| = {magnitude:.3g} GHz); "
            "its quantization axis is undefined"
        )


def theta_c(state: ElectronicState, cfg: FieldConfig) -> float:
    """Angle in [0, pi] between the kappa = +1 and kappa = -1 axes.

    Uses C+ . C- = a^2 - b^2 and |C+ x C-| = 2ab sin(theta_eb).
    """
    for kappa in (1, -1):
        _require_axis(combined_field(state, cfg, kappa).magnitude_ghz, kappa)
    a, b = field_scales(state, cfg)
    return math.atan2(2 * a * b * cos_sin(cfg.theta_eb)[1], a * a - b * b)


def is_collinear(state: ElectronicState, cfg: FieldConfig) -> bool:
    """True when both combined fields lie along the E axis (theta_eb in {0, pi} or B = 0)."""
    return combined_vector(state, cfg, 1)[0] == 0.0


def axis_projection(state: ElectronicState, cfg: FieldConfig, kappa: int) -> float:
    """C_kappa measured along the axis its m_kappa is quantized on, in GHz.

    Non-collinear fields use the axis along C_kappa itself, so this is |C_kappa|.
    Collinear fields keep the axis on +E for both branches; the value is then the
    signed component, which lets levels pass linearly through C_kappa = 0
    instead of reflecting off it.
    """
    cx, cz = combined_vector(state, cfg, kappa)
    return cz if cx == 0.0 else math.hypot(cx, cz)


def axis_angle(state: ElectronicState, cfg: FieldConfig) -> float:
    """Angle between the two quantization axes used by :func:`axis_projection`."""
    return 0.0 if is_collinear(state, cfg) else theta_c(state, cfg)


def tilt_angle(state: ElectronicState, cfg: FieldConfig, kappa: int) -> float:
    """Angle between the mean dipole (along C_kappa) and the electric field."""
    _check_kappa(kappa)
    a, b = field_scales(state, cfg)
    cx, cz = combined_vector(state, cfg, kappa)
    _require_axis(math.hypot(cx, cz), kappa)
    # angle of (b sin c, a + kappa b cos c); kappa*b*sin c carries the sign of kappa
    return math.atan2(abs(cx), cz)
