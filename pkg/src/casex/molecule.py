"""Hund's case-a electronic states, presets, config files and unit conversions.

All energies are GHz (E/h). External inputs are kV/cm, Gauss and Debye.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from scipy import constants as _const

from casex.angular import HalfInt, half
from casex.errors import ValidationError

__all__ = [
    "UnitSystem",
    "UNITS",
    "ElectronicState",
    "PRESETS",
    "load_molecule",
    "dump_molecule",
    "stark_scale",
    "zeeman_scale",
]


@dataclass(frozen=True)
class UnitSystem:
    """Conversion factors into GHz."""

    debye_kvcm_to_ghz: float
    bohr_magneton_gauss_to_ghz: float

    @classmethod
    def codata(cls) -> "UnitSystem":
        debye_cm = 1e-21 / _const.c  # C m
        mu_b_hz_per_tesla = _const.physical_constants["Bohr magneton in Hz/T"][0]
        return cls(
            debye_kvcm_to_ghz=debye_cm * 1e5 / _const.h / 1e9,
            bohr_magneton_gauss_to_ghz=mu_b_hz_per_tesla * 1e-4 / 1e9,
        )


UNITS = UnitSystem.codata()


@dataclass(frozen=True)
class ElectronicState:
    """One signed representative (lambda, sigma) of a case-a electronic state.

    The partner component (-lambda, -sigma) is implied. ``omega_bar`` and
    ``g_abs`` are derived when omitted; if given they are checked
    (``omega_bar``) or taken as overrides (``g_abs``).

    ``kappa_opposes_omega`` selects the kappa/omega pairing: True pairs
    omega = -omega_bar with kappa = +1, which is right whenever the signed
    g-factor has the same sign as omega.
    """

    name: str
    lam: HalfInt
    sigma: HalfInt
    d_debye: float
    delta_ghz: float
    be_ghz: float
    g_abs: Optional[float] = None
    omega_bar: Optional[HalfInt] = None
    kappa_opposes_omega: bool = True
    references: tuple = field(default=(), compare=False)

    def __post_init__(self):
        try:
            lam = half(self.lam)
            sigma = half(self.sigma)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"lambda/sigma: {exc}") from exc
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "sigma", sigma)

        expected = abs(lam + sigma)
        if self.omega_bar is None:
            object.__setattr__(self, "omega_bar", expected)
        else:
            try:
                given = half(self.omega_bar)
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"omega: {exc}") from exc
            if given != expected:
                raise ValidationError(
                    f"omega: {given} is inconsistent with |lambda + sigma| = {expected}"
                )
            object.__setattr__(self, "omega_bar", given)

        if self.g_abs is None:
            object.__setattr__(self, "g_abs", float(abs(lam + sigma + sigma)))

        for name in ("d_debye", "delta_ghz", "be_ghz", "g_abs"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ValidationError(f"{name}: expected a number, got {value!r}")
            value = float(value)
            if not math.isfinite(value):
                raise ValidationError(f"{name}: must be finite")
            object.__setattr__(self, name, value)
        for name in ("d_debye", "delta_ghz", "g_abs"):
            if getattr(self, name) < 0:
                raise ValidationError(f"{name}: must be >= 0, got {getattr(self, name)}")
        if self.be_ghz <= 0:
            raise ValidationError(f"be_ghz: must be > 0, got {self.be_ghz}")
        object.__setattr__(self, "references", tuple(self.references))

    def signed_omegas(self) -> tuple:
        """(omega for kappa=+1, omega for kappa=-1)."""
        w = self.omega_bar
        return (-w, w) if self.kappa_opposes_omega else (w, -w)

    def kappa_of(self, omega: HalfInt) -> int:
        s = omega.sign()
        if s == 0:
            raise ValidationError("omega = 0 has no kappa pairing")
        return -s if self.kappa_opposes_omega else s

    def omega_of(self, kappa: int) -> HalfInt:
        plus, minus = self.signed_omegas()
        if kappa == 1:
            return plus
        if kappa == -1:
            return minus
        raise ValueError(f"kappa must be +1 or -1, got {kappa!r}")

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "lambda": str(self.lam),
            "sigma": str(self.sigma),
            "omega": str(self.omega_bar),
            "d_debye": self.d_debye,
            "g_abs": self.g_abs,
            "delta_ghz": self.delta_ghz,
            "be_ghz": self.be_ghz,
        }
        if not self.kappa_opposes_omega:
            out["kappa_opposes_omega"] = False
        out["references"] = list(self.references)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ElectronicState":
        if not isinstance(data, dict):
            raise ValidationError("molecule config must be a JSON object")
        required = ("name", "lambda", "sigma", "d_debye", "delta_ghz", "be_ghz")
        missing = [k for k in required if k not in data]
        if missing:
            raise ValidationError(f"missing key(s): {', '.join(missing)}")
        known = set(required) | {"g_abs", "omega", "kappa_opposes_omega", "references"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValidationError(f"unknown key(s): {', '.join(unknown)}")
        refs = data.get("references", [])
        if not isinstance(refs, list):
            raise ValidationError("references: expected a list")
        return cls(
            name=str(data["name"]),
            lam=_parse_qn(data["lambda"], "lambda"),
            sigma=_parse_qn(data["sigma"], "sigma"),
            omega_bar=_parse_qn(data["omega"], "omega") if "omega" in data else None,
            d_debye=data["d_debye"],
            g_abs=data.get("g_abs"),
            delta_ghz=data["delta_ghz"],
            be_ghz=data["be_ghz"],
            kappa_opposes_omega=bool(data.get("kappa_opposes_omega", True)),
            references=tuple(refs),
        )


def _parse_qn(value, name: str) -> HalfInt:
    if isinstance(value, float):
        raise ValidationError(f"{name}: write half-integers as strings like \"3/2\"")
    try:
        return half(value)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name}: {exc}") from exc


PRESETS = {
    "OH_X2Pi32": "OH_X2Pi32.json",
    "ICl_A3Pi1": "ICl_A3Pi1.json",
}


def load_molecule(source: Union[str, Path]) -> ElectronicState:
    """Load a built-in preset by name, or a JSON molecule file by path."""
    if isinstance(source, str) and source in PRESETS:
        text = resources.files("casex.presets").joinpath(PRESETS[source]).read_text(
            encoding="utf-8"
        )
        origin = source
    else:
        path = Path(source)
        if not path.is_file():
            raise ValidationError(
                f"unknown preset or unreadable file: {source!s} "
                f"(presets: {', '.join(PRESETS)})"
            )
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ValidationError(f"cannot read {path}: {exc}") from exc
        origin = str(path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{origin}: malformed JSON ({exc})") from exc
    return ElectronicState.from_dict(data)


def dump_molecule(state: ElectronicState, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(state.to_dict(), indent=2) + "\n", encoding="utf-8")


def _check_field(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value < 0:
        raise ValueError(f"{name} must be a finite non-negative magnitude, got {value}")
    return value


def stark_scale(state: ElectronicState, e_field: float, units: UnitSystem = UNITS) -> float:
    """d * E in GHz, for E in kV/cm."""
    return state.d_debye * _check_field(e_field, "electric field") * units.debye_kvcm_to_ghz


def zeeman_scale(state: ElectronicState, b_field: float, units: UnitSystem = UNITS) -> float:
    """|g| * mu_B * B in GHz, for B in Gauss."""
    return (
        state.g_abs
        * _check_field(b_field, "magnetic field")
        * units.bohr_magneton_gauss_to_ghz
    )
