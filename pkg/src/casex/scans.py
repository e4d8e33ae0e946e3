"""Parameter scans, tilt curves and quadrupole-trap maps, serialized as CSV."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np
from scipy.optimize import linear_sum_assignment

from casex import __version__
from casex.angular import HalfInt, half
from casex.errors import DegenerateAxisError, NumericError
from casex.fields import FieldConfig, tilt_angle
from casex.hamiltonian import (
    build_fixed_j_hamiltonian,
    build_pendular_hamiltonian,
    eigen_symmetric,
    enumerate_fixed_j_basis,
    fixed_j_energy,
)
from casex.molecule import UNITS, ElectronicState

__all__ = [
    "ScanSpec",
    "SpectrumTable",
    "TrapSpec",
    "run_scan",
    "zeeman_scan",
    "stark_scan",
    "tilt_scan",
    "trap_potential",
    "trap_map",
    "spectrum_at",
    "level_spectrum",
    "default_stark_emax",
]

VARIABLES = ("b_gauss", "e_kvcm")
MODES = ("fixed_j", "pendular")


@dataclass(frozen=True)
class ScanSpec:
    """One scan: which field is swept, over what grid, with which Hamiltonian.

    ``j`` is the fixed j in ``fixed_j`` mode and j_max in ``pendular`` mode.
    ``fixed`` supplies the non-scanned field and theta_eb; its value for the
    scanned field is ignored.
    """

    molecule: ElectronicState
    variable: str
    start: float
    stop: float
    n_points: int
    fixed: FieldConfig
    mode: str = "fixed_j"
    j: HalfInt = None
    lambda_doubling: bool = False
    n_levels: Optional[int] = None

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise ValueError(f"variable must be one of {VARIABLES}, got {self.variable!r}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.n_points < 2:
            raise ValueError(f"n_points must be >= 2, got {self.n_points}")
        if not self.start <= self.stop:
            raise ValueError(f"start {self.start} exceeds stop {self.stop}")
        if self.start < 0:
            raise ValueError("field magnitudes must be non-negative")
        j = self.molecule.omega_bar if self.j is None else half(self.j)
        if j < self.molecule.omega_bar or (j - self.molecule.omega_bar).twice % 2:
            raise ValueError(
                f"j = {j} not allowed for omega_bar = {self.molecule.omega_bar}"
            )
        object.__setattr__(self, "j", j)
        if self.n_levels is not None and self.n_levels < 1:
            raise ValueError("n_levels must be positive")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.n_points)

    def config_at(self, value: float) -> FieldConfig:
        if self.variable == "b_gauss":
            return replace(self.fixed, b_gauss=float(value))
        return replace(self.fixed, e_kvcm=float(value))


@dataclass
class SpectrumTable:
    """A numeric table with a metadata header.

    Rows whose evaluation failed hold NaN in every column but the first and
    have their message in ``errors``.
    """

    metadata: Dict[str, str]
    columns: List[str]
    rows: np.ndarray
    errors: Dict[int, str] = field(default_factory=dict)
    n_index_columns: int = 1

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=float)
        if self.rows.ndim != 2 or self.rows.shape[1] != len(self.columns):
            raise ValueError("row width does not match column count")

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.columns.index(name)]

    def write_csv(self, out: TextIO) -> None:
        for key, value in self.metadata.items():
            out.write(f"# {key}: {value}\n")
        out.write(",".join(self.columns) + "\n")
        k = self.n_index_columns
        for i, row in enumerate(self.rows):
            if i in self.errors:
                out.write(f"# row {i}: {self.errors[i]}\n")
                cells = [_fmt(v) for v in row[:k]] + [""] * (len(row) - k)
            else:
                cells = [_fmt(v) for v in row]
            out.write(",".join(cells) + "\n")

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            self.write_csv(fh)

    @classmethod
    def read_csv(cls, source: Union[str, TextIO]) -> "SpectrumTable":
        """Parse text written by :meth:`write_csv`."""
        text = source if isinstance(source, str) else source.read()
        metadata, errors, rows, columns = {}, {}, [], None
        pending = None
        for line in text.splitlines():
            if line.startswith("# row "):
                idx, msg = line[len("# row "):].split(": ", 1)
                pending = (int(idx), msg)
            elif line.startswith("# "):
                key, _, value = line[2:].partition(": ")
                metadata[key] = value
            elif columns is None:
                columns = line.split(",")
            else:
                vals = [float(c) if c else math.nan for c in line.split(",")]
                if pending is not None:
                    errors[pending[0]] = pending[1]
                    pending = None
                rows.append(vals)
        table = cls(metadata, columns, np.array(rows).reshape(len(rows), len(columns)), errors)
        return table


def _fmt(value: float) -> str:
    if math.isnan(value):
        return ""
    return f"{value + 0.0:.12g}"


def _assign_labels(vectors: np.ndarray) -> np.ndarray:
    """Column order putting each eigenvector under its dominant basis ket."""
    weight = vectors**2
    rows, cols = linear_sum_assignment(-weight)
    perm = np.empty(vectors.shape[1], dtype=int)
    perm[rows] = cols
    return perm


def level_spectrum(
    state: ElectronicState,
    cfg: FieldConfig,
    mode: str = "fixed_j",
    j=None,
    lambda_doubling: bool = False,
    n_levels: Optional[int] = None,
):
    """(labels, energies in GHz) at one field configuration.

    Fixed-j without Lambda-doubling uses the exact case-X energies, one per
    ket. With Lambda-doubling each eigenvalue is filed under the ket with the
    largest weight in its eigenvector. Pendular mode returns ascending
    eigenvalues labelled ``E0, E1, ...``.
    """
    j = state.omega_bar if j is None else half(j)
    if mode == "fixed_j":
        basis = enumerate_fixed_j_basis(state, j)
        labels = [x.label for x in basis]
        if not lambda_doubling or state.delta_ghz == 0:
            return labels, np.array([fixed_j_energy(state, cfg, x) for x in basis])
        h = build_fixed_j_hamiltonian(state, cfg, j, include_lambda=True)
        w, v = eigen_symmetric(h)
        return labels, w[_assign_labels(v)]
    if mode != "pendular":
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    h = build_pendular_hamiltonian(state, cfg, j, include_lambda=lambda_doubling)
    w, _ = eigen_symmetric(h)
    if n_levels is not None:
        w = w[:n_levels]
    return [f"E{i}" for i in range(len(w))], w


def spectrum_at(spec: ScanSpec, cfg: FieldConfig):
    """(labels, energies) for one field configuration under ``spec``'s model."""
    return level_spectrum(
        spec.molecule, cfg, spec.mode, spec.j, spec.lambda_doubling, spec.n_levels
    )


def _scan_metadata(spec: ScanSpec) -> Dict[str, str]:
    fixed = spec.fixed
    meta = {
        "tool": f"casex {__version__}",
        "molecule": spec.molecule.name,
        "scan": f"{spec.variable} from {spec.start:g} to {spec.stop:g}, {spec.n_points} points",
    }
    if spec.variable == "b_gauss":
        meta["e_kvcm"] = f"{fixed.e_kvcm:g}"
    else:
        meta["b_gauss"] = f"{fixed.b_gauss:g}"
    meta["theta_eb_deg"] = f"{math.degrees(fixed.theta_eb):.10g}"
    meta["mode"] = f"{spec.mode} ({'j' if spec.mode == 'fixed_j' else 'j_max'}={spec.j})"
    meta["lambda_doubling"] = "on" if spec.lambda_doubling else "off"
    if spec.mode == "fixed_j":
        meta["columns"] = "energies in GHz; kK_jJ_mM = case-X ket (kappa, j, m_kappa)"
    else:
        meta["columns"] = "energies in GHz, ascending eigenvalue index"
    return meta


def run_scan(spec: ScanSpec) -> SpectrumTable:
    grid = spec.grid()
    labels = None
    results = []
    errors = {}
    for i, value in enumerate(grid):
        try:
            lab, energies = spectrum_at(spec, spec.config_at(value))
            labels = labels or lab
            results.append(energies)
        except (DegenerateAxisError, NumericError) as exc:
            errors[i] = str(exc)
            results.append(None)
    if labels is None:
        raise DegenerateAxisError(f"every grid point failed: {next(iter(errors.values()))}")
    width = len(labels)
    rows = np.full((len(grid), width + 1), np.nan)
    rows[:, 0] = grid
    for i, energies in enumerate(results):
        if energies is not None:
            rows[i, 1:] = energies
    return SpectrumTable(_scan_metadata(spec), [spec.variable] + labels, rows, errors)


def zeeman_scan(spec: ScanSpec) -> SpectrumTable:
    if spec.variable != "b_gauss":
        raise ValueError("zeeman_scan needs variable='b_gauss'")
    return run_scan(spec)


def stark_scan(spec: ScanSpec) -> SpectrumTable:
    if spec.variable != "e_kvcm":
        raise ValueError("stark_scan needs variable='e_kvcm'")
    return run_scan(spec)


def default_stark_emax(state: ElectronicState, ratio: float = 20.0) -> float:
    """Field (kV/cm) where d*E reaches ``ratio`` * B_e."""
    if state.d_debye == 0:
        raise ValueError("molecule has no dipole moment")
    return ratio * state.be_ghz / (state.d_debye * UNITS.debye_kvcm_to_ghz)


def tilt_scan(
    state: ElectronicState,
    b_gauss: float,
    theta_eb: float,
    e_start: float = 0.0,
    e_stop: float = 10.0,
    n: int = 201,
) -> SpectrumTable:
    """Dipole tilt angle (radians) for both kappa branches versus E."""
    if n < 2 or e_start > e_stop or e_start < 0:
        raise ValueError("need 0 <= e_start <= e_stop and n >= 2")
    grid = np.linspace(e_start, e_stop, n)
    rows = np.full((n, 3), np.nan)
    rows[:, 0] = grid
    errors = {}
    for i, e in enumerate(grid):
        cfg = FieldConfig(float(e), b_gauss, theta_eb)
        try:
            rows[i, 1] = tilt_angle(state, cfg, 1)
            rows[i, 2] = tilt_angle(state, cfg, -1)
        except DegenerateAxisError as exc:
            rows[i, 1:] = np.nan
            errors[i] = str(exc)
    meta = {
        "tool": f"casex {__version__}",
        "molecule": state.name,
        "scan": f"e_kvcm from {e_start:g} to {e_stop:g}, {n} points",
        "b_gauss": f"{b_gauss:g}",
        "theta_eb_deg": f"{math.degrees(theta_eb):.10g}",
        "mode": "tilt angle",
        "lambda_doubling": "off",
        "columns": "tilt angle between mean dipole and E, radians",
    }
    return SpectrumTable(meta, ["e_kvcm", "tilt_k+1_rad", "tilt_k-1_rad"], rows, errors)


@dataclass(frozen=True)
class TrapSpec:
    """Quadrupole trap B = gradient * (x, y, -2z) plus a uniform electric field.

    ``u_range`` and ``v_range`` are (start, stop, n) for the two in-slice axes
    of :func:`trap_map`, in cm.
    """

    gradient_gauss_per_cm: float
    e_field_vector: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    u_range: Tuple[float, float, int] = (-0.5, 0.5, 41)
    v_range: Tuple[float, float, int] = (-0.5, 0.5, 41)
    branch: int = 1

    def __post_init__(self):
        if not self.gradient_gauss_per_cm > 0:
            raise ValueError("gradient must be positive")
        vec = tuple(float(c) for c in self.e_field_vector)
        if len(vec) != 3 or not all(math.isfinite(c) for c in vec):
            raise ValueError("e_field_vector must be three finite numbers")
        object.__setattr__(self, "e_field_vector", vec)
        for name in ("u_range", "v_range"):
            lo, hi, n = getattr(self, name)
            if int(n) < 1 or lo > hi:
                raise ValueError(f"{name} must be (start <= stop, n >= 1)")
            object.__setattr__(self, name, (float(lo), float(hi), int(n)))
        if self.branch not in (1, -1):
            raise ValueError("branch must be +1 or -1")


def trap_potential(
    state: ElectronicState,
    trap: TrapSpec,
    point: Sequence[float],
    kappa: Optional[int] = None,
) -> float:
    """|C_kappa(r)| in GHz at ``point`` = (x, y, z) cm."""
    kappa = trap.branch if kappa is None else kappa
    if kappa not in (1, -1):
        raise ValueError("kappa must be +1 or -1")
    x, y, z = (float(c) for c in point)
    d = state.d_debye * UNITS.debye_kvcm_to_ghz
    mu = state.g_abs * UNITS.bohr_magneton_gauss_to_ghz * trap.gradient_gauss_per_cm
    ex, ey, ez = trap.e_field_vector
    cx = d * ex + kappa * mu * x
    cy = d * ey + kappa * mu * y
    cz = d * ez - 2 * kappa * mu * z
    return math.sqrt(cx * cx + cy * cy + cz * cz)


def trap_map(state: ElectronicState, trap: TrapSpec, slice_: str = "xz") -> SpectrumTable:
    """Both trap branches on a 2D slice through the origin."""
    if slice_ not in ("xz", "xy"):
        raise ValueError("slice must be 'xz' or 'xy'")
    us = np.linspace(*trap.u_range)
    vs = np.linspace(*trap.v_range)
    second = slice_[1]
    rows = []
    for u in us:
        for v in vs:
            point = (u, 0.0, v) if second == "z" else (u, v, 0.0)
            rows.append(
                (u, v, trap_potential(state, trap, point, 1), trap_potential(state, trap, point, -1))
            )
    ex, ey, ez = trap.e_field_vector
    meta = {
        "tool": f"casex {__version__}",
        "molecule": state.name,
        "gradient_gauss_per_cm": f"{trap.gradient_gauss_per_cm:g}",
        "e_vector_kvcm": f"{ex:g},{ey:g},{ez:g}",
        "slice": f"{slice_} (other coordinate = 0)",
        "columns": "positions in cm; U_plus/U_minus = |C_kappa(r)| in GHz",
    }
    return SpectrumTable(
        meta,
        ["x_cm", f"{second}_cm", "U_plus_ghz", "U_minus_ghz"],
        np.array(rows),
        n_index_columns=2,
    )
