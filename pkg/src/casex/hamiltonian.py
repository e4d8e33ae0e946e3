"""Case-X bases and Hamiltonian matrices.

Basis kets are ``|omega kappa j m_kappa>`` with ``m_kappa`` quantized along the
combined field of branch ``kappa``. Canonical ordering is the kappa = +1 block
first, then kappa = -1; inside a block j ascends, then m_kappa ascends.

``build_labframe_oracle`` assembles the same physics in the ordinary
``|omega j m>`` basis quantized along a lab axis and shares no code with the
case-X builders beyond the angular functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from casex.angular import HalfInt, half, small_d_matrix, wigner_3j
from casex.errors import DegenerateAxisError
from casex.fields import (
    AXIS_TOL_GHZ,
    FieldConfig,
    axis_angle,
    axis_projection,
    field_scales,
)
from casex.linalg import eigh
from casex.molecule import ElectronicState

__all__ = [
    "CaseXState",
    "LabState",
    "SymmetricMatrix",
    "enumerate_fixed_j_basis",
    "enumerate_pendular_basis",
    "cos_beta_element",
    "fixed_j_energy",
    "build_fixed_j_hamiltonian",
    "build_pendular_hamiltonian",
    "build_labframe_oracle",
    "eigen_symmetric",
]


@dataclass(frozen=True)
class CaseXState:
    omega: HalfInt
    kappa: int
    j: HalfInt
    m_kappa: HalfInt

    def __post_init__(self):
        if self.kappa not in (1, -1):
            raise ValueError(f"kappa must be +1 or -1, got {self.kappa!r}")
        if self.j < abs(self.omega):
            raise ValueError(f"j = {self.j} < |omega| = {abs(self.omega)}")
        if abs(self.m_kappa) > self.j or (self.j - self.m_kappa).twice % 2:
            raise ValueError(f"invalid m_kappa = {self.m_kappa} for j = {self.j}")

    @property
    def label(self) -> str:
        return f"k{self.kappa:+d}_j{self.j}_m{self.m_kappa}"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class LabState:
    """``|omega j m>`` with m along the lab z axis (oracle basis)."""

    omega: HalfInt
    j: HalfInt
    m: HalfInt

    @property
    def label(self) -> str:
        return f"w{self.omega}_j{self.j}_m{self.m}"


@dataclass
class SymmetricMatrix:
    entries: np.ndarray
    basis_labels: list = field(default_factory=list)

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=float)
        n = self.entries.shape[0]
        if self.entries.shape != (n, n):
            raise ValueError(f"not square: {self.entries.shape}")
        if self.basis_labels and len(self.basis_labels) != n:
            raise ValueError("label count does not match dimension")
        if not np.array_equal(self.entries, self.entries.T):
            raise ValueError("matrix is not symmetric")

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]


def _jj(j: HalfInt) -> float:
    jf = float(j)
    return jf * (jf + 1.0)


def _check_j(state: ElectronicState, j: HalfInt, what: str = "j") -> HalfInt:
    j = half(j)
    if j < state.omega_bar:
        raise ValueError(f"{what} = {j} is below omega_bar = {state.omega_bar}")
    if (j - state.omega_bar).twice % 2:
        raise ValueError(f"{what} - omega_bar must be an integer (got {what} = {j})")
    return j


def enumerate_fixed_j_basis(state: ElectronicState, j) -> List[CaseXState]:
    """The 2(2j+1) case-X kets at fixed j, canonical order."""
    j = _check_j(state, j)
    out = []
    for kappa in (1, -1):
        omega = state.omega_of(kappa)
        out.extend(CaseXState(omega, kappa, j, m) for m in j.projections())
    return out


def enumerate_pendular_basis(state: ElectronicState, j_max) -> List[CaseXState]:
    """Case-X kets for j = omega_bar ... j_max, canonical order."""
    j_max = _check_j(state, j_max, "j_max")
    out = []
    for kappa in (1, -1):
        omega = state.omega_of(kappa)
        for j in state.omega_bar.range_to(j_max):
            out.extend(CaseXState(omega, kappa, j, m) for m in j.projections())
    return out


def cos_beta_element(omega, j1, m1, q: int, j2, m2) -> float:
    """``<omega j1 m1 | T^1_q(n) | omega j2 m2>``, the rank-1 orientation tensor.

    q = 0 gives the matrix element of cos(beta). Nonzero only when
    ``m1 = m2 + q`` and ``|j1 - j2| <= 1``.
    """
    omega, j1, m1, j2, m2 = (half(x) for x in (omega, j1, m1, j2, m2))
    if q not in (-1, 0, 1):
        raise ValueError(f"q must be -1, 0 or 1, got {q!r}")
    for j, m in ((j1, m1), (j2, m2)):
        if abs(m) > j or (j - m).twice % 2:
            raise ValueError(f"invalid m = {m} for j = {j}")
        if j < abs(omega) or (j - omega).twice % 2:
            raise ValueError(f"j = {j} incompatible with omega = {omega}")
    if m1.twice != m2.twice + 2 * q or abs(j1.twice - j2.twice) > 2:
        return 0.0
    phase = -1.0 if ((m1 - omega).twice // 2) % 2 else 1.0
    return (
        phase
        * math.sqrt((j1.twice + 1) * (j2.twice + 1))
        * wigner_3j(j1, 1, j2, -omega, 0, omega)
        * wigner_3j(j1, 1, j2, -m1, q, m2)
    )


def _projection(state: ElectronicState, cfg: FieldConfig, kappa: int) -> float:
    c = axis_projection(state, cfg, kappa)
    if abs(c) < AXIS_TOL_GHZ:
        sign = "+" if kappa > 0 else "-"
        raise DegenerateAxisError(
            f"combined field C{sign} vanishes; m_kappa has no quantization axis"
        )
    return c


def fixed_j_energy(state: ElectronicState, cfg: FieldConfig, x: CaseXState) -> float:
    """Exact field energy ``-omega m_kappa C_kappa / (j(j+1))`` in GHz.

    For collinear fields C_kappa is signed (see ``axis_projection``), giving the
    familiar ``-(m omega / j(j+1)) (dE + kappa |g| mu_B B)``.
    """
    c = _projection(state, cfg, x.kappa)
    return -float(x.omega) * float(x.m_kappa) * c / _jj(x.j)


def build_fixed_j_hamiltonian(
    state: ElectronicState, cfg: FieldConfig, j, include_lambda: bool = True
) -> SymmetricMatrix:
    basis = enumerate_fixed_j_basis(state, j)
    n = len(basis)
    h = np.zeros((n, n))
    for i, x in enumerate(basis):
        h[i, i] = fixed_j_energy(state, cfg, x)
    if include_lambda and state.delta_ghz:
        half_n = n // 2
        block = 0.5 * state.delta_ghz * small_d_matrix(basis[0].j, axis_angle(state, cfg))
        h[:half_n, half_n:] = block
        h[half_n:, :half_n] = block.T
    return SymmetricMatrix(h, basis)


def _pendular_axes(state: ElectronicState, cfg: FieldConfig):
    """(C+, C-, angle between axes). A combined field can only vanish when the
    fields are collinear, where both axes sit on E and a zero C just leaves
    its block a free rotor."""
    return (
        axis_projection(state, cfg, 1),
        axis_projection(state, cfg, -1),
        axis_angle(state, cfg),
    )


def build_pendular_hamiltonian(
    state: ElectronicState, cfg: FieldConfig, j_max, include_lambda: bool = True
) -> SymmetricMatrix:
    """j-mixed case-X Hamiltonian with rotation, for j = omega_bar ... j_max.

    The field couples j to j and j +- 1 inside each (kappa, m_kappa) sector.
    Lambda-doubling couples the two kappa sectors through
    ``(Delta/2) d^j(theta_C)``, diagonal in j.
    """
    basis = enumerate_pendular_basis(state, j_max)
    c_plus, c_minus, tc = _pendular_axes(state, cfg)
    mags = {1: c_plus, -1: c_minus}
    index = {(x.kappa, x.j, x.m_kappa): i for i, x in enumerate(basis)}
    n = len(basis)
    h = np.zeros((n, n))
    w2 = float(state.omega_bar) ** 2
    for i, x in enumerate(basis):
        h[i, i] += state.be_ghz * (_jj(x.j) - w2)
        for dj in (0, 2):
            jp = HalfInt(x.j.twice + dj)
            k = index.get((x.kappa, jp, x.m_kappa))
            if k is None:
                continue
            val = -mags[x.kappa] * cos_beta_element(x.omega, jp, x.m_kappa, 0, x.j, x.m_kappa)
            h[k, i] += val
            if k != i:
                h[i, k] += val
    if include_lambda and state.delta_ghz:
        for j in state.omega_bar.range_to(half(j_max)):
            block = 0.5 * state.delta_ghz * small_d_matrix(j, tc)
            rows = [index[(1, j, m)] for m in j.projections()]
            cols = [index[(-1, j, m)] for m in j.projections()]
            h[np.ix_(rows, cols)] = block
            h[np.ix_(cols, rows)] = block.T
    return SymmetricMatrix(h, basis)


def build_labframe_oracle(
    state: ElectronicState,
    cfg: FieldConfig,
    j_max,
    include_lambda: bool = True,
    *,
    j_min=None,
    rotation: Optional[bool] = None,
    quantize_along: str = "E",
) -> SymmetricMatrix:
    """Brute-force field + Lambda (+ rotation) Hamiltonian in the lab frame.

    Basis ``|omega j m>`` for both signed omegas and j = j_min ... j_max, with m
    along lab z. ``quantize_along="E"`` puts the electric field on z and the
    magnetic field in the x-z plane; ``"B"`` swaps the roles. ``rotation``
    defaults to on when more than one j is present.
    """
    j_max = _check_j(state, j_max, "j_max")
    j_min = state.omega_bar if j_min is None else _check_j(state, j_min, "j_min")
    if j_min > j_max:
        raise ValueError(f"j_min = {j_min} exceeds j_max = {j_max}")
    if rotation is None:
        rotation = j_min != j_max

    a, b = field_scales(state, cfg)
    t = cfg.theta_eb
    if quantize_along == "E":
        e_vec = np.array([0.0, a])
        b_vec = np.array([b * math.sin(t), b * math.cos(t)])
    elif quantize_along == "B":
        b_vec = np.array([0.0, b])
        e_vec = np.array([a * math.sin(t), a * math.cos(t)])
    else:
        raise ValueError(f"quantize_along must be 'E' or 'B', got {quantize_along!r}")

    omegas = state.signed_omegas()
    basis = [
        LabState(w, j, m)
        for w in omegas
        for j in j_min.range_to(j_max)
        for m in j.projections()
    ]
    n = len(basis)
    h = np.zeros((n, n))
    w2 = float(state.omega_bar) ** 2
    root2 = math.sqrt(2.0)
    for p, bra in enumerate(basis):
        for r, ket in enumerate(basis):
            if bra.omega != ket.omega:
                if (
                    include_lambda
                    and bra.j == ket.j
                    and bra.m == ket.m
                ):
                    h[p, r] = 0.5 * state.delta_ghz
                continue
            if abs(bra.j.twice - ket.j.twice) > 2 or abs(bra.m.twice - ket.m.twice) > 2:
                continue
            # H = -n.(d E - g mu_B B) with g the signed g-factor of this omega
            g_signed = -state.kappa_of(ket.omega)
            vx, vz = e_vec - g_signed * b_vec
            nz = cos_beta_element(ket.omega, bra.j, bra.m, 0, ket.j, ket.m)
            nx = (
                cos_beta_element(ket.omega, bra.j, bra.m, -1, ket.j, ket.m)
                - cos_beta_element(ket.omega, bra.j, bra.m, 1, ket.j, ket.m)
            ) / root2
            h[p, r] = -(vz * nz + vx * nx)
            if rotation and p == r:
                h[p, r] += state.be_ghz * (_jj(bra.j) - w2)
    # n_x elements are real and Hermitian; symmetrize away last-bit rounding
    h = 0.5 * (h + h.T)
    return SymmetricMatrix(h, basis)


def eigen_symmetric(m: SymmetricMatrix, method: str = "lapack"):
    """(ascending eigenvalues, eigenvector columns) of a built matrix."""
    entries = m.entries if isinstance(m, SymmetricMatrix) else np.asarray(m, dtype=float)
    return eigh(entries, method=method)
