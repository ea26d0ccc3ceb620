"""Qubit-TLS device model: spectrum, Hamiltonians and flux derivatives.

Unit conventions used across the package:

* energies are stored as frequencies in GHz (Hamiltonians hold H/h),
* absolute qubit flux in mPhi0, flux offsets from the resonance point in
  uPhi0, time in ns,
* with these choices GHz * ns = 1, so propagator phases are
  2*pi*(H/h)*t with no further conversion.

Basis ordering for the four-level system is fixed globally as
(|0g>, |1g>, |0e>, |1e>), where 0/1 are the qubit energy eigenstates and
g/e the TLS states.  The qubit index is the fast (inner) index.

All functions are pure; flux arguments may be numpy arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

# 2018 SI exact values.
PLANCK_H = 6.62607015e-34  # J s
ELEMENTARY_CHARGE = 1.602176634e-19  # C
BOLTZMANN_KB = 1.380649e-23  # J/K
FLUX_QUANTUM = PLANCK_H / (2.0 * ELEMENTARY_CHARGE)  # Wb, h/2e


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants used by the model (SI units)."""

    h: float = PLANCK_H
    phi0: float = FLUX_QUANTUM
    kb: float = BOLTZMANN_KB


SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
# +1 on the lower-index (ground) state so that -f/2*sigma_z puts the ground
# state at the lower energy.
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)

BASIS_LABELS = ("0g", "1g", "0e", "1e")

# GHz of energy detuning per mPhi0 of applied flux and per ampere of
# persistent current: 2 * Phi0 * 1e-3 / h, in GHz/(A mPhi0).
_EPS_COEFF = 2.0 * FLUX_QUANTUM * 1e-3 / PLANCK_H * 1e-9


def qubit_tls_operator(op_qubit: np.ndarray, op_tls: np.ndarray) -> np.ndarray:
    """Two-body operator in the fixed basis ordering (|0g>,|1g>,|0e>,|1e>).

    The TLS is the slow (outer) kron index so that state index = qubit + 2*tls.
    """
    return np.kron(op_tls, op_qubit)


@dataclass
class DeviceParams:
    """Physical parameters of the coupled qubit-TLS device.

    Parameters
    ----------
    delta : float
        Qubit tunnel coupling (GHz).
    ip : float
        Persistent current (A).
    s : float
        Qubit-TLS coupling splitting (GHz).
    phi_star : float
        Flux bias of the qubit-TLS resonance (mPhi0).
    t1_qb, t1_tls : float
        Qubit and TLS energy relaxation times (s).
    f_tls : float, optional
        TLS frequency (GHz).  By default it is pinned to the qubit
        frequency at ``phi_star`` so that a zero flux offset means exact
        resonance.
    """

    delta: float = 5.4
    ip: float = 180e-9
    s: float = 0.076
    phi_star: float = -4.15
    t1_qb: float = 10e-6
    t1_tls: float = 1e-6
    f_tls: float | None = None

    def __post_init__(self):
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.s <= 0:
            raise ValueError("s must be positive")
        if self.t1_qb <= 0:
            raise ValueError("t1_qb must be positive")
        if self.t1_tls <= 0:
            raise ValueError("t1_tls must be positive")
        if self.f_tls is None:
            self.f_tls = float(qubit_frequency(self.phi_star, self))

    def to_json(self) -> dict:
        return {
            "delta_ghz": self.delta,
            "ip_a": self.ip,
            "s_ghz": self.s,
            "phi_star_mphi0": self.phi_star,
            "t1_qb_s": self.t1_qb,
            "t1_tls_s": self.t1_tls,
            "f_tls_ghz": self.f_tls,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DeviceParams":
        return cls(
            delta=obj["delta_ghz"],
            ip=obj["ip_a"],
            s=obj["s_ghz"],
            phi_star=obj["phi_star_mphi0"],
            t1_qb=obj["t1_qb_s"],
            t1_tls=obj["t1_tls_s"],
            f_tls=obj.get("f_tls_ghz"),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> "DeviceParams":
        return cls.from_json(json.loads(text))


def energy_detuning(phi_qb, params: DeviceParams):
    """Energy detuning (GHz) of the qubit at flux ``phi_qb`` (mPhi0).

    Odd in the flux; zero at the qubit symmetry point.
    """
    return _EPS_COEFF * params.ip * np.asarray(phi_qb, dtype=float)


def qubit_frequency(phi_qb, params: DeviceParams):
    """Qubit transition frequency (GHz) at flux ``phi_qb`` (mPhi0)."""
    return np.hypot(params.delta, energy_detuning(phi_qb, params))


def frequency_detuning(dphi, params: DeviceParams):
    """TLS-qubit frequency detuning (GHz) at flux offset ``dphi`` (uPhi0).

    ``dphi`` is measured from the resonance flux; zero offset gives zero
    detuning exactly because ``f_tls`` defaults to the qubit frequency at
    the resonance point.
    """
    phi = params.phi_star + np.asarray(dphi, dtype=float) * 1e-3
    return params.f_tls - qubit_frequency(phi, params)


def oscillation_frequency(df, s):
    """Coherent-exchange frequency (GHz) for detuning ``df`` and coupling ``s``."""
    if np.any(np.asarray(s) < 0):
        raise ValueError("coupling s must be non-negative")
    return np.hypot(df, s)


def qubit_frequency_slope(phi_qb, params: DeviceParams):
    """d f_qb / d Phi (GHz per mPhi0) at flux ``phi_qb`` (mPhi0)."""
    eps = energy_detuning(phi_qb, params)
    return eps / np.hypot(params.delta, eps) * _EPS_COEFF * params.ip


def flux_sensitivity(dphi, params: DeviceParams):
    """Sensitivity of the exchange frequency to flux (GHz per mPhi0).

    Analytic chain rule d f_osc/d Phi = (df/f_osc) * (d df/d Phi) with
    d df/d Phi = -d f_qb/d Phi.  Vanishes at zero offset, the first-order
    flux-insensitive point.
    """
    phi = params.phi_star + np.asarray(dphi, dtype=float) * 1e-3
    df = frequency_detuning(dphi, params)
    fosc = np.hypot(df, params.s)
    return -df / fosc * qubit_frequency_slope(phi, params)


def full_hamiltonian(phi_qb: float, params: DeviceParams) -> np.ndarray:
    """Four-level lab-frame Hamiltonian H/h (GHz) at flux ``phi_qb`` (mPhi0).

    H/h = -(f_qb/2) sz_qb - (f_tls/2) sz_tls - (S/2) sx_qb sx_tls in the
    fixed basis ordering.  Hermitian by construction.
    """
    fqb = float(qubit_frequency(phi_qb, params))
    h = -0.5 * fqb * qubit_tls_operator(SIGMA_Z, IDENTITY2)
    h -= 0.5 * params.f_tls * qubit_tls_operator(IDENTITY2, SIGMA_Z)
    h -= 0.5 * params.s * qubit_tls_operator(SIGMA_X, SIGMA_X)
    return h


def subspace_hamiltonian(df: float, s: float) -> np.ndarray:
    """Two-level Hamiltonian H/h (GHz) on (|1g>, |0e>) in the TLS frame.

    H/h = -(1/2) (df * sz + s * sx); its eigenvalue gap equals the
    exchange frequency.
    """
    return -0.5 * (df * SIGMA_Z + s * SIGMA_X)


def subspace_projection(h4: np.ndarray) -> np.ndarray:
    """Restriction of a four-level Hamiltonian to the (|1g>, |0e>) block."""
    idx = np.array([1, 2])
    return h4[np.ix_(idx, idx)]


def flux_offset_for_detuning(df_target: float, params: DeviceParams,
                             side: int = -1) -> float:
    """Flux offset (uPhi0) at which the detuning equals ``df_target`` (GHz).

    ``side`` selects the branch: -1 searches offsets below resonance,
    +1 above.  The detuning is monotonic on either branch.
    """
    if side not in (-1, 1):
        raise ValueError("side must be -1 or +1")

    def g(x):
        return float(frequency_detuning(x, params)) - df_target

    lo, hi = (0.0, 0.0)
    step = 100.0 * side
    hi = step
    for _ in range(60):
        if g(0.0) == 0.0 and df_target == 0.0:
            return 0.0
        if g(lo) * g(hi) <= 0:
            break
        lo, hi = hi, hi + step
        step *= 1.5
    else:
        raise ValueError(f"detuning {df_target} GHz not reachable on side {side}")
    a, b = (lo, hi) if lo < hi else (hi, lo)
    return float(brentq(g, a, b, xtol=1e-10))


def ket(label: str) -> np.ndarray:
    """Basis state of the four-level system by label, e.g. ``'1g'``."""
    vec = np.zeros(4, dtype=complex)
    vec[BASIS_LABELS.index(label)] = 1.0
    return vec


def subspace_ket(label: str) -> np.ndarray:
    """Basis state of the (|1g>, |0e>) subspace by label."""
    if label == "1g":
        return np.array([1.0, 0.0], dtype=complex)
    if label == "0e":
        return np.array([0.0, 1.0], dtype=complex)
    raise ValueError(f"unknown subspace label {label!r}")


def with_overrides(params: DeviceParams, **kwargs) -> DeviceParams:
    """Copy of ``params`` with fields replaced (f_tls re-derived if not given)."""
    if "f_tls" not in kwargs:
        kwargs["f_tls"] = None
    return replace(params, **kwargs)
