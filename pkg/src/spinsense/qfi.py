"""Quantum Fisher information for the frequency of a dephased spin.

Three routes are provided and cross-validated against each other:

* closed form for the extremal-superposition (GHZ-like) protocol,
  F = (2S)^2 tau^2 exp(-2 (2S)^2 chi);
* a closed form for the general four-angle spin-1 state, written as a ratio
  of trigonometric polynomials so it stays finite at every angle;
* a generic mixed-state evaluator that diagonalizes rho and sums the
  symmetric-logarithmic-derivative series, used as the independent oracle.

Where the closed forms and the generic route disagree beyond tolerance, the
generic route is authoritative.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import config
from .ou_noise import OUNoise, chi
from .spin_ops import (
    DensityMatrix,
    PureState,
    Spin1Params,
    SpinQuantumNumber,
    _delta_m,
    dephase,
)

_DRHO_HERMITICITY_TOL = 1e-10


class QFIMethod(enum.Enum):
    CLOSED_FORM_GHZ = "closed_form_ghz"
    CLOSED_FORM_SPIN1 = "closed_form_spin1"
    GENERIC_SLD = "generic_sld"


@dataclass(frozen=True)
class QFIResult:
    """Fisher information for the angular frequency (units time^2)."""

    value: float
    method: QFIMethod

    def __post_init__(self):
        if self.value < 0:
            raise ValueError(f"QFI must be nonnegative, got {self.value!r}")


def ghz_qfi_values(s: SpinQuantumNumber, noise: OUNoise, tau) -> float | np.ndarray:
    """Vectorized noisy GHZ-protocol QFI, (2S tau)^2 exp(-2 (2S)^2 chi(tau))."""
    t = np.asarray(tau, dtype=float)
    out = (s.two_s * t) ** 2 * np.exp(-2.0 * s.two_s**2 * chi(noise, t))
    return float(out) if out.ndim == 0 else out


def qfi_noisefree_ghz(s: SpinQuantumNumber, tau: float) -> QFIResult:
    """Maximal noise-free QFI of the GHZ-like protocol, (2S)^2 tau^2."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    return QFIResult((s.two_s * tau) ** 2, QFIMethod.CLOSED_FORM_GHZ)


def qfi_noisy_ghz(s: SpinQuantumNumber, noise: OUNoise, tau: float) -> QFIResult:
    """GHZ-protocol QFI including dephasing; underflows gracefully to 0."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    return QFIResult(float(ghz_qfi_values(s, noise, tau)), QFIMethod.CLOSED_FORM_GHZ)


def spin1_qfi_values(theta, phi, chi_value, tau) -> np.ndarray:
    """Vectorized spin-1 QFI for the four-angle state family; broadcasts.

    The underlying rational expression is evaluated with every exponential
    rewritten in the decaying variable D = exp(-2 chi), so it neither
    overflows at large chi nor hits the removable cot singularities at the
    axes.  The denominator vanishes only where the state is a bare S_z
    eigenstate, which carries no frequency information, so those points
    return 0.  The result is independent of the two relative phases of the
    state family.
    """
    theta, phi, chi_value, tau = np.broadcast_arrays(
        *(np.asarray(a, dtype=float) for a in (theta, phi, chi_value, tau))
    )
    if np.any(chi_value < 0):
        raise ValueError("chi must be nonnegative")
    d = np.exp(-2.0 * chi_value)
    st2 = np.sin(theta) ** 2
    ct2 = np.cos(theta) ** 2
    sf2 = np.sin(phi) ** 2
    cf2 = np.cos(phi) ** 2
    w = ct2 + st2 * sf2
    g = 1.0 + d + 2.0 * d**3
    num = (
        ct2**2 * (cf2**2 + 2.0 * g * cf2 * sf2 + 4.0 * (d**3 + d**4 + d**5 + d**6) * sf2**2)
        + 2.0 * ct2 * st2 * cf2 * ((1.0 + 2.0 * d - 2.0 * d**2) * cf2 * sf2 + g * sf2**2)
        + st2**2 * cf2**2 * sf2**2
    )
    den = (
        (1.0 + d + d**2 + d**3) * ct2 * w * sf2
        + cf2**2 * w * st2
        + cf2 * (2.0 * (1.0 + d + d**2) * ct2 * st2 * sf2 + ct2**2 + st2**2 * sf2**2)
    )
    ok = den > 1e-280
    out = np.where(ok, 4.0 * tau**2 * d * st2 * num / np.where(ok, den, 1.0), 0.0)
    return out


def qfi_spin1_closed(p: Spin1Params, chi_value: float, tau: float) -> QFIResult:
    """Closed-form spin-1 QFI at dephasing strength chi and evolution time tau.

    Depends on the state only through theta and phi; the relative phases
    commute with both the signal and the dephasing and drop out.  The
    dephasing exponent is always evaluated at the elapsed time tau.
    """
    if chi_value < 0:
        raise ValueError("chi must be nonnegative")
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    value = float(spin1_qfi_values(p.theta, p.phi, chi_value, tau))
    return QFIResult(value, QFIMethod.CLOSED_FORM_SPIN1)


def drho_domega(psi: PureState, omega: float, tau: float, chi_value: float) -> np.ndarray:
    """Analytic derivative of the dephased state with respect to omega.

    Entry (m, n) of the dephased matrix carries the phase e^{-i(m-n) omega
    tau}, so the derivative multiplies it by -i(m-n) tau; Hermitian and
    traceless by construction.
    """
    rho = dephase(psi, omega, tau, chi_value).entries
    dm = _delta_m(rho.shape[0])
    return rho * (-1j * dm * tau)


def qfi_generic(
    rho: DensityMatrix,
    drho: np.ndarray,
    cutoff: float = config.SLD_EIGENVALUE_CUTOFF,
) -> QFIResult:
    """Mixed-state QFI from the eigendecomposition of rho.

    F = sum over eigenpairs of 2 |<i| drho |j>|^2 / (p_i + p_j), skipping
    pairs with p_i + p_j <= cutoff.  Works for any parameterization; serves
    as the independent oracle for the closed forms.
    """
    drho = np.asarray(drho, dtype=complex)
    if np.max(np.abs(drho - drho.conj().T)) > _DRHO_HERMITICITY_TOL:
        raise ValueError("drho is not Hermitian")
    p, u = np.linalg.eigh(rho.entries)
    m = u.conj().T @ drho @ u
    denom = p[:, None] + p[None, :]
    keep = denom > cutoff
    value = float(np.sum(2.0 * np.abs(m) ** 2 * keep / np.where(keep, denom, 1.0)))
    return QFIResult(value, QFIMethod.GENERIC_SLD)


def min_error(f: QFIResult, nu: int) -> float:
    """Smallest achievable frequency error after nu repetitions, 1/sqrt(nu F)."""
    if nu < 1:
        raise ValueError(f"nu must be >= 1, got {nu!r}")
    if f.value <= 0:
        raise ValueError("QFI must be positive to bound the error")
    return 1.0 / math.sqrt(nu * f.value)
