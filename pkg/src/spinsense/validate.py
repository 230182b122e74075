"""Self-validation suites: every analytic result against an independent route.

Four suites, each returning a list of check records:

* ``mc``        sampled-noise coherence against the closed-form decay
* ``oracle``    closed-form QFI against the generic eigendecomposition route
* ``estimator`` measurement Fisher information and likelihood-estimator
                efficiency against the error bound
* ``dd``        pulsed-control scaling exponents against 2 - 2/n
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .estimation import classical_fisher, simulate_and_estimate
from .ou_noise import DDProfile, OUNoise, chi, classify, mc_coherence
from .protocol import dd_scaling, yield_rate
from .qfi import drho_domega, qfi_generic, qfi_noisy_ghz, spin1_qfi_values
from .spin_ops import Spin1Params, SpinQuantumNumber, dephase, ghz_like_state, spin1_param_state


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    expected: float
    tolerance: float
    passed: bool

    def as_dict(self) -> dict:
        return asdict(self)


def _check(name: str, measured: float, expected: float, tolerance: float) -> CheckResult:
    return CheckResult(name, float(measured), float(expected), float(tolerance),
                       bool(abs(measured - expected) <= tolerance))


# (S, b, tau_c, tau) spanning Markovian, intermediate and quasi-static noise
MC_GRID: tuple[tuple[float, float, float, float], ...] = (
    (0.5, 1.0, 0.02, 0.2),
    (0.5, 1.0, 0.02, 0.5),
    (1.0, 1.0, 0.04, 0.4),
    (0.5, 2.0, 0.02, 0.3),
    (0.5, 1.0, 1.0, 1.0),
    (1.0, 1.0, 0.5, 0.5),
    (2.0, 1.0, 0.1, 0.2),
    (4.0, 1.0, 0.1, 0.2),
    (0.5, 1.0, 50.0, 1.0),
    (1.0, 1.0, 100.0, 0.5),
    (2.0, 0.5, 100.0, 0.5),
    (4.0, 1.0, 1000.0, 0.05),
)

MC_PATHS = 100_000


def mc_suite(seed: int, paths: int = MC_PATHS) -> list[CheckResult]:
    """Sampled coherence vs exp(-(2S)^2 chi) over the three-regime grid."""
    checks: list[CheckResult] = []
    for i, (s_val, b, tau_c, tau) in enumerate(MC_GRID):
        s = SpinQuantumNumber.from_s(s_val)
        noise = OUNoise(b, tau_c)
        dt = min(tau_c / 40.0, tau / 50.0)
        est = mc_coherence(s, noise, tau, paths, dt, seed + i)
        target = math.exp(-s.two_s**2 * chi(noise, tau))
        regime = classify(s, noise).kind.value
        tag = f"mc[{i}] {regime} S={s_val:g} b={b:g} tau_c={tau_c:g} tau={tau:g}"
        checks.append(_check(f"{tag} re", est.mean.real, target, 3.0 * est.stderr_real))
        checks.append(_check(f"{tag} im", est.mean.imag, 0.0, 3.0 * est.stderr_imag))
        if target > 0.1:
            checks.append(_check(f"{tag} re rel", est.mean.real / target, 1.0, 0.01))
    return checks


def _random_ghz_tuple(rng: np.random.Generator) -> tuple[SpinQuantumNumber, OUNoise, float]:
    """Draw (S, noise, tau) keeping the decoherence exponent moderate."""
    while True:
        s = SpinQuantumNumber(int(rng.choice([1, 2, 3, 4, 8])))
        noise = OUNoise(
            float(np.exp(rng.uniform(np.log(0.05), np.log(2.0)))),
            float(np.exp(rng.uniform(np.log(0.01), np.log(10.0)))),
        )
        tau = float(np.exp(rng.uniform(np.log(0.05), np.log(2.0))))
        if s.two_s**2 * chi(noise, tau) <= 3.0:
            return s, noise, tau


def oracle_checks(seed: int, n_tuples: int) -> tuple[float, float, float]:
    """Worst relative disagreements of the two closed forms vs the SLD route,
    and the worst absolute spread of the spin-1 QFI over the state phases."""
    rng = np.random.default_rng(seed)
    worst_ghz = 0.0
    worst_spin1 = 0.0
    for _ in range(n_tuples):
        s, noise, tau = _random_ghz_tuple(rng)
        omega = float(rng.uniform(-2.0, 2.0))
        chi_val = float(chi(noise, tau))
        psi = ghz_like_state(s)
        rho = dephase(psi, omega, tau, chi_val)
        generic = qfi_generic(rho, drho_domega(psi, omega, tau, chi_val)).value
        closed = qfi_noisy_ghz(s, noise, tau).value
        worst_ghz = max(worst_ghz, abs(generic - closed) / max(generic, closed))

        params = Spin1Params(
            float(rng.uniform(0.1, math.pi / 2 - 0.1)),
            float(rng.uniform(0.1, math.pi / 2 - 0.1)),
            float(rng.uniform(0.0, 2 * math.pi)),
            float(rng.uniform(0.0, 2 * math.pi)),
        )
        chi1 = min(chi_val, 0.75)
        psi1 = spin1_param_state(params)
        rho1 = dephase(psi1, omega, tau, chi1)
        generic1 = qfi_generic(rho1, drho_domega(psi1, omega, tau, chi1)).value
        closed1 = float(spin1_qfi_values(params.theta, params.phi, chi1, tau))
        worst_spin1 = max(worst_spin1, abs(generic1 - closed1) / max(generic1, closed1))

    # phase independence at a fixed interior point
    base = Spin1Params(0.7, 0.9)
    psi_states = [
        spin1_param_state(Spin1Params(base.theta, base.phi, l1, l2))
        for l1 in np.linspace(0.0, 2 * math.pi, 7, endpoint=False)
        for l2 in np.linspace(0.0, 2 * math.pi, 5, endpoint=False)
    ]
    vals = [
        qfi_generic(dephase(p, 0.8, 0.6, 0.2), drho_domega(p, 0.8, 0.6, 0.2)).value
        for p in psi_states
    ]
    phase_spread = float(np.max(vals) - np.min(vals))
    return worst_ghz, worst_spin1, phase_spread


def oracle_suite(seed: int, n_tuples: int = 1000) -> list[CheckResult]:
    worst_ghz, worst_spin1, phase_spread = oracle_checks(seed, n_tuples)
    return [
        _check("oracle ghz closed-form vs sld (worst rel)", worst_ghz, 0.0, 1e-8),
        _check("oracle spin-1 closed-form vs sld (worst rel)", worst_spin1, 0.0, 1e-8),
        _check("oracle spin-1 phase independence (abs spread)", phase_spread, 0.0, 1e-10),
    ]


def estimator_suite(seed: int) -> list[CheckResult]:
    """Fisher-information saturation and estimator efficiency at quadrature."""
    s = SpinQuantumNumber(8)
    noise = OUNoise(1.0, 0.1)
    tau = yield_rate(s, noise).tau_opt
    omega = math.pi / (2.0 * s.two_s * tau)
    cfi = classical_fisher(s, noise, tau, omega)
    qfi = qfi_noisy_ghz(s, noise, tau).value
    run = simulate_and_estimate(s, noise, tau, omega, nu=10_000, seed=seed, repetitions=500)
    return [
        _check("estimator cfi/qfi at quadrature", cfi / qfi, 1.0, 1e-12),
        _check("estimator sample std / crb", run.sample_std / run.crb, 1.0, 0.05),
        _check("estimator flagged runs", run.n_flagged, 0.0, 0.0),
    ]


def dd_suite(seed: int = 0) -> list[CheckResult]:
    """Fitted rate-vs-S exponents for pulsed control in both deep regimes."""
    checks = []
    s_grid = np.logspace(np.log10(1.0), np.log10(128.0), 12)
    qs_noise = OUNoise(1.0, 100.0)  # memory parameter >= 200 over the grid
    for n in (2.0, 3.0, 4.0):
        table = dd_scaling(DDProfile(n), s_grid, qs_noise)
        slope = table.fits["quasi_static"].slope
        checks.append(_check(f"dd quasi-static exponent n={n:g}", slope, 2.0 - 2.0 / n, 0.1))
    mk_noise = OUNoise(1.0, 1e-4)  # memory parameter <= 3e-3 over the grid
    s_grid_m = np.logspace(np.log10(0.5), np.log10(8.0), 10)
    table = dd_scaling(DDProfile(3.0), s_grid_m, mk_noise)
    checks.append(_check("dd markovian exponent n=3", table.fits["markovian"].slope, 0.0, 0.1))
    return checks


SUITES = {
    "mc": mc_suite,
    "oracle": oracle_suite,
    "estimator": estimator_suite,
    "dd": dd_suite,
}


def run_suite(name: str, seed: int) -> list[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](seed)
