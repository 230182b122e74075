"""Protocol-level optimization of the information yield rate.

With a fixed total sensing budget T split into repetitions of duration tau,
the figure of merit is the yield rate R = max_tau F(tau)/tau, which fixes
the precision per unit time through delta_omega sqrt(T) = 1/sqrt(R).  This
module maximizes R over tau, sweeps it against the spin size and the noise
parameters with power-law exponent fits, optimizes the spin-1 initial
state, and evaluates the same pipeline under pulsed-control coherence
profiles.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize

from . import config
from .ou_noise import (
    DDProfile,
    NoiseRegime,
    OUNoise,
    RegimeKind,
    chi,
    classify,
    dd_chi,
    dd_t2,
    t2,
)
from .qfi import ghz_qfi_values, spin1_qfi_values
from .spin_ops import SpinQuantumNumber

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class YieldMethod(enum.Enum):
    NUMERIC = "numeric"
    ASYMPTOTIC_QUASI_STATIC = "asymptotic_quasi_static"
    ASYMPTOTIC_MARKOVIAN = "asymptotic_markovian"


@dataclass(frozen=True)
class YieldResult:
    rate: float
    tau_opt: float
    regime: NoiseRegime
    method: YieldMethod
    on_boundary: bool = False

    def __post_init__(self):
        if self.rate < 0 or self.tau_opt <= 0:
            raise ValueError("yield rate must be >= 0 and tau_opt > 0")


@dataclass(frozen=True)
class ExponentFit:
    """Least-squares slope of log R against log of the swept parameter."""

    slope: float
    intercept: float
    max_residual: float
    window: tuple[int, int]  # half-open row range [lo, hi)
    n_points: int


@dataclass(frozen=True, eq=False)
class SweepTable:
    """One optimized protocol per grid value, plus per-window exponent fits."""

    param_name: str
    values: np.ndarray
    rates: np.ndarray
    tau_opts: np.ndarray
    markov_params: np.ndarray
    regimes: tuple[RegimeKind, ...]
    on_boundary: tuple[bool, ...]
    fits: dict[str, ExponentFit] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class StateOptResult:
    theta_opt: float
    phi_opt: float
    r_max: float
    r_ghz: float
    fidelity_with_ghz: float


def _golden_max(f: Callable[[float], float], a: float, b: float, rel_tol: float) -> tuple[float, float]:
    """Golden-section maximizer on [a, b] for a unimodal objective."""
    while (b - a) > rel_tol * 0.5 * (a + b):
        c = b - _INVPHI * (b - a)
        d = a + _INVPHI * (b - a)
        if f(c) >= f(d):
            b = d
        else:
            a = c
    x = 0.5 * (a + b)
    return x, f(x)


def yield_rate(
    s: SpinQuantumNumber,
    noise: OUNoise,
    qfi_curve: Callable[[np.ndarray], np.ndarray] | None = None,
    *,
    t2_time: float | None = None,
    search: config.YieldSearchConfig = config.YieldSearchConfig(),
) -> YieldResult:
    """Maximize F(tau)/tau over tau by log-grid scan plus golden refinement.

    The scan covers [T2 * tau_lo_factor, T2 * tau_hi_factor]; the curve is
    the GHZ closed form unless a custom one is supplied (it must accept
    scalar and array tau).  A maximum sitting on a scan edge is flagged
    rather than treated as an error.
    """
    if qfi_curve is None:
        qfi_curve = lambda t: ghz_qfi_values(s, noise, t)
    t2_val = t2(s, noise) if t2_time is None else t2_time
    taus = np.logspace(
        math.log10(t2_val * search.tau_lo_factor),
        math.log10(t2_val * search.tau_hi_factor),
        search.grid_points,
    )
    rates = np.asarray(qfi_curve(taus)) / taus
    i = int(np.argmax(rates))
    on_boundary = i == 0 or i == len(taus) - 1
    lo = taus[max(i - 1, 0)]
    hi = taus[min(i + 1, len(taus) - 1)]
    tau_opt, rate = _golden_max(lambda t: float(qfi_curve(t)) / t, lo, hi, search.rel_tol)
    return YieldResult(rate, tau_opt, classify(s, noise), YieldMethod.NUMERIC, on_boundary)


def yield_rate_asymptotic(s: SpinQuantumNumber, noise: OUNoise, regime: RegimeKind) -> YieldResult:
    """Closed-form yield rate deep in a limiting regime.

    Quasi-static: R = sqrt(2/e) S/b at tau_opt = 1/(sqrt(2) 2S b).
    Markovian:    R = 1/(2e b^2 tau_c) at tau_opt = 1/(2 (2Sb)^2 tau_c).
    Both optima equal T2/2 in their regime.
    """
    if regime == RegimeKind.QUASI_STATIC:
        rate = math.sqrt(2.0 / math.e) * s.s / noise.b
        tau_opt = 1.0 / (math.sqrt(2.0) * s.two_s * noise.b)
        method = YieldMethod.ASYMPTOTIC_QUASI_STATIC
    elif regime == RegimeKind.MARKOVIAN:
        rate = 1.0 / (2.0 * math.e * noise.b**2 * noise.tau_c)
        tau_opt = 1.0 / (2.0 * (s.two_s * noise.b) ** 2 * noise.tau_c)
        method = YieldMethod.ASYMPTOTIC_MARKOVIAN
    else:
        raise ValueError(f"no closed form in regime {regime!r}")
    return YieldResult(rate, tau_opt, classify(s, noise), method)


def _fit_window(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    logx, logy = np.log(x), np.log(y)
    slope, intercept = np.polyfit(logx, logy, 1)
    resid = np.max(np.abs(logy - (slope * logx + intercept)))
    return float(slope), float(intercept), float(resid)


def fit_loglog_exponent(table: SweepTable, window: tuple[int, int]) -> ExponentFit:
    """Power-law exponent of rate vs swept value over rows [lo, hi)."""
    lo, hi = window
    if hi - lo < 4:
        raise ValueError(f"fit window needs >= 4 points, got {hi - lo}")
    x = table.values[lo:hi]
    y = table.rates[lo:hi]
    if np.any(y <= 0):
        raise ValueError("all rates in the fit window must be positive")
    slope, intercept, resid = _fit_window(x, y)
    return ExponentFit(slope, intercept, resid, (lo, hi), hi - lo)


def _deep_windows(markov_params: np.ndarray) -> dict[str, tuple[int, int]]:
    """Contiguous row ranges deep inside each limiting regime.

    The memory parameter is monotone in any single swept variable, so the
    qualifying rows always form a prefix or a suffix of the table.
    """
    windows: dict[str, tuple[int, int]] = {}
    mark = np.flatnonzero(markov_params <= config.DEEP_MARKOVIAN_BELOW)
    if len(mark) >= 4:
        windows["markovian"] = (int(mark[0]), int(mark[-1]) + 1)
    qs = np.flatnonzero(markov_params >= config.DEEP_QUASI_STATIC_ABOVE)
    if len(qs) >= 4:
        windows["quasi_static"] = (int(qs[0]), int(qs[-1]) + 1)
    return windows


def _validated_grid(grid) -> np.ndarray:
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or len(g) < 8:
        raise ValueError("grid must be one-dimensional with >= 8 points")
    if np.any(g <= 0) or np.any(np.diff(g) <= 0):
        raise ValueError("grid must be positive and strictly increasing")
    return g


def _finish_table(param_name: str, values: np.ndarray, results: list[YieldResult]) -> SweepTable:
    table = SweepTable(
        param_name=param_name,
        values=values,
        rates=np.array([r.rate for r in results]),
        tau_opts=np.array([r.tau_opt for r in results]),
        markov_params=np.array([r.regime.markov_param for r in results]),
        regimes=tuple(r.regime.kind for r in results),
        on_boundary=tuple(r.on_boundary for r in results),
    )
    fits = {
        label: fit_loglog_exponent(table, window)
        for label, window in _deep_windows(table.markov_params).items()
    }
    return replace(table, fits=fits)


def sweep(
    parameter: str,
    grid,
    *,
    s: float | None = None,
    b: float | None = None,
    tau_c: float | None = None,
    search: config.YieldSearchConfig = config.YieldSearchConfig(),
) -> SweepTable:
    """Optimized yield rate along a log grid of one parameter.

    ``parameter`` is one of "s", "b", "tau_c"; the other two must be given
    as fixed values.  Spin grid values are rounded to the nearest
    half-integer and deduplicated.  Exponent fits are attached for every
    deep-regime window containing at least four rows.
    """
    g = _validated_grid(grid)
    if parameter == "s":
        if b is None or tau_c is None:
            raise ValueError("s-sweep requires fixed b and tau_c")
        two_s_grid = sorted({max(1, round(2 * v)) for v in g})
        spins = [SpinQuantumNumber(int(v)) for v in two_s_grid]
        rows = [(sq.s, yield_rate(sq, OUNoise(b, tau_c), search=search)) for sq in spins]
    elif parameter == "b":
        if s is None or tau_c is None:
            raise ValueError("b-sweep requires fixed s and tau_c")
        sq = SpinQuantumNumber.from_s(s)
        rows = [(v, yield_rate(sq, OUNoise(v, tau_c), search=search)) for v in g]
    elif parameter == "tau_c":
        if s is None or b is None:
            raise ValueError("tau_c-sweep requires fixed s and b")
        sq = SpinQuantumNumber.from_s(s)
        rows = [(v, yield_rate(sq, OUNoise(b, v), search=search)) for v in g]
    else:
        raise ValueError(f"parameter must be 's', 'b' or 'tau_c', got {parameter!r}")

    values = np.array([v for v, _ in rows])
    results = [r for _, r in rows]
    return _finish_table(parameter, values, results)


def _spin1_rate(theta: float, phi: float, noise: OUNoise, t2_val: float,
                search: config.YieldSearchConfig) -> float:
    sq = SpinQuantumNumber(2)
    curve = lambda t: spin1_qfi_values(theta, phi, chi(noise, t), t)
    return yield_rate(sq, noise, curve, t2_time=t2_val, search=search).rate


def optimize_initial_state_spin1(
    noise: OUNoise,
    *,
    search: config.StateSearchConfig = config.StateSearchConfig(),
    tau_search: config.YieldSearchConfig = config.YieldSearchConfig(),
) -> StateOptResult:
    """Best spin-1 initial state for the yield rate, against the GHZ baseline.

    Scans a grid over the two amplitude angles (the relative phases do not
    enter the QFI), refines the best grid points with a bounded simplex, and
    reports the overlap of the winner with the GHZ-like state after zeroing
    the phases of both.  The GHZ point itself is part of the candidate set,
    so r_max can never fall below r_ghz.
    """
    sq = SpinQuantumNumber(2)
    t2_val = t2(sq, noise)
    tau_grid = np.logspace(
        math.log10(t2_val * tau_search.tau_lo_factor),
        math.log10(t2_val * tau_search.tau_hi_factor),
        tau_search.grid_points,
    )
    chi_grid = chi(noise, tau_grid)

    n = search.grid_size
    angles = (np.arange(n) + 0.5) * (math.pi / 2) / n  # interior of (0, pi/2)
    th, ph = np.meshgrid(angles, angles, indexing="ij")
    th, ph = th.ravel(), ph.ravel()

    # coarse rate on the tau grid only, to rank refinement starts
    coarse = np.empty(len(th))
    step = search.chunk_rows
    for k in range(0, len(th), step):
        f = spin1_qfi_values(
            th[k : k + step, None], ph[k : k + step, None], chi_grid[None, :], tau_grid[None, :]
        )
        coarse[k : k + step] = np.max(f / tau_grid[None, :], axis=1)

    r_ghz = _spin1_rate(math.pi / 4, math.pi / 2, noise, t2_val, tau_search)
    best_theta, best_phi, best_rate = math.pi / 4, math.pi / 2, r_ghz
    starts = np.argsort(coarse)[::-1][: search.refine_starts]
    for idx in starts:
        res = minimize(
            lambda x: -_spin1_rate(x[0], x[1], noise, t2_val, tau_search),
            [th[idx], ph[idx]],
            method="Nelder-Mead",
            bounds=[(1e-9, math.pi / 2), (1e-9, math.pi / 2)],
            options={"xatol": search.xatol, "fatol": 1e-12},
        )
        if -res.fun > best_rate:
            best_theta, best_phi, best_rate = float(res.x[0]), float(res.x[1]), float(-res.fun)

    fid = abs(math.cos(best_theta) + math.sin(best_theta) * math.sin(best_phi)) / math.sqrt(2.0)
    return StateOptResult(best_theta, best_phi, best_rate, r_ghz, fid)


def dd_scaling(
    profile: DDProfile,
    s_grid: Sequence[float],
    noise: OUNoise,
    *,
    search: config.YieldSearchConfig = config.YieldSearchConfig(),
) -> SweepTable:
    """Spin-size sweep of the yield rate with the pulsed-control coherence law.

    In the short-time branch the fitted exponent approaches 2 - 2/n; deep in
    the Markovian branch the control is ineffective and the rate is flat.
    """
    g = _validated_grid(s_grid)
    two_s_grid = sorted({max(1, round(2 * v)) for v in g})
    values, results = [], []
    for two_s in two_s_grid:
        sq = SpinQuantumNumber(int(two_s))
        t2_val = dd_t2(sq, noise, profile)
        curve = lambda t, _sq=sq: (_sq.two_s * np.asarray(t)) ** 2 * np.exp(
            -2.0 * _sq.two_s**2 * dd_chi(noise, profile, t)
        )
        values.append(sq.s)
        results.append(yield_rate(sq, noise, curve, t2_time=t2_val, search=search))
    return _finish_table("s", np.array(values), results)
