"""Randomised agreement checks between closed forms and the oracles."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import oracles
from .kernels import ResonanceWarning, is_resonant, response_mirror, s_function, s_values, sinc_kernel
from .rates import AtomConfig, rate_cavity
from .states import channel

__all__ = ["Check", "sample_cavity_cases", "consistency_triangle"]


@dataclass(frozen=True)
class Check:
    name: str
    params: str
    closed: float
    oracle: float
    allowed: float
    status: str  # "pass", "fail" or "flagged"

    @property
    def diff(self) -> float:
        return abs(self.closed - self.oracle)


def _frac(x: float) -> float:
    return abs(x - round(x))


def sample_cavity_cases(rng: np.random.Generator, n: int, margin: float = 0.05):
    """Random ``(d1, d2, L, dw)`` with ``|dw| L / 2pi`` at least ``margin`` from an integer."""
    out = []
    while len(out) < n:
        L = rng.uniform(1.0, 30.0)
        w = rng.uniform(0.2, 5.0)
        if _frac(w * L / (2 * np.pi)) < margin or is_resonant(-w, L):
            continue
        d1, d2 = rng.uniform(0.0, L, size=2)
        out.append((float(d1), float(d2), float(L), -float(w)))
    return out


def _compare(name, params, closed, oracle, allowed, flagged=False):
    ok = abs(closed - oracle) <= allowed
    status = "flagged" if flagged else ("pass" if ok else "fail")
    return Check(name, params, float(closed), float(oracle), float(allowed), status)


def _cavity_checks(d1, d2, L, dw, tolerance, series_tol, rng, flagged=False):
    checks = []
    scale = -dw / (2 * np.pi)
    params = f"d1={d1:.6g} d2={d2:.6g} L={L:.6g} dw={dw:.6g}"
    zs = np.array([0.0, 2 * d1, 2 * d2, abs(d1 - d2), d1 + d2])
    closed = s_values(zs, dw, L)
    modes = oracles.lattice_mode_sum(zs, dw, L)
    for z, a, b in zip(zs, closed, modes):
        checks.append(_compare("S~lattice_modes", f"{params} z={z:.6g}", a, b, tolerance * max(abs(b), scale), flagged))
    for label in ("sg", "ag"):
        ch = channel(label[0], label[1], -dw)
        bd = rate_cavity(ch, AtomConfig(d1, d2), L)
        f11 = oracles.mode_sum_response(dw, d1, d1, L)
        f22 = oracles.mode_sum_response(dw, d2, d2, L)
        f12 = oracles.mode_sum_response(dw, d1, d2, L)
        total = 0.5 * (f11 + f22) + (1.0 if label == "sg" else -1.0) * f12
        checks.append(_compare(f"R_{label}~mode_sum", params, bd.total, total, tolerance * max(abs(total), scale), flagged))
    z = float(rng.uniform(0.0, 2 * L))
    rep = oracles.image_series_partial(z, dw, L, tol=series_tol)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ResonanceWarning)
        s = s_function(z, dw, L)
    status_ok = rep.converged and abs(s - rep.value) <= rep.error_estimate
    status = "flagged" if flagged else ("pass" if status_ok else "fail")
    checks.append(Check("S~image_series", f"{params} z={z:.6g}", s, rep.value, rep.error_estimate, status))
    return checks


def _quadrature_checks(rng, n, tol=1e-6):
    checks = []
    for _ in range(n):
        w = float(rng.uniform(0.5, 5.0))
        z = float(rng.uniform(0.1, 10.0))
        rep = oracles.quadrature_response(-w, z, tol=tol)
        checks.append(_compare("free_kernel~quadrature", f"dw={-w:.6g} z={z:.6g}", sinc_kernel(-w, z), rep.value, tol))
        d1, d2 = (float(v) for v in rng.uniform(0.05, 5.0, size=2))
        for pair in ("self1", "self2", "cross"):
            rep = oracles.quadrature_mirror_response(-w, d1, d2, pair, tol=tol)
            checks.append(
                _compare(f"mirror_{pair}~quadrature", f"dw={-w:.6g} d1={d1:.6g} d2={d2:.6g}", response_mirror(-w, d1, d2, pair), rep.value, tol)
            )
    return checks


def consistency_triangle(
    samples: int = 100,
    seed: int = 42,
    tolerance: float = 1e-9,
    series_tolerance: float = 1e-6,
    quadrature_samples: int = 2,
    force_resonance: bool = False,
) -> list[Check]:
    """Run all oracle comparisons; resonant cases are reported as ``flagged``."""
    if tolerance < 0:
        raise ValueError("tolerance must be nonnegative")
    rng = np.random.default_rng(seed)
    checks: list[Check] = []
    if force_resonance:
        for _ in range(samples):
            w = float(rng.uniform(0.5, 5.0))
            j = int(rng.integers(1, 8))
            L = j * np.pi / w
            d1, d2 = (float(v) for v in rng.uniform(0.0, L, size=2))
            checks.extend(_cavity_checks(d1, d2, L, -w, tolerance, series_tolerance, rng, flagged=True))
        return checks
    for d1, d2, L, dw in sample_cavity_cases(rng, samples):
        checks.extend(_cavity_checks(d1, d2, L, dw, tolerance, series_tolerance, rng))
    checks.extend(_quadrature_checks(rng, quadrature_samples))
    return checks
