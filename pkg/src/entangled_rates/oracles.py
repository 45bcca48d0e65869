"""Brute-force cross-checks for the closed-form responses.

Three routes, none of which uses the piecewise closed form of S:

* :func:`image_series_partial` sums the image lattice directly, pairing
  ``k`` with ``-k`` and Cesaro-averaging the tail of partial sums.
* :func:`mode_sum_response` is the exact, finite Dirichlet mode expansion
  of the same lattice Green function.  The lattice with period ``L`` has
  nodes at every multiple of ``L/2``, so its modes are ``sin(2 n pi x / L)``
  on a slab of width ``L/2``.  :func:`dirichlet_mode_sum` is the general
  slab form.
* :func:`quadrature_response` integrates the regularised time-domain
  Wightman function numerically for several ``eps`` and extrapolates to
  ``eps -> 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import propagators
from .kernels import TAU_CLASS, MirrorPair

__all__ = [
    "OracleReport",
    "image_series_partial",
    "dirichlet_mode_sum",
    "mode_sum_response",
    "lattice_mode_sum",
    "quadrature_response",
    "quadrature_mirror_response",
    "DEFAULT_EPSILONS",
]

DEFAULT_EPSILONS = (1e-2, 1e-3, 1e-4)


@dataclass(frozen=True)
class OracleReport:
    value: float
    error_estimate: float
    terms_used: int
    converged: bool
    imag: float = 0.0


# --------------------------------------------------------------------------
# image lattice


def _lattice_terms(u: np.ndarray, w: float) -> np.ndarray:
    # sin(w u) / (2 pi u), finite at u = 0
    return w * np.sinc(w * u / np.pi) / (2 * np.pi)


def _cesaro(partial: np.ndarray, n: int) -> tuple[float, float]:
    """First- and second-order window means of ``partial[:n]``."""
    window = int(np.ceil(n / 4))
    tail = partial[n - 2 * window : n]
    csum = np.concatenate(([0.0], np.cumsum(tail)))
    running = (csum[window:] - csum[:-window]) / window
    return float(running[-1]), float(running.mean())


def image_series_partial(
    z: float,
    delta_omega: float,
    L: float,
    kmax: int = 100_000,
    averaging: str = "cesaro",
    tol: float = 1e-6,
) -> OracleReport:
    """Direct partial sums of the image lattice for ``S(z, dw, L)``.

    The paired terms decay like ``sin(k w L)/k``, so the raw partial sums
    oscillate.  ``averaging="cesaro"`` takes running means of the partial
    sums over windows of ``ceil(kmax/4)`` terms and then averages those
    means (second-order Cesaro).  The error estimate is the gap between the
    first- and second-order averages, plus their drift between ``kmax/2``
    and ``kmax``, plus a floor for the rounding of ``sin`` at large arguments.
    """
    if kmax < 10:
        raise ValueError("kmax must be >= 10")
    if averaging not in ("none", "cesaro"):
        raise ValueError(f"averaging must be 'none' or 'cesaro', got {averaging!r}")
    if not L > 0:
        raise ValueError(f"cavity width L must be positive, got {L}")
    if delta_omega >= 0:
        return OracleReport(0.0, 0.0, 0, True)
    w = -float(delta_omega)
    k = np.arange(1, kmax + 1, dtype=float)
    pairs = _lattice_terms(z - k * L, w) + _lattice_terms(z + k * L, w)
    partial = _lattice_terms(np.array([z], dtype=float), w)[0] + np.cumsum(pairs)
    # sin() of an argument near w k L loses about eps * w k L absolutely, i.e.
    # eps * w / 2pi per term after the 1/u; these add up linearly.
    eps = np.finfo(float).eps
    rounding = eps * (kmax * w / np.pi + 50 * np.sqrt(kmax) * float(np.max(np.abs(partial))))

    if averaging == "none":
        value = float(partial[-1])
        err = float(np.max(np.abs(partial[kmax // 2 :] - value))) + rounding
    else:
        first, value = _cesaro(partial, kmax)
        _, value_half = _cesaro(partial, kmax // 2)
        err = abs(value - first) + abs(value - value_half) + rounding
    return OracleReport(value, err, kmax, bool(err <= tol))


# --------------------------------------------------------------------------
# mode sums


def _threshold_weights(n_max_real: float) -> tuple[int, float]:
    """Number of open modes and the weight of the last one (1/2 at threshold)."""
    nearest = round(n_max_real)
    if nearest >= 1 and abs(n_max_real - nearest) <= TAU_CLASS * max(1.0, n_max_real):
        return int(nearest), 0.5
    return int(np.floor(n_max_real)), 1.0


def dirichlet_mode_sum(delta_omega: float, di, dj, width: float):
    """Exact response between two points of a Dirichlet slab of given width.

    ``(1/width) sum_{n <= |dw| width / pi} sin(n pi di / width) sin(n pi dj / width)``.
    A mode exactly at threshold contributes half.  Returns 0 below cutoff
    and for ``dw >= 0``.
    """
    if not width > 0:
        raise ValueError(f"width must be positive, got {width}")
    di = np.asarray(di, dtype=float)
    dj = np.asarray(dj, dtype=float)
    shape = np.broadcast(di, dj).shape
    if delta_omega >= 0:
        out = np.zeros(shape)
        return out[()] if out.ndim == 0 else out
    n_open, last_weight = _threshold_weights(-delta_omega * width / np.pi)
    if n_open == 0:
        out = np.zeros(shape)
        return out[()] if out.ndim == 0 else out
    n = np.arange(1, n_open + 1, dtype=float)
    weights = np.ones(n_open)
    weights[-1] = last_weight
    k = np.pi * n / width
    terms = np.sin(np.multiply.outer(di, k)) * np.sin(np.multiply.outer(dj, k))
    out = (terms @ weights) / width
    return out[()] if np.ndim(out) == 0 else out


def mode_sum_response(delta_omega: float, di, dj, L: float):
    """Exact response between atoms at ``di``, ``dj`` for the period-``L`` lattice.

    Equals ``F_ij`` built from the cavity Wightman function: the image
    lattice ``x3 -+ x3' - kL`` vanishes on every plane ``x3 = n L/2``, so the
    expansion runs over ``sin(2 n pi x/L)`` for ``n <= |dw| L / 2 pi``.
    """
    if not L > 0:
        raise ValueError(f"cavity width L must be positive, got {L}")
    di = np.asarray(di, dtype=float)
    dj = np.asarray(dj, dtype=float)
    if np.any((di < 0) | (di > L)) or np.any((dj < 0) | (dj > L)):
        raise ValueError("atom positions must satisfy 0 <= d <= L")
    return dirichlet_mode_sum(delta_omega, di, dj, L / 2.0)


def lattice_mode_sum(z, delta_omega: float, L: float):
    """``S(z)`` from its Fourier series: ``(1/2L) sum_{|n| <= |dw| L / 2pi} cos(2 pi n z / L)``.

    Modes exactly at threshold carry weight 1/2.  Independent of the
    piecewise closed form, so it pins the absolute value of S.
    """
    if not L > 0:
        raise ValueError(f"cavity width L must be positive, got {L}")
    z = np.asarray(z, dtype=float)
    if delta_omega >= 0:
        out = np.zeros(z.shape)
        return out[()] if out.ndim == 0 else out
    n_open, last_weight = _threshold_weights(-delta_omega * L / (2 * np.pi))
    total = np.ones(z.shape)
    if n_open:
        n = np.arange(1, n_open + 1, dtype=float)
        weights = 2.0 * np.ones(n_open)
        weights[-1] *= last_weight
        total = total + np.cos(np.multiply.outer(z, 2 * np.pi * n / L)) @ weights
    out = total / (2 * L)
    return out[()] if np.ndim(out) == 0 else out


# --------------------------------------------------------------------------
# quadrature


def _gauss_nodes(n: int):
    return np.polynomial.legendre.leggauss(n)


def _breakpoints(T: float, panel: float, poles: Sequence[float], eps_min: float) -> np.ndarray:
    """Oscillation-aligned panels on [-T, T] plus geometric grading at the poles.

    Past the poles the envelope is a smooth ``1/y^2``, so the far field uses
    panels spanning four oscillations instead of half of one.
    """
    reach = max((abs(p) for p in poles), default=0.0)
    R = min(T, 2 * reach + 8 * panel)
    near = np.linspace(-R, R, int(np.ceil(2 * R / panel)) + 1)
    far = np.linspace(R, T, int(np.ceil((T - R) / (8 * panel))) + 1)
    points = [near, far, -far]
    for p in poles:
        if abs(p) >= T:
            continue
        offsets = eps_min * 0.5 * 2.0 ** np.arange(0, 64)
        offsets = offsets[offsets < panel]
        points.append(np.concatenate(([p], p - offsets, p + offsets)))
    pts = np.unique(np.concatenate(points))
    pts = pts[(pts >= -T) & (pts <= T)]
    # Mirror so the rule is exactly symmetric; the integrand has f(-y) = conj f(y).
    pts = np.unique(np.concatenate((pts, -pts)))
    return pts


def _integrate(fn: Callable[[np.ndarray, float], np.ndarray], delta_omega, eps, breaks, xg, wg):
    a = breaks[:-1]
    b = breaks[1:]
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    total = 0.0 + 0.0j
    chunk = max(1, 200_000 // len(xg))
    for start in range(0, len(a), chunk):
        sl = slice(start, start + chunk)
        y = mid[sl, None] + half[sl, None] * xg[None, :]
        vals = np.exp(-1j * delta_omega * y) * fn(y, eps)
        total += np.sum((vals @ wg) * half[sl])
    return total


def _extrapolate(epsilons, values):
    eps = np.asarray(epsilons, dtype=float)
    vals = np.asarray(values)
    deg = min(2, len(eps) - 1)
    fit = np.polyfit(eps, vals.real, deg)
    zero = np.polyval(fit, 0.0)
    # A fit of one degree lower through the smallest epsilons brackets the
    # extrapolation error; scale it to the smallest epsilon used.
    lo = np.polyfit(eps[-deg:], vals.real[-deg:], deg - 1) if deg >= 1 else fit
    lower_zero = np.polyval(lo, 0.0)
    order_ratio = eps.min() / np.sort(eps)[1]
    err = abs(zero - lower_zero) * order_ratio
    residual = float(np.max(np.abs(np.polyval(fit, eps) - vals.real)))
    imag = float(np.polyval(np.polyfit(eps, vals.imag, deg), 0.0))
    return float(zero), float(err + residual), imag


def _quadrature(fn, delta_omega, poles, length_scale, epsilons, T, nodes, tol) -> OracleReport:
    epsilons = tuple(sorted((float(e) for e in epsilons), reverse=True))
    if len(epsilons) < 3:
        raise ValueError("need at least three epsilons to extrapolate")
    if any(e <= 0 for e in epsilons):
        raise ValueError("epsilons must be positive")
    w = abs(float(delta_omega))
    if w == 0:
        raise ValueError("delta_omega must be nonzero for the quadrature oracle")
    T_min = 1e3 * max(2 * np.pi / w, length_scale)
    if T is None:
        T = T_min
    elif T < T_min:
        raise ValueError(f"T must be >= {T_min:.6g} (1e3 times the largest length scale)")
    panel = np.pi / w
    breaks = _breakpoints(T, panel, poles, min(epsilons))
    xg, wg = _gauss_nodes(nodes)
    values = [_integrate(fn, delta_omega, e, breaks, xg, wg) for e in epsilons]
    value, err, imag = _extrapolate(epsilons, values)
    # Tail beyond |y| = T: integrand ~ 1/(4 pi^2 y^2) with oscillation w,
    # integration by parts gives <= 2 f(T) / w per side.
    far = T * T - length_scale * length_scale
    tail = 4.0 / (4 * np.pi**2 * w * far) * 2.0
    err += tail
    return OracleReport(value, err, (len(breaks) - 1) * nodes, bool(err <= tol and abs(imag) <= max(10 * err, 1e-12)), imag)


def quadrature_response(
    delta_omega: float,
    z: float,
    epsilons: Sequence[float] = DEFAULT_EPSILONS,
    T: float | None = None,
    nodes: int = 64,
    tol: float = 1e-6,
) -> OracleReport:
    """Numerical Fourier transform of the free light-cone kernel at separation ``z``.

    Integrates ``exp(-i dw y) (-1/4pi^2) / ((y - i eps)^2 - z^2)`` over
    ``[-T, T]`` for each ``eps`` and extrapolates quadratically to ``eps = 0``.
    """
    z = abs(float(z))

    def fn(y, eps):
        return propagators.wightman_free(y, z, eps)

    return _quadrature(fn, delta_omega, (-z, z), z, epsilons, T, nodes, tol)


def quadrature_mirror_response(
    delta_omega: float,
    d1: float,
    d2: float,
    pair,
    epsilons: Sequence[float] = DEFAULT_EPSILONS,
    T: float | None = None,
    nodes: int = 64,
    tol: float = 1e-6,
) -> OracleReport:
    """Quadrature of the single-mirror Wightman function on the atom worldlines."""
    pair = MirrorPair(pair)
    if pair is MirrorPair.SELF1:
        x, xp = d1, d1
    elif pair is MirrorPair.SELF2:
        x, xp = d2, d2
    else:
        x, xp = d1, d2
    direct, image = abs(x - xp), x + xp

    def fn(y, eps):
        return propagators.wightman_mirror(y, x, xp, 0.0, eps)

    poles = sorted({-direct, direct, -image, image})
    return _quadrature(fn, delta_omega, poles, image, epsilons, T, nodes, tol)
