"""Positive-frequency Wightman functions of a massless scalar field.

Time-domain two-point functions for free space, a Dirichlet plane at
``x3 = 0`` and the image lattice between plates at ``x3 = 0`` and ``x3 = L``.
These are consumed by the quadrature oracle and by the boundary-condition
tests; the rate formulas themselves never go through the time domain.

All functions broadcast over numpy arrays in ``dtau``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Regulator",
    "WorldlinePoint",
    "wightman_free",
    "wightman_mirror",
    "wightman_cavity",
    "cavity_tail_bound",
    "DEFAULT_KMAX",
]

DEFAULT_KMAX = 10_000
_PREFACTOR = -1.0 / (4.0 * np.pi**2)


@dataclass(frozen=True)
class Regulator:
    """The ``i epsilon`` shift that places the light-cone poles off the real axis."""

    epsilon: float = 1e-6

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")


@dataclass(frozen=True)
class WorldlinePoint:
    tau: float
    x3: float
    xperp: tuple[float, float] = (0.0, 0.0)


def _eps(reg) -> float:
    return reg.epsilon if isinstance(reg, Regulator) else Regulator(float(reg)).epsilon


def _pole_term(dtau, eps, sq_dist):
    t = np.asarray(dtau, dtype=float) - 1j * eps
    return 1.0 / (t * t - sq_dist)


def wightman_free(dtau, separation, reg) -> complex:
    """``-(1/4 pi^2) / ((dtau - i eps)^2 - r^2)``."""
    eps = _eps(reg)
    r = float(separation)
    return _PREFACTOR * _pole_term(dtau, eps, r * r)


def wightman_mirror(dtau, x3, x3p, dxperp, reg) -> complex:
    """Direct minus image term for a Dirichlet plane at ``x3 = 0``.

    On the plane (``x3 == 0`` or ``x3p == 0``) the two squared distances are
    identical floats, so the difference is exactly zero.
    """
    if x3 < 0 or x3p < 0:
        raise ValueError("points must lie on the x3 >= 0 side of the mirror")
    eps = _eps(reg)
    perp2 = float(dxperp) ** 2
    direct = _pole_term(dtau, eps, perp2 + (x3 - x3p) ** 2)
    image = _pole_term(dtau, eps, perp2 + (x3 + x3p) ** 2)
    return _PREFACTOR * (direct - image)


def wightman_cavity(dtau, x3, x3p, dxperp, L, reg, kmax: int = DEFAULT_KMAX):
    """Image-lattice Wightman function truncated to ``|k| <= kmax``.

    Images sit at ``x3 - x3p - kL`` (even) and ``x3 + x3p - kL`` (odd).
    Terms ``k`` and ``-k`` are added pairwise so that the neglected tail
    is bounded by :func:`cavity_tail_bound`.
    """
    if not L > 0:
        raise ValueError(f"cavity width L must be positive, got {L}")
    if not (0 <= x3 <= L and 0 <= x3p <= L):
        raise ValueError("points must lie inside the cavity 0 <= x3 <= L")
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    eps = _eps(reg)
    perp2 = float(dxperp) ** 2
    dt = np.asarray(dtau, dtype=float)
    t = dt[..., None] - 1j * eps
    t2 = t * t
    k = np.arange(1, int(kmax) + 1, dtype=float)
    a = x3 - x3p
    b = x3 + x3p
    total = 1.0 / (t2[..., 0] - perp2 - a * a) - 1.0 / (t2[..., 0] - perp2 - b * b)
    paired = (
        1.0 / (t2 - perp2 - (a - k * L) ** 2)
        + 1.0 / (t2 - perp2 - (a + k * L) ** 2)
        - 1.0 / (t2 - perp2 - (b - k * L) ** 2)
        - 1.0 / (t2 - perp2 - (b + k * L) ** 2)
    )
    # Sum smallest terms first.
    total = total + paired[..., ::-1].sum(axis=-1)
    return _PREFACTOR * total


def cavity_tail_bound(dtau, dxperp, L, kmax: int = DEFAULT_KMAX, epsilon: float = 0.0) -> float:
    """Upper bound on ``|exact - wightman_cavity(..., kmax)|``.

    Valid once ``kmax L`` dominates the other lengths; returns ``inf`` otherwise.
    For ``|k| > kmax`` each of the four terms is below ``2/u^2`` with
    ``u >= kL/2``, giving ``32 / (kmax L^2)`` before the ``1/4 pi^2``.
    """
    scale2 = 2.0 * (float(dtau) ** 2 + epsilon**2 + float(dxperp) ** 2)
    u_min = kmax * L - 2.0 * L
    if kmax < 4 or u_min <= 0 or u_min * u_min < scale2:
        return float("inf")
    return 8.0 / (np.pi**2 * kmax * L * L)
