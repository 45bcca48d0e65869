"""Transition rates per unit proper time, in units of g^2.

For a channel with monopole pair ``(m1, m2)`` the rate is

    R / g^2 = m1^2 F11 + m2^2 F22 + 2 m1 m2 F12

with the geometry entering only through the response functions ``F_ij``.
The config distances may be numpy arrays; every function broadcasts.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .kernels import MirrorPair, is_resonant, response_free, response_mirror, s_values
from .states import TransitionChannel, monopole_elements

__all__ = [
    "GeometryKind",
    "Geometry",
    "AtomConfig",
    "RateBreakdown",
    "rate_free",
    "rate_mirror",
    "rate_cavity",
    "rate",
]


class GeometryKind(enum.Enum):
    FREE = "free"
    MIRROR = "mirror"
    CAVITY = "cavity"


@dataclass(frozen=True)
class Geometry:
    kind: GeometryKind
    L: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GeometryKind(self.kind))
        if self.kind is GeometryKind.CAVITY:
            if self.L is None or not self.L > 0:
                raise ValueError(f"cavity width L must be positive, got {self.L}")

    @classmethod
    def free(cls) -> "Geometry":
        return cls(GeometryKind.FREE)

    @classmethod
    def mirror(cls) -> "Geometry":
        return cls(GeometryKind.MIRROR)

    @classmethod
    def cavity(cls, L: float) -> "Geometry":
        return cls(GeometryKind.CAVITY, float(L))

    def __str__(self) -> str:
        return self.kind.value


@dataclass(frozen=True)
class AtomConfig:
    """Positions of the two atoms along the axis normal to the mirrors."""

    d1: float
    d2: float

    @property
    def separation(self):
        return np.abs(np.asarray(self.d1, dtype=float) - np.asarray(self.d2, dtype=float))

    @property
    def d_sum(self):
        return np.asarray(self.d1, dtype=float) + np.asarray(self.d2, dtype=float)


@dataclass
class RateBreakdown:
    """Self terms, cross term and total rate (all divided by g^2)."""

    self1: float
    self2: float
    cross: float
    total: float
    resonant: bool = field(default=False, compare=False)

    def as_dict(self) -> dict:
        return {"self1": self.self1, "self2": self.self2, "cross": self.cross, "total": self.total}


def _assemble(ch: TransitionChannel, self1, self2, cross, resonant=False) -> RateBreakdown:
    mp = monopole_elements(ch)
    total = mp.m1**2 * self1 + mp.m2**2 * self2 + 2 * mp.m1 * mp.m2 * cross
    return RateBreakdown(_squeeze(self1), _squeeze(self2), _squeeze(cross), _squeeze(total), resonant)


def _squeeze(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


def _zeros(config: AtomConfig) -> RateBreakdown:
    z = np.zeros(np.broadcast(np.asarray(config.d1), np.asarray(config.d2)).shape)
    return RateBreakdown(_squeeze(z), _squeeze(z), _squeeze(z), _squeeze(z))


def rate_free(ch: TransitionChannel, config: AtomConfig) -> RateBreakdown:
    """Rate in unbounded space; only the separation ``|d1 - d2|`` matters."""
    dw = ch.delta_omega
    if dw >= 0:
        return _zeros(config)
    sep = config.separation
    self_term = response_free(dw, np.zeros_like(sep))
    return _assemble(ch, self_term, self_term, response_free(dw, sep))


def rate_mirror(ch: TransitionChannel, config: AtomConfig) -> RateBreakdown:
    """Rate next to a single Dirichlet plane at ``x3 = 0``."""
    d1 = np.asarray(config.d1, dtype=float)
    d2 = np.asarray(config.d2, dtype=float)
    if np.any(d1 < 0) or np.any(d2 < 0):
        raise ValueError("atoms must satisfy d1 >= 0 and d2 >= 0 (mirror at x3 = 0)")
    dw = ch.delta_omega
    if dw >= 0:
        return _zeros(config)
    return _assemble(
        ch,
        response_mirror(dw, d1, d2, MirrorPair.SELF1),
        response_mirror(dw, d1, d2, MirrorPair.SELF2),
        response_mirror(dw, d1, d2, MirrorPair.CROSS),
    )


def rate_cavity(ch: TransitionChannel, config: AtomConfig, L: float) -> RateBreakdown:
    """Rate between plates at ``x3 = 0`` and ``x3 = L``.

    ``F_ii = S(0) - S(2 d_i)`` and ``F_12 = S(|d-|) - S(d+)``.  At a mode
    threshold the breakdown carries ``resonant=True``.
    """
    if not L > 0:
        raise ValueError(f"cavity width L must be positive, got {L}")
    d1 = np.asarray(config.d1, dtype=float)
    d2 = np.asarray(config.d2, dtype=float)
    if np.any((d1 < 0) | (d1 > L)) or np.any((d2 < 0) | (d2 > L)):
        raise ValueError(f"atoms must satisfy 0 <= d1, d2 <= L = {L}")
    dw = ch.delta_omega
    if dw >= 0:
        return _zeros(config)
    s0 = s_values(0.0, dw, L)
    self1 = s0 - s_values(2 * d1, dw, L)
    self2 = s0 - s_values(2 * d2, dw, L)
    cross = s_values(np.abs(d1 - d2), dw, L) - s_values(d1 + d2, dw, L)
    return _assemble(ch, self1, self2, cross, resonant=is_resonant(dw, L))


def rate(ch: TransitionChannel, config: AtomConfig, geometry: Geometry) -> RateBreakdown:
    if geometry.kind is GeometryKind.FREE:
        return rate_free(ch, config)
    if geometry.kind is GeometryKind.MIRROR:
        return rate_mirror(ch, config)
    return rate_cavity(ch, config, geometry.L)
