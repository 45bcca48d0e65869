"""Frequency-domain response functions.

Sign convention
---------------
Every response here is normalised so that decay rates come out
nonnegative.  For a gap ``dw < 0`` write ``w = |dw|``; the free-space
kernel is ``sin(w z) / (2 pi z)`` (``w / 2 pi`` at ``z = 0``) and the cavity
lattice function is

    S(z) = sum_k sin(w (z - kL)) / (2 pi (z - kL)),

the symmetric image sum with period ``L``.  The Heaviside factor on ``-dw``
and the overall minus sign of the raw integral are absorbed here and
nowhere else.  ``theta(0) = 0``: zero-gap channels never radiate.

Closed form of S
----------------
With ``m`` the integer such that ``m < dw L / 2 pi < m + 1`` (negative for
decay channels) the lattice sum collapses to

    generic:          -(1/2L) sin((2m+1) pi z / L) / sin(pi z / L)
    z/L integer:      -(2m+1) / 2L
    w L / 2pi integer, z/L not:   (1/2L) sin(w z) cot(pi z / L)
    both integer:     w / 2pi

The last two are the half-weighted threshold cases.  ``S`` is even and has
period ``L`` in ``z``.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Branch",
    "SBranch",
    "ResonanceWarning",
    "TAU_CLASS",
    "sinc",
    "sinc_kernel",
    "response_free",
    "classify_branch",
    "is_resonant",
    "s_function",
    "s_values",
    "response_mirror",
    "MirrorPair",
]

TAU_CLASS = 1e-9


class ResonanceWarning(UserWarning):
    """Raised when the cavity gap sits on a mode threshold ``|dw| L / pi`` integer."""


class Branch(enum.Enum):
    INTEGER_Z_RESONANT = "IntegerZOverL_Resonant"
    INTEGER_Z_GENERIC = "IntegerZOverL_Generic"
    RESONANT_COT = "Resonant_CotForm"
    GENERIC = "Generic"


@dataclass(frozen=True)
class SBranch:
    branch: Branch
    m: int
    resonant: bool

    @property
    def name(self) -> str:
        return self.branch.value


class MirrorPair(enum.Enum):
    SELF1 = "self1"
    SELF2 = "self2"
    CROSS = "cross"


def sinc(x):
    """Unnormalised ``sin(x)/x`` with the value 1 at 0."""
    return np.sinc(np.asarray(x, dtype=float) / np.pi)


def _theta(x):
    return np.asarray(x) > 0


def sinc_kernel(b, z):
    """Residue-theorem value of the light-cone integral.

    ``-theta(-b)/(2 pi) * sin(b z)/z``, i.e. ``-theta(-b) b sinc(b z) / 2pi``.
    """
    b = np.asarray(b, dtype=float)
    out = np.where(_theta(-b), -b * sinc(b * np.asarray(z, dtype=float)) / (2 * np.pi), 0.0)
    return out[()] if out.ndim == 0 else out


def response_free(delta_omega, z):
    """Free-space response per unit time, ``theta(-dw) |dw| sinc(dw z) / 2 pi``."""
    return sinc_kernel(delta_omega, z)


def _frac_distance(x: float) -> float:
    return abs(x - round(x))


def _near_integer(x: float, tol: float = TAU_CLASS) -> bool:
    return _frac_distance(x) <= tol * max(1.0, abs(x))


def is_resonant(delta_omega: float, L: float) -> bool:
    """True when ``|dw| L / pi`` is an integer within the classification tolerance."""
    return _near_integer(abs(delta_omega) * L / np.pi)


def _check_cavity_args(delta_omega, L):
    if not delta_omega < 0:
        raise ValueError(f"s_function is defined for decay gaps only (delta_omega < 0), got {delta_omega}")
    if not L > 0:
        raise ValueError(f"cavity width L must be positive, got {L}")


def classify_branch(z: float, delta_omega: float, L: float) -> SBranch:
    """Pick the closed-form case for ``S(z, dw, L)``.

    ``m`` is ``floor(dw L / 2 pi)`` (so ``m < 0`` for decay), rounded to the
    nearest integer when ``dw L / 2 pi`` is within tolerance of one.
    """
    _check_cavity_args(delta_omega, L)
    ratio = delta_omega * L / (2 * np.pi)
    threshold = _near_integer(ratio)
    m = int(round(ratio)) if threshold else int(np.floor(ratio))
    resonant = is_resonant(delta_omega, L)
    if _near_integer(z / L):
        branch = Branch.INTEGER_Z_RESONANT if resonant else Branch.INTEGER_Z_GENERIC
    elif threshold:
        branch = Branch.RESONANT_COT
    else:
        branch = Branch.GENERIC
    return SBranch(branch, m, resonant)


def _s_array(z, delta_omega: float, L: float) -> np.ndarray:
    """Vectorised closed form of S over ``z`` for one ``(dw, L)``."""
    w = -delta_omega
    ratio = delta_omega * L / (2 * np.pi)
    threshold = _near_integer(ratio)
    z = np.abs(np.asarray(z, dtype=float))
    # Even with period L: fold into [0, L/2] so that z, L - z, L + z, 2L - z
    # all evaluate the same float.
    r = np.fmod(z, L)
    r = np.minimum(r, L - r)
    on_lattice = r <= TAU_CLASS * np.maximum(1.0, z / L) * L
    a = np.pi * r / L
    safe = np.where(on_lattice, 0.5, a)
    if threshold:
        # At threshold the modes with |n| = w L / 2pi carry half weight.
        j = int(round(-ratio))
        value_lattice = w / (2 * np.pi)
        # sin(w z) at z = r is fine because sin(w(z - kL)) = sin(w z) when w L = 2 pi j.
        interior = np.sin(2 * j * safe) / np.tan(safe) / (2 * L)
    else:
        m = int(np.floor(ratio))
        value_lattice = -(2 * m + 1) / (2 * L)
        interior = -np.sin((2 * m + 1) * safe) / np.sin(safe) / (2 * L)
    return np.where(on_lattice, value_lattice, interior)


def s_values(z, delta_omega: float, L: float) -> np.ndarray:
    """Array version of :func:`s_function` without the resonance warning."""
    _check_cavity_args(delta_omega, L)
    return _s_array(z, delta_omega, L)


def s_function(z: float, delta_omega: float, L: float) -> float:
    """Closed-form cavity lattice sum ``S(z, dw, L)`` for a decay gap.

    Emits :class:`ResonanceWarning` when ``|dw| L / pi`` is an integer; the
    threshold-case value is still returned.
    """
    _check_cavity_args(delta_omega, L)
    if z < 0:
        raise ValueError(f"z must be nonnegative, got {z}")
    if is_resonant(delta_omega, L):
        warnings.warn(
            f"|dw| L / pi = {abs(delta_omega) * L / np.pi:.12g} is an integer: "
            "cavity mode at threshold, returning the resonant-case value",
            ResonanceWarning,
            stacklevel=2,
        )
    return float(_s_array(z, delta_omega, L))


def response_mirror(delta_omega, d1, d2, pair):
    """Single-mirror response terms.

    ``self_i``: ``(w/2pi) [1 - sinc(2 d_i dw)]``;
    ``cross``: ``(w/2pi) [sinc(dw d-) - sinc(dw d+)]``.
    A distance of zero is the analytic limit (the term vanishes).
    """
    pair = MirrorPair(pair)
    d1 = np.asarray(d1, dtype=float)
    d2 = np.asarray(d2, dtype=float)
    if np.any(d1 < 0) or np.any(d2 < 0):
        raise ValueError("atom distances to the mirror must be nonnegative")
    dw = float(delta_omega)
    if dw >= 0:
        out = np.zeros(np.broadcast(d1, d2).shape)
        return out[()] if out.ndim == 0 else out
    scale = -dw / (2 * np.pi)
    if pair is MirrorPair.SELF1:
        out = scale * (1.0 - sinc(2 * d1 * dw))
    elif pair is MirrorPair.SELF2:
        out = scale * (1.0 - sinc(2 * d2 * dw))
    else:
        out = scale * (sinc(dw * np.abs(d1 - d2)) - sinc(dw * (d1 + d2)))
    out = np.asarray(out, dtype=float)
    return out[()] if out.ndim == 0 else out
