"""Collective basis of two identical two-level atoms.

The four eigenstates of the uncoupled two-atom Hamiltonian are the ground
state ``g``, the doubly excited state ``e`` and the two degenerate entangled
states ``s`` (symmetric) and ``a`` (antisymmetric).  Matrix elements of the
single-atom monopole operators are computed from explicit state vectors
rather than tabulated, so the selection rules fall out of the algebra.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CollectiveState",
    "TransitionChannel",
    "MonopolePair",
    "energy",
    "monopole_elements",
    "allowed_transitions",
    "channel",
]


class CollectiveState(enum.Enum):
    GROUND = "g"
    ANTISYM = "a"
    SYM = "s"
    EXCITED = "e"

    @classmethod
    def parse(cls, label: "str | CollectiveState") -> "CollectiveState":
        if isinstance(label, cls):
            return label
        try:
            return cls(str(label).strip().lower())
        except ValueError:
            raise ValueError(
                f"unknown collective state {label!r}; expected one of g, a, s, e"
            ) from None

    def __str__(self) -> str:
        return self.value


_ENERGY_FACTOR = {
    CollectiveState.GROUND: -1.0,
    CollectiveState.ANTISYM: 0.0,
    CollectiveState.SYM: 0.0,
    CollectiveState.EXCITED: 1.0,
}


def energy(state: CollectiveState, omega0: float) -> float:
    """Energy of a collective state for single-atom gap ``omega0``."""
    if not omega0 > 0:
        raise ValueError(f"omega0 must be positive, got {omega0}")
    return _ENERGY_FACTOR[CollectiveState.parse(state)] * float(omega0)


# Single-atom basis: index 0 = |g>, 1 = |e>.  Two-atom kets are kron(atom1, atom2).
_G = np.array([1.0, 0.0])
_E = np.array([0.0, 1.0])
_MONOPOLE = np.array([[0.0, 1.0], [1.0, 0.0]])  # |e><g| + |g><e|
_ID = np.eye(2)

_KETS = {
    CollectiveState.GROUND: np.kron(_G, _G),
    CollectiveState.EXCITED: np.kron(_E, _E),
    CollectiveState.SYM: (np.kron(_E, _G) + np.kron(_G, _E)) / np.sqrt(2.0),
    CollectiveState.ANTISYM: (np.kron(_E, _G) - np.kron(_G, _E)) / np.sqrt(2.0),
}
_M1 = np.kron(_MONOPOLE, _ID)
_M2 = np.kron(_ID, _MONOPOLE)


@dataclass(frozen=True)
class MonopolePair:
    m1: float
    m2: float

    @property
    def is_zero(self) -> bool:
        return self.m1 == 0.0 and self.m2 == 0.0


@dataclass(frozen=True)
class TransitionChannel:
    """Transition ``initial -> final`` between collective states.

    The gap is always recomputed from the state energies, never stored.
    """

    initial: CollectiveState
    final: CollectiveState
    omega0: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "initial", CollectiveState.parse(self.initial))
        object.__setattr__(self, "final", CollectiveState.parse(self.final))
        if not self.omega0 > 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")

    @property
    def delta_omega(self) -> float:
        return energy(self.final, self.omega0) - energy(self.initial, self.omega0)

    @property
    def is_decay(self) -> bool:
        return self.delta_omega < 0

    @property
    def wavelength(self) -> float:
        gap = abs(self.delta_omega)
        if gap == 0:
            raise ValueError(f"channel {self.label} has zero gap; wavelength undefined")
        return 2 * np.pi / gap

    @property
    def label(self) -> str:
        # Matches the R_sg / R_ag naming: initial state first.
        return f"{self.initial.value}{self.final.value}"

    def with_omega0(self, omega0: float) -> "TransitionChannel":
        return TransitionChannel(self.initial, self.final, omega0)

    def __str__(self) -> str:
        return f"{self.initial.value}->{self.final.value}"


def channel(initial, final, omega0: float = 1.0) -> TransitionChannel:
    """Shorthand constructor accepting state labels, e.g. ``channel("s", "g", 2.0)``."""
    return TransitionChannel(CollectiveState.parse(initial), CollectiveState.parse(final), omega0)


def _element(op: np.ndarray, bra: CollectiveState, ket: CollectiveState) -> float:
    value = float(_KETS[bra] @ op @ _KETS[ket])
    # Round away the 1e-17 noise from the sqrt(2) normalisations.
    return 0.0 if abs(value) < 1e-14 else value


def monopole_elements(ch: TransitionChannel) -> MonopolePair:
    """Return ``(<final| m x 1 |initial>, <final| 1 x m |initial>)``.

    Forbidden channels (``e <-> g``, ``s <-> a``) give ``(0, 0)``.
    """
    if ch.initial is ch.final:
        raise ValueError("initial and final states must differ")
    return MonopolePair(
        _element(_M1, ch.final, ch.initial),
        _element(_M2, ch.final, ch.initial),
    )


def allowed_transitions(omega0: float = 1.0) -> list[TransitionChannel]:
    """All ordered channels with a nonzero monopole pair (eight of them)."""
    out = []
    for a in CollectiveState:
        for b in CollectiveState:
            if a is b:
                continue
            ch = TransitionChannel(a, b, omega0)
            if not monopole_elements(ch).is_zero:
                out.append(ch)
    return out
