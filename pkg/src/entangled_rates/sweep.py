"""Parameter sweeps, figure data and interference extrema."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import __version__
from .kernels import is_resonant, s_values
from .rates import AtomConfig, Geometry, GeometryKind, rate
from .states import TransitionChannel

__all__ = [
    "Axis",
    "SweepSpec",
    "SweepResult",
    "Extremum",
    "run_sweep",
    "s_profile",
    "find_extrema",
    "FIELDS",
]

FIELDS = ("self1", "self2", "cross", "total")
AXIS_NAMES = ("d", "d1", "d2", "L")


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.name not in AXIS_NAMES:
            raise ValueError(f"unknown axis {self.name!r}; expected one of {AXIS_NAMES}")
        if self.steps < 2:
            raise ValueError("an axis needs at least 2 steps")
        if not self.start < self.stop:
            raise ValueError(f"axis {self.name}: start must be < stop")

    @property
    def step(self) -> float:
        return (self.stop - self.start) / self.steps

    def grid(self, include_boundary: bool = False) -> np.ndarray:
        """Cell centres of ``steps`` equal cells, or ``linspace`` when boundaries are requested."""
        if include_boundary:
            return np.linspace(self.start, self.stop, self.steps)
        return self.start + (np.arange(self.steps) + 0.5) * self.step


@dataclass(frozen=True)
class SweepSpec:
    geometry: Geometry
    channels: tuple[TransitionChannel, ...]
    axis1: Axis
    axis2: Axis | None = None
    omega0: float = 2.0
    units: str = "natural"
    fixed: Mapping[str, float] = field(default_factory=dict)
    include_boundary: bool = False

    def __post_init__(self):
        object.__setattr__(self, "channels", tuple(ch.with_omega0(self.omega0) for ch in self.channels))
        object.__setattr__(self, "fixed", dict(self.fixed))
        if not self.channels:
            raise ValueError("at least one channel is required")
        if not self.omega0 > 0:
            raise ValueError(f"omega0 must be positive, got {self.omega0}")
        if self.units not in ("natural", "wavelength"):
            raise ValueError(f"units must be 'natural' or 'wavelength', got {self.units!r}")
        names = [self.axis1.name] + ([self.axis2.name] if self.axis2 else [])
        if len(set(names)) != len(names):
            raise ValueError("the two axes must differ")
        if "L" in names and self.geometry.kind is not GeometryKind.CAVITY:
            raise ValueError("an L axis needs cavity geometry")

    @property
    def wavelength(self) -> float:
        # All allowed channels share |dw| = omega0.
        return 2 * np.pi / self.omega0

    @property
    def unit_scale(self) -> float:
        return self.wavelength if self.units == "wavelength" else 1.0

    @property
    def axes(self) -> tuple[Axis, ...]:
        return (self.axis1,) if self.axis2 is None else (self.axis1, self.axis2)

    def describe(self) -> dict:
        return {
            "geometry": self.geometry.kind.value,
            "L": self.geometry.L,
            "channels": [ch.label for ch in self.channels],
            "axes": [[a.name, a.start, a.stop, a.steps] for a in self.axes],
            "omega0": self.omega0,
            "units": self.units,
            "fixed": dict(sorted(self.fixed.items())),
            "include_boundary": self.include_boundary,
        }


@dataclass
class SweepResult:
    axes: tuple[str, ...]
    coords: dict[str, np.ndarray]
    columns: dict[str, np.ndarray]
    metadata: dict = field(default_factory=dict)

    @property
    def n_rows(self) -> int:
        return len(next(iter(self.coords.values())))

    def column(self, ch, name: str = "total") -> np.ndarray:
        label = ch.label if isinstance(ch, TransitionChannel) else str(ch)
        return self.columns[f"rate_{label}_{name}"]


@dataclass(frozen=True)
class Extremum:
    coordinate: float
    kind: str
    value: float


def _axis_values(spec: SweepSpec, axis: Axis) -> tuple[np.ndarray, list[int]]:
    vals = axis.grid(spec.include_boundary) * spec.unit_scale
    dodged = []
    if axis.name == "L":
        half = 0.5 * axis.step * spec.unit_scale
        for i, L in enumerate(vals):
            if is_resonant(spec.omega0, L):
                vals[i] = L + half
                dodged.append(i)
    return vals, dodged


def _positions(name_values: Mapping[str, np.ndarray], spec: SweepSpec, shape):
    fixed = {k: float(v) * spec.unit_scale for k, v in spec.fixed.items()}
    get = lambda key, default: name_values.get(key, np.full(shape, fixed.get(key, default)))
    L = get("L", spec.geometry.L if spec.geometry.L is not None else np.nan)
    if "d" in name_values:
        d = name_values["d"]
        if spec.geometry.kind is GeometryKind.FREE:
            d1, d2 = np.zeros(shape), d
        else:
            d1 = d2 = d
    else:
        d1 = get("d1", 0.0)
        d2 = get("d2", 0.0)
    return d1, d2, L


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate every channel on the grid described by ``spec``.

    Rows are ordered with the first axis outermost.  The result depends
    only on ``spec``.
    """
    grids = []
    dodged = {}
    for ax in spec.axes:
        vals, shifted = _axis_values(spec, ax)
        grids.append(vals)
        if shifted:
            dodged[ax.name] = shifted
    mesh = np.meshgrid(*grids, indexing="ij")
    coords = {ax.name: m.ravel() for ax, m in zip(spec.axes, mesh)}
    shape = coords[spec.axis1.name].shape
    d1, d2, L = _positions(coords, spec, shape)

    columns: dict[str, np.ndarray] = {}
    flags = np.zeros(shape, dtype=bool)
    for ch in spec.channels:
        out = {f: np.empty(shape) for f in FIELDS}
        if spec.geometry.kind is GeometryKind.CAVITY:
            # One vectorised call per distinct cavity width.
            for width in np.unique(L):
                rows = L == width
                bd = rate(ch, AtomConfig(d1[rows], d2[rows]), Geometry.cavity(width))
                for f in FIELDS:
                    out[f][rows] = getattr(bd, f)
                flags[rows] |= bd.resonant
        else:
            bd = rate(ch, AtomConfig(d1, d2), spec.geometry)
            for f in FIELDS:
                out[f][:] = getattr(bd, f)
        for f in FIELDS:
            columns[f"rate_{ch.label}_{f}"] = out[f]

    metadata = {
        "spec": spec.describe(),
        "version": __version__,
        "resonance_flags": np.flatnonzero(flags).tolist(),
        "dodged": dodged,
    }
    return SweepResult(tuple(ax.name for ax in spec.axes), coords, columns, metadata)


def s_profile(delta_omega: float, Ls: Sequence[float], z_steps: int = 401) -> SweepResult:
    """Tabulate ``S(z)`` on ``z in [0, 2L]`` for each cavity width."""
    if z_steps < 2:
        raise ValueError("z_steps must be >= 2")
    Ls = [float(L) for L in Ls]
    L_col, z_col, s_col = [], [], []
    flags = []
    for L in Ls:
        z = np.linspace(0.0, 2 * L, z_steps)
        L_col.append(np.full(z_steps, L))
        z_col.append(z)
        s_col.append(s_values(z, delta_omega, L))
        flags.append(bool(is_resonant(delta_omega, L)))
    return SweepResult(
        ("L", "z"),
        {"L": np.concatenate(L_col), "z": np.concatenate(z_col)},
        {"S": np.concatenate(s_col)},
        {
            "spec": {"delta_omega": delta_omega, "Ls": Ls, "z_steps": z_steps},
            "version": __version__,
            "resonant_L": [L for L, f in zip(Ls, flags) if f],
        },
    )


def find_extrema(result: SweepResult, ch, name: str = "total") -> list[Extremum]:
    """Interior local maxima and minima of a 1D sweep by three-point comparison.

    On a plateau the point with the smallest coordinate wins.
    """
    if len(result.axes) != 1:
        raise ValueError("find_extrema needs a 1D sweep")
    x = result.coords[result.axes[0]]
    y = result.column(ch, name) if not isinstance(ch, str) or ch not in result.columns else result.columns[ch]
    out = []
    for i in range(1, len(y) - 1):
        if y[i - 1] < y[i] >= y[i + 1]:
            out.append(Extremum(float(x[i]), "max", float(y[i])))
        elif y[i - 1] > y[i] <= y[i + 1]:
            out.append(Extremum(float(x[i]), "min", float(y[i])))
    return out
