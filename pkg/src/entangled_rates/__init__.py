"""Spontaneous decay rates of two entangled two-level atoms near Dirichlet mirrors."""

__version__ = "0.1.0"

from .states import (  # noqa: E402
    CollectiveState,
    MonopolePair,
    TransitionChannel,
    allowed_transitions,
    channel,
    energy,
    monopole_elements,
)
from .kernels import (  # noqa: E402
    Branch,
    ResonanceWarning,
    SBranch,
    classify_branch,
    response_free,
    response_mirror,
    s_function,
    sinc_kernel,
)
from .rates import AtomConfig, Geometry, RateBreakdown, rate, rate_cavity, rate_free, rate_mirror  # noqa: E402
