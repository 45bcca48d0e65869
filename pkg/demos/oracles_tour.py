"""Cross-checking the closed forms three independent ways."""
import numpy as np

from entangled_rates.kernels import response_mirror, s_function, sinc_kernel
from entangled_rates.oracles import (
    image_series_partial,
    lattice_mode_sum,
    mode_sum_response,
    quadrature_mirror_response,
    quadrature_response,
)
from entangled_rates.verify import consistency_triangle

# --- Brute-force Fourier transform of the light-cone kernel
rep = quadrature_response(-2.0, 1.0)
print("quadrature:", rep.value, "+-", rep.error_estimate, " closed:", sinc_kernel(-2.0, 1.0))
rep = quadrature_mirror_response(-2.0, 0.8, 1.7, "cross")
print("mirror cross:", rep.value, " closed:", response_mirror(-2.0, 0.8, 1.7, "cross"))

# --- Image lattice summed directly (slowly convergent, Cesaro averaged)
z, dw, L = 2.3, -2.0, 7.0
rep = image_series_partial(z, dw, L)
print("image series:", rep.value, "+-", rep.error_estimate, " closed:", s_function(z, dw, L))

# --- Same quantity from the discrete standing-wave modes
print("Fourier modes:", lattice_mode_sum(z, dw, L))
print("mode-sum F12(1, 4):", mode_sum_response(dw, 1.0, 4.0, L), s_function(3.0, dw, L) - s_function(5.0, dw, L))

# --- All of it at once on random cavities
checks = consistency_triangle(samples=50, seed=1, quadrature_samples=1)
print({s: sum(c.status == s for c in checks) for s in ("pass", "fail", "flagged")})
print("worst relative gap:", max(c.diff / max(c.allowed, 1e-300) for c in checks))
