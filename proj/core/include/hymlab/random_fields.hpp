#pragma once

#include "hymlab/grid.hpp"
#include "hymlab/rng.hpp"

namespace hymlab {

// Real band-limited scalar field: sum over integer modes 0 < |m|_inf <= band
// of Gaussian coefficients with Hermitian symmetry, evaluated by direct
// trigonometric summation (exact band-limited data, no FFT roundtrip).
// The result is rescaled so its sup-norm equals `amplitude`.
Plane band_limited_real(const Grid& g, Rng& rng, int band, double amplitude);

// Complex band-limited scalar field (no symmetry), same normalization.
Plane band_limited_complex(const Grid& g, Rng& rng, int band, double amplitude);

}  // namespace hymlab
