#pragma once

#include <memory>

#include "hymlab/grid.hpp"

namespace hymlab {

// Which holomorphic derivative to apply along a complex axis.
enum class Deriv { Z, Zbar };

// Per-grid FFT plans and spectral derivative tables.
//
// Forward transform is unnormalized; inverse divides by npoints, so
// inverse(forward(f)) == f up to rounding.  Derivative symbols: the sample
// e^{2
// pi i (m x + k y)} on complex axis a has d/dz = pi*(k + i m) and
// d/dzbar = pi*(-k + i m); components at the unpaired Nyquist mode -n/2 (in
// either real axis of the pair) get multiplier zero.
//
// Plan creation is serialized internally; the apply methods are safe to call
// concurrently on distinct buffers.
class SpectralEngine {
 public:
  explicit SpectralEngine(const Grid& g);
  ~SpectralEngine();
  SpectralEngine(const SpectralEngine&) = delete;
  SpectralEngine& operator=(const SpectralEngine&) = delete;

  const Grid& grid() const { return grid_; }

  void forward(const Plane& in, Plane& out) const;   // physical -> modes
  void inverse(const Plane& in, Plane& out) const;   // modes -> physical
  void forward_inplace(Plane& io) const;
  void inverse_inplace(Plane& io) const;

  // Multiply a spectrum in place by the derivative symbol of complex axis
  // `axis` (0-based, < dim_c).
  void apply_symbol(Plane& spectrum, int axis, Deriv which) const;

  // d/dz_axis or d/dzbar_axis of a sampled field (forward, symbol, inverse).
  void derivative(const Plane& in, Plane& out, int axis, Deriv which) const;

  // Heat multiplier table: for each grid point (as a mode index p), the value
  // sum_a |pi (k_a + i m_a)|^2 = pi^2 * sum_a (m_a^2 + k_a^2); Nyquist rows
  // follow the same zeroing as the derivative symbols.
  const std::vector<double>& laplace_symbol_flat() const { return lap_sym_; }

 private:
  struct Plans;
  Grid grid_;
  std::unique_ptr<Plans> plans_;
  // symbol tables per (axis, which): value for the (m_x, m_y) pair of that
  // axis, indexed ix*n + iy
  std::vector<cplx> sym_[2][2];
  std::vector<double> lap_sym_;
};

// Shared engine cache keyed by grid; engines are immutable once built.
std::shared_ptr<const SpectralEngine> spectral_engine(const Grid& g);

}  // namespace hymlab
