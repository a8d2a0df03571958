#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "hymlab/errors.hpp"

namespace hymlab {

using cplx = std::complex<double>;

// One scalar field sampled on the grid, flattened row-major (last axis fastest).
using Plane = std::vector<cplx>;

// Uniform periodic grid on [0,1)^{2*dim_c}.  Complex coordinate a is
// z_a = x_a + i*y_a; the real axes are ordered (x_1, y_1[, x_2, y_2]).
struct Grid {
  int dim_c = 0;          // complex dimension, 1 or 2
  int n = 0;              // samples per real axis, power of two, >= 8
  int naxes = 0;          // 2*dim_c
  std::size_t npoints = 0;  // n^naxes

  static Grid create(int dim_c, int n);

  double coord(int i) const { return static_cast<double>(i) / n; }

  // Signed Fourier mode for sample index i; modes run -n/2 .. n/2-1.
  int mode(int i) const { return i < n / 2 ? i : i - n; }

  // Stride of real axis `a` in the flattened layout.
  std::size_t stride(int a) const {
    std::size_t s = 1;
    for (int b = naxes - 1; b > a; --b) s *= static_cast<std::size_t>(n);
    return s;
  }

  std::size_t flatten(const std::array<int, 4>& idx) const {
    std::size_t p = 0;
    for (int a = 0; a < naxes; ++a) p = p * n + static_cast<std::size_t>(idx[a]);
    return p;
  }

  std::array<int, 4> unflatten(std::size_t p) const {
    std::array<int, 4> idx{0, 0, 0, 0};
    for (int a = naxes - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(p % n);
      p /= n;
    }
    return idx;
  }

  bool operator==(const Grid&) const = default;
};

inline Grid Grid::create(int dim_c, int n) {
  if (dim_c != 1 && dim_c != 2)
    throw ValidationError("grid: dim_c must be 1 or 2, got " + std::to_string(dim_c));
  if (n < 8 || (n & (n - 1)) != 0)
    throw ValidationError("grid: samples per axis must be a power of two >= 8, got " +
                          std::to_string(n));
  Grid g;
  g.dim_c = dim_c;
  g.n = n;
  g.naxes = 2 * dim_c;
  g.npoints = 1;
  for (int a = 0; a < g.naxes; ++a) g.npoints *= static_cast<std::size_t>(n);
  return g;
}

inline Plane make_plane(const Grid& g, cplx fill = {0.0, 0.0}) {
  return Plane(g.npoints, fill);
}

}  // namespace hymlab
