#pragma once

#include <memory>
#include <vector>

#include "hymlab/fft.hpp"
#include "hymlab/grid.hpp"

namespace hymlab {

// Hermitian metric base (M, omega) on the torus [0,1)^{2n}.
//
// Conventions, used everywhere downstream:
//   * omega = sum_{j,k} g[j][k] * (i dz^j wedge dzbar^k), G = (g[j][k]) is
//     Hermitian positive definite pointwise (here real symmetric).
//   * A (1,1)-form alpha is stored by its coefficients A[j][k] against
//     i dz^j wedge dzbar^k ("islot" coefficients).  For alpha = i F this
//     makes A[j][k] the plain coefficient of F against dz^j wedge dzbar^k.
//   * Lambda alpha = tr(G^{-1} A); Lambda omega = n.
//   * |alpha|^2 = tr(G^{-1} A G^{-1} A^dagger).
//   * omega^n/n! = det(G) * prod_a (i dz^a wedge dzbar^a) = det(G)*2^n d^{2n}x.
//
// Instances are immutable and shared via shared_ptr<const HermitianBase>.
struct HermitianBase {
  Grid grid;
  std::shared_ptr<const SpectralEngine> fft;

  // metric planes indexed j*dim_c + k
  std::vector<Plane> g;
  std::vector<Plane> ginv;
  std::vector<double> detg;

  double volume = 0.0;          // integral of omega^n/n!
  double eps = 0.0;             // Gauduchon family parameter, 0 for flat
  double max_ginv_spec = 0.0;   // sup_x ||G^{-1}(x)||_2, used by the CFL bound
  double sup_g = 0.0;           // sup_x max_jk |g[j][k](x)|
  double gauduchon_defect = 0.0;  // sup |del dbar omega|, checked at construction

  int n() const { return grid.dim_c; }

  const Plane& g_at(int j, int k) const { return g[j * grid.dim_c + k]; }
  const Plane& ginv_at(int j, int k) const { return ginv[j * grid.dim_c + k]; }
};

using BasePtr = std::shared_ptr<const HermitianBase>;

// Flat torus: G = Id, omega = sum_a i dz^a wedge dzbar^a, volume 2^n.
BasePtr make_flat_torus(int dim_c, int grid_n);

// Gauduchon (non-Kahler) torus, dim_c = 2:
//   G = [[1, eps*s], [eps*s, 1]],  s = sin(2 pi x_1).
// del dbar omega = 0 identically while d omega != 0 for eps != 0.
// Rejects |eps| >= 0.25 (keeps G uniformly positive with margin).
BasePtr make_gauduchon_torus(int grid_n, double eps);

// Lambda-contraction of a (1,1)-form given by islot planes A[j*n+k].
Plane contract11(const HermitianBase& base, const std::vector<Plane>& islots);

// Integral of a scalar density f against omega^n/n!.
cplx integrate(const HermitianBase& base, const Plane& f);
double integrate_real(const HermitianBase& base, const Plane& f);

// Mean against the normalized volume form, integral / volume.
double mean_real(const HermitianBase& base, const Plane& f);

// L2 pairing of scalar fields: integral of u * conj(v).
cplx l2_inner(const HermitianBase& base, const Plane& u, const Plane& v);
double l2_norm(const HermitianBase& base, const Plane& u);

}  // namespace hymlab
