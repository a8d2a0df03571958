#include "hymlab/geometry.hpp"

#include <cmath>
#include <numbers>

#include "hymlab/forms.hpp"

namespace hymlab {

namespace {

void finalize_base(HermitianBase& b) {
  const int n = b.grid.dim_c;
  const std::size_t np = b.grid.npoints;
  b.ginv.assign(static_cast<std::size_t>(n) * n, make_plane(b.grid));
  b.detg.assign(np, 0.0);

  double vol = 0.0;
  double max_spec = 0.0;
  double supg = 0.0;
  for (std::size_t p = 0; p < np; ++p) {
    if (n == 1) {
      const double g11 = b.g[0][p].real();
      b.detg[p] = g11;
      b.ginv[0][p] = 1.0 / g11;
      max_spec = std::max(max_spec, 1.0 / g11);
      supg = std::max(supg, std::abs(g11));
    } else {
      const cplx g11 = b.g[0][p], g12 = b.g[1][p];
      const cplx g21 = b.g[2][p], g22 = b.g[3][p];
      const double det = (g11 * g22 - g12 * g21).real();
      b.detg[p] = det;
      b.ginv[0][p] = g22 / det;
      b.ginv[1][p] = -g12 / det;
      b.ginv[2][p] = -g21 / det;
      b.ginv[3][p] = g11 / det;
      // Hermitian 2x2 spectral norm of G^{-1}: mean + radius of eigenvalues
      const double tr = (b.ginv[0][p] + b.ginv[3][p]).real();
      const double dd = (b.ginv[0][p] - b.ginv[3][p]).real();
      const double rad = 0.5 * std::sqrt(dd * dd + 4.0 * std::norm(b.ginv[1][p]));
      max_spec = std::max(max_spec, 0.5 * tr + rad);
      for (int e = 0; e < 4; ++e) supg = std::max(supg, std::abs(b.g[e][p]));
    }
    vol += b.detg[p];
  }
  const double cell = std::pow(2.0, n) / static_cast<double>(np);
  b.volume = vol * cell;
  b.max_ginv_spec = max_spec;
  b.sup_g = supg;
}

}  // namespace

BasePtr make_flat_torus(int dim_c, int grid_n) {
  auto b = std::make_shared<HermitianBase>();
  b->grid = Grid::create(dim_c, grid_n);
  b->fft = spectral_engine(b->grid);
  b->eps = 0.0;
  const int n = dim_c;
  b->g.assign(static_cast<std::size_t>(n) * n, make_plane(b->grid));
  for (int j = 0; j < n; ++j)
    for (std::size_t p = 0; p < b->grid.npoints; ++p) b->g[j * n + j][p] = 1.0;
  finalize_base(*b);
  return b;
}

BasePtr make_gauduchon_torus(int grid_n, double eps) {
  if (std::abs(eps) >= 0.25)
    throw ValidationError("gauduchon torus: |eps| must be < 0.25, got " +
                          std::to_string(eps));
  auto b = std::make_shared<HermitianBase>();
  b->grid = Grid::create(2, grid_n);
  b->fft = spectral_engine(b->grid);
  b->eps = eps;
  b->g.assign(4, make_plane(b->grid));
  const std::size_t sx1 = b->grid.stride(0);
  const int n = grid_n;
  for (std::size_t p = 0; p < b->grid.npoints; ++p) {
    const int i1 = static_cast<int>((p / sx1) % n);
    const double s = std::sin(2.0 * std::numbers::pi * b->grid.coord(i1));
    b->g[0][p] = 1.0;
    b->g[1][p] = eps * s;
    b->g[2][p] = eps * s;
    b->g[3][p] = 1.0;
  }
  finalize_base(*b);
  b->gauduchon_defect = gauduchon_residual(*b);
  if (b->gauduchon_defect >= 1e-10 * b->sup_g)
    throw NumericalError("gauduchon torus: del dbar omega residual " +
                         std::to_string(b->gauduchon_defect) + " exceeds tolerance");
  return b;
}

Plane contract11(const HermitianBase& base, const std::vector<Plane>& islots) {
  const int n = base.grid.dim_c;
  Plane out = make_plane(base.grid);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Plane& gi = base.ginv_at(k, j);
      const Plane& a = islots[j * n + k];
      for (std::size_t p = 0; p < out.size(); ++p) out[p] += gi[p] * a[p];
    }
  return out;
}

cplx integrate(const HermitianBase& base, const Plane& f) {
  cplx acc{0.0, 0.0};
  for (std::size_t p = 0; p < f.size(); ++p) acc += f[p] * base.detg[p];
  const double cell = std::pow(2.0, base.grid.dim_c) / static_cast<double>(base.grid.npoints);
  return acc * cell;
}

double integrate_real(const HermitianBase& base, const Plane& f) {
  return integrate(base, f).real();
}

double mean_real(const HermitianBase& base, const Plane& f) {
  return integrate_real(base, f) / base.volume;
}

cplx l2_inner(const HermitianBase& base, const Plane& u, const Plane& v) {
  cplx acc{0.0, 0.0};
  for (std::size_t p = 0; p < u.size(); ++p) acc += u[p] * std::conj(v[p]) * base.detg[p];
  const double cell = std::pow(2.0, base.grid.dim_c) / static_cast<double>(base.grid.npoints);
  return acc * cell;
}

double l2_norm(const HermitianBase& base, const Plane& u) {
  return std::sqrt(std::max(0.0, l2_inner(base, u, u).real()));
}

}  // namespace hymlab
