#include "hymlab/chern.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hymlab {

double degree(const BundleSpec& spec, const EndField& h) {
  const HermitianBase& base = *spec.base;
  const int n = base.n();
  auto f = chern_curvature(spec, h);

  Plane acc = make_plane(base.grid);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Plane tr_slot = trace(f.at(k, j));
      const Plane& w = base.ginv_at(j, k);
      for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += w[p] * tr_slot[p];
    }
  return integrate_real(base, acc) / (2.0 * std::numbers::pi);
}

Chern2Fields chern2_defect(const BundleSpec& spec, const EndField& h) {
  const HermitianBase& base = *spec.base;
  if (spec.rank != 2)
    throw ValidationError("chern2_defect: rank " + std::to_string(spec.rank) +
                          " bundle, the identity is specific to rank 2");
  if (base.n() != 2)
    throw ValidationError("chern2_defect: base has dim_c " +
                          std::to_string(base.n()) + ", need a complex surface");

  auto f = chern_curvature(spec, h);
  EndField hinv = inverse(h);
  const std::size_t P = base.grid.npoints;

  Chern2Fields out;
  out.lhs.assign(P, 0.0);
  out.f_perp_sq.assign(P, 0.0);
  out.theta_perp_sq.assign(P, 0.0);

  const Eigen::Matrix2cd id2 = Eigen::Matrix2cd::Identity();
  for (std::size_t p = 0; p < P; ++p) {
    Eigen::Matrix2cd s[2][2];
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        s[a][b] = f.at(a, b).point(p);
        s[a][b] -= 0.5 * s[a][b].trace() * id2;
      }

    const Eigen::Matrix2cd combo = s[0][0] * s[1][1] + s[1][1] * s[0][0] -
                                   s[0][1] * s[1][0] - s[1][0] * s[0][1];
    out.lhs[p] = -combo.trace().real() / base.detg[p];

    // whitening frame: G = L L^T, slots transform by L^{-1} (.) L^{-T}
    const double g00 = base.g_at(0, 0)[p].real();
    const double g01 = base.g_at(0, 1)[p].real();
    const double g11 = base.g_at(1, 1)[p].real();
    const double l00 = std::sqrt(g00);
    const double l10 = g01 / l00;
    const double l11 = std::sqrt(g11 - l10 * l10);
    const double al = 1.0 / l00, de = 1.0 / l11, ga = -l10 / (l00 * l11);

    Eigen::Matrix2cd w[2][2];
    w[0][0] = al * al * s[0][0];
    w[0][1] = al * (ga * s[0][0] + de * s[0][1]);
    w[1][0] = al * (ga * s[0][0] + de * s[1][0]);
    w[1][1] = ga * ga * s[0][0] + ga * de * (s[0][1] + s[1][0]) +
              de * de * s[1][1];

    const Eigen::Matrix2cd hp = h.point(p);
    const Eigen::Matrix2cd hq = hinv.point(p);
    double fsq = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        fsq += (w[a][b] * hq * w[a][b].adjoint() * hp).trace().real();
    out.f_perp_sq[p] = fsq;

    const Eigen::Matrix2cd th = w[0][0] + w[1][1];
    out.theta_perp_sq[p] = (th * hq * th.adjoint() * hp).trace().real();
  }
  return out;
}

std::vector<double> c2_positivity_bound(const EigenField& eigs) {
  if (eigs.rank != 2)
    throw ValidationError("c2_positivity_bound: rank " +
                          std::to_string(eigs.rank) + " field, need rank 2");
  const std::size_t P = eigs.grid.npoints;
  std::vector<double> out(P, 0.0);
  for (std::size_t p = 0; p < P; ++p) {
    const double l1 = eigs.lam[0][p], l2 = eigs.lam[1][p];
    if (std::abs(l1 + l2 - 2.0) > 1e-6)
      throw ValidationError(
          "c2_positivity_bound: eigenvalue trace " + std::to_string(l1 + l2) +
          " at point " + std::to_string(p) + " violates the normalization 2");
    out[p] = 2.0 * l1 * l2;
  }
  return out;
}

}  // namespace hymlab
