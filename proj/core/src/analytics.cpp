#include "hymlab/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hymlab {

namespace {

// quadrature of a real sample vector against the volume form
double integrate_samples(const HermitianBase& base, const std::vector<double>& v) {
  const double cell = std::pow(2.0, base.n()) / static_cast<double>(base.grid.npoints);
  double s = 0.0;
  for (std::size_t p = 0; p < v.size(); ++p) s += v[p] * base.detg[p];
  return s * cell;
}

// ascending eigenvalues of the pencil (B, h) for a Hermitian 2x2 block;
// Cholesky-whitened so near-proportional pencils keep full relative accuracy
void pencil2x2(cplx h00, cplx h01, cplx h11, cplx b00, cplx b01, cplx b11,
               double* lo, double* hi) {
  const double l00 = std::sqrt(h00.real());
  const cplx l10 = std::conj(h01) / l00;
  const double l11 = std::sqrt(std::max(h11.real() - std::norm(l10), 1e-300));
  const double alpha = 1.0 / l00, delta = 1.0 / l11;
  const cplx gamma = -l10 * (alpha * delta);
  const double m00 = alpha * alpha * b00.real();
  const double m11 = std::norm(gamma) * b00.real() +
                     2.0 * delta * (gamma * b01).real() +
                     delta * delta * b11.real();
  const cplx m01 = alpha * (b00.real() * std::conj(gamma) + delta * b01);
  const double mean = 0.5 * (m00 + m11);
  const double disc = std::hypot(0.5 * (m00 - m11), std::abs(m01));
  *lo = mean - disc;
  *hi = mean + disc;
}

double hn_dist_from_theta(const BundleSpec& spec, const EndField& theta) {
  const HermitianBase& base = *spec.base;
  const double scale = 2.0 * std::numbers::pi / base.volume;
  std::vector<double> q(base.grid.npoints, 0.0);
  for (const auto& [o, s] : spec.mask.blocks)
    for (int j = o; j < o + s; ++j)
      for (int k = o; k < o + s; ++k) {
        const Plane& t = theta.at(j, k);
        const cplx target = (j == k) ? cplx{scale * spec.degrees[j], 0.0} : cplx{0.0, 0.0};
        for (std::size_t p = 0; p < q.size(); ++p) q[p] += std::norm(t[p] - target);
      }
  return std::sqrt(integrate_samples(base, q));
}

}  // namespace

std::vector<double> selfadjoint_spectrum(const Eigen::MatrixXcd& theta,
                                         const Eigen::MatrixXcd& h) {
  Eigen::MatrixXcd b = h * theta;
  b = 0.5 * (b + b.adjoint()).eval();
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(b, h,
                                                                Eigen::EigenvaluesOnly);
  std::vector<double> lam(es.eigenvalues().data(),
                          es.eigenvalues().data() + es.eigenvalues().size());
  std::reverse(lam.begin(), lam.end());
  return lam;
}

double sigma_condition(const Eigen::MatrixXcd& h1, const Eigen::MatrixXcd& h2) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(h2, h1,
                                                                Eigen::EigenvaluesOnly);
  const auto& nu = es.eigenvalues();
  return std::sqrt(nu(nu.size() - 1) / nu(0));
}

double endo_dist2(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                  const Eigen::MatrixXcd& h) {
  Eigen::MatrixXcd d = b - a;
  Eigen::MatrixXcd m = d * h.llt().solve(d.adjoint() * h);
  return m.trace().real();
}

EigenField eigen_field(const EndField& theta, const EndField& h) {
  const Grid& g = theta.grid;
  const int r = theta.rank;
  EndField b = mul(h, theta);
  const double defect = hermiticity_defect(b);
  // relative to the pairing scale: h may span hundreds of orders of
  // magnitude along long flows while h theta stays Hermitian to rounding
  const double scale = std::max(1.0, sup_frobenius(b));
  if (defect > 1e-6 * scale)
    throw NumericalError("eigen_field: self-adjointness defect " +
                         std::to_string(defect) + " exceeds 1e-6 at scale " +
                         std::to_string(scale));

  EigenField ef;
  ef.grid = g;
  ef.rank = r;
  ef.lam.assign(static_cast<std::size_t>(r), std::vector<double>(g.npoints, 0.0));

  std::array<double, 8> buf{};
  for (std::size_t p = 0; p < g.npoints; ++p) {
    int filled = 0;
    for (const auto& [o, s] : theta.mask.blocks) {
      if (s == 1) {
        buf[static_cast<std::size_t>(filled++)] = theta.at(o, o)[p].real();
      } else if (s == 2) {
        const cplx b01 = 0.5 * (b.at(o, o + 1)[p] + std::conj(b.at(o + 1, o)[p]));
        double lo, hi;
        pencil2x2(h.at(o, o)[p], h.at(o, o + 1)[p], h.at(o + 1, o + 1)[p],
                  b.at(o, o)[p].real(), b01, b.at(o + 1, o + 1)[p].real(), &lo, &hi);
        buf[static_cast<std::size_t>(filled++)] = hi;
        buf[static_cast<std::size_t>(filled++)] = lo;
      } else {
        Eigen::MatrixXcd tb(s, s), hb(s, s);
        for (int j = 0; j < s; ++j)
          for (int k = 0; k < s; ++k) {
            tb(j, k) = theta.at(o + j, o + k)[p];
            hb(j, k) = h.at(o + j, o + k)[p];
          }
        auto lam = selfadjoint_spectrum(tb, hb);
        for (double v : lam) buf[static_cast<std::size_t>(filled++)] = v;
      }
    }
    std::sort(buf.begin(), buf.begin() + filled, std::greater<double>());
    for (int j = 0; j < r; ++j) ef.lam[static_cast<std::size_t>(j)][p] = buf[static_cast<std::size_t>(j)];
  }
  return ef;
}

MonitorRefs make_monitor_refs(const BundleSpec& spec, const EndField& h0) {
  MonitorRefs refs;
  refs.det0 = det(h0);
  auto f = chern_curvature(spec, h0);
  const int n = spec.base->grid.dim_c;
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb) refs.trF0.push_back(trace(f.at(a, bb)));
  return refs;
}

MonitorRecord compute_monitors(const BundleSpec& spec, const EndField& h, double t,
                               const MonitorOptions& opts, const MonitorRefs* refs) {
  const HermitianBase& base = *spec.base;
  const std::size_t P = base.grid.npoints;
  const int r = spec.rank;
  const double vol = base.volume;

  auto mc = mean_curvature(spec, h);
  EndField hinv = inverse(h);
  EigenField ef = eigen_field(mc.theta, h);

  MonitorRecord rec;
  rec.t = t;
  rec.hatLk.assign(static_cast<std::size_t>(r), 0.0);
  rec.hatUk.assign(static_cast<std::size_t>(r), 0.0);
  rec.mLk.assign(static_cast<std::size_t>(r), 0.0);
  rec.mUk.assign(static_cast<std::size_t>(r), 0.0);

  std::vector<double> accU(P, 0.0), accL(P, 0.0);
  for (int k = 1; k <= r; ++k) {
    const auto& top = ef.lam[static_cast<std::size_t>(k - 1)];
    const auto& bot = ef.lam[static_cast<std::size_t>(r - k)];
    double supU = -1e300, infL = 1e300;
    for (std::size_t p = 0; p < P; ++p) {
      accU[p] += top[p];
      accL[p] += bot[p];
      supU = std::max(supU, accU[p]);
      infL = std::min(infL, accL[p]);
    }
    rec.hatUk[static_cast<std::size_t>(k - 1)] = supU;
    rec.hatLk[static_cast<std::size_t>(k - 1)] = infL;
    rec.mUk[static_cast<std::size_t>(k - 1)] = integrate_samples(base, accU) / vol;
    rec.mLk[static_cast<std::size_t>(k - 1)] = integrate_samples(base, accL) / vol;
  }
  rec.hatU = rec.hatUk[0];
  rec.hatL = rec.hatLk[0];
  rec.mU = rec.mUk[0];
  rec.mL = rec.mLk[0];

  EndField phi = mc.theta;
  for (int j = 0; j < r; ++j)
    for (auto& v : phi.at(j, j)) v -= spec.lambda;
  Plane phi2 = hs_norm2_plane(phi, hinv, h);
  Plane theta2 = hs_norm2_plane(mc.theta, hinv, h);
  rec.phi_norm_sq = integrate_real(base, phi2);
  for (std::size_t p = 0; p < P; ++p) {
    rec.phi_sup_sq = std::max(rec.phi_sup_sq, phi2[p].real());
    rec.theta_sup_sq = std::max(rec.theta_sup_sq, theta2[p].real());
  }

  Plane grad = dbar_E_norm2_plane(spec, mc.theta, h, hinv);
  rec.grad_energy = 2.0 * integrate_real(base, grad);

  rec.hn_dist = hn_dist_from_theta(spec, mc.theta);

  for (int j = 0; j < r; ++j) {
    const auto& lj = ef.lam[static_cast<std::size_t>(j)];
    std::vector<double> sq(P);
    for (std::size_t p = 0; p < P; ++p) sq[p] = lj[p] * lj[p];
    const double m1 = integrate_samples(base, lj) / vol;
    const double m2 = integrate_samples(base, sq) / vol;
    rec.eig_variance += std::max(m2 - m1 * m1, 0.0);
  }

  Plane dh = det(h);
  if (refs) {
    for (std::size_t p = 0; p < P; ++p)
      rec.det_drift = std::max(rec.det_drift,
                               std::abs(dh[p] / refs->det0[p] - 1.0));
  } else {
    for (std::size_t p = 0; p < P; ++p)
      rec.det_drift = std::max(rec.det_drift, std::abs(dh[p] - 1.0));
  }

  const int n = base.grid.dim_c;
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb) {
      Plane tr_now = trace(mc.f.at(a, bb));
      const Plane* tr_ref = nullptr;
      Plane tr_bg;
      if (refs) {
        tr_ref = &refs->trF0[static_cast<std::size_t>(a) * n + bb];
      } else {
        tr_bg = trace(spec.f_background.at(a, bb));
        tr_ref = &tr_bg;
      }
      for (std::size_t p = 0; p < P; ++p)
        rec.trF_drift = std::max(rec.trF_drift, std::abs(tr_now[p] - (*tr_ref)[p]));
    }

  for (const auto& [rho, N] : opts.hym_pairs)
    rec.hym.push_back(hym_functional(spec, ef, rho, N));

  return rec;
}

double hn_projection_distance(const BundleSpec& spec, const EndField& h) {
  return hn_dist_from_theta(spec, mean_curvature(spec, h).theta);
}

PairDistance pair_distance(const BundleSpec& spec, const EndField& h1,
                           const EndField& h2) {
  const Grid& g = spec.base->grid;
  const int r = spec.rank;

  auto mc1 = mean_curvature(spec, h1);
  auto mc2 = mean_curvature(spec, h2);
  EndField h1inv = inverse(h1);

  PairDistance out;
  EndField dtheta = add(mc2.theta, mc1.theta, 1.0, -1.0);
  out.theta_L2 =
      std::sqrt(integrate_real(*spec.base, hs_norm2_plane(dtheta, h1inv, h1)));

  EigenField e1 = eigen_field(mc1.theta, h1);
  EigenField e2 = eigen_field(mc2.theta, h2);
  std::vector<double> q(g.npoints, 0.0);
  for (int j = 0; j < r; ++j) {
    const auto& a = e1.lam[static_cast<std::size_t>(j)];
    const auto& b = e2.lam[static_cast<std::size_t>(j)];
    for (std::size_t p = 0; p < g.npoints; ++p) q[p] += (b[p] - a[p]) * (b[p] - a[p]);
  }
  out.eig_L2 = std::sqrt(integrate_samples(*spec.base, q));

  out.cond_bound = 1.0;
  out.cross_penalty = -1e300;
  for (std::size_t p = 0; p < g.npoints; ++p) {
    double nu_min = 1e300, nu_max = -1e300, cross = 0.0;
    for (const auto& [o, s] : spec.mask.blocks) {
      if (s == 1) {
        const double nu = h2.at(o, o)[p].real() / h1.at(o, o)[p].real();
        nu_min = std::min(nu_min, nu);
        nu_max = std::max(nu_max, nu);
        cross += nu + 1.0 / nu;
      } else if (s == 2) {
        double lo, hi;
        pencil2x2(h1.at(o, o)[p], h1.at(o, o + 1)[p], h1.at(o + 1, o + 1)[p],
                  h2.at(o, o)[p], h2.at(o, o + 1)[p], h2.at(o + 1, o + 1)[p], &lo,
                  &hi);
        nu_min = std::min(nu_min, lo);
        nu_max = std::max(nu_max, hi);
        cross += lo + 1.0 / lo + hi + 1.0 / hi;
      } else {
        Eigen::MatrixXcd hb1(s, s), hb2(s, s);
        for (int j = 0; j < s; ++j)
          for (int k = 0; k < s; ++k) {
            hb1(j, k) = h1.at(o + j, o + k)[p];
            hb2(j, k) = h2.at(o + j, o + k)[p];
          }
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            hb2, hb1, Eigen::EigenvaluesOnly);
        for (int j = 0; j < s; ++j) {
          const double nu = es.eigenvalues()(j);
          nu_min = std::min(nu_min, nu);
          nu_max = std::max(nu_max, nu);
          cross += nu + 1.0 / nu;
        }
      }
    }
    out.cond_bound = std::max(out.cond_bound, std::sqrt(nu_max / nu_min));
    out.cross_penalty = std::max(out.cross_penalty, cross - 2.0 * r);
  }
  return out;
}

double hym_functional(const BundleSpec& spec, const EigenField& ef, double rho,
                      double N) {
  if (rho < 1.0)
    throw ValidationError("hym_functional: rho=" + std::to_string(rho) +
                          " must be at least 1");
  const HermitianBase& base = *spec.base;
  const double scale = base.volume / (2.0 * std::numbers::pi);
  std::vector<double> v(base.grid.npoints, 0.0);
  for (int j = 0; j < ef.rank; ++j) {
    const auto& lj = ef.lam[static_cast<std::size_t>(j)];
    for (std::size_t p = 0; p < v.size(); ++p)
      v[p] += std::pow(std::abs(scale * lj[p] - N), rho);
  }
  return integrate_samples(base, v);
}

}  // namespace hymlab
