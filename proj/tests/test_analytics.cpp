#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "hymlab/analytics.hpp"
#include "hymlab/random_fields.hpp"

using namespace hymlab;

namespace {

constexpr double kPi = std::numbers::pi;

Plane real_mode(const Grid& g, const std::array<int, 4>& m, double amp, double shift) {
  Plane u = make_plane(g);
  for (std::size_t p = 0; p < g.npoints; ++p) {
    const auto idx = g.unflatten(p);
    double phase = 0.0;
    for (int a = 0; a < g.naxes; ++a) phase += m[a] * g.coord(idx[a]);
    u[p] = amp * std::cos(2.0 * kPi * phase + shift);
  }
  return u;
}

EndField random_metric(const Grid& g, const BlockMask& mask, Rng& rng, int band,
                       double amp) {
  EndField h = EndField::identity(g, mask);
  for (const auto& [o, s] : mask.blocks)
    for (int j = o; j < o + s; ++j) {
      Plane d = band_limited_real(g, rng, band, amp);
      for (std::size_t p = 0; p < g.npoints; ++p) h.at(j, j)[p] += d[p];
      for (int k = j + 1; k < o + s; ++k) {
        Plane re = band_limited_real(g, rng, band, 0.4 * amp);
        Plane im = band_limited_real(g, rng, band, 0.4 * amp);
        for (std::size_t p = 0; p < g.npoints; ++p) {
          const cplx v = re[p] + cplx{0.0, 1.0} * im[p];
          h.at(j, k)[p] = v;
          h.at(k, j)[p] = std::conj(v);
        }
      }
    }
  return h;
}

Eigen::MatrixXcd randn_matrix(Rng& rng, int r) {
  Eigen::MatrixXcd m(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m(i, j) = rng.normal_complex();
  return m;
}

Eigen::MatrixXcd random_pd(Rng& rng, int r) {
  Eigen::MatrixXcd b = randn_matrix(rng, r);
  return b * b.adjoint() + 0.05 * Eigen::MatrixXcd::Identity(r, r);
}

}  // namespace

TEST_CASE("matrix-level spectrum matches the orthonormalized dense oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = rng.uniform_int(2, 5);
    Eigen::MatrixXcd h = random_pd(rng, r);
    Eigen::MatrixXcd s = randn_matrix(rng, r);
    s = (0.5 * (s + s.adjoint())).eval();
    Eigen::MatrixXcd theta = h.inverse() * s;  // H-self-adjoint by construction

    auto lam = selfadjoint_spectrum(theta, h);

    // oracle: conjugate by the H-orthonormalizing square root, then eigensolve
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eh(h);
    Eigen::MatrixXcd sig = eh.operatorSqrt();
    Eigen::MatrixXcd m = sig * theta * sig.inverse();
    m = (0.5 * (m + m.adjoint())).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> em(m);
    for (int j = 0; j < r; ++j)
      CHECK(lam[static_cast<std::size_t>(j)] ==
            doctest::Approx(em.eigenvalues()(r - 1 - j)).epsilon(1e-10));

    CHECK(std::is_sorted(lam.rbegin(), lam.rend()));
    double tr = 0.0;
    for (double v : lam) tr += v;
    CHECK(tr == doctest::Approx(theta.trace().real()).epsilon(1e-10));
  }
}

TEST_CASE("eigen field of the background split metric is the slope vector") {
  auto base = make_flat_torus(1, 16);
  auto spec = make_split_bundle(base, {1, -1});
  auto mc = mean_curvature(*spec, MetricField::background(*spec).m);
  auto ef = eigen_field(mc.theta, MetricField::background(*spec).m);
  double worst = 0.0;
  for (std::size_t p = 0; p < base->grid.npoints; ++p) {
    worst = std::max(worst, std::abs(ef.lam[0][p] - kPi));
    worst = std::max(worst, std::abs(ef.lam[1][p] + kPi));
  }
  CHECK(worst < 1e-10);

  auto triv = make_split_bundle(base, {0});
  auto mc0 = mean_curvature(*triv, MetricField::background(*triv).m);
  auto ef0 = eigen_field(mc0.theta, MetricField::background(*triv).m);
  for (std::size_t p = 0; p < base->grid.npoints; ++p)
    CHECK(std::abs(ef0.lam[0][p]) < 1e-11);
}

TEST_CASE("eigen field agrees with the pointwise dense solver and traces") {
  auto base = make_flat_torus(1, 8);
  const Grid& g = base->grid;
  Rng rng(33);

  for (int rank : {2, 3}) {
    auto spec = make_split_bundle(base, std::vector<int>(static_cast<std::size_t>(rank), 0));
    EndField h = random_metric(g, spec->mask, rng, 2, 0.25);
    auto mc = mean_curvature(*spec, h);
    auto ef = eigen_field(mc.theta, h);

    for (std::size_t p = 0; p < g.npoints; ++p) {
      auto oracle = selfadjoint_spectrum(mc.theta.point(p), h.point(p));
      double tr = 0.0;
      for (int j = 0; j < rank; ++j) {
        CHECK(std::abs(ef.lam[static_cast<std::size_t>(j)][p] -
                       oracle[static_cast<std::size_t>(j)]) < 1e-10);
        tr += ef.lam[static_cast<std::size_t>(j)][p];
        if (j > 0)
          CHECK(ef.lam[static_cast<std::size_t>(j)][p] <=
                ef.lam[static_cast<std::size_t>(j - 1)][p] + 1e-14);
      }
      CHECK(std::abs(tr - trace(mc.theta)[p].real()) < 1e-10);
    }
  }
}

TEST_CASE("eigen field rejects non-self-adjoint input") {
  auto base = make_flat_torus(1, 8);
  auto spec = make_split_bundle(base, {0, 0});
  EndField id = EndField::identity(base->grid, spec->mask);
  EndField bad = EndField::zero(base->grid, spec->mask);
  for (auto& v : bad.at(0, 1)) v = 0.5;
  CHECK_THROWS_AS(eigen_field(bad, id), NumericalError);
}

TEST_CASE("monitors on the constant background state") {
  auto base = make_flat_torus(1, 32);
  auto spec = make_split_bundle(base, {1, -1});
  EndField h = EndField::identity(base->grid, spec->mask);
  auto rec = compute_monitors(*spec, h, 0.0);

  CHECK(rec.hatU == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(rec.hatL == doctest::Approx(-kPi).epsilon(1e-12));
  CHECK(rec.mU == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(rec.mL == doctest::Approx(-kPi).epsilon(1e-12));
  CHECK(std::abs(rec.hatUk[1]) < 1e-10);
  CHECK(std::abs(rec.hatLk[1]) < 1e-10);
  CHECK(rec.mLk[1] == rec.mUk[1]);

  // phi = diag(pi, -pi): |phi|^2 = 2 pi^2, integral over volume 2
  CHECK(rec.phi_norm_sq == doctest::Approx(4.0 * kPi * kPi).epsilon(1e-10));
  CHECK(rec.phi_sup_sq == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-10));
  CHECK(rec.theta_sup_sq == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-10));
  CHECK(rec.grad_energy < 1e-12);
  CHECK(rec.hn_dist < 1e-10);
  CHECK(rec.eig_variance < 1e-12);
  CHECK(rec.det_drift < 1e-12);
  CHECK(rec.trF_drift < 1e-10);

  // (rho, N) in {(1,0), (1,1), (2,0), (2,1)} on eigenvalues +-1 after scaling
  REQUIRE(rec.hym.size() == 4);
  CHECK(rec.hym[0] == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(rec.hym[1] == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(rec.hym[2] == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(rec.hym[3] == doctest::Approx(8.0).epsilon(1e-10));
}

TEST_CASE("monitors separate sup from mean on a mean-zero perturbation") {
  auto base = make_flat_torus(1, 32);
  auto spec = make_split_bundle(base, {1, -1});
  const Grid& g = base->grid;

  const double a = 0.05;
  Plane phi = real_mode(g, {2, 0, 0, 0}, a, 0.0);
  EndField h = EndField::identity(g, spec->mask);
  for (std::size_t p = 0; p < g.npoints; ++p) {
    h.at(0, 0)[p] = std::exp(phi[p]);
    h.at(1, 1)[p] = std::exp(-phi[p]);
  }
  const double rate = 4.0 * kPi * kPi;  // mode (2,0) heat eigenvalue

  auto rec = compute_monitors(*spec, h, 0.0);
  CHECK(rec.hatU == doctest::Approx(kPi + rate * a).epsilon(1e-8));
  CHECK(rec.mU == doctest::Approx(kPi).epsilon(1e-9));
  CHECK(rec.hatL == doctest::Approx(-kPi - rate * a).epsilon(1e-8));
  CHECK(rec.mL == doctest::Approx(-kPi).epsilon(1e-9));

  // conformal pair: distance to the projection target via the scalar oracle
  const double dist = hn_projection_distance(*spec, h);
  CHECK(dist == doctest::Approx(std::sqrt(2.0) * rate * a).epsilon(1e-8));

  // eigenvalue spread of the single mode: variance of a cosine is a^2/2 per factor
  CHECK(rec.eig_variance ==
        doctest::Approx(rate * rate * a * a).epsilon(1e-6));
}

TEST_CASE("monitor ordering invariants on a generic metric") {
  auto base = make_flat_torus(1, 32);
  auto spec = make_split_bundle(base, {0, 0});
  Rng rng(55);
  EndField h = random_metric(base->grid, spec->mask, rng, 2, 0.2);
  auto rec = compute_monitors(*spec, h, 0.0);
  for (int k = 0; k < 2; ++k) {
    CHECK(rec.hatLk[static_cast<std::size_t>(k)] <=
          rec.mLk[static_cast<std::size_t>(k)] + 1e-12);
    CHECK(rec.mUk[static_cast<std::size_t>(k)] <=
          rec.hatUk[static_cast<std::size_t>(k)] + 1e-12);
  }
  CHECK(rec.mLk[1] == doctest::Approx(rec.mUk[1]).epsilon(1e-13));
  CHECK(rec.grad_energy > 0.0);
}

TEST_CASE("conservation references freeze the initial state") {
  auto base = make_flat_torus(1, 32);
  auto spec = make_split_bundle(base, {1, -1});
  Rng rng(56);
  EndField h = random_metric(base->grid, spec->mask, rng, 2, 0.2);
  auto refs = make_monitor_refs(*spec, h);
  auto rec = compute_monitors(*spec, h, 0.0, {}, &refs);
  CHECK(rec.det_drift == 0.0);
  CHECK(rec.trF_drift == 0.0);
}

TEST_CASE("hym functional values and rejection") {
  auto base = make_flat_torus(1, 16);
  auto two = make_split_bundle(base, {2});
  EndField h = EndField::identity(base->grid, two->mask);
  auto mc = mean_curvature(*two, h);
  auto ef = eigen_field(mc.theta, h);
  // theta = 2 pi, scaled eigenvalue (Vol/2pi) * 2pi = 2; shift N = 2 kills it
  CHECK(hym_functional(*two, ef, 2.0, 2.0) < 1e-18);
  CHECK(hym_functional(*two, ef, 1.0, 0.0) == doctest::Approx(4.0).epsilon(1e-10));
  CHECK_THROWS_AS(hym_functional(*two, ef, 0.5, 0.0), ValidationError);
}

TEST_CASE("pair distance on identical and conformally scaled metrics") {
  auto base = make_flat_torus(1, 32);
  auto spec = make_split_bundle(base, {0, 0});
  Rng rng(57);
  EndField h = random_metric(base->grid, spec->mask, rng, 2, 0.2);

  auto same = pair_distance(*spec, h, h);
  CHECK(same.theta_L2 < 1e-12);
  CHECK(same.eig_L2 < 1e-12);
  CHECK(same.cond_bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(same.cross_penalty) < 1e-12);

  const double c = 3.0;
  EndField hc = h;
  scale_in_place(hc, c);
  auto scaled = pair_distance(*spec, h, hc);
  CHECK(scaled.theta_L2 < 1e-9);
  CHECK(scaled.eig_L2 < 1e-9);
  CHECK(scaled.cond_bound == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(scaled.cross_penalty ==
        doctest::Approx(2.0 * (c + 1.0 / c) - 4.0).epsilon(1e-12));
}

TEST_CASE("eigenvalue distance inequality over random matrix pairs") {
  Rng rng(58);
  int checked = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 3000; ++trial) {
    const int r = rng.uniform_int(2, 4);
    Eigen::MatrixXcd h1 = random_pd(rng, r), h2 = random_pd(rng, r);
    Eigen::MatrixXcd s1 = randn_matrix(rng, r), s2 = randn_matrix(rng, r);
    s1 = (0.5 * (s1 + s1.adjoint())).eval();
    s2 = (0.5 * (s2 + s2.adjoint())).eval();
    Eigen::MatrixXcd t1 = h1.inverse() * s1, t2 = h2.inverse() * s2;

    auto l1 = selfadjoint_spectrum(t1, h1);
    auto l2 = selfadjoint_spectrum(t2, h2);
    double lhs = 0.0;
    for (int j = 0; j < r; ++j) {
      const double d = l2[static_cast<std::size_t>(j)] - l1[static_cast<std::size_t>(j)];
      lhs += d * d;
    }
    const double rhs = sigma_condition(h1, h2) * endo_dist2(t1, t2, h1);
    if (rhs <= 1e-12) continue;
    worst = std::max(worst, lhs / rhs);
    ++checked;
  }
  CHECK(checked > 2900);
  CHECK(worst <= 1.0 + 1e-12);
}
