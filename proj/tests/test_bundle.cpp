#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "hymlab/bundle.hpp"
#include "hymlab/random_fields.hpp"

using namespace hymlab;

namespace {

constexpr double kPi = std::numbers::pi;

Plane plane_wave(const Grid& g, const std::array<int, 4>& m) {
  Plane u = make_plane(g);
  for (std::size_t p = 0; p < g.npoints; ++p) {
    const auto idx = g.unflatten(p);
    double phase = 0.0;
    for (int a = 0; a < g.naxes; ++a) phase += m[a] * g.coord(idx[a]);
    u[p] = std::polar(1.0, 2.0 * kPi * phase);
  }
  return u;
}

Plane real_mode(const Grid& g, const std::array<int, 4>& m, double amp, double shift) {
  Plane u = plane_wave(g, m);
  for (auto& v : u) v = amp * std::cos(std::arg(v) + shift);
  return u;
}

double sup_entry_diff(const EndField& a, const EndField& b) {
  EndField d = add(a, b, 1.0, -1.0);
  return sup_frobenius(d);
}

// Hermitian positive-definite h = Id + band-limited Hermitian perturbation.
EndField random_metric(const Grid& g, const BlockMask& mask, Rng& rng, int band,
                       double amp) {
  EndField h = EndField::identity(g, mask);
  for (const auto& [o, s] : mask.blocks)
    for (int j = o; j < o + s; ++j) {
      Plane d = band_limited_real(g, rng, band, amp);
      for (std::size_t p = 0; p < g.npoints; ++p) h.at(j, j)[p] += d[p];
      for (int k = j + 1; k < o + s; ++k) {
        Plane re = band_limited_real(g, rng, band, 0.5 * amp);
        Plane im = band_limited_real(g, rng, band, 0.5 * amp);
        for (std::size_t p = 0; p < g.npoints; ++p) {
          const cplx v = re[p] + cplx{0.0, 1.0} * im[p];
          h.at(j, k)[p] = v;
          h.at(k, j)[p] = std::conj(v);
        }
      }
    }
  return h;
}

// Mean curvature restricted to the scalar case: -Lambda i del dbar u.
Plane scalar_theta_shift(const HermitianBase& base, const Plane& u) {
  const int n = base.grid.dim_c;
  std::vector<Plane> hess(static_cast<std::size_t>(n) * n);
  Plane du = make_plane(base.grid);
  for (int a = 0; a < n; ++a) {
    base.fft->derivative(u, du, a, Deriv::Z);
    for (int b = 0; b < n; ++b) {
      Plane d2 = make_plane(base.grid);
      base.fft->derivative(du, d2, b, Deriv::Zbar);
      hess[static_cast<std::size_t>(a) * n + b] = std::move(d2);
    }
  }
  Plane th = contract11(base, hess);
  for (auto& v : th) v = -v;
  return th;
}

}  // namespace

TEST_CASE("twist data carries integer flux around the boundary corner") {
  TwistData tw{{1, -1, 0, 3}};
  for (int j = 0; j < 4; ++j)
    for (double x : {0.0, 0.3, 0.9}) {
      const double e = tw.corner_exponent(j, x);
      CHECK(std::abs(e / (2.0 * kPi) + tw.flux[j]) < 1e-12);
      CHECK(std::abs(std::exp(cplx{0.0, 1.0} * e) - 1.0) < 1e-12);
    }
  CHECK(tw.boundary_phase(3, 0.5) == doctest::Approx(-3.0 * kPi).epsilon(1e-14));
}

TEST_CASE("split bundle construction fixes slope constant and block support") {
  auto base = make_flat_torus(1, 32);

  auto s = make_split_bundle(base, {1, -1});
  CHECK(s->rank == 2);
  CHECK(s->degree_sum == 0);
  CHECK(s->lambda == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(s->mask.blocks.size() == 2);
  CHECK(s->mask.allows(0, 0));
  CHECK(!s->mask.allows(0, 1));

  auto s4 = make_split_bundle(base, {2, 1, 1, 0});
  CHECK(s4->lambda == doctest::Approx(kPi).epsilon(1e-13));
  CHECK(s4->mask.blocks.size() == 3);
  CHECK(s4->mask.allows(1, 2));
  CHECK(s4->mask.allows(2, 1));
  CHECK(!s4->mask.allows(0, 1));
  CHECK(!s4->mask.allows(3, 1));

  auto s1 = make_split_bundle(base, {3});
  CHECK(s1->lambda == doctest::Approx(3.0 * kPi).epsilon(1e-13));

  auto s0 = make_split_bundle(base, {0, 0});
  CHECK(s0->mask.is_full());
}

TEST_CASE("split bundle rejections") {
  auto base = make_flat_torus(1, 32);
  CHECK_THROWS_AS(make_split_bundle(base, {-1, 1}), ValidationError);
  CHECK_THROWS_AS(make_split_bundle(base, {}), ValidationError);
  CHECK_THROWS_AS(make_split_bundle(base, std::vector<int>(9, 0)), ValidationError);
  auto base2 = make_flat_torus(2, 16);
  CHECK_THROWS_AS(make_split_bundle(base2, {1, -1}), ValidationError);
  CHECK_NOTHROW(make_split_bundle(base2, {0, 0}));
}

TEST_CASE("background metric has the constant slope mean curvature") {
  auto base = make_flat_torus(1, 32);
  auto spec = make_split_bundle(base, {1, -1});
  MetricField h = MetricField::background(*spec);

  auto mc = mean_curvature(*spec, h.m);
  CHECK(mc.herm_defect < 1e-11);
  double worst = 0.0;
  for (std::size_t p = 0; p < base->grid.npoints; ++p) {
    worst = std::max(worst, std::abs(mc.theta.at(0, 0)[p] - kPi));
    worst = std::max(worst, std::abs(mc.theta.at(1, 1)[p] + kPi));
  }
  CHECK(worst < 1e-10);

  auto triv = make_split_bundle(base, {0});
  auto mc0 = mean_curvature(*triv, MetricField::background(*triv).m);
  CHECK(sup_frobenius(mc0.theta) < 1e-11);
}

TEST_CASE("metric field validation") {
  auto base = make_flat_torus(1, 16);
  auto spec = make_split_bundle(base, {1, -1});
  auto triv2 = make_split_bundle(base, {0, 0});
  const Grid& g = base->grid;

  EndField ok = EndField::identity(g, BlockMask::full(2));
  CHECK_NOTHROW(MetricField::make(*spec, ok));
  MetricField adopted = MetricField::make(*spec, ok);
  CHECK(adopted.m.mask == spec->mask);

  EndField offmask = EndField::identity(g, BlockMask::full(2));
  for (auto& v : offmask.at(0, 1)) v = 0.1;
  for (auto& v : offmask.at(1, 0)) v = 0.1;
  CHECK_THROWS_WITH_AS(MetricField::make(*spec, offmask),
                       doctest::Contains("not representable"), ValidationError);
  CHECK_NOTHROW(MetricField::make(*triv2, offmask));

  EndField nonherm = EndField::identity(g, BlockMask::full(2));
  for (auto& v : nonherm.at(0, 1)) v = 0.1;
  for (auto& v : nonherm.at(1, 0)) v = 0.3;
  CHECK_THROWS_AS(MetricField::make(*triv2, nonherm), ValidationError);

  EndField indef = EndField::identity(g, BlockMask::full(2));
  for (auto& v : indef.at(1, 1)) v = -0.5;
  CHECK_THROWS_AS(MetricField::make(*triv2, indef), ValidationError);
  EndField sing = EndField::identity(g, BlockMask::full(2));
  for (auto& v : sing.at(1, 1)) v = 0.0;
  CHECK_THROWS_AS(MetricField::make(*triv2, sing), ValidationError);

  EndField wrong = EndField::identity(Grid::create(1, 32), BlockMask::full(2));
  CHECK_THROWS_AS(MetricField::make(*spec, wrong), ValidationError);
}

TEST_CASE("deform validations") {
  auto base = make_flat_torus(1, 16);
  auto spec = make_split_bundle(base, {0, 0});
  auto split = make_split_bundle(base, {1, -1});
  const Grid& g = base->grid;

  auto upper = [&](cplx c) {
    EndForm1 beta;
    beta.comp.push_back(EndField::zero(g, BlockMask::full(2)));
    for (auto& v : beta.comp[0].at(0, 1)) v = c;
    return beta;
  };

  EndForm1 twocomp;
  twocomp.comp.assign(2, EndField::zero(g, BlockMask::full(2)));
  CHECK_THROWS_AS(deform(spec, twocomp), ValidationError);

  EndForm1 lower;
  lower.comp.push_back(EndField::zero(g, BlockMask::full(2)));
  for (auto& v : lower.comp[0].at(1, 0)) v = 0.2;
  CHECK_THROWS_WITH_AS(deform(spec, lower), doctest::Contains("strictly upper"),
                       ValidationError);

  EndForm1 diag;
  diag.comp.push_back(EndField::zero(g, BlockMask::full(2)));
  for (auto& v : diag.comp[0].at(1, 1)) v = 0.2;
  CHECK_THROWS_AS(deform(spec, diag), ValidationError);

  CHECK_THROWS_WITH_AS(deform(split, upper(0.2)),
                       doctest::Contains("equal-degree"), ValidationError);

  auto once = deform(spec, upper(0.2));
  CHECK(once->has_beta);
  CHECK_THROWS_AS(deform(once, upper(0.1)), ValidationError);

  auto same = deform(spec, upper(0.0));
  CHECK(!same->has_beta);
  CHECK(sup_entry_diff(same->f_background.at(0, 0), spec->f_background.at(0, 0)) == 0.0);
}

TEST_CASE("deform integrability residual on the surface base") {
  auto base = make_flat_torus(2, 16);
  auto spec = make_split_bundle(base, {0, 0});
  const Grid& g = base->grid;

  EndForm1 valid;
  valid.comp.assign(2, EndField::zero(g, BlockMask::full(2)));
  for (auto& v : valid.comp[0].at(0, 1)) v = 0.1;
  CHECK_NOTHROW(deform(spec, valid));

  // B_1 varying along the first complex axis makes dbar beta nonzero
  EndForm1 bad;
  bad.comp.assign(2, EndField::zero(g, BlockMask::full(2)));
  bad.comp[1].at(0, 1) = real_mode(g, {1, 0, 0, 0}, 0.1, 0.0);
  CHECK_THROWS_WITH_AS(deform(spec, bad), doctest::Contains("integrability"),
                       ValidationError);
}

TEST_CASE("deformed background curvature matches the rank-two closed form") {
  auto base = make_flat_torus(1, 32);
  auto spec0 = make_split_bundle(base, {0, 0});
  const Grid& g = base->grid;

  // constant beta: theta = |c|^2 diag(1,-1)
  const cplx c{0.3, 0.1};
  EndForm1 bconst;
  bconst.comp.push_back(EndField::zero(g, BlockMask::full(2)));
  for (auto& v : bconst.comp[0].at(0, 1)) v = c;
  auto dc = deform(spec0, bconst);
  auto mc = mean_curvature(*dc, MetricField::background(*dc).m);
  CHECK(mc.herm_defect < 1e-11);
  const double c2 = std::norm(c);
  double worst = 0.0;
  for (std::size_t p = 0; p < g.npoints; ++p) {
    worst = std::max(worst, std::abs(mc.theta.at(0, 0)[p] - c2));
    worst = std::max(worst, std::abs(mc.theta.at(1, 1)[p] + c2));
    worst = std::max(worst, std::abs(mc.theta.at(0, 1)[p]));
  }
  CHECK(worst < 1e-11);

  // single-mode beta b(z): theta = [[|b|^2, db/dz], [conj(db/dz), -|b|^2]]
  const int m = 2, k = -1;
  EndForm1 bmode;
  bmode.comp.push_back(EndField::zero(g, BlockMask::full(2)));
  Plane b = plane_wave(g, {m, k, 0, 0});
  for (auto& v : b) v *= c;
  bmode.comp[0].at(0, 1) = b;
  auto dm = deform(spec0, bmode);
  auto mcm = mean_curvature(*dm, MetricField::background(*dm).m);
  CHECK(mcm.herm_defect < 1e-10);
  const cplx dz = kPi * cplx{static_cast<double>(k), static_cast<double>(m)};
  worst = 0.0;
  for (std::size_t p = 0; p < g.npoints; ++p) {
    const double bb = std::norm(b[p]);
    worst = std::max(worst, std::abs(mcm.theta.at(0, 0)[p] - bb));
    worst = std::max(worst, std::abs(mcm.theta.at(1, 1)[p] + bb));
    worst = std::max(worst, std::abs(mcm.theta.at(0, 1)[p] - dz * b[p]));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("conformal line bundle curvature matches the scalar closed form") {
  auto base = make_flat_torus(1, 32);
  const Grid& g = base->grid;

  for (int d : {0, 2}) {
    auto spec = make_split_bundle(base, {d});
    const double bg = 2.0 * kPi * d / base->volume;

    for (std::array<int, 2> mk : {std::array<int, 2>{2, 0}, {2, -1}}) {
      Plane phi = real_mode(g, {mk[0], mk[1], 0, 0}, 0.1, 0.7);
      EndField h = EndField::identity(g, spec->mask);
      for (std::size_t p = 0; p < g.npoints; ++p) h.at(0, 0)[p] = std::exp(phi[p]);
      MetricField H = MetricField::make(*spec, h);

      const double rate = kPi * kPi * (mk[0] * mk[0] + mk[1] * mk[1]);
      auto f = chern_curvature(*spec, H.m);
      auto mc = mean_curvature(*spec, H.m);
      double worst_f = 0.0, worst_t = 0.0;
      for (std::size_t p = 0; p < g.npoints; ++p) {
        const cplx want = bg + rate * phi[p];
        worst_f = std::max(worst_f, std::abs(f.at(0, 0).at(0, 0)[p] - want));
        worst_t = std::max(worst_t, std::abs(mc.theta.at(0, 0)[p] - want));
      }
      CHECK(worst_f < 1e-10);
      CHECK(worst_t < 1e-10);
    }
  }
}

TEST_CASE("curvature factorizes over direct sums") {
  auto base = make_flat_torus(1, 32);
  const Grid& g = base->grid;
  Rng rng(2024);

  auto spec = make_split_bundle(base, {1, 0, 0});
  Plane phi = band_limited_real(g, rng, 2, 0.15);
  EndField h = random_metric(g, spec->mask, rng, 2, 0.15);
  for (std::size_t p = 0; p < g.npoints; ++p) h.at(0, 0)[p] = std::exp(phi[p]);
  auto f = chern_curvature(*spec, MetricField::make(*spec, h).m);

  auto line = make_split_bundle(base, {1});
  EndField hl = EndField::zero(g, line->mask);
  hl.at(0, 0) = h.at(0, 0);
  auto fl = chern_curvature(*line, hl);

  auto pair = make_split_bundle(base, {0, 0});
  EndField hp = EndField::zero(g, pair->mask);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) hp.at(j, k) = h.at(1 + j, 1 + k);
  auto fp = chern_curvature(*pair, hp);

  double worst = 0.0;
  for (std::size_t p = 0; p < g.npoints; ++p) {
    worst = std::max(worst, std::abs(f.at(0, 0).at(0, 0)[p] - fl.at(0, 0).at(0, 0)[p]));
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        worst = std::max(worst, std::abs(f.at(0, 0).at(1 + j, 1 + k)[p] -
                                         fp.at(0, 0).at(j, k)[p]));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("curvature is natural under constant gauge transformations") {
  auto base = make_flat_torus(1, 64);
  const Grid& g = base->grid;
  Rng rng(7);

  auto conjugated_matches = [&](const BundleSpec& spec, const EndField& h,
                               const Eigen::Matrix2cd& gm) {
    Eigen::Matrix2cd gi = gm.inverse();
    EndField hg = EndField::zero(g, BlockMask::full(2));
    for (std::size_t p = 0; p < g.npoints; ++p)
      hg.set_point(p, gm.adjoint() * h.point(p) * gm);
    auto f = chern_curvature(spec, h);
    auto fg = chern_curvature(spec, MetricField::make(spec, hg).m);
    double worst = 0.0;
    for (std::size_t p = 0; p < g.npoints; ++p) {
      Eigen::Matrix2cd want = gi * f.at(0, 0).point(p) * gm;
      worst = std::max(worst, (fg.at(0, 0).point(p) - want).norm());
    }
    return worst;
  };

  auto spec = make_split_bundle(base, {0, 0});
  EndField h = random_metric(g, spec->mask, rng, 2, 0.2);
  Eigen::Matrix2cd gm;
  gm << 2.0, cplx{0.5, 0.3}, 0.0, 1.5;
  CHECK(conjugated_matches(*spec, h, gm) < 1e-8);

  // deformed structure: the gauge matrix must commute with beta
  EndForm1 beta;
  beta.comp.push_back(EndField::zero(g, BlockMask::full(2)));
  beta.comp[0].at(0, 1) = real_mode(g, {1, 0, 0, 0}, 0.2, 0.3);
  auto dspec = deform(spec, beta);
  Eigen::Matrix2cd gu;
  gu << 1.0, cplx{0.4, -0.2}, 0.0, 1.0;
  CHECK(conjugated_matches(*dspec, h, gu) < 1e-8);
}

TEST_CASE("mean curvature is self-adjoint with respect to the metric") {
  Rng rng(41);

  auto base = make_flat_torus(1, 64);
  auto spec = make_split_bundle(base, {0, 0});
  EndField h = random_metric(base->grid, spec->mask, rng, 2, 0.2);
  CHECK(mean_curvature(*spec, h).herm_defect < 1e-8);

  EndForm1 beta;
  beta.comp.push_back(EndField::zero(base->grid, BlockMask::full(2)));
  beta.comp[0].at(0, 1) = real_mode(base->grid, {1, 0, 0, 0}, 0.2, 0.3);
  CHECK(mean_curvature(*deform(spec, beta), h).herm_defect < 1e-8);

  auto gbase = make_gauduchon_torus(16, 0.1);
  auto gspec = make_split_bundle(gbase, {0, 0});
  EndField gh = random_metric(gbase->grid, gspec->mask, rng, 1, 0.08);
  CHECK(mean_curvature(*gspec, gh).herm_defect < 1e-8);
}

TEST_CASE("trace of the mean curvature reduces to the determinant scalar") {
  Rng rng(99);

  auto check_tr = [](const BasePtr& base, const SpecPtr& spec, const EndField& h) {
    auto mc = mean_curvature(*spec, h);
    auto mc0 = mean_curvature(*spec, EndField::identity(base->grid, spec->mask));
    Plane tr_h = trace(mc.theta);
    Plane tr_k = trace(mc0.theta);
    Plane logdet = det(h);
    for (auto& v : logdet) v = std::log(v.real());
    Plane want = scalar_theta_shift(*base, logdet);
    double worst = 0.0;
    for (std::size_t p = 0; p < h.grid.npoints; ++p)
      worst = std::max(worst, std::abs(tr_h[p] - tr_k[p] - want[p]));
    return worst;
  };

  auto base = make_flat_torus(1, 64);
  auto spec = make_split_bundle(base, {1, 1});
  EndField h = random_metric(base->grid, spec->mask, rng, 2, 0.2);
  CHECK(check_tr(base, spec, h) < 1e-8);

  auto gbase = make_gauduchon_torus(16, 0.1);
  auto gspec = make_split_bundle(gbase, {0, 0});
  EndField gh = random_metric(gbase->grid, gspec->mask, rng, 1, 0.08);
  CHECK(check_tr(gbase, gspec, gh) < 1e-8);
}

TEST_CASE("curvature reports breakdown on ill-conditioned metrics") {
  auto base = make_flat_torus(1, 16);
  auto spec = make_split_bundle(base, {0, 0});
  EndField h = EndField::identity(base->grid, spec->mask);
  for (auto& v : h.at(0, 0)) v = 1e13;
  CHECK_NOTHROW(MetricField::make(*spec, h));
  CHECK_THROWS_AS(chern_curvature(*spec, h), NumericalError);
}

TEST_CASE("covariant derivative pair is adjoint-compatible") {
  auto base = make_flat_torus(1, 32);
  auto spec0 = make_split_bundle(base, {0, 0});
  EndForm1 beta;
  beta.comp.push_back(EndField::zero(base->grid, BlockMask::full(2)));
  beta.comp[0].at(0, 1) = real_mode(base->grid, {1, 0, 0, 0}, 0.3, 0.1);
  auto spec = deform(spec0, beta);

  Rng rng(5);
  EndField s = EndField::zero(base->grid, BlockMask::full(2));
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      s.at(j, k) = band_limited_complex(base->grid, rng, 2, 0.7);

  EndForm1 db = dbar_E(*spec, s);
  EndForm1 dk = del_K(*spec, adjoint(s));
  CHECK(sup_entry_diff(adjoint(db.comp[0]), dk.comp[0]) < 1e-12);
}

TEST_CASE("dbar energy density of a plane wave is its symbol norm") {
  auto base = make_flat_torus(1, 32);
  auto spec = make_split_bundle(base, {0});
  EndField s = EndField::zero(base->grid, spec->mask);
  s.at(0, 0) = plane_wave(base->grid, {3, -2, 0, 0});
  EndField id = EndField::identity(base->grid, spec->mask);

  Plane e = dbar_E_norm2_plane(*spec, s, id, id);
  const double want = kPi * kPi * 13.0;
  double worst = 0.0;
  for (const auto& v : e) worst = std::max(worst, std::abs(v - want));
  CHECK(worst < 1e-9);
}
