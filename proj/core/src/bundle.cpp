#include "hymlab/bundle.hpp"

#include <cmath>

namespace hymlab {

namespace {

// d/dz_a or d/dzbar_a applied to every in-mask entry plane.
EndField entrywise_derivative(const SpectralEngine& fft, const EndField& f, int axis,
                              Deriv which) {
  EndField out = EndField::zero(f.grid, f.mask);
  for (const auto& [o, s] : f.mask.blocks)
    for (int j = o; j < o + s; ++j)
      for (int k = o; k < o + s; ++k)
        fft.derivative(f.at(j, k), out.at(j, k), axis, which);
  return out;
}

// c <- c + ca*(a*b - b*a)
void add_commutator(EndField& c, const EndField& a, const EndField& b, cplx ca) {
  EndField ab = mul(a, b);
  EndField ba = mul(b, a);
  add_in_place(c, ab, ca);
  add_in_place(c, ba, -ca);
}

bool entry_is_zero(const Plane& p) {
  for (const auto& v : p)
    if (v != cplx{0.0, 0.0}) return false;
  return true;
}

}  // namespace

MetricField MetricField::make(const BundleSpec& spec, EndField values, MetricMode mode) {
  if (values.rank != spec.rank || values.grid != spec.base->grid)
    throw ValidationError("metric: shape does not match the bundle");
  if (!(values.mask == spec.mask)) {
    // accept denser-than-needed input only if it is zero outside the mask
    for (int j = 0; j < values.rank; ++j)
      for (int k = 0; k < values.rank; ++k)
        if (!spec.mask.allows(j, k) && !entry_is_zero(values.at(j, k)))
          throw ValidationError(
              "metric: entry (" + std::to_string(j) + "," + std::to_string(k) +
              ") couples factors of different degree; such components are not "
              "representable on the periodic grid");
    values.mask = spec.mask;
  }
  const double hd = hermiticity_defect(values);
  if (hd >= 1e-12)
    throw ValidationError("metric: Hermiticity defect " + std::to_string(hd) +
                          " exceeds 1e-12");
  std::size_t where = 0;
  const double mineig = min_eigenvalue(values, &where);
  if (mineig <= 0.0)
    throw ValidationError("metric: not positive definite, smallest eigenvalue " +
                          std::to_string(mineig) + " at grid point " +
                          std::to_string(where));
  MetricField mf;
  mf.mode = mode;
  mf.m = std::move(values);
  return mf;
}

MetricField MetricField::background(const BundleSpec& spec) {
  MetricField mf;
  mf.mode = MetricMode::Relative;
  mf.m = EndField::identity(spec.base->grid, spec.mask);
  return mf;
}

SpecPtr make_split_bundle(const BasePtr& base, const std::vector<int>& degrees) {
  if (degrees.empty() || degrees.size() > 8)
    throw ValidationError("bundle: rank must be between 1 and 8");
  for (std::size_t j = 1; j < degrees.size(); ++j)
    if (degrees[j] > degrees[j - 1])
      throw ValidationError("bundle: degrees must be nonincreasing, got d[" +
                            std::to_string(j - 1) + "]=" + std::to_string(degrees[j - 1]) +
                            " < d[" + std::to_string(j) + "]=" + std::to_string(degrees[j]));
  if (base->grid.dim_c == 2)
    for (int d : degrees)
      if (d != 0)
        throw ValidationError(
            "bundle: nonzero degrees are only supported on the dim-1 torus");

  auto spec = std::make_shared<BundleSpec>();
  spec->base = base;
  spec->rank = static_cast<int>(degrees.size());
  spec->degrees = degrees;
  spec->mask = BlockMask::from_degrees(degrees);
  spec->twist.flux = degrees;
  spec->degree_sum = 0;
  for (int d : degrees) spec->degree_sum += d;
  spec->lambda = 2.0 * std::numbers::pi * spec->degree_sum /
                 (spec->rank * base->volume);

  spec->f_background = EndForm11::zero(base->grid, spec->mask);
  if (base->grid.dim_c == 1) {
    // constant-curvature background: iLambda F_K = 2 pi d_j / Vol per factor
    EndField& slot = spec->f_background.at(0, 0);
    for (int j = 0; j < spec->rank; ++j) {
      const double c = 2.0 * std::numbers::pi * degrees[j] / base->volume;
      for (auto& v : slot.at(j, j)) v = c;
    }
  }
  return spec;
}

SpecPtr deform(const SpecPtr& parent, const EndForm1& beta) {
  const BundleSpec& s = *parent;
  if (s.has_beta)
    throw ValidationError("deform: spec already carries a beta deformation");
  const Grid& g = s.base->grid;
  if (static_cast<int>(beta.comp.size()) != g.dim_c)
    throw ValidationError("deform: beta must have one (0,1) component per complex axis");
  for (const auto& c : beta.comp)
    if (c.rank != s.rank || c.grid != g)
      throw ValidationError("deform: beta shape does not match the bundle");

  bool all_zero = true;
  for (const auto& c : beta.comp)
    for (int j = 0; j < s.rank; ++j)
      for (int k = 0; k < s.rank; ++k) {
        if (entry_is_zero(c.at(j, k))) continue;
        all_zero = false;
        if (j >= k)
          throw ValidationError("deform: beta must be strictly upper triangular in "
                                "the degree-ordered frame; entry (" +
                                std::to_string(j) + "," + std::to_string(k) +
                                ") is nonzero");
        if (s.degrees[j] != s.degrees[k])
          throw ValidationError(
              "deform: beta entry (" + std::to_string(j) + "," + std::to_string(k) +
              ") couples degrees " + std::to_string(s.degrees[j]) + " and " +
              std::to_string(s.degrees[k]) +
              "; cross-degree (0,1) components are not representable as periodic "
              "planes, use equal-degree factors (e.g. degrees [0,0])");
      }

  auto out = std::make_shared<BundleSpec>(s);
  if (all_zero) return out;

  // strictly-upper in-mask beta lives inside equal-degree blocks
  out->has_beta = true;
  out->beta.comp.clear();
  for (const auto& c : beta.comp) {
    EndField cc = EndField::zero(g, s.mask);
    for (const auto& [o, sz] : s.mask.blocks)
      for (int j = o; j < o + sz; ++j)
        for (int k = o; k < o + sz; ++k) cc.at(j, k) = c.at(j, k);
    out->beta.comp.push_back(std::move(cc));
  }
  const auto& fft = *s.base->fft;

  // integrability: dbar beta + beta ^ beta = 0 as a (0,2)-form
  if (g.dim_c == 2) {
    EndField d01 = entrywise_derivative(fft, out->beta.comp[1], 0, Deriv::Zbar);
    EndField d10 = entrywise_derivative(fft, out->beta.comp[0], 1, Deriv::Zbar);
    EndField resid = add(d01, d10, 1.0, -1.0);  // d_{1bar}B_2 - d_{2bar}B_1
    add_commutator(resid, out->beta.comp[0], out->beta.comp[1], 1.0);
    const double r = sup_frobenius(resid);
    if (r >= 1e-10)
      throw ValidationError("deform: integrability residual " + std::to_string(r) +
                            " exceeds 1e-10");
  }

  // background curvature of (dbar_E + beta, K):
  // islot[a][b] += d_a B_b + d_bbar (B_a^dagger) + B_b B_a^dagger - B_a^dagger B_b
  for (int a = 0; a < g.dim_c; ++a) {
    EndField badj = adjoint(out->beta.comp[a]);
    for (int b = 0; b < g.dim_c; ++b) {
      EndField& slot = out->f_background.at(a, b);
      EndField t1 = entrywise_derivative(fft, out->beta.comp[b], a, Deriv::Z);
      add_in_place(slot, t1, 1.0);
      EndField t2 = entrywise_derivative(fft, badj, b, Deriv::Zbar);
      add_in_place(slot, t2, 1.0);
      EndField t3 = mul(out->beta.comp[b], badj);
      add_in_place(slot, t3, 1.0);
      EndField t4 = mul(badj, out->beta.comp[b]);
      add_in_place(slot, t4, -1.0);
    }
  }
  return out;
}

EndForm1 dbar_E(const BundleSpec& spec, const EndField& s) {
  const auto& fft = *spec.base->fft;
  EndForm1 out;
  for (int b = 0; b < spec.base->grid.dim_c; ++b) {
    EndField d = entrywise_derivative(fft, s, b, Deriv::Zbar);
    if (spec.has_beta) add_commutator(d, spec.beta.comp[b], s, 1.0);
    out.comp.push_back(std::move(d));
  }
  return out;
}

EndForm1 del_K(const BundleSpec& spec, const EndField& s) {
  const auto& fft = *spec.base->fft;
  EndForm1 out;
  for (int a = 0; a < spec.base->grid.dim_c; ++a) {
    EndField d = entrywise_derivative(fft, s, a, Deriv::Z);
    if (spec.has_beta) {
      EndField badj = adjoint(spec.beta.comp[a]);
      add_commutator(d, badj, s, -1.0);
    }
    out.comp.push_back(std::move(d));
  }
  return out;
}

EndForm11 chern_curvature(const BundleSpec& spec, const EndField& h) {
  const Grid& g = spec.base->grid;
  const auto& fft = *spec.base->fft;
  EndField hinv = inverse(h);  // throws on breakdown
  EndForm1 dkh = del_K(spec, h);

  EndForm11 f = spec.f_background;
  for (int a = 0; a < g.dim_c; ++a) {
    EndField A = mul(hinv, dkh.comp[a]);  // h^{-1} del_K h, (1,0) component a
    for (int b = 0; b < g.dim_c; ++b) {
      // islot[a][b] -= d_bbar A + [B_b, A]
      EndField d = entrywise_derivative(fft, A, b, Deriv::Zbar);
      if (spec.has_beta) add_commutator(d, spec.beta.comp[b], A, 1.0);
      add_in_place(f.at(a, b), d, -1.0);
    }
  }
  return f;
}

MeanCurvature mean_curvature(const BundleSpec& spec, const EndField& h) {
  const Grid& g = spec.base->grid;
  const int n = g.dim_c;
  EndForm11 f = chern_curvature(spec, h);

  // theta = sum ginv[b][a] * islot[a][b], pointwise matrix
  EndField theta = EndField::zero(g, spec.mask);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Plane& gi = spec.base->ginv_at(b, a);
      const EndField& slot = f.at(a, b);
      for (const auto& [o, s] : spec.mask.blocks)
        for (int j = o; j < o + s; ++j)
          for (int k = o; k < o + s; ++k) {
            Plane& dst = theta.at(j, k);
            const Plane& src = slot.at(j, k);
            for (std::size_t p = 0; p < dst.size(); ++p) dst[p] += gi[p] * src[p];
          }
    }

  // H-adjoint defect: theta^{*H} = h^{-1} theta^dagger h
  EndField hinv = inverse(h);
  EndField star = mul(mul(hinv, adjoint(theta)), h);
  EndField defect = add(theta, star, 1.0, -1.0);
  const double dsup = sup_frobenius(defect);

  MeanCurvature out;
  out.theta = add(theta, star, 0.5, 0.5);
  out.herm_defect = dsup;
  out.f = std::move(f);
  return out;
}

Plane dbar_E_norm2_plane(const BundleSpec& spec, const EndField& s, const EndField& h,
                         const EndField& hinv) {
  const int n = spec.base->grid.dim_c;
  EndForm1 ds = dbar_E(spec, s);
  Plane acc = make_plane(spec.base->grid);
  for (int b = 0; b < n; ++b)
    for (int c = 0; c < n; ++c) {
      // <dzbar^b, dzbar^c> = ginv[b][c]
      const Plane& gi = spec.base->ginv_at(b, c);
      Plane ip = hs_inner_plane(ds.comp[b], ds.comp[c], hinv, h);
      for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += gi[p] * ip[p];
    }
  return acc;
}

}  // namespace hymlab
