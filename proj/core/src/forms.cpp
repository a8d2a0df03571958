#include "hymlab/forms.hpp"

#include <bit>
#include <cmath>

namespace hymlab {

std::vector<unsigned> index_masks(int n, int p) {
  std::vector<unsigned> out;
  for (unsigned m = 0; m < (1u << n); ++m)
    if (std::popcount(m) == p) out.push_back(m);
  return out;
}

int mask_position(int n, int p, unsigned mask) {
  int pos = 0;
  for (unsigned m = 0; m < mask; ++m)
    if (std::popcount(m) == p) ++pos;
  (void)n;
  return pos;
}

int insert_sign(int a, unsigned mask) {
  const unsigned below = mask & ((1u << a) - 1u);
  return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

int merge_sign(unsigned a, unsigned b) {
  // inversions: pairs (i in a, j in b) with j < i
  int inv = 0;
  for (int i = 0; i < 32; ++i)
    if (a & (1u << i)) inv += std::popcount(b & ((1u << i) - 1u));
  return (inv % 2 == 0) ? 1 : -1;
}

FormField FormField::zero(const Grid& g, int p, int q) {
  FormField f;
  f.p = p;
  f.q = q;
  f.grid = g;
  const std::size_t ni = index_masks(g.dim_c, p).size();
  const std::size_t nj = index_masks(g.dim_c, q).size();
  f.comps.assign(ni * nj, make_plane(g));
  return f;
}

Plane& FormField::at(unsigned maskI, unsigned maskJ) {
  const std::size_t nj = index_masks(grid.dim_c, q).size();
  return comps[mask_position(grid.dim_c, p, maskI) * nj +
               mask_position(grid.dim_c, q, maskJ)];
}

const Plane& FormField::at(unsigned maskI, unsigned maskJ) const {
  const std::size_t nj = index_masks(grid.dim_c, q).size();
  return comps[mask_position(grid.dim_c, p, maskI) * nj +
               mask_position(grid.dim_c, q, maskJ)];
}

FormField dbar(const FormField& f, const SpectralEngine& fft) {
  const int n = f.grid.dim_c;
  FormField out = FormField::zero(f.grid, f.p, f.q + 1);
  if (f.q + 1 > n) return out;  // no components
  const int psign = (f.p % 2 == 0) ? 1 : -1;
  Plane d;
  for (unsigned mi : index_masks(n, f.p))
    for (unsigned mj : index_masks(n, f.q)) {
      const Plane& c = f.at(mi, mj);
      for (int b = 0; b < n; ++b) {
        if (mj & (1u << b)) continue;
        fft.derivative(c, d, b, Deriv::Zbar);
        const double s = psign * insert_sign(b, mj);
        Plane& dst = out.at(mi, mj | (1u << b));
        for (std::size_t p = 0; p < d.size(); ++p) dst[p] += s * d[p];
      }
    }
  return out;
}

FormField del(const FormField& f, const SpectralEngine& fft) {
  const int n = f.grid.dim_c;
  FormField out = FormField::zero(f.grid, f.p + 1, f.q);
  if (f.p + 1 > n) return out;
  Plane d;
  for (unsigned mi : index_masks(n, f.p))
    for (unsigned mj : index_masks(n, f.q)) {
      const Plane& c = f.at(mi, mj);
      for (int a = 0; a < n; ++a) {
        if (mi & (1u << a)) continue;
        fft.derivative(c, d, a, Deriv::Z);
        const double s = insert_sign(a, mi);
        Plane& dst = out.at(mi | (1u << a), mj);
        for (std::size_t p = 0; p < d.size(); ++p) dst[p] += s * d[p];
      }
    }
  return out;
}

FormField wedge(const FormField& f, const FormField& g) {
  const int n = f.grid.dim_c;
  FormField out = FormField::zero(f.grid, f.p + g.p, f.q + g.q);
  if (f.p + g.p > n || f.q + g.q > n) return out;
  for (unsigned mi : index_masks(n, f.p))
    for (unsigned mj : index_masks(n, f.q)) {
      const Plane& a = f.at(mi, mj);
      for (unsigned ni_ : index_masks(n, g.p))
        for (unsigned nj_ : index_masks(n, g.q)) {
          if ((mi & ni_) || (mj & nj_)) continue;
          const Plane& b = g.at(ni_, nj_);
          // move dz^{I'} (g.p factors) left past dzbar^J (f.q factors)
          int s = ((f.q * g.p) % 2 == 0) ? 1 : -1;
          s *= merge_sign(mi, ni_) * merge_sign(mj, nj_);
          Plane& dst = out.at(mi | ni_, mj | nj_);
          for (std::size_t p = 0; p < a.size(); ++p) dst[p] += double(s) * a[p] * b[p];
        }
    }
  return out;
}

FormField omega_form(const HermitianBase& base) {
  const int n = base.grid.dim_c;
  FormField f = FormField::zero(base.grid, 1, 1);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Plane& dst = f.at(1u << j, 1u << k);
      const Plane& src = base.g_at(j, k);
      for (std::size_t p = 0; p < dst.size(); ++p) dst[p] = cplx{0.0, 1.0} * src[p];
    }
  return f;
}

cplx integrate_top(const FormField& f) {
  const int n = f.grid.dim_c;
  if (f.p != n || f.q != n)
    throw ValidationError("integrate_top: expected an (n,n)-form");
  // dz^{1..n} wedge dzbar^{1..n} over d^{2n}x
  const cplx factor = (n == 1) ? cplx{0.0, -2.0} : cplx{4.0, 0.0};
  cplx acc{0.0, 0.0};
  const Plane& c = f.comps[0];
  for (const auto& v : c) acc += v;
  return acc * factor / static_cast<double>(f.grid.npoints);
}

std::vector<Plane> form_to_islots(const FormField& f) {
  const int n = f.grid.dim_c;
  if (f.p != 1 || f.q != 1) throw ValidationError("form_to_islots: expected a (1,1)-form");
  std::vector<Plane> out(static_cast<std::size_t>(n) * n, make_plane(f.grid));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const Plane& c = f.at(1u << j, 1u << k);
      Plane& dst = out[j * n + k];
      for (std::size_t p = 0; p < c.size(); ++p) dst[p] = cplx{0.0, -1.0} * c[p];
    }
  return out;
}

FormField islots_to_form(const Grid& g, const std::vector<Plane>& islots) {
  const int n = g.dim_c;
  FormField f = FormField::zero(g, 1, 1);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Plane& dst = f.at(1u << j, 1u << k);
      const Plane& src = islots[j * n + k];
      for (std::size_t p = 0; p < src.size(); ++p) dst[p] = cplx{0.0, 1.0} * src[p];
    }
  return f;
}

double sup_abs(const FormField& f) {
  double m = 0.0;
  for (const auto& c : f.comps)
    for (const auto& v : c) m = std::max(m, std::abs(v));
  return m;
}

double gauduchon_residual(const HermitianBase& base) {
  if (base.grid.dim_c == 1) return 0.0;
  const FormField w = omega_form(base);
  const FormField ddw = del(dbar(w, *base.fft), *base.fft);
  return sup_abs(ddw);
}

}  // namespace hymlab
