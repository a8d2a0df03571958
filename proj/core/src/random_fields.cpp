#include "hymlab/random_fields.hpp"

#include <cmath>
#include <numbers>

namespace hymlab {

namespace {

// Integer mode vectors with 0 < |m|_inf <= band, one representative per
// antipodal pair (the lexicographically positive one).
std::vector<std::array<int, 4>> half_modes(int naxes, int band) {
  std::vector<std::array<int, 4>> out;
  std::array<int, 4> m{0, 0, 0, 0};
  const int w = 2 * band + 1;
  int total = 1;
  for (int a = 0; a < naxes; ++a) total *= w;
  for (int t = 0; t < total; ++t) {
    int r = t;
    for (int a = naxes - 1; a >= 0; --a) {
      m[a] = r % w - band;
      r /= w;
    }
    // keep m if the first nonzero entry is positive
    int lead = 0;
    for (int a = 0; a < naxes; ++a) {
      if (m[a] != 0) {
        lead = m[a];
        break;
      }
    }
    if (lead > 0) out.push_back(m);
  }
  return out;
}

Plane synth(const Grid& g, Rng& rng, int band, double amplitude, bool real_field) {
  Plane u = make_plane(g);
  const auto modes = half_modes(g.naxes, band);
  const double twopi = 2.0 * std::numbers::pi;
  std::vector<cplx> tab(static_cast<std::size_t>(g.naxes) * g.n);
  Plane e(g.npoints);
  for (const auto& m : modes) {
    const cplx a = rng.normal_complex();
    const cplx b = real_field ? std::conj(a) : rng.normal_complex();
    for (int ax = 0; ax < g.naxes; ++ax)
      for (int i = 0; i < g.n; ++i)
        tab[static_cast<std::size_t>(ax) * g.n + i] =
            std::polar(1.0, twopi * m[ax] * g.coord(i));
    // e(p) = prod_ax tab[ax][idx_ax], accumulated axis by axis
    std::array<int, 4> idx{0, 0, 0, 0};
    for (std::size_t p = 0; p < g.npoints; ++p) {
      cplx v = tab[static_cast<std::size_t>(idx[0])];
      for (int ax = 1; ax < g.naxes; ++ax)
        v *= tab[static_cast<std::size_t>(ax) * g.n + idx[ax]];
      e[p] = v;
      for (int ax = g.naxes - 1; ax >= 0; --ax) {
        if (++idx[ax] < g.n) break;
        idx[ax] = 0;
      }
    }
    for (std::size_t p = 0; p < g.npoints; ++p)
      u[p] += a * e[p] + b * std::conj(e[p]);
  }
  double sup = 0.0;
  for (const auto& v : u) sup = std::max(sup, std::abs(v));
  if (sup > 0.0) {
    const double s = amplitude / sup;
    for (auto& v : u) v *= s;
  }
  return u;
}

}  // namespace

Plane band_limited_real(const Grid& g, Rng& rng, int band, double amplitude) {
  return synth(g, rng, band, amplitude, true);
}

Plane band_limited_complex(const Grid& g, Rng& rng, int band, double amplitude) {
  return synth(g, rng, band, amplitude, false);
}

}  // namespace hymlab
