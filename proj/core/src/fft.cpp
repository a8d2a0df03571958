#include "hymlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <numbers>

namespace hymlab {

namespace {
std::mutex planner_mutex;  // FFTW planner is not thread-safe
}

struct SpectralEngine::Plans {
  fftw_plan fwd = nullptr;      // out-of-place
  fftw_plan inv = nullptr;
  fftw_plan fwd_ip = nullptr;   // in-place
  fftw_plan inv_ip = nullptr;

  ~Plans() {
    std::lock_guard<std::mutex> lock(planner_mutex);
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
    if (fwd_ip) fftw_destroy_plan(fwd_ip);
    if (inv_ip) fftw_destroy_plan(inv_ip);
  }
};

SpectralEngine::SpectralEngine(const Grid& g) : grid_(g), plans_(new Plans) {
  const int rank = g.naxes;
  int dims[4] = {g.n, g.n, g.n, g.n};

  Plane a = make_plane(g);
  Plane b = make_plane(g);
  auto* pa = reinterpret_cast<fftw_complex*>(a.data());
  auto* pb = reinterpret_cast<fftw_complex*>(b.data());

  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    // FFTW_UNALIGNED: plans must apply to any std::vector buffer
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    plans_->fwd = fftw_plan_dft(rank, dims, pa, pb, FFTW_FORWARD, flags);
    plans_->inv = fftw_plan_dft(rank, dims, pa, pb, FFTW_BACKWARD, flags);
    plans_->fwd_ip = fftw_plan_dft(rank, dims, pa, pa, FFTW_FORWARD, flags);
    plans_->inv_ip = fftw_plan_dft(rank, dims, pa, pa, FFTW_BACKWARD, flags);
  }
  if (!plans_->fwd || !plans_->inv || !plans_->fwd_ip || !plans_->inv_ip)
    throw Error("fft: plan creation failed");

  const int n = g.n;
  const double pi = std::numbers::pi;
  for (int which = 0; which < 2; ++which) {
    for (int axis = 0; axis < g.dim_c; ++axis) {
      auto& tab = sym_[which][axis];
      tab.assign(static_cast<std::size_t>(n) * n, cplx{0.0, 0.0});
      for (int ix = 0; ix < n; ++ix) {
        const int m = g.mode(ix);
        for (int iy = 0; iy < n; ++iy) {
          const int k = g.mode(iy);
          if (m == -n / 2 || k == -n / 2) continue;  // unpaired Nyquist
          const double re = (which == 0) ? pi * k : -pi * k;
          tab[static_cast<std::size_t>(ix) * n + iy] = cplx{re, pi * m};
        }
      }
    }
  }

  lap_sym_.assign(g.npoints, 0.0);
  for (std::size_t p = 0; p < g.npoints; ++p) {
    auto idx = g.unflatten(p);
    double s = 0.0;
    bool nyq = false;
    for (int a = 0; a < g.naxes; ++a) {
      const int m = g.mode(idx[a]);
      if (m == -n / 2) nyq = true;
      s += pi * pi * m * m;
    }
    lap_sym_[p] = nyq ? 0.0 : s;
  }
}

SpectralEngine::~SpectralEngine() = default;

void SpectralEngine::forward(const Plane& in, Plane& out) const {
  out.resize(in.size());
  fftw_execute_dft(plans_->fwd,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

void SpectralEngine::inverse(const Plane& in, Plane& out) const {
  out.resize(in.size());
  fftw_execute_dft(plans_->inv,
                   reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
  const double scale = 1.0 / static_cast<double>(grid_.npoints);
  for (auto& v : out) v *= scale;
}

void SpectralEngine::forward_inplace(Plane& io) const {
  auto* p = reinterpret_cast<fftw_complex*>(io.data());
  fftw_execute_dft(plans_->fwd_ip, p, p);
}

void SpectralEngine::inverse_inplace(Plane& io) const {
  auto* p = reinterpret_cast<fftw_complex*>(io.data());
  fftw_execute_dft(plans_->inv_ip, p, p);
  const double scale = 1.0 / static_cast<double>(grid_.npoints);
  for (auto& v : io) v *= scale;
}

void SpectralEngine::apply_symbol(Plane& spectrum, int axis, Deriv which) const {
  const int n = grid_.n;
  const auto& tab = sym_[which == Deriv::Z ? 0 : 1][axis];
  // strides of the (x, y) pair of `axis` in the flattened layout
  const std::size_t sx = grid_.stride(2 * axis);
  const std::size_t sy = grid_.stride(2 * axis + 1);
  const std::size_t np = grid_.npoints;
  for (std::size_t p = 0; p < np; ++p) {
    const int ix = static_cast<int>((p / sx) % n);
    const int iy = static_cast<int>((p / sy) % n);
    spectrum[p] *= tab[static_cast<std::size_t>(ix) * n + iy];
  }
}

void SpectralEngine::derivative(const Plane& in, Plane& out, int axis, Deriv which) const {
  forward(in, out);
  apply_symbol(out, axis, which);
  inverse_inplace(out);
}

std::shared_ptr<const SpectralEngine> spectral_engine(const Grid& g) {
  static std::mutex cache_mutex;
  static std::map<std::pair<int, int>, std::weak_ptr<const SpectralEngine>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_pair(g.dim_c, g.n);
  if (auto held = cache[key].lock()) return held;
  auto made = std::make_shared<const SpectralEngine>(g);
  cache[key] = made;
  return made;
}

}  // namespace hymlab
