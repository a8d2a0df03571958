#include "hymlab/endfield.hpp"

#include <cmath>
#include <numbers>

namespace hymlab {

namespace {

using SmallMat =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 8, 8>;

void require_same_shape(const EndField& a, const EndField& b, const char* op) {
  if (a.grid != b.grid || a.rank != b.rank || !(a.mask == b.mask))
    throw ValidationError(std::string(op) + ": operands have different shape or mask");
}

SmallMat gather_block(const EndField& f, int o, int s, std::size_t p) {
  SmallMat m(s, s);
  for (int j = 0; j < s; ++j)
    for (int k = 0; k < s; ++k) m(j, k) = f.at(o + j, o + k)[p];
  return m;
}

void scatter_block(EndField& f, int o, int s, std::size_t p, const SmallMat& m) {
  for (int j = 0; j < s; ++j)
    for (int k = 0; k < s; ++k) f.at(o + j, o + k)[p] = m(j, k);
}

}  // namespace

EndField mul(const EndField& a, const EndField& b) {
  require_same_shape(a, b, "mul");
  EndField c = EndField::zero(a.grid, a.mask);
  const std::size_t np = a.grid.npoints;
  for (const auto& [o, s] : a.mask.blocks)
    for (int j = o; j < o + s; ++j)
      for (int k = o; k < o + s; ++k) {
        Plane& dst = c.at(j, k);
        for (int l = o; l < o + s; ++l) {
          const Plane& pa = a.at(j, l);
          const Plane& pb = b.at(l, k);
          for (std::size_t p = 0; p < np; ++p) dst[p] += pa[p] * pb[p];
        }
      }
  return c;
}

EndField add(const EndField& a, const EndField& b, cplx ca, cplx cb) {
  require_same_shape(a, b, "add");
  EndField c = EndField::zero(a.grid, a.mask);
  for (const auto& [o, s] : a.mask.blocks)
    for (int j = o; j < o + s; ++j)
      for (int k = o; k < o + s; ++k) {
        Plane& dst = c.at(j, k);
        const Plane& pa = a.at(j, k);
        const Plane& pb = b.at(j, k);
        for (std::size_t p = 0; p < dst.size(); ++p) dst[p] = ca * pa[p] + cb * pb[p];
      }
  return c;
}

void add_in_place(EndField& a, const EndField& b, cplx cb) {
  require_same_shape(a, b, "add_in_place");
  for (const auto& [o, s] : a.mask.blocks)
    for (int j = o; j < o + s; ++j)
      for (int k = o; k < o + s; ++k) {
        Plane& dst = a.at(j, k);
        const Plane& pb = b.at(j, k);
        for (std::size_t p = 0; p < dst.size(); ++p) dst[p] += cb * pb[p];
      }
}

void scale_in_place(EndField& a, cplx c) {
  for (auto& plane : a.entry)
    for (auto& v : plane) v *= c;
}

EndField adjoint(const EndField& a) {
  EndField c = EndField::zero(a.grid, a.mask);
  for (const auto& [o, s] : a.mask.blocks)
    for (int j = o; j < o + s; ++j)
      for (int k = o; k < o + s; ++k) {
        Plane& dst = c.at(j, k);
        const Plane& src = a.at(k, j);
        for (std::size_t p = 0; p < dst.size(); ++p) dst[p] = std::conj(src[p]);
      }
  return c;
}

void hermitize_in_place(EndField& a) {
  for (const auto& [o, s] : a.mask.blocks)
    for (int j = o; j < o + s; ++j) {
      Plane& diag = a.at(j, j);
      for (auto& v : diag) v = cplx{v.real(), 0.0};
      for (int k = j + 1; k < o + s; ++k) {
        Plane& up = a.at(j, k);
        Plane& lo = a.at(k, j);
        for (std::size_t p = 0; p < up.size(); ++p) {
          const cplx m = 0.5 * (up[p] + std::conj(lo[p]));
          up[p] = m;
          lo[p] = std::conj(m);
        }
      }
    }
}

Plane trace(const EndField& a) {
  Plane t = make_plane(a.grid);
  for (int j = 0; j < a.rank; ++j) {
    const Plane& d = a.at(j, j);
    for (std::size_t p = 0; p < t.size(); ++p) t[p] += d[p];
  }
  return t;
}

Plane det(const EndField& a) {
  Plane d = make_plane(a.grid, 1.0);
  for (const auto& [o, s] : a.mask.blocks) {
    if (s == 1) {
      const Plane& x = a.at(o, o);
      for (std::size_t p = 0; p < d.size(); ++p) d[p] *= x[p];
    } else if (s == 2) {
      const Plane& m11 = a.at(o, o);
      const Plane& m12 = a.at(o, o + 1);
      const Plane& m21 = a.at(o + 1, o);
      const Plane& m22 = a.at(o + 1, o + 1);
      for (std::size_t p = 0; p < d.size(); ++p)
        d[p] *= m11[p] * m22[p] - m12[p] * m21[p];
    } else {
      for (std::size_t p = 0; p < d.size(); ++p)
        d[p] *= gather_block(a, o, s, p).determinant();
    }
  }
  return d;
}

EndField inverse(const EndField& a, double* max_cond) {
  EndField c = EndField::zero(a.grid, a.mask);
  double worst = 0.0;
  std::size_t worst_at = 0;
  for (const auto& [o, s] : a.mask.blocks) {
    if (s == 1) {
      const Plane& x = a.at(o, o);
      Plane& y = c.at(o, o);
      for (std::size_t p = 0; p < x.size(); ++p) {
        const double ax = std::abs(x[p]);
        if (ax == 0.0) throw NumericalError("inverse: zero diagonal block at point " +
                                            std::to_string(p));
        y[p] = 1.0 / x[p];
        // 1x1 blocks are exactly conditioned; nothing to track
      }
    } else {
      for (std::size_t p = 0; p < a.grid.npoints; ++p) {
        const SmallMat m = gather_block(a, o, s, p);
        const SmallMat mi = m.inverse();
        const double cond_est = m.norm() * mi.norm();
        if (cond_est > worst) {
          worst = cond_est;
          worst_at = p;
        }
        scatter_block(c, o, s, p, mi);
      }
    }
  }
  if (max_cond) *max_cond = worst;
  if (worst > 1e12)
    throw NumericalError(
        "inverse: block condition estimate " + std::to_string(worst) +
        " exceeds 1e12 at grid point " + std::to_string(worst_at));
  return c;
}

EndField matfn_hermitian(const EndField& a, double (*fn)(double)) {
  EndField c = EndField::zero(a.grid, a.mask);
  Eigen::SelfAdjointEigenSolver<SmallMat> es;
  for (const auto& [o, s] : a.mask.blocks) {
    if (s == 1) {
      const Plane& x = a.at(o, o);
      Plane& y = c.at(o, o);
      for (std::size_t p = 0; p < x.size(); ++p) y[p] = fn(x[p].real());
    } else {
      for (std::size_t p = 0; p < a.grid.npoints; ++p) {
        const SmallMat m = gather_block(a, o, s, p);
        es.compute(m);
        SmallMat d = SmallMat::Zero(s, s);
        for (int i = 0; i < s; ++i) d(i, i) = fn(es.eigenvalues()[i]);
        scatter_block(c, o, s, p,
                      es.eigenvectors() * d * es.eigenvectors().adjoint());
      }
    }
  }
  return c;
}

namespace {
double safe_exp(double x) { return std::exp(x); }
double safe_log(double x) {
  if (x <= 0.0) throw NumericalError("log of non-positive eigenvalue");
  return std::log(x);
}
double safe_sqrt(double x) {
  if (x < 0.0) throw NumericalError("sqrt of negative eigenvalue");
  return std::sqrt(x);
}
}  // namespace

EndField exp_hermitian(const EndField& a) { return matfn_hermitian(a, safe_exp); }
EndField log_hermitian_pd(const EndField& a) { return matfn_hermitian(a, safe_log); }
EndField sqrt_hermitian_pd(const EndField& a) { return matfn_hermitian(a, safe_sqrt); }

double min_eigenvalue(const EndField& a, std::size_t* where) {
  double best = 1e300;
  std::size_t at = 0;
  Eigen::SelfAdjointEigenSolver<SmallMat> es;
  for (const auto& [o, s] : a.mask.blocks) {
    if (s == 1) {
      const Plane& x = a.at(o, o);
      for (std::size_t p = 0; p < x.size(); ++p)
        if (x[p].real() < best) {
          best = x[p].real();
          at = p;
        }
    } else if (s == 2) {
      const Plane& m11 = a.at(o, o);
      const Plane& m12 = a.at(o, o + 1);
      const Plane& m22 = a.at(o + 1, o + 1);
      for (std::size_t p = 0; p < m11.size(); ++p) {
        const double tr = m11[p].real() + m22[p].real();
        const double dd = m11[p].real() - m22[p].real();
        const double rad = std::sqrt(dd * dd + 4.0 * std::norm(m12[p]));
        const double lo = 0.5 * (tr - rad);
        if (lo < best) {
          best = lo;
          at = p;
        }
      }
    } else {
      for (std::size_t p = 0; p < a.grid.npoints; ++p) {
        es.compute(gather_block(a, o, s, p), Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues()[0];
        if (lo < best) {
          best = lo;
          at = p;
        }
      }
    }
  }
  if (where) *where = at;
  return best;
}

double hermiticity_defect(const EndField& a) {
  double worst = 0.0;
  for (const auto& [o, s] : a.mask.blocks)
    for (int j = o; j < o + s; ++j)
      for (int k = j; k < o + s; ++k) {
        const Plane& up = a.at(j, k);
        const Plane& lo = a.at(k, j);
        for (std::size_t p = 0; p < up.size(); ++p) {
          const double d = std::abs(up[p] - std::conj(lo[p]));
          // off-diagonal defect counts twice in the Frobenius norm
          worst = std::max(worst, (j == k ? d : d * std::numbers::sqrt2));
        }
      }
  return worst;
}

double sup_frobenius(const EndField& a) {
  Plane acc = make_plane(a.grid);
  for (const auto& plane : a.entry)
    for (std::size_t p = 0; p < acc.size(); ++p)
      acc[p] += std::norm(plane[p]);
  double worst = 0.0;
  for (const auto& v : acc) worst = std::max(worst, v.real());
  return std::sqrt(worst);
}

Plane hs_inner_plane(const EndField& a, const EndField& b, const EndField& hinv,
                     const EndField& h) {
  // tr(a * hinv * b^dagger * h) pointwise
  EndField bd = adjoint(b);
  return trace(mul(mul(a, hinv), mul(bd, h)));
}

Plane hs_norm2_plane(const EndField& a, const EndField& hinv, const EndField& h) {
  return hs_inner_plane(a, a, hinv, h);
}

}  // namespace hymlab
