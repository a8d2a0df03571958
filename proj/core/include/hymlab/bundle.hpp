#pragma once

#include <memory>
#include <numbers>

#include "hymlab/endfield.hpp"
#include "hymlab/forms.hpp"

namespace hymlab {

// Factors of automorphy for each line-bundle summand, lattice-gauge style:
// crossing the y_1 -> y_1 + 1 boundary multiplies sections of factor j by
// e^{-2 pi i d_j x_1}; all other transitions are trivial.  Fields stored by
// the library are End(E)-valued on equal-degree blocks, where the conjugated
// transition phases cancel exactly, so sampled planes are plainly periodic.
struct TwistData {
  std::vector<int> flux;  // d_j per factor

  // Phase exponent (radians) picked up by factor j when crossing the y_1
  // boundary at horizontal position x.
  double boundary_phase(int j, double x) const {
    return -2.0 * std::numbers::pi * flux[j] * x;
  }

  // Composing the two boundary transitions around the fundamental-domain
  // corner yields e^{i * corner_exponent}; consistency with Chern number d_j
  // means the exponent is -2 pi d_j, an exact multiple of 2 pi.
  double corner_exponent(int j, double x) const {
    return boundary_phase(j, x + 1.0) - boundary_phase(j, x);
  }
};

// Holomorphic bundle over the base: direct sum of line bundles L_{d_1} >= ...
// >= L_{d_r} with constant-curvature background metric K, optionally deformed
// by a strictly upper-triangular End-valued (0,1)-form beta supported on
// equal-degree blocks.
struct BundleSpec {
  BasePtr base;
  int rank = 0;
  std::vector<int> degrees;  // nonincreasing
  BlockMask mask;            // equal-degree blocks
  TwistData twist;
  double lambda = 0.0;       // 2 pi mu_omega(E) / Vol
  int degree_sum = 0;

  bool has_beta = false;
  EndForm1 beta;             // (0,1) components B_b, strictly upper, in-mask

  // islot curvature of the background pair (dbar_E + beta, K):
  // diag(2 pi d_j / Vol) plus the beta-induced d(alpha) and alpha^2 terms.
  EndForm11 f_background;
};

using SpecPtr = std::shared_ptr<const BundleSpec>;

// Whether a metric array represents H itself or h = K^{-1} H.  The background
// K is the identity in the twisted per-factor frames, so the two modes hold
// identical numbers; the flag preserves the calling convention.
enum class MetricMode { Absolute, Relative };

// Hermitian positive-definite metric field on the bundle.
struct MetricField {
  MetricMode mode = MetricMode::Relative;
  EndField m;

  // Validates Hermiticity (defect < 1e-12), positive-definiteness, and
  // block support before adopting the values.
  static MetricField make(const BundleSpec& spec, EndField values,
                          MetricMode mode = MetricMode::Relative);
  static MetricField background(const BundleSpec& spec);  // h = Id
};

SpecPtr make_split_bundle(const BasePtr& base, const std::vector<int>& degrees);

// New holomorphic structure dbar_E + beta.  beta entries must be strictly
// upper triangular, supported on equal-degree blocks, with integrability
// residual |dbar beta + beta ^ beta| below 1e-10.  The HN type (the degree
// vector) is unchanged.
SpecPtr deform(const SpecPtr& spec, const EndForm1& beta);

// F_H = F_background + dbar_E(h^{-1} del_K h), islot convention.
// Throws NumericalError when a block condition estimate exceeds 1e12.
EndForm11 chern_curvature(const BundleSpec& spec, const EndField& h);

struct MeanCurvature {
  EndField theta;        // iLambda F_H, H-hermitized
  double herm_defect;    // sup-norm of the H-adjoint defect before symmetrizing
  EndForm11 f;           // the curvature the contraction was taken of
};

// theta_H = iLambda_omega F_H, H-self-adjoint up to the reported defect.
MeanCurvature mean_curvature(const BundleSpec& spec, const EndField& h);

// Covariant derivatives on End(E)-valued fields for the deformed structure:
// dbar_E s = dbar s + [beta, s] per (0,1) component,
// del_K s  = del s  - [beta^{*K}, s] per (1,0) component.
EndForm1 dbar_E(const BundleSpec& spec, const EndField& s);
EndForm1 del_K(const BundleSpec& spec, const EndField& s);

// Pointwise |dbar_E s|^2_{H,omega} density (used by energy monitors):
// sum over (0,1) components paired by the inverse base metric and the
// H-weighted endomorphism inner product.
Plane dbar_E_norm2_plane(const BundleSpec& spec, const EndField& s, const EndField& h,
                         const EndField& hinv);

}  // namespace hymlab
