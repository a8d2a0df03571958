#pragma once

#include <vector>

#include "hymlab/analytics.hpp"
#include "hymlab/bundle.hpp"

namespace hymlab {

// (i/2pi) integral of tr F_H wedge omega^{n-1}/(n-1)!.  Equals the sum of the
// degree vector for every admissible metric; the base construction guarantees
// del dbar omega^{n-1} = 0, which is what makes the value metric-independent.
double degree(const BundleSpec& spec, const EndField& h);

// Pointwise densities of the rank-2 surface identity
//   -tr(iF_perp ^ iF_perp) = (|iF_perp|^2 - |iLambda F_perp|^2) omega^2/2,
// F_perp = F - (tr F / 2) Id.  All three fields are densities against
// omega^2/2, so lhs[p] == f_perp_sq[p] - theta_perp_sq[p] up to rounding,
// and f_perp_sq[p] - theta_perp_sq[p]/2 >= 0 by Cauchy-Schwarz.
struct Chern2Fields {
  std::vector<double> lhs;
  std::vector<double> f_perp_sq;
  std::vector<double> theta_perp_sq;
};

// Requires rank 2 and a complex-surface base (dim_c = 2).
Chern2Fields chern2_defect(const BundleSpec& spec, const EndField& h);

// 2 lambda_1 lambda_2 under the normalization lambda_1 + lambda_2 = 2.
// Positivity of the returned field certifies the second-Chern lower bound.
// Requires rank 2; the trace normalization is enforced to 1e-6 pointwise.
std::vector<double> c2_positivity_bound(const EigenField& eigs);

}  // namespace hymlab
