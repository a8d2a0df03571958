#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "hymlab/bundle.hpp"

namespace hymlab {

// Pointwise spectrum of the mean curvature: lam[j][p] is the j-th eigenvalue
// at grid point p, sorted nonincreasing in j.
struct EigenField {
  Grid grid;
  int rank = 0;
  std::vector<std::vector<double>> lam;
};

// Eigenvalues of the H-self-adjoint operator theta, blockwise per point.
// Throws NumericalError when the self-adjointness defect sup|h theta -
// (h theta)^dagger| exceeds 1e-6 relative to max(1, sup|h theta|)
// (an upstream bug, not a data error).
EigenField eigen_field(const EndField& theta, const EndField& h);

// Matrix-level counterparts used pointwise and by randomized oracles.
std::vector<double> selfadjoint_spectrum(const Eigen::MatrixXcd& theta,
                                         const Eigen::MatrixXcd& h);
// Ratio of extreme eigenvalues of the H1-positive square root of h1^{-1} h2.
double sigma_condition(const Eigen::MatrixXcd& h1, const Eigen::MatrixXcd& h2);
// |b - a|_{H}^2 = tr((b-a) h^{-1} (b-a)^dagger h)
double endo_dist2(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b,
                  const Eigen::MatrixXcd& h);

struct MonitorOptions {
  // (rho, N) arguments of the Yang-Mills type functionals recorded per sample
  std::vector<std::pair<double, double>> hym_pairs{{1.0, 0.0}, {1.0, 1.0},
                                                   {2.0, 0.0}, {2.0, 1.0}};
};

// Reference data frozen at the initial state, for conservation monitors.
struct MonitorRefs {
  Plane det0;               // det h at t = 0
  std::vector<Plane> trF0;  // trace of each curvature slot at t = 0
};

struct MonitorRecord {
  double t = 0.0;

  // grid extrema and volume means of the extreme eigenvalues
  double hatL = 0.0, hatU = 0.0, mL = 0.0, mU = 0.0;
  // partial sums, index k-1 for 1 <= k <= r: hatLk = inf of (k smallest),
  // hatUk = sup of (k largest), mLk/mUk their volume means
  std::vector<double> hatLk, hatUk, mLk, mUk;

  double phi_norm_sq = 0.0;   // integral of |theta - lambda Id|^2_H
  double phi_sup_sq = 0.0;    // sup of the same density
  double theta_sup_sq = 0.0;  // sup of |theta|^2_H
  double grad_energy = 0.0;   // integral of 2 |dbar_E theta|^2_{H,omega}
  double hn_dist = 0.0;       // L2(K) distance to the projection target
  double eig_variance = 0.0;  // summed spatial variance of the eigenvalues
  double det_drift = 0.0;     // sup |det h / det h_0 - 1|
  double trF_drift = 0.0;     // sup over slots of |tr F - tr F_0|

  std::vector<double> hym;  // one value per configured (rho, N) pair
};

MonitorRefs make_monitor_refs(const BundleSpec& spec, const EndField& h0);

MonitorRecord compute_monitors(const BundleSpec& spec, const EndField& h, double t,
                               const MonitorOptions& opts = {},
                               const MonitorRefs* refs = nullptr);

// || iLambda F_H - (2 pi / Vol) diag(d_1, ..., d_r) ||_{L2(K)}
double hn_projection_distance(const BundleSpec& spec, const EndField& h);

struct PairDistance {
  double theta_L2 = 0.0;       // || theta_2 - theta_1 ||_{L2(H1)}
  double eig_L2 = 0.0;         // || lambda(H_2) - lambda(H_1) ||_{L2}
  double cond_bound = 1.0;     // sup_x of the sigma condition ratio
  double cross_penalty = 0.0;  // sup_x tr(h12 + h12^{-1}) - 2r, h12 = h1^{-1} h2
};

PairDistance pair_distance(const BundleSpec& spec, const EndField& h1,
                           const EndField& h2);

// Integral of sum_j |(Vol / 2 pi) lambda_j - N|^rho over the base; rho >= 1.
double hym_functional(const BundleSpec& spec, const EigenField& ef, double rho,
                      double N);

}  // namespace hymlab
