#pragma once

#include <vector>

#include "hymlab/errors.hpp"

namespace hymlab {

struct BundleSpec;

// Harder-Narasimhan type: slope vector sorted nonincreasing.
struct HNType {
  std::vector<double> mu;

  int rank() const { return static_cast<int>(mu.size()); }
  double top() const { return mu.front(); }
  double bottom() const { return mu.back(); }

  bool operator==(const HNType&) const = default;
};

// Descending rearrangement (stable, so equal entries keep input order).
HNType sort_tau(std::vector<double> x);

// Sorted multiset of all pairwise sums a_i + b_j, size rank(a)*rank(b).
// Inputs must be sorted; output size capped at 10^6.
HNType tensor_type(const HNType& a, const HNType& b);

// Sorted multiset of all k-fold index sums, size r^k.  1 <= k <= 6, r <= 8.
HNType tensor_power_type(const HNType& a, int k);

// Sorted sums over nonnegative compositions (c_1, ..., c_r) of k weighted by
// the entries, size C(r+k-1, k).  1 <= k <= 6, r <= 8.
HNType sym_power_type(const HNType& a, int k);

// Sorted sums over strictly increasing k-tuples of indices, size C(r, k).
// 1 <= k <= rank(a) <= 8.
HNType ext_power_type(const HNType& a, int k);

double slope(double deg, int rank);

// The type of a split or deformed bundle is its degree vector: the flag of
// leading subbundles is the destabilizing filtration and each quotient is a
// line bundle of the corresponding degree.
HNType hn_type_of_spec(const BundleSpec& spec);

}  // namespace hymlab
