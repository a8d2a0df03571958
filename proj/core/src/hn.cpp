#include "hymlab/hn.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "hymlab/bundle.hpp"

namespace hymlab {

namespace {

constexpr int kMaxRank = 8;
constexpr int kMaxPower = 6;
constexpr std::size_t kMaxOutput = 1000000;

void require_sorted(const HNType& a, const char* who) {
  if (a.mu.empty())
    throw ValidationError(std::string(who) + ": empty type vector");
  for (std::size_t i = 1; i < a.mu.size(); ++i)
    if (a.mu[i] > a.mu[i - 1])
      throw ValidationError(std::string(who) + ": input type is not sorted");
}

void require_power_args(const HNType& a, int k, const char* who) {
  require_sorted(a, who);
  if (a.rank() > kMaxRank)
    throw ValidationError(std::string(who) + ": rank " + std::to_string(a.rank()) +
                          " exceeds the cap " + std::to_string(kMaxRank));
  if (k < 1 || k > kMaxPower)
    throw ValidationError(std::string(who) + ": power k=" + std::to_string(k) +
                          " outside [1, " + std::to_string(kMaxPower) + "]");
}

HNType sorted(std::vector<double> v) {
  std::stable_sort(v.begin(), v.end(), std::greater<double>());
  return HNType{std::move(v)};
}

}  // namespace

HNType sort_tau(std::vector<double> x) { return sorted(std::move(x)); }

HNType tensor_type(const HNType& a, const HNType& b) {
  require_sorted(a, "tensor_type");
  require_sorted(b, "tensor_type");
  const std::size_t out = a.mu.size() * b.mu.size();
  if (out > kMaxOutput)
    throw ValidationError("tensor_type: output rank " + std::to_string(out) +
                          " exceeds the enumeration cap");
  std::vector<double> t;
  t.reserve(out);
  for (double x : a.mu)
    for (double y : b.mu) t.push_back(x + y);
  return sorted(std::move(t));
}

HNType tensor_power_type(const HNType& a, int k) {
  require_power_args(a, k, "tensor_power_type");
  const int r = a.rank();
  std::vector<double> t;
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  for (;;) {
    double s = 0.0;
    for (int i : idx) s += a.mu[static_cast<std::size_t>(i)];
    t.push_back(s);
    int pos = k - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == r)
      idx[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
  return sorted(std::move(t));
}

HNType sym_power_type(const HNType& a, int k) {
  require_power_args(a, k, "sym_power_type");
  const int r = a.rank();
  std::vector<double> t;
  std::vector<int> comp(static_cast<std::size_t>(r), 0);
  // enumerate nonnegative integer vectors summing to k
  std::function<void(int, int)> walk = [&](int pos, int left) {
    if (pos == r - 1) {
      comp[static_cast<std::size_t>(pos)] = left;
      double s = 0.0;
      for (int j = 0; j < r; ++j)
        s += comp[static_cast<std::size_t>(j)] * a.mu[static_cast<std::size_t>(j)];
      t.push_back(s);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      comp[static_cast<std::size_t>(pos)] = c;
      walk(pos + 1, left - c);
    }
  };
  walk(0, k);
  return sorted(std::move(t));
}

HNType ext_power_type(const HNType& a, int k) {
  require_sorted(a, "ext_power_type");
  const int r = a.rank();
  if (r > kMaxRank)
    throw ValidationError("ext_power_type: rank exceeds the cap");
  if (k < 1 || k > r)
    throw ValidationError("ext_power_type: power k=" + std::to_string(k) +
                          " outside [1, rank=" + std::to_string(r) + "]");
  std::vector<double> t;
  std::vector<int> pick(static_cast<std::size_t>(k));
  std::function<void(int, int, double)> walk = [&](int pos, int from, double s) {
    if (pos == k) {
      t.push_back(s);
      return;
    }
    for (int i = from; i <= r - (k - pos); ++i)
      walk(pos + 1, i + 1, s + a.mu[static_cast<std::size_t>(i)]);
  };
  walk(0, 0, 0.0);
  return sorted(std::move(t));
}

double slope(double deg, int rank) {
  if (rank < 1) throw ValidationError("slope: rank must be at least 1");
  return deg / rank;
}

HNType hn_type_of_spec(const BundleSpec& spec) {
  std::vector<double> mu(spec.degrees.begin(), spec.degrees.end());
  return HNType{std::move(mu)};
}

}  // namespace hymlab
