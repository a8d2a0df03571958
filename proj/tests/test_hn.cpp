#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "hymlab/bundle.hpp"
#include "hymlab/hn.hpp"
#include "hymlab/rng.hpp"

using namespace hymlab;

namespace {

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

std::vector<double> random_vec(Rng& rng, int r, double scale) {
  std::vector<double> v(static_cast<std::size_t>(r));
  for (auto& x : v) x = scale * rng.normal();
  return v;
}

// Integer-arithmetic reimplementations with different enumeration orders,
// used as exact oracles on integer inputs.
std::vector<std::int64_t> oracle_tensor_power(const std::vector<std::int64_t>& x, int k) {
  const int r = static_cast<int>(x.size());
  std::int64_t total = 1;
  for (int i = 0; i < k; ++i) total *= r;
  std::vector<std::int64_t> out;
  for (std::int64_t code = 0; code < total; ++code) {
    std::int64_t c = code, s = 0;
    for (int i = 0; i < k; ++i) {
      s += x[static_cast<std::size_t>(c % r)];
      c /= r;
    }
    out.push_back(s);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::vector<std::int64_t> oracle_sym_power(const std::vector<std::int64_t>& x, int k) {
  const int r = static_cast<int>(x.size());
  std::vector<std::int64_t> out;
  // nondecreasing index tuples i_1 <= ... <= i_k
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  for (;;) {
    std::int64_t s = 0;
    for (int i : idx) s += x[static_cast<std::size_t>(i)];
    out.push_back(s);
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == r - 1) --pos;
    if (pos < 0) break;
    const int v = ++idx[static_cast<std::size_t>(pos)];
    for (int q = pos + 1; q < k; ++q) idx[static_cast<std::size_t>(q)] = v;
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::vector<std::int64_t> oracle_ext_power(const std::vector<std::int64_t>& x, int k) {
  const int r = static_cast<int>(x.size());
  std::vector<std::int64_t> out;
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::int64_t s = 0;
    for (int i = 0; i < r; ++i)
      if (mask & (1u << i)) s += x[static_cast<std::size_t>(i)];
    out.push_back(s);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

bool matches(const HNType& got, const std::vector<std::int64_t>& want) {
  if (got.mu.size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i)
    if (got.mu[i] != static_cast<double>(want[i])) return false;
  return true;
}

// all nonincreasing integer vectors of length r over [-2, 2]
void each_sorted_vector(int r, const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(r), 2);
  std::function<void(int, std::int64_t)> walk = [&](int pos, std::int64_t hi) {
    if (pos == r) {
      fn(v);
      return;
    }
    for (std::int64_t d = hi; d >= -2; --d) {
      v[static_cast<std::size_t>(pos)] = d;
      walk(pos + 1, d);
    }
  };
  walk(0, 2);
}

}  // namespace

TEST_CASE("descending rearrangement") {
  CHECK(sort_tau({1.0, 3.0, 2.0}).mu == std::vector<double>{3.0, 2.0, 1.0});
  const std::vector<double> s{5.0, 2.0, 2.0, -1.0};
  CHECK(sort_tau(s).mu == s);

  Rng rng(11);
  for (int trial = 0; trial < 10000; ++trial) {
    const int r = rng.uniform_int(1, 6);
    auto x = random_vec(rng, r, 2.0);
    auto y = random_vec(rng, r, 2.0);
    const double lhs = euclid(sort_tau(x).mu, sort_tau(y).mu);
    const double rhs = euclid(x, y);
    CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-15);
  }
}

TEST_CASE("tensor type of a pair") {
  HNType a{{3.0, 1.0}}, b{{2.0, 0.0}};
  CHECK(tensor_type(a, b).mu == std::vector<double>{5.0, 3.0, 3.0, 1.0});
  CHECK(tensor_type(a, HNType{{0.0}}).mu == a.mu);

  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    auto x = sort_tau(random_vec(rng, rng.uniform_int(1, 5), 3.0));
    auto y = sort_tau(random_vec(rng, rng.uniform_int(1, 5), 3.0));
    auto t = tensor_type(x, y);
    CHECK(t.rank() == x.rank() * y.rank());
    CHECK(t.top() == x.top() + y.top());
    CHECK(t.bottom() == x.bottom() + y.bottom());
    CHECK(std::is_sorted(t.mu.rbegin(), t.mu.rend()));
  }
  CHECK_THROWS_AS(tensor_type(HNType{{1.0, 2.0}}, HNType{{0.0}}), ValidationError);
}

TEST_CASE("tensor power") {
  CHECK(tensor_power_type(HNType{{1.0, 0.0}}, 2).mu ==
        std::vector<double>{2.0, 1.0, 1.0, 0.0});
  HNType a{{2.0, 0.5, -1.0}};
  CHECK(tensor_power_type(a, 1).mu == a.mu);

  // agrees with iterated pair tensoring on integer types
  HNType ia{{2.0, 1.0, -1.0}};
  CHECK(tensor_power_type(ia, 3).mu == tensor_type(ia, tensor_power_type(ia, 2)).mu);

  CHECK_THROWS_AS(tensor_power_type(a, 0), ValidationError);
  CHECK_THROWS_AS(tensor_power_type(a, 7), ValidationError);
}

TEST_CASE("symmetric power") {
  CHECK(sym_power_type(HNType{{1.0, 0.0}}, 2).mu == std::vector<double>{2.0, 1.0, 0.0});
  CHECK(sym_power_type(HNType{{1.5, 1.5, 1.5}}, 3).mu ==
        std::vector<double>(10, 4.5));

  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = rng.uniform_int(1, 4);
    auto x = sort_tau(random_vec(rng, rng.uniform_int(1, 5), 3.0));
    auto s = sym_power_type(x, k);
    CHECK(s.top() == k * x.top());
    CHECK(s.bottom() == k * x.bottom());
  }
  CHECK_THROWS_AS(sym_power_type(HNType{{1.0}}, 0), ValidationError);
}

TEST_CASE("exterior power") {
  CHECK(ext_power_type(HNType{{3.0, 1.0, 0.0}}, 2).mu ==
        std::vector<double>{4.0, 3.0, 1.0});
  HNType a{{2.0, 0.5, -1.0, -3.0}};
  const double sum = 2.0 + 0.5 - 1.0 - 3.0;
  CHECK(ext_power_type(a, 4).mu == std::vector<double>{sum});
  CHECK_THROWS_AS(ext_power_type(a, 5), ValidationError);
  CHECK_THROWS_AS(ext_power_type(a, 0), ValidationError);

  Rng rng(14);
  for (int trial = 0; trial < 100; ++trial) {
    const int r = rng.uniform_int(2, 6);
    const int k = rng.uniform_int(1, r);
    auto x = sort_tau(random_vec(rng, r, 3.0));
    auto e = ext_power_type(x, k);
    double top = 0.0, bot = 0.0;
    for (int i = 0; i < k; ++i) {
      top += x.mu[static_cast<std::size_t>(i)];
      bot += x.mu[static_cast<std::size_t>(r - 1 - i)];
    }
    CHECK(e.top() == doctest::Approx(top).epsilon(1e-14));
    CHECK(e.bottom() == doctest::Approx(bot).epsilon(1e-14));
    CHECK(e.top() <= k * x.top() + 1e-14);
    CHECK(e.bottom() >= k * x.bottom() - 1e-14);
  }
}

TEST_CASE("slope and the type of a bundle spec") {
  CHECK(slope(4.0, 2) == 2.0);
  CHECK_THROWS_AS(slope(1.0, 0), ValidationError);

  auto base = make_flat_torus(1, 16);
  auto spec = make_split_bundle(base, {1, -1});
  CHECK(hn_type_of_spec(*spec).mu == std::vector<double>{1.0, -1.0});

  auto pair = make_split_bundle(base, {0, 0});
  EndForm1 beta;
  beta.comp.push_back(EndField::zero(base->grid, BlockMask::full(2)));
  for (auto& v : beta.comp[0].at(0, 1)) v = 0.2;
  CHECK(hn_type_of_spec(*deform(pair, beta)).mu == std::vector<double>{0.0, 0.0});
}

TEST_CASE("exhaustive integer oracle up to rank 5 and power 4") {
  for (int r = 1; r <= 5; ++r) {
    each_sorted_vector(r, [&](const std::vector<std::int64_t>& v) {
      HNType a{std::vector<double>(v.begin(), v.end())};
      for (int k = 1; k <= 4; ++k) {
        auto tp = tensor_power_type(a, k);
        CHECK(matches(tp, oracle_tensor_power(v, k)));
        std::int64_t card = 1;
        for (int i = 0; i < k; ++i) card *= r;
        CHECK(tp.rank() == card);

        auto sp = sym_power_type(a, k);
        CHECK(matches(sp, oracle_sym_power(v, k)));

        if (k <= r) {
          auto ep = ext_power_type(a, k);
          CHECK(matches(ep, oracle_ext_power(v, k)));
        }
      }
    });
  }
}

TEST_CASE("positivity transfers across the power maps") {
  Rng rng(15);
  for (int trial = 0; trial < 500; ++trial) {
    const int r = rng.uniform_int(2, 5);
    const int k = rng.uniform_int(2, 4);
    auto x = sort_tau(random_vec(rng, r, 1.5));
    const bool pos = x.bottom() > 0.0;
    CHECK((tensor_power_type(x, k).bottom() > 0.0) == pos);
    CHECK((sym_power_type(x, k).bottom() > 0.0) == pos);
    if (pos && k <= r) CHECK(ext_power_type(x, k).bottom() > 0.0);
  }
}

TEST_CASE("power maps are Lipschitz with the enumerated linear constant") {
  // rows of the incidence matrix = gradient of one output entry before sorting
  auto op_norm = [](const std::vector<std::vector<double>>& rows) {
    Eigen::MatrixXd A(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < A.rows(); ++i)
      for (int j = 0; j < A.cols(); ++j)
        A(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    return A.jacobiSvd().singularValues()(0);
  };

  const int r = 4, k = 3;
  std::vector<std::vector<double>> trows, srows, erows;
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  for (;;) {
    std::vector<double> row(static_cast<std::size_t>(r), 0.0);
    for (int i : idx) row[static_cast<std::size_t>(i)] += 1.0;
    trows.push_back(row);
    if (std::is_sorted(idx.begin(), idx.end())) srows.push_back(row);
    if (std::is_sorted(idx.begin(), idx.end()) &&
        std::adjacent_find(idx.begin(), idx.end()) == idx.end())
      erows.push_back(row);
    int pos = k - 1;
    while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == r)
      idx[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
  }
  const double lt = op_norm(trows), ls = op_norm(srows), le = op_norm(erows);

  Rng rng(16);
  for (int trial = 0; trial < 2000; ++trial) {
    auto x = sort_tau(random_vec(rng, r, 2.0));
    auto y = sort_tau(random_vec(rng, r, 2.0));
    const double d = euclid(x.mu, y.mu);
    CHECK(euclid(tensor_power_type(x, k).mu, tensor_power_type(y, k).mu) <=
          lt * d * (1.0 + 1e-12) + 1e-14);
    CHECK(euclid(sym_power_type(x, k).mu, sym_power_type(y, k).mu) <=
          ls * d * (1.0 + 1e-12) + 1e-14);
    CHECK(euclid(ext_power_type(x, k).mu, ext_power_type(y, k).mu) <=
          le * d * (1.0 + 1e-12) + 1e-14);
  }
}
