#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "brel/space.hpp"
#include "test_util.hpp"

using namespace brel;
using doctest::Approx;

namespace {

// Tree symbol counting redone from the raw pair set, without touching Brwt.
double ideal_bits_from_pairs(const std::vector<Pair>& pairs, uint64_t n,
                             uint64_t sigma) {
  std::set<Pair> rel(pairs.begin(), pairs.end());
  double bits = 2.0 * static_cast<double>(n);
  struct Frame {
    uint64_t lo, hi;
    std::vector<uint64_t> objs;
    bool is_root;
  };
  std::vector<uint64_t> all;
  for (uint64_t x = 1; x <= n; ++x) all.push_back(x);
  std::vector<Frame> stack{{1, sigma, all, true}};
  auto related = [&](uint64_t x, uint64_t lo, uint64_t hi) {
    for (uint64_t g = lo; g <= hi; ++g)
      if (rel.count({g, x})) return true;
    return false;
  };
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.lo >= f.hi && !f.is_root) continue;
    const uint64_t m = (f.lo + f.hi) / 2;
    uint64_t t01 = 0, t10 = 0, t11 = 0;
    std::vector<uint64_t> left, right;
    for (uint64_t x : f.objs) {
      const bool l = related(x, f.lo, m);
      const bool r = m < f.hi && related(x, m + 1, f.hi);
      if (l) left.push_back(x);
      if (r) right.push_back(x);
      if (l && r) ++t11;
      else if (l) ++t10;
      else if (r) ++t01;
    }
    if (!f.is_root) {
      const uint64_t counts[3] = {t01, t10, t11};
      bits += space::zero_order_bits(counts);
    }
    if (m > f.lo) stack.push_back({f.lo, m, std::move(left), false});
    if (f.hi > m + 1) stack.push_back({m + 1, f.hi, std::move(right), false});
  }
  return bits;
}

} // namespace

TEST_CASE("entropy of the fixture and degenerate cases") {
  CHECK(space::entropy_bits({5, 4, 8}) == Approx(std::log2(125970.0)).epsilon(1e-12));
  CHECK(space::entropy_bits({5, 4, 0}) == 0.0);
  CHECK(space::entropy_bits({5, 4, 20}) == 0.0);
  CHECK_THROWS_AS(space::entropy_bits({5, 4, 21}), std::invalid_argument);
}

TEST_CASE("entropy is symmetric under transposition") {
  std::mt19937_64 rng(171);
  for (int i = 0; i < 50; ++i) {
    const uint64_t n = 1 + rng() % 100, sigma = 1 + rng() % 100;
    const uint64_t t = rng() % (n * sigma + 1);
    CHECK(space::entropy_bits({n, sigma, t}) ==
          Approx(space::entropy_bits({sigma, n, t})).epsilon(1e-12));
  }
}

TEST_CASE("exact binomial path agrees with log-gamma") {
  std::mt19937_64 rng(173);
  for (int i = 0; i < 60; ++i) {
    const uint64_t cells = 2 + rng() % 9999;
    const uint64_t t = 1 + rng() % (cells - 1);
    const double exact = space::binomial_log2_exact(cells, t);
    const double lg = (std::lgamma(static_cast<double>(cells) + 1) -
                       std::lgamma(static_cast<double>(t) + 1) -
                       std::lgamma(static_cast<double>(cells - t) + 1)) /
                      std::log(2.0);
    CHECK(exact == Approx(lg).epsilon(1e-9));
  }
}

TEST_CASE("zero-order bits") {
  const uint64_t r0_counts[4] = {2, 2, 3, 1};
  CHECK(space::zero_order_bits(r0_counts) == Approx(15.245112497836531).epsilon(1e-12));
  const uint64_t all_equal[1] = {12};
  CHECK(space::zero_order_bits(all_equal) == 0.0);
  const uint64_t fifty_fifty[2] = {4, 4};
  CHECK(space::zero_order_bits(fifty_fifty) == Approx(8.0).epsilon(1e-12));
  CHECK(space::label_string_h0_bits(testutil::r0_pairs(), 4) ==
        Approx(15.245112497836531).epsilon(1e-12));
}

TEST_CASE("t*H0(S) never exceeds t lg sigma") {
  std::mt19937_64 rng(179);
  for (int i = 0; i < 100; ++i) {
    const uint64_t n = 1 + rng() % 30, sigma = 2 + rng() % 30;
    const uint64_t t = rng() % (n * sigma + 1);
    NaiveRelation rel(testutil::random_pairs(rng, n, sigma, t), n, sigma);
    const auto& ps = rel.pairs_label_major();
    const double h0 = space::label_string_h0_bits(ps, sigma);
    CHECK(h0 <= static_cast<double>(ps.size()) * std::log2(static_cast<double>(sigma)) + 1e-9);
  }
  // equality only for uniform label frequencies
  std::vector<Pair> uniform;
  for (uint64_t g = 1; g <= 4; ++g)
    for (uint64_t x = 1; x <= 3; ++x) uniform.push_back({g, x});
  CHECK(space::label_string_h0_bits(uniform, 4) == Approx(12 * 2.0).epsilon(1e-12));
}

TEST_CASE("brwt ideal size on degenerate relations") {
  Brwt empty({}, 6, 5);
  CHECK(space::brwt_ideal_bits(empty) == Approx(12.0));
  std::vector<Pair> full;
  for (uint64_t g = 1; g <= 5; ++g)
    for (uint64_t x = 1; x <= 6; ++x) full.push_back({g, x});
  Brwt fr(full, 6, 5);
  CHECK(space::brwt_ideal_bits(fr) == Approx(12.0));
}

TEST_CASE("brwt ideal size matches the independent recount") {
  std::mt19937_64 rng(181);
  {
    Brwt r0(testutil::r0_pairs(), 5, 4);
    CHECK(space::brwt_ideal_bits(r0) ==
          Approx(ideal_bits_from_pairs(testutil::r0_pairs(), 5, 4)).epsilon(1e-9));
  }
  for (int i = 0; i < 20; ++i) {
    const uint64_t n = 1 + rng() % 20, sigma = 1 + rng() % 20;
    const uint64_t t = rng() % (n * sigma + 1);
    const auto pairs = testutil::random_pairs(rng, n, sigma, t);
    NaiveRelation rel(pairs, n, sigma);
    Brwt b(rel.pairs_label_major(), n, sigma);
    CHECK(space::brwt_ideal_bits(b) ==
          Approx(ideal_bits_from_pairs(pairs, n, sigma)).epsilon(1e-9));
  }
}

TEST_CASE("ideal brwt size stays within the entropy bound") {
  std::mt19937_64 rng(191);
  for (int i = 0; i < 80; ++i) {
    const uint64_t n = 1 + rng() % 64, sigma = 1 + rng() % 64;
    const uint64_t t = rng() % (n * sigma + 1);
    NaiveRelation rel(testutil::random_pairs(rng, n, sigma, t), n, sigma);
    Brwt b(rel.pairs_label_major(), n, sigma);
    CHECK(space::brwt_ideal_bits(b) <= space::brwt_space_bound(rel.dims()));
  }
  // the 32x32 example at several densities
  for (uint64_t t : {32u, 256u, 512u, 900u}) {
    NaiveRelation rel(testutil::random_pairs(rng, 32, 32, t), 32, 32);
    Brwt b(rel.pairs_label_major(), 32, 32);
    CHECK(space::brwt_ideal_bits(b) <= space::brwt_space_bound(rel.dims()));
  }
}

TEST_CASE("report carries all the fields") {
  const auto pairs = testutil::r0_pairs();
  Brwt b(pairs, 5, 4);
  const space::ReprSpace reprs[1] = {{"brwt", b.payload_bits(), b.directory_bits()}};
  const auto rep = space::make_report(pairs, b.dims(), reprs, &b);
  CHECK(rep.entropy_bits == Approx(16.9427206684).epsilon(1e-9));
  CHECK(rep.has_brwt);
  std::ostringstream text, kv;
  space::print_text(text, rep);
  space::print_kv(kv, rep);
  CHECK(text.str().find("entropy") != std::string::npos);
  CHECK(kv.str().find("entropy_bits=") != std::string::npos);
  CHECK(kv.str().find("brwt_ideal_bits=") != std::string::npos);
}
