#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "brel/telemetry.hpp"
#include "brel/wavelet_tree.hpp"

using brel::WaveletTree;

namespace {

// "EHDHACEEGBCBGCF" with A=1 .. H=8.
std::vector<uint64_t> fig_sequence() {
  std::vector<uint64_t> s;
  for (char c : std::string("EHDHACEEGBCBGCF")) s.push_back(c - 'A' + 1);
  return s;
}

uint64_t scan_rank(const std::vector<uint64_t>& s, uint64_t a, uint64_t i) {
  uint64_t c = 0;
  for (uint64_t p = 0; p < i; ++p) c += s[p] == a;
  return c;
}

uint64_t scan_rank_le(const std::vector<uint64_t>& s, uint64_t a, uint64_t i) {
  uint64_t c = 0;
  for (uint64_t p = 0; p < i; ++p) c += s[p] <= a;
  return c;
}

std::vector<uint64_t> random_seq(std::mt19937_64& rng, uint64_t len, uint64_t sigma) {
  std::uniform_int_distribution<uint64_t> d(1, sigma);
  std::vector<uint64_t> s(len);
  for (auto& x : s) x = d(rng);
  return s;
}

} // namespace

TEST_CASE("figure sequence basics") {
  const auto s = fig_sequence();
  WaveletTree wt(s, 8);
  CHECK(wt.height() == 3);
  CHECK(wt.access(1) == 5);   // E
  CHECK(wt.access(5) == 1);   // A
  CHECK(wt.rank(5, 8) == 3);  // E in prefix 8
  CHECK(wt.rank(3, 0) == 0);
  CHECK_THROWS_AS(wt.rank(9, 3), std::invalid_argument);
  CHECK(wt.select(3, 2) == 11);  // second C
  CHECK(!wt.select(6, 2).has_value());
  CHECK(wt.select(5, 1) == 1);
  CHECK(wt.rank_le(4, 15) == 7);
  CHECK(wt.rank_le(8, 15) == 15);
  CHECK(wt.rank_le(1, 4) == 0);
}

TEST_CASE("single symbol alphabet") {
  std::vector<uint64_t> s{1};
  WaveletTree wt(s, 1);
  CHECK(wt.height() == 0);
  CHECK(wt.access(1) == 1);
  CHECK(wt.rank(1, 1) == 1);
  CHECK(wt.select(1, 1) == 1);
  CHECK(wt.payload_bits() == 0);
}

TEST_CASE("cover decomposition") {
  const auto s = fig_sequence();
  WaveletTree wt(s, 8);

  auto c_full = wt.cover(1, 8);
  REQUIRE(c_full.size() == 1);
  CHECK(c_full[0].lo == 1);
  CHECK(c_full[0].hi == 8);
  CHECK(c_full[0].level == 0);

  auto c = wt.cover(2, 7);
  REQUIRE(c.size() == 4);
  CHECK(c[0].lo == 2); CHECK(c[0].hi == 2);
  CHECK(c[1].lo == 3); CHECK(c[1].hi == 4);
  CHECK(c[2].lo == 5); CHECK(c[2].hi == 6);
  CHECK(c[3].lo == 7); CHECK(c[3].hi == 7);

  auto c_one = wt.cover(3, 3);
  REQUIRE(c_one.size() == 1);
  CHECK(c_one[0].lo == 3);
  CHECK(c_one[0].hi == 3);
}

TEST_CASE("cover properties on random ranges") {
  std::mt19937_64 rng(3);
  for (uint64_t sigma : {2u, 3u, 7u, 8u, 100u, 256u}) {
    const auto s = random_seq(rng, 300, sigma);
    WaveletTree wt(s, sigma);
    std::uniform_int_distribution<uint64_t> d(1, sigma);
    for (int q = 0; q < 200; ++q) {
      uint64_t a = d(rng), b = d(rng);
      if (a > b) std::swap(a, b);
      const auto cov = wt.cover(a, b);
      // ranges are disjoint, sorted, and exactly tile [a, b]
      uint64_t expect = a;
      for (const auto& nd : cov) {
        CHECK(nd.lo == expect);
        CHECK(nd.hi >= nd.lo);
        expect = nd.hi + 1;
      }
      CHECK(expect == b + 1);
      CHECK(cov.size() <= 2 * brel::ceil_log2(b - a + 1) + 2);
    }
  }
}

TEST_CASE("map_down and map_up on the figure") {
  const auto s = fig_sequence();
  WaveletTree wt(s, 8);
  const auto leaf_e = wt.leaf(5);
  CHECK(wt.map_up(leaf_e, 2) == 7);  // 2nd E sits at root position 7
  const auto leaf_c = wt.leaf(3);
  CHECK(wt.map_down(leaf_c, 15) == 3);  // three C's in S[1,15]
  CHECK(wt.map_down(wt.root(), 9) == 9);
}

TEST_CASE("random sequences match linear scans") {
  std::mt19937_64 rng(17);
  for (auto [len, sigma] : std::vector<std::pair<uint64_t, uint64_t>>{
           {1, 1}, {50, 2}, {100, 3}, {64, 6}, {500, 17}, {2000, 256}, {10000, 100}}) {
    const auto s = random_seq(rng, len, sigma);
    WaveletTree wt(s, sigma);
    std::uniform_int_distribution<uint64_t> dp(1, len);
    std::uniform_int_distribution<uint64_t> da(1, sigma);
    for (int q = 0; q < 300; ++q) {
      const uint64_t i = dp(rng);
      const uint64_t a = da(rng);
      CHECK(wt.access(i) == s[i - 1]);
      CHECK(wt.rank(a, i) == scan_rank(s, a, i));
      CHECK(wt.rank_le(a, i) == scan_rank_le(s, a, i));
      const uint64_t cnt = scan_rank(s, a, len);
      if (cnt > 0) {
        const uint64_t j = 1 + rng() % cnt;
        uint64_t seen = 0, want = 0;
        for (uint64_t p = 0; p < len; ++p) {
          if (s[p] == a && ++seen == j) { want = p + 1; break; }
        }
        CHECK(wt.select(a, j) == want);
      }
      CHECK(!wt.select(a, cnt + 1).has_value());
    }
    // reconstruction reproduces the input
    for (uint64_t i = 1; i <= std::min<uint64_t>(len, 200); ++i)
      CHECK(wt.access(i) == s[i - 1]);
  }
}

TEST_CASE("payload is length times ceil(lg sigma)") {
  std::mt19937_64 rng(23);
  for (uint64_t sigma : {1u, 2u, 3u, 5u, 6u, 8u, 9u, 100u}) {
    const auto s = random_seq(rng, 137, sigma);
    WaveletTree wt(s, sigma);
    CHECK(wt.payload_bits() == 137 * brel::ceil_log2(sigma));
  }
}

TEST_CASE("rank_le stays within the node-visit budget") {
  std::mt19937_64 rng(29);
  const uint64_t sigma = 100;
  const auto s = random_seq(rng, 500, sigma);
  WaveletTree wt(s, sigma);
  auto& tc = brel::telemetry::counters();
  for (int q = 0; q < 200; ++q) {
    const uint64_t a = 1 + rng() % sigma;
    const uint64_t i = 1 + rng() % 500;
    tc.reset();
    (void)wt.rank_le(a, i);
    CHECK(tc.wt_nodes <= brel::ceil_log2(sigma) + 1);
  }
}

TEST_CASE("serialization round-trip") {
  std::mt19937_64 rng(31);
  for (uint64_t sigma : {1u, 6u, 256u}) {
    const auto s = random_seq(rng, 99, sigma);
    WaveletTree wt(s, sigma);
    std::stringstream ss;
    wt.save(ss);
    WaveletTree back = WaveletTree::load(ss);
    CHECK(back == wt);
    for (uint64_t i = 1; i <= 99; ++i) CHECK(back.access(i) == s[i - 1]);
  }
}
