#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "brel/small_seq.hpp"
#include "brel/telemetry.hpp"

using brel::BandMode;
using brel::RmqIndex;
using brel::SmallAlphabetSequence;

namespace {

const std::vector<uint16_t> kS{2, 3, 1, 3, 2, 1, 3, 4};  // the label string of R0

std::vector<uint16_t> random_seq(std::mt19937_64& rng, uint64_t len, uint64_t mu) {
  std::uniform_int_distribution<uint16_t> d(1, static_cast<uint16_t>(mu));
  std::vector<uint16_t> s(len);
  for (auto& x : s) x = d(rng);
  return s;
}

} // namespace

TEST_CASE("rank_le on the fixture") {
  for (BandMode mode : {BandMode::prefix, BandMode::full}) {
    SmallAlphabetSequence s(kS, 4, mode);
    CHECK(s.rank_le(2, 8) == 4);
    CHECK(s.rank_le(4, 5) == 5);
    CHECK(s.rank_le(3, 0) == 0);
    for (uint64_t i = 0; i <= 8; ++i) CHECK(s.rank_le(4, i) == i);
  }
}

TEST_CASE("band select next on the fixture") {
  for (BandMode mode : {BandMode::prefix, BandMode::full}) {
    SmallAlphabetSequence s(kS, 4, mode);
    CHECK(s.band_select_next(3, 4, 4) == 7);
    CHECK(!s.band_select_next(4, 4, 8).has_value());
    for (uint64_t p = 0; p < 8; ++p) CHECK(s.band_select_next(1, 4, p) == p + 1);
    CHECK_THROWS_AS((void)s.band_select_next(3, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)s.band_select_next(0, 2, 0), std::invalid_argument);
  }
}

TEST_CASE("distinct symbols in range") {
  SmallAlphabetSequence s(kS, 4);
  CHECK(s.distinct_in_range(1, 4, 1, 8) == std::vector<uint64_t>{1, 2, 3, 4});
  CHECK(s.distinct_in_range(2, 4, 3, 6) == std::vector<uint64_t>{2, 3});
  CHECK(s.distinct_in_range(1, 4, 5, 4).empty());
}

TEST_CASE("distinct probe budget") {
  std::mt19937_64 rng(5);
  for (BandMode mode : {BandMode::prefix, BandMode::full}) {
    const auto seq = random_seq(rng, 400, 16);
    SmallAlphabetSequence s(seq, 16, mode);
    auto& tc = brel::telemetry::counters();
    for (int q = 0; q < 200; ++q) {
      uint64_t p = 1 + rng() % 400, r = 1 + rng() % 400;
      if (p > r) std::swap(p, r);
      uint64_t k = 1 + rng() % 16, l = 1 + rng() % 16;
      if (k > l) std::swap(k, l);
      tc.reset();
      const auto got = s.distinct_in_range(k, l, p, r);
      CHECK(tc.distinct_probes <= 2 * got.size() + 1);
    }
  }
}

TEST_CASE("rmq on the fixture") {
  RmqIndex rmq(kS);
  CHECK(rmq.query(3, 7) == 3);
  CHECK(rmq.query(4, 8) == 6);
  for (uint64_t i = 1; i <= 8; ++i) CHECK(rmq.query(i, i) == i);
  CHECK_THROWS_AS(rmq.query(3, 2), std::out_of_range);
  CHECK_THROWS_AS(rmq.query(0, 2), std::out_of_range);
}

TEST_CASE("rmq equals leftmost argmin scan, exhaustive length <= 256") {
  std::mt19937_64 rng(9);
  for (uint64_t len : {1u, 2u, 16u, 100u, 256u}) {
    const auto seq = random_seq(rng, len, 5);
    RmqIndex rmq(seq);
    for (uint64_t i = 1; i <= len; ++i) {
      for (uint64_t j = i; j <= len; ++j) {
        uint64_t best = i;
        for (uint64_t p = i + 1; p <= j; ++p)
          if (seq[p - 1] < seq[best - 1]) best = p;
        CHECK(rmq.query(i, j) == best);
      }
    }
  }
}

TEST_CASE("both band modes agree with scans") {
  std::mt19937_64 rng(21);
  for (BandMode mode : {BandMode::prefix, BandMode::full}) {
    for (auto [len, mu] : std::vector<std::pair<uint64_t, uint64_t>>{
             {1, 1}, {70, 2}, {300, 8}, {1000, 16}, {200, 64}}) {
      const auto seq = random_seq(rng, len, mu);
      SmallAlphabetSequence s(seq, mu, mode);
      for (int q = 0; q < 200; ++q) {
        const uint64_t i = rng() % (len + 1);
        uint64_t k = 1 + rng() % mu, l = 1 + rng() % mu;
        if (k > l) std::swap(k, l);
        uint64_t sc_le = 0, sc_k = 0, sc_band = 0;
        for (uint64_t p = 0; p < i; ++p) {
          sc_le += seq[p] <= l;
          sc_k += seq[p] == k;
          sc_band += seq[p] >= k && seq[p] <= l;
        }
        CHECK(s.rank_le(l, i) == sc_le);
        CHECK(s.rank(k, i) == sc_k);
        CHECK(s.band_rank(k, l, i) == sc_band);
        // first band position after i
        uint64_t want = 0;
        for (uint64_t p = i; p < len; ++p) {
          if (seq[p] >= k && seq[p] <= l) { want = p + 1; break; }
        }
        const auto got = s.band_select_next(k, l, i);
        CHECK((want == 0 ? !got.has_value() : got == want));
        const uint64_t cnt = s.rank(k, len);
        if (cnt) {
          const uint64_t j = 1 + rng() % cnt;
          uint64_t seen = 0, pos = 0;
          for (uint64_t p = 0; p < len; ++p)
            if (seq[p] == k && ++seen == j) { pos = p + 1; break; }
          CHECK(s.select(k, j) == pos);
        }
        CHECK(!s.select(k, cnt + 1).has_value());
      }
    }
  }
}

TEST_CASE("serialization round-trip") {
  std::mt19937_64 rng(33);
  for (uint64_t mu : {1u, 2u, 8u, 64u}) {
    const auto seq = random_seq(rng, 123, mu);
    SmallAlphabetSequence s(seq, mu);
    std::stringstream ss;
    s.save(ss);
    auto back = SmallAlphabetSequence::load(ss, BandMode::prefix);
    REQUIRE(back.size() == s.size());
    for (uint64_t i = 1; i <= s.size(); ++i) CHECK(back.access(i) == s.access(i));
  }
}
