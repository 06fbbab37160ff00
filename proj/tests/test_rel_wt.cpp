#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "brel/rel_wt.hpp"
#include "brel/telemetry.hpp"
#include "test_util.hpp"

using namespace brel;

TEST_CASE("fixture operation values") {
  BinRelWt r(testutil::r0_pairs(), 5, 4);
  CHECK(r.rel_rnk(2, 4) == 3);
  CHECK(r.rel_rnk(0, 3) == 0);
  CHECK(r.rel_rnk(4, 5) == 8);
  CHECK(r.rel_sel_lab_fst(2, 2, 1, 5) == Pair{2, 4});
  CHECK(!r.rel_sel_lab_fst(1, 9, 1, 5).has_value());
  CHECK(r.rel_sel_lab_fst(1, 1, 2, 2) == Pair{1, 2});
  CHECK(r.rel_sel_obj_fst(2, 3, 2, 2) == Pair{2, 4});
  CHECK(r.rel_sel_obj_fst(1, 4, 1, 3) == Pair{1, 2});
  CHECK(r.rel_sel_obj_fst(1, 4, 1, 1) == Pair{2, 1});
  CHECK(!r.rel_sel_obj_fst(1, 4, 1, 9).has_value());
  CHECK(r.rel_min_obj_fst(2, 3, 3, 1) == Pair{3, 1});
  CHECK(r.rel_min_obj_fst(4, 4, 4, 5) == Pair{4, 5});
  CHECK(r.obj_sel_one(3, 2, 2) == 5);
  CHECK(r.obj_sel_one(1, 1, 1) == 2);
  CHECK(!r.obj_sel_one(1, 1, 3).has_value());
  CHECK(r.lab_num(1, 4, 1, 5) == 4);
  CHECK(r.lab_num(1, 4, 3, 3) == 1);
  CHECK(r.lab_num(2, 1, 1, 5) == 0);
  CHECK(r.obj_rnk_one(3, 4) == 2);
}

TEST_CASE("empty relation") {
  BinRelWt r({}, 5, 4);
  CHECK(!r.rel_min_obj_fst(1, 4, 1, 1).has_value());
  CHECK(r.rel_rnk(4, 5) == 0);
  CHECK(r.lab_num(1, 4, 1, 5) == 0);
}

TEST_CASE("oracle equivalence on the native ops, exhaustive small") {
  std::mt19937_64 rng(71);
  for (int round = 0; round < 30; ++round) {
    const uint64_t n = 1 + rng() % 8, sigma = 1 + rng() % 8;
    const uint64_t t = rng() % (n * sigma + 1);
    const auto pairs = testutil::random_pairs(rng, n, sigma, t);
    NaiveRelation oracle(pairs, n, sigma);
    BinRelWt r(pairs, n, sigma);
    for (uint64_t a = 0; a <= sigma + 1; ++a) {
      for (uint64_t x = 0; x <= n + 1; ++x) {
        if (a <= sigma && x <= n) CHECK(r.rel_rnk(a, x) == oracle.rel_rnk(a, x));
        CHECK(r.obj_rnk_one(a, x) == oracle.obj_rnk_one(a, x));
        for (uint64_t b = 0; b <= sigma + 1; ++b) {
          const uint64_t g = 1 + rng() % sigma;
          CHECK(r.rel_min_obj_fst(a, b, g, x) == oracle.rel_min_obj_fst(a, b, g, x));
          for (uint64_t y = 0; y <= n + 1; ++y)
            CHECK(r.lab_num(a, b, x, y) == oracle.lab_num(a, b, x, y));
        }
        for (uint64_t j = 1; j <= t + 2; ++j) {
          const uint64_t y = 1 + rng() % n;
          CHECK(r.rel_sel_lab_fst(a, j, x, y) == oracle.rel_sel_lab_fst(a, j, x, y));
          CHECK(r.obj_sel_one(a, x, j) == oracle.obj_sel_one(a, x, j));
        }
      }
    }
  }
}

TEST_CASE("rel_sel_obj_fst: both strategies equal the oracle") {
  std::mt19937_64 rng(73);
  for (int round = 0; round < 25; ++round) {
    const uint64_t n = 1 + rng() % 12, sigma = 1 + rng() % 12;
    const uint64_t t = rng() % (n * sigma + 1);
    const auto pairs = testutil::random_pairs(rng, n, sigma, t);
    NaiveRelation oracle(pairs, n, sigma);
    BinRelWt r(pairs, n, sigma);
    for (uint64_t a = 0; a <= sigma + 1; ++a)
      for (uint64_t b = 0; b <= sigma + 1; ++b)
        for (uint64_t x = 0; x <= n + 1; ++x)
          for (uint64_t j = 1; j <= t + 2; ++j) {
            const auto want = oracle.rel_sel_obj_fst(a, b, x, j);
            CHECK(r.rel_sel_obj_fst_with(SelObjStrategy::column_search, a, b, x, j) == want);
            CHECK(r.rel_sel_obj_fst_with(SelObjStrategy::cover_search, a, b, x, j) == want);
          }
  }
}

TEST_CASE("full contract through the reduction layer") {
  std::mt19937_64 rng(79);
  for (int round = 0; round < 25; ++round) {
    const uint64_t n = 1 + rng() % 48, sigma = 1 + rng() % 48;
    const uint64_t t = rng() % (n * sigma + 1);
    const auto pairs = testutil::random_pairs(rng, n, sigma, t);
    NaiveRelation oracle(pairs, n, sigma);
    BinRelWt r(pairs, n, sigma);
    QueryEngine e(r);
    QueryEngine ref(oracle);
    for (int o = 0; o < kOpCount; ++o) {
      const Op op = static_cast<Op>(o);
      for (int q = 0; q < 15; ++q) {
        const auto args = testutil::random_args(rng, op, oracle.dims());
        CAPTURE(op_name(op));
        REQUIRE(run_op(e, op, args) == run_op(ref, op, args));
      }
    }
  }
}

TEST_CASE("payload equals t ceil(lg sigma) + (n + t) exactly") {
  std::mt19937_64 rng(83);
  for (int round = 0; round < 20; ++round) {
    const uint64_t n = 1 + rng() % 40, sigma = 1 + rng() % 40;
    const uint64_t t = rng() % (n * sigma + 1);
    BinRelWt r(testutil::random_pairs(rng, n, sigma, t), n, sigma);
    const uint64_t tt = r.dims().t;
    CHECK(r.payload_bits() == tt * ceil_log2(sigma) + (n + tt));
  }
}

TEST_CASE("node-visit budgets") {
  std::mt19937_64 rng(89);
  const uint64_t n = 200, sigma = 200;
  const auto pairs = testutil::random_pairs(rng, n, sigma, 3000);
  BinRelWt r(pairs, n, sigma);
  NaiveRelation oracle(pairs, n, sigma);
  const uint64_t h = ceil_log2(sigma);
  auto& tc = telemetry::counters();
  for (int q = 0; q < 500; ++q) {
    const uint64_t a = 1 + rng() % sigma;
    const uint64_t x = 1 + rng() % n;
    tc.reset();
    (void)r.rel_rnk(a, x);
    CHECK(tc.wt_nodes <= h + 1);

    uint64_t xx = 1 + rng() % n, yy = 1 + rng() % n;
    if (xx > yy) std::swap(xx, yy);
    const uint64_t j = 1 + rng() % 40;
    tc.reset();
    (void)r.rel_sel_lab_fst(a, j, xx, yy);
    CHECK(tc.wt_nodes <= 2 * h + 2);

    uint64_t aa = 1 + rng() % sigma, bb = 1 + rng() % sigma;
    if (aa > bb) std::swap(aa, bb);
    tc.reset();
    const uint64_t got = r.lab_num(aa, bb, xx, yy);
    if (got > 0) {
      CHECK(tc.wt_nodes <= 2 * got * h);
    } else {
      CHECK(tc.wt_nodes <= 2 * h + 2);
    }
  }
}

TEST_CASE("serialization round-trip") {
  std::mt19937_64 rng(97);
  const auto pairs = testutil::random_pairs(rng, 30, 17, 120);
  BinRelWt r(pairs, 30, 17);
  std::stringstream ss;
  r.save_payload(ss);
  auto back = BinRelWt::load_payload(ss, r.dims());
  CHECK(back.decode() == r.decode());
  NaiveRelation oracle(pairs, 30, 17);
  QueryEngine e(back), ref(oracle);
  for (int o = 0; o < kOpCount; ++o) {
    const Op op = static_cast<Op>(o);
    for (int q = 0; q < 10; ++q) {
      const auto args = testutil::random_args(rng, op, oracle.dims());
      REQUIRE(run_op(e, op, args) == run_op(ref, op, args));
    }
  }
}
