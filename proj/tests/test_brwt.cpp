#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "brel/brwt.hpp"
#include "test_util.hpp"

using namespace brel;

namespace {

Brwt r0_brwt() { return Brwt(testutil::r0_pairs(), 5, 4); }

std::vector<Pair> object_major_sorted(std::vector<Pair> ps) {
  std::sort(ps.begin(), ps.end(), object_major_less);
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

} // namespace

TEST_CASE("fixture structure") {
  auto r = r0_brwt();
  REQUIRE(!r.nodes().empty());
  const auto& root = r.nodes()[0];
  REQUIRE(root.size() == 5);
  const std::vector<int> want_left{1, 1, 0, 1, 1};
  const std::vector<int> want_right{1, 0, 1, 0, 1};
  for (uint64_t i = 1; i <= 5; ++i) {
    CHECK(root.left.access(i) == (want_left[i - 1] == 1));
    CHECK(root.right.access(i) == (want_right[i - 1] == 1));
  }
  CHECK(r.row_unary().size() == 4 + 8);
  CHECK(r.row_unary().ones() == 8);
  CHECK(r.leaf_level_ones() == 8);
  CHECK(r.lab(5) == 3);
  CHECK(r.poslab(3) == 7);
  CHECK(r.poslab(4) == 8);
  CHECK(r.decode() == object_major_sorted(testutil::r0_pairs()));
}

TEST_CASE("degenerate structures") {
  Brwt empty({}, 5, 4);
  CHECK(empty.leaf_level_ones() == 0);
  CHECK(empty.rel_num(1, 4, 1, 5) == 0);
  CHECK(!empty.rel_min_lab_fst(1, 1, 5, 1).has_value());
  const auto& root = empty.nodes()[0];
  CHECK(root.left.ones() == 0);
  CHECK(root.right.ones() == 0);

  Brwt single({{1, 1}}, 3, 4);
  CHECK(single.leaf_level_ones() == 1);
  CHECK(single.rel_num(1, 4, 1, 3) == 1);
  CHECK(single.rel_min_obj_fst(1, 4, 1, 1) == Pair{1, 1});

  Brwt one_label({{1, 2}, {1, 3}}, 4, 1);  // sigma = 1: root only
  CHECK(one_label.rel_num(1, 1, 1, 4) == 2);
  CHECK(one_label.lab_num(1, 1, 1, 4) == 1);
  CHECK(one_label.obj_sel_one(1, 1, 2) == 3);
  CHECK(one_label.leaf_level_ones() == 2);
}

TEST_CASE("fixture operation values") {
  auto r = r0_brwt();
  CHECK(r.rel_num(2, 3, 1, 3) == 3);
  CHECK(r.rel_num(1, 4, 1, 5) == 8);
  CHECK(r.rel_num(3, 2, 1, 5) == 0);
  CHECK(r.rel_min_lab_fst(2, 1, 5, 3) == Pair{2, 4});
  CHECK(r.rel_min_lab_fst(1, 1, 5, 1) == Pair{1, 2});
  CHECK(r.rel_min_obj_fst(2, 3, 3, 1) == Pair{3, 1});
  CHECK(r.rel_min_obj_fst(3, 4, 3, 2) == Pair{3, 3});
  CHECK(r.rel_min_obj_fst(1, 4, 1, 5) == Pair{1, 5});  // x = n boundary
  CHECK(r.obj_sel_one(3, 2, 2) == 5);
  CHECK(!r.obj_sel_one(3, 2, 9).has_value());
  CHECK(r.obj_sel_one(1, 1, 1) == 2);
  CHECK(r.lab_num(1, 4, 1, 5) == 4);
  CHECK(r.lab_num(1, 2, 3, 3) == 0);
  CHECK(r.lab_num(4, 3, 1, 5) == 0);
}

TEST_CASE("downward mapping consistency for every pair") {
  std::mt19937_64 rng(151);
  for (int round = 0; round < 20; ++round) {
    const uint64_t n = 1 + rng() % 20, sigma = 1 + rng() % 20;
    const uint64_t t = rng() % (n * sigma + 1);
    const auto pairs = testutil::random_pairs(rng, n, sigma, t);
    Brwt r(pairs, n, sigma);
    CHECK(r.leaf_level_ones() == r.dims().t);
    CHECK(r.decode() == object_major_sorted(pairs));
    // Sum over leaf projections of the full object range equals t.
    CHECK(r.rel_num(1, sigma, 1, n) == r.dims().t);
  }
}

TEST_CASE("native ops equal the oracle, exhaustive small") {
  std::mt19937_64 rng(157);
  for (int round = 0; round < 30; ++round) {
    const uint64_t n = 1 + rng() % 8, sigma = 1 + rng() % 8;
    const uint64_t t = rng() % (n * sigma + 1);
    const auto pairs = testutil::random_pairs(rng, n, sigma, t);
    NaiveRelation oracle(pairs, n, sigma);
    Brwt r(pairs, n, sigma);
    for (uint64_t a = 0; a <= sigma + 1; ++a)
      for (uint64_t b = 0; b <= sigma + 1; ++b)
        for (uint64_t x = 0; x <= n + 1; ++x) {
          for (uint64_t y = 0; y <= n + 1; ++y) {
            CHECK(r.rel_num(a, b, x, y) == oracle.rel_num(a, b, x, y));
            CHECK(r.lab_num(a, b, x, y) == oracle.lab_num(a, b, x, y));
            CHECK(r.rel_min_lab_fst(a, x, y, b) == oracle.rel_min_lab_fst(a, x, y, b));
          }
          CHECK(r.rel_min_obj_fst(a, b, 1 + (a + b) % sigma, x) ==
                oracle.rel_min_obj_fst(a, b, 1 + (a + b) % sigma, x));
          for (uint64_t j = 1; j <= t + 2; ++j)
            CHECK(r.obj_sel_one(a, x, j) == oracle.obj_sel_one(a, x, j));
        }
  }
}

TEST_CASE("full contract through the reduction layer") {
  std::mt19937_64 rng(163);
  for (int round = 0; round < 25; ++round) {
    const uint64_t n = 1 + rng() % 48, sigma = 1 + rng() % 48;
    const uint64_t t = rng() % (n * sigma + 1);
    const auto pairs = testutil::random_pairs(rng, n, sigma, t);
    NaiveRelation oracle(pairs, n, sigma);
    Brwt r(pairs, n, sigma);
    QueryEngine e(r), ref(oracle);
    // BRWT has no native selections; both must come from iterated minima.
    CHECK(e.strategy_name(Op::rel_sel_lab_fst) ==
          "rel_sel_lab_fst<-rel_min_lab_fst(iterate)");
    CHECK(e.strategy_name(Op::rel_sel_obj_fst) ==
          "rel_sel_obj_fst<-rel_min_obj_fst(iterate)");
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

TEST_CASE("serialization round-trip") {
  std::mt19937_64 rng(167);
  for (auto [n, sigma, t] : std::vector<std::array<uint64_t, 3>>{
           {30, 17, 120}, {7, 1, 5}, {1, 9, 4}, {6, 6, 0}}) {
    const auto pairs = testutil::random_pairs(rng, n, sigma, t);
    Brwt r(pairs, n, sigma);
    std::stringstream ss;
    r.save_payload(ss);
    auto back = Brwt::load_payload(ss, r.dims());
    CHECK(back.decode() == r.decode());
    CHECK(back.leaf_level_ones() == r.leaf_level_ones());
    NaiveRelation oracle(pairs, n, sigma);
    QueryEngine e(back), ref(oracle);
    for (int o = 0; o < kOpCount; ++o) {
      const Op op = static_cast<Op>(o);
      for (int q = 0; q < 8; ++q) {
        const auto args = testutil::random_args(rng, op, oracle.dims());
        REQUIRE(run_op(e, op, args) == run_op(ref, op, args));
      }
    }
  }
}
