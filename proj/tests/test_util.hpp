#pragma once
#include <cstdint>
#include <random>
#include <vector>

#include "brel/naive_relation.hpp"
#include "brel/query_engine.hpp"
#include "brel/relation.hpp"

namespace brel::testutil {

// The running fixture: sigma=4, n=5, t=8.
inline std::vector<Pair> r0_pairs() {
  return {{1, 2}, {1, 5}, {2, 1}, {2, 4}, {3, 1}, {3, 3}, {3, 5}, {4, 5}};
}

inline NaiveRelation r0_oracle() { return NaiveRelation(r0_pairs(), 5, 4); }

inline std::vector<Pair> random_pairs(std::mt19937_64& rng, uint64_t n,
                                      uint64_t sigma, uint64_t t) {
  std::vector<Pair> ps;
  if (n == 0 || sigma == 0) return ps;
  std::uniform_int_distribution<uint64_t> dl(1, sigma), dn(1, n);
  for (uint64_t i = 0; i < t; ++i) ps.push_back({dl(rng), dn(rng)});
  return ps;
}

// Oracle-backed backend exposing only a chosen native subset.
class RestrictedBackend final : public RelationBackend {
public:
  RestrictedBackend(const NaiveRelation& oracle, std::vector<Op> ops)
      : oracle_(&oracle) {
    for (Op op : ops) native_[static_cast<int>(op)] = true;
  }

  RelationDims dims() const override { return oracle_->dims(); }
  bool provides(Op op) const override { return native_[static_cast<int>(op)]; }
  const char* name() const override { return "restricted-oracle"; }

  std::vector<Pair> rel_acc(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override { return oracle_->rel_acc(a, b, x, y); }
  std::optional<Pair> rel_sel_lab_fst(uint64_t a, uint64_t j, uint64_t x, uint64_t y) const override { return oracle_->rel_sel_lab_fst(a, j, x, y); }
  std::optional<Pair> rel_min_lab_fst(uint64_t a, uint64_t x, uint64_t y, uint64_t z) const override { return oracle_->rel_min_lab_fst(a, x, y, z); }
  std::optional<Pair> rel_sel_obj_fst(uint64_t a, uint64_t b, uint64_t x, uint64_t j) const override { return oracle_->rel_sel_obj_fst(a, b, x, j); }
  std::optional<Pair> rel_min_obj_fst(uint64_t a, uint64_t b, uint64_t g, uint64_t x) const override { return oracle_->rel_min_obj_fst(a, b, g, x); }
  uint64_t rel_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override { return oracle_->rel_num(a, b, x, y); }
  uint64_t rel_rnk(uint64_t a, uint64_t x) const override { return oracle_->rel_rnk(a, x); }
  uint64_t rel_rnk_lab_fst(uint64_t a, uint64_t x, uint64_t y, uint64_t z) const override { return oracle_->rel_rnk_lab_fst(a, x, y, z); }
  uint64_t rel_rnk_obj_fst(uint64_t a, uint64_t b, uint64_t g, uint64_t x) const override { return oracle_->rel_rnk_obj_fst(a, b, g, x); }
  std::vector<uint64_t> lab_acc(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override { return oracle_->lab_acc(a, b, x, y); }
  std::vector<uint64_t> lab_acc_one(uint64_t a, uint64_t b, uint64_t x) const override { return oracle_->lab_acc_one(a, b, x); }
  std::optional<uint64_t> lab_sel(uint64_t a, uint64_t j, uint64_t x, uint64_t y) const override { return oracle_->lab_sel(a, j, x, y); }
  std::optional<uint64_t> lab_sel_one(uint64_t a, uint64_t j, uint64_t x) const override { return oracle_->lab_sel_one(a, j, x); }
  std::optional<uint64_t> lab_min(uint64_t a, uint64_t x, uint64_t y) const override { return oracle_->lab_min(a, x, y); }
  std::optional<uint64_t> lab_min_one(uint64_t a, uint64_t x) const override { return oracle_->lab_min_one(a, x); }
  uint64_t lab_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override { return oracle_->lab_num(a, b, x, y); }
  uint64_t lab_rnk(uint64_t a, uint64_t x, uint64_t y) const override { return oracle_->lab_rnk(a, x, y); }
  uint64_t lab_rnk_one(uint64_t a, uint64_t x) const override { return oracle_->lab_rnk_one(a, x); }
  std::vector<uint64_t> obj_acc(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override { return oracle_->obj_acc(a, b, x, y); }
  std::vector<uint64_t> obj_acc_one(uint64_t a, uint64_t x, uint64_t y) const override { return oracle_->obj_acc_one(a, x, y); }
  std::optional<uint64_t> obj_sel(uint64_t a, uint64_t b, uint64_t x, uint64_t j) const override { return oracle_->obj_sel(a, b, x, j); }
  std::optional<uint64_t> obj_sel_one(uint64_t a, uint64_t x, uint64_t j) const override { return oracle_->obj_sel_one(a, x, j); }
  std::optional<uint64_t> obj_min(uint64_t a, uint64_t b, uint64_t x) const override { return oracle_->obj_min(a, b, x); }
  std::optional<uint64_t> obj_min_one(uint64_t a, uint64_t x) const override { return oracle_->obj_min_one(a, x); }
  uint64_t obj_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override { return oracle_->obj_num(a, b, x, y); }
  uint64_t obj_rnk(uint64_t a, uint64_t b, uint64_t x) const override { return oracle_->obj_rnk(a, b, x); }
  uint64_t obj_rnk_one(uint64_t a, uint64_t x) const override { return oracle_->obj_rnk_one(a, x); }

private:
  const NaiveRelation* oracle_;
  bool native_[kOpCount] = {};
};

// One random valid argument tuple for an op.
inline std::vector<uint64_t> random_args(std::mt19937_64& rng, Op op,
                                         const RelationDims& d) {
  std::vector<uint64_t> args;
  for (ArgKind k : op_args(op)) {
    switch (k) {
      case ArgKind::label:
        args.push_back(rng() % (d.sigma + 2));
        break;
      case ArgKind::object:
        args.push_back(rng() % (d.n + 2));
        break;
      case ArgKind::ordinal:
        args.push_back(1 + rng() % (d.t + 2));
        break;
    }
  }
  return args;
}

// Every valid argument tuple for an op over a small universe.
inline std::vector<std::vector<uint64_t>> all_args(Op op, const RelationDims& d) {
  const auto kinds = op_args(op);
  std::vector<std::vector<uint64_t>> tuples{{}};
  for (ArgKind k : kinds) {
    uint64_t lo = 0, hi = 0;
    switch (k) {
      case ArgKind::label: hi = d.sigma + 1; break;
      case ArgKind::object: hi = d.n + 1; break;
      case ArgKind::ordinal: lo = 1; hi = d.t + 2; break;
    }
    std::vector<std::vector<uint64_t>> next;
    for (const auto& tup : tuples) {
      for (uint64_t v = lo; v <= hi; ++v) {
        auto ext = tup;
        ext.push_back(v);
        next.push_back(std::move(ext));
      }
    }
    tuples = std::move(next);
  }
  return tuples;
}

} // namespace brel::testutil
