#pragma once
#include <cstdint>
#include <vector>

#include "brel/query_engine.hpp"
#include "brel/relation.hpp"

namespace brel {

/// Brute-force reference implementation of the full query contract, built by
/// direct enumeration over sorted pair lists. Every structure is validated
/// against it; keep each operation a literal transcription of its definition.
class NaiveRelation final : public RelationBackend {
public:
  NaiveRelation() = default;
  NaiveRelation(std::vector<Pair> pairs, uint64_t n, uint64_t sigma);

  RelationDims dims() const override { return dims_; }
  bool provides(Op) const override { return true; }
  const char* name() const override { return "oracle"; }

  const std::vector<Pair>& pairs_label_major() const { return label_major_; }
  const std::vector<Pair>& pairs_object_major() const { return object_major_; }
  bool has(uint64_t label, uint64_t object) const;

  std::vector<Pair> rel_acc(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override;
  std::optional<Pair> rel_sel_lab_fst(uint64_t a, uint64_t j, uint64_t x, uint64_t y) const override;
  std::optional<Pair> rel_min_lab_fst(uint64_t a, uint64_t x, uint64_t y, uint64_t z) const override;
  std::optional<Pair> rel_sel_obj_fst(uint64_t a, uint64_t b, uint64_t x, uint64_t j) const override;
  std::optional<Pair> rel_min_obj_fst(uint64_t a, uint64_t b, uint64_t g, uint64_t x) const override;
  uint64_t rel_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override;
  uint64_t rel_rnk(uint64_t a, uint64_t x) const override;
  uint64_t rel_rnk_lab_fst(uint64_t a, uint64_t x, uint64_t y, uint64_t z) const override;
  uint64_t rel_rnk_obj_fst(uint64_t a, uint64_t b, uint64_t g, uint64_t x) const override;
  std::vector<uint64_t> lab_acc(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override;
  std::vector<uint64_t> lab_acc_one(uint64_t a, uint64_t b, uint64_t x) const override;
  std::optional<uint64_t> lab_sel(uint64_t a, uint64_t j, uint64_t x, uint64_t y) const override;
  std::optional<uint64_t> lab_sel_one(uint64_t a, uint64_t j, uint64_t x) const override;
  std::optional<uint64_t> lab_min(uint64_t a, uint64_t x, uint64_t y) const override;
  std::optional<uint64_t> lab_min_one(uint64_t a, uint64_t x) const override;
  uint64_t lab_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override;
  uint64_t lab_rnk(uint64_t a, uint64_t x, uint64_t y) const override;
  uint64_t lab_rnk_one(uint64_t a, uint64_t x) const override;
  std::vector<uint64_t> obj_acc(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override;
  std::vector<uint64_t> obj_acc_one(uint64_t a, uint64_t x, uint64_t y) const override;
  std::optional<uint64_t> obj_sel(uint64_t a, uint64_t b, uint64_t x, uint64_t j) const override;
  std::optional<uint64_t> obj_sel_one(uint64_t a, uint64_t x, uint64_t j) const override;
  std::optional<uint64_t> obj_min(uint64_t a, uint64_t b, uint64_t x) const override;
  std::optional<uint64_t> obj_min_one(uint64_t a, uint64_t x) const override;
  uint64_t obj_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override;
  uint64_t obj_rnk(uint64_t a, uint64_t b, uint64_t x) const override;
  uint64_t obj_rnk_one(uint64_t a, uint64_t x) const override;

private:
  // True when label gamma relates to some object in [x, y] (clipped).
  bool row_hits(uint64_t gamma, uint64_t x, uint64_t y) const;
  bool col_hits(uint64_t z, uint64_t a, uint64_t b) const;

  RelationDims dims_;
  std::vector<Pair> label_major_;
  std::vector<Pair> object_major_;
  std::vector<std::vector<uint64_t>> row_objects_;  // per label, ascending
  std::vector<std::vector<uint64_t>> col_labels_;   // per object, ascending
};

} // namespace brel
