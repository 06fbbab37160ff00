#pragma once
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "brel/bitvector.hpp"
#include "brel/query_engine.hpp"

namespace brel {

/// BRWT: a wavelet tree over the label ranges where every internal node keeps
/// two presence bitmaps over its surviving objects, B_left and B_right (an
/// object may survive into both children). Leaves store nothing; pairs are
/// counted only at the leaf level. A row-cardinality bitmap over [1, sigma+t]
/// provides lab/poslab.
class Brwt final : public RelationBackend {
public:
  struct Node {
    uint64_t lo = 0, hi = 0;
    BitVector left, right;
    int32_t left_child = -1, right_child = -1;  // -1: that side is a leaf
    int32_t parent = -1;
    bool from_right = false;
    uint64_t mid() const { return (lo + hi) / 2; }
    uint64_t size() const { return left.size(); }
  };

  Brwt() = default;
  Brwt(std::vector<Pair> pairs, uint64_t n, uint64_t sigma);

  RelationDims dims() const override { return dims_; }
  bool provides(Op op) const override;
  const char* name() const override { return "brwt"; }

  uint64_t rel_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override;
  std::optional<Pair> rel_min_lab_fst(uint64_t a, uint64_t x, uint64_t y, uint64_t z) const override;
  std::optional<Pair> rel_min_obj_fst(uint64_t a, uint64_t b, uint64_t g, uint64_t x) const override;
  std::optional<uint64_t> obj_sel_one(uint64_t a, uint64_t x, uint64_t j) const override;
  uint64_t lab_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override;

  /// lab(r) = 1 + rank0(B, select1(B, r)): label of the r-th pair in the
  /// label-major traversal; 1 <= r <= t.
  uint64_t lab(uint64_t r) const;
  /// poslab(alpha) = rank1(B, select0(B, alpha)): cumulative pair count
  /// through label alpha (end of alpha's run).
  uint64_t poslab(uint64_t alpha) const;

  const BitVector& row_unary() const { return row_unary_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  /// Ones summed over the bitmaps whose child is a leaf; equals t.
  uint64_t leaf_level_ones() const;
  std::vector<Pair> decode() const;

  uint64_t payload_bits() const;
  uint64_t directory_bits() const;

  void save_payload(std::ostream& os) const;
  static Brwt load_payload(std::istream& is, RelationDims dims);

private:
  struct Candidate {
    uint64_t pos;      // local to the node currently unwinding
    int32_t src;       // stored node the candidate came from, -1 for a leaf
    uint64_t src_pos;  // local position in that source node
    uint64_t leaf_label = 0;  // valid when src == -1
  };

  void build_shape(uint64_t sigma);
  uint64_t count(int32_t idx, uint64_t lo, uint64_t hi, uint64_t p, uint64_t q) const;
  uint64_t distinct(int32_t idx, uint64_t lo, uint64_t hi, uint64_t p, uint64_t q) const;
  // First cover node of [lo, hi] (left to right) with a nonempty projection
  // of [p, q]; answers (leaf label, leaf-local start position lifted to root).
  std::optional<Pair> first_label(int32_t idx, uint64_t lo, uint64_t hi,
                                  uint64_t p, uint64_t q) const;
  // Presence descent for a single column position; smallest related label in
  // [lo, hi] for the object at local position pos of node idx.
  std::optional<uint64_t> column_min_label(int32_t idx, uint64_t lo, uint64_t hi,
                                           uint64_t pos) const;
  std::optional<Candidate> next_object(int32_t idx, uint64_t lo, uint64_t hi,
                                       uint64_t q) const;
  uint64_t leftmost_leaf_label(int32_t idx, uint64_t pos) const;
  uint64_t lift(int32_t idx, uint64_t pos) const;

  RelationDims dims_;
  BitVector row_unary_;
  std::vector<Node> nodes_;  // level order, root first (present when sigma >= 1)
};

} // namespace brel
