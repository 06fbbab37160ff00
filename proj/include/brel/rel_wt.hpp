#pragma once
#include <cstdint>
#include <iosfwd>

#include "brel/bitvector.hpp"
#include "brel/query_engine.hpp"
#include "brel/wavelet_tree.hpp"

namespace brel {


/// BinRel-WT: the (B, S) layout with S held in a binary wavelet tree, which
/// turns the label string into a navigable grid. Counting descends with
/// rank_le, label-major selection descends by in-range counts, object-major
/// queries work on the nodes covering the label range.
class BinRelWt final : public RelationBackend {
public:
  BinRelWt() = default;
  BinRelWt(std::vector<Pair> pairs, uint64_t n, uint64_t sigma);

  RelationDims dims() const override { return dims_; }
  bool provides(Op op) const override;
  const char* name() const override { return "binrel-wt"; }

  uint64_t rel_rnk(uint64_t a, uint64_t x) const override;
  std::optional<Pair> rel_sel_lab_fst(uint64_t a, uint64_t j, uint64_t x, uint64_t y) const override;
  std::optional<Pair> rel_sel_obj_fst(uint64_t a, uint64_t b, uint64_t x, uint64_t j) const override;
  std::optional<Pair> rel_min_obj_fst(uint64_t a, uint64_t b, uint64_t g, uint64_t x) const override;
  std::optional<uint64_t> obj_sel_one(uint64_t a, uint64_t x, uint64_t j) const override;
  uint64_t lab_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override;
  uint64_t obj_rnk_one(uint64_t a, uint64_t x) const override;

  std::optional<Pair> rel_sel_obj_fst_with(SelObjStrategy s, uint64_t a, uint64_t b,
                                           uint64_t x, uint64_t j) const;

  uint64_t map(uint64_t x) const;
  uint64_t unmap(uint64_t m) const;
  const BitVector& column_bits() const { return b_; }
  const WaveletTree& tree() const { return w_; }
  std::vector<Pair> decode() const;

  uint64_t payload_bits() const { return b_.payload_bits() + w_.payload_bits(); }
  uint64_t directory_bits() const {
    return b_.directory_bits() + w_.directory_bits();
  }

  void save_payload(std::ostream& os) const;
  static BinRelWt load_payload(std::istream& is, RelationDims dims);

private:
  // relnum via two rank_le descents over the mapped interval.
  uint64_t count_rect(uint64_t alo, uint64_t ahi, uint64_t p, uint64_t q) const;
  // Object-major rank of pair (gamma, z) within [alo, ahi] x [1, n].
  uint64_t obj_major_rank(uint64_t alo, uint64_t ahi, uint64_t gamma, uint64_t z) const;
  // Smallest local position >= p in v whose symbol lies in [lo, hi].
  std::optional<uint64_t> first_in_band(const WaveletTree::Node& v, uint64_t p,
                                        uint64_t lo, uint64_t hi) const;
  uint64_t lab_count(const WaveletTree::Node& v, uint64_t p, uint64_t q,
                     uint64_t lo, uint64_t hi) const;

  RelationDims dims_;
  BitVector b_;
  WaveletTree w_;
};

} // namespace brel
