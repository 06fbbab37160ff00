#pragma once
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "brel/bitvector.hpp"
#include "brel/query_engine.hpp"
#include "brel/small_seq.hpp"

namespace brel {

/// Arity-mu wavelet tree over [1, sigma]. Each stored node keeps the digit
/// sequence of its surviving symbols (a SmallAlphabetSequence over child
/// indices) plus an RMQ index over those digits; single-symbol ranges are
/// leaves and store nothing. The alphabet splits into near-equal contiguous
/// child ranges, the first (size mod arity) of them one symbol larger.
class GeneralizedWaveletTree {
public:
  struct Node {
    uint64_t lo, hi;
    uint64_t arity;           // number of non-empty children
    uint64_t base, extra;     // child sizes: base+1 for the first extra children
    uint32_t level;
    int32_t parent;           // -1 at the root
    uint16_t parent_digit;
    std::vector<int32_t> child;  // per digit: stored-node index, or -1 for a leaf
    SmallAlphabetSequence seq;
    RmqIndex rmq;
  };

  GeneralizedWaveletTree() = default;
  GeneralizedWaveletTree(std::span<const uint64_t> symbols, uint64_t sigma,
                         uint64_t mu, BandMode mode = BandMode::prefix);

  uint64_t sigma() const { return sigma_; }
  uint64_t size() const { return length_; }
  uint64_t mu() const { return mu_; }
  BandMode mode() const { return mode_; }
  uint64_t height() const;  // ceil(log_mu sigma)

  int32_t root() const { return nodes_.empty() ? -1 : 0; }
  const Node& node(int32_t idx) const { return nodes_[idx]; }
  uint64_t node_count() const { return nodes_.size(); }

  /// Digit of the child whose range contains alpha.
  uint64_t digit_of(const Node& v, uint64_t alpha) const;
  /// First and last label of child k.
  uint64_t child_first(const Node& v, uint64_t k) const;
  uint64_t child_last(const Node& v, uint64_t k) const;

  uint64_t access(uint64_t i) const;
  uint64_t rank(uint64_t symbol, uint64_t i) const;
  std::optional<uint64_t> select(uint64_t symbol, uint64_t j) const;
  uint64_t rank_le(uint64_t symbol, uint64_t i) const;
  uint64_t rank_le_range(uint64_t symbol, uint64_t x, uint64_t y) const;

  /// Local position in a node lifted to the root, via parent pointers.
  uint64_t lift(int32_t idx, uint64_t pos) const;

  uint64_t payload_bits() const;
  uint64_t directory_bits() const;

  void save(std::ostream& os) const;
  static GeneralizedWaveletTree load(std::istream& is, uint64_t sigma,
                                     uint64_t mu, BandMode mode, uint64_t length);

private:
  void build_shape();  // nodes, ranges and child links from (sigma, mu)

  uint64_t sigma_ = 0;
  uint64_t length_ = 0;
  uint64_t mu_ = 2;
  BandMode mode_ = BandMode::prefix;
  std::vector<Node> nodes_;  // level order, root first
};

/// BinRel-GWT: the (B, S) layout with S in a generalized wavelet tree. The
/// wider fan-out shortens descents; band bitmaps answer middle-children
/// subqueries in one probe and per-node RMQ drives the minimum-label descent.
class BinRelGwt final : public RelationBackend {
public:
  BinRelGwt() = default;
  BinRelGwt(std::vector<Pair> pairs, uint64_t n, uint64_t sigma, uint64_t mu,
            BandMode mode = BandMode::prefix);

  RelationDims dims() const override { return dims_; }
  bool provides(Op op) const override;
  const char* name() const override { return "binrel-gwt"; }

  uint64_t rel_rnk(uint64_t a, uint64_t x) const override;
  std::optional<Pair> rel_sel_lab_fst(uint64_t a, uint64_t j, uint64_t x, uint64_t y) const override;
  std::optional<Pair> rel_min_lab_fst(uint64_t a, uint64_t x, uint64_t y, uint64_t z) const override;
  std::optional<Pair> rel_sel_obj_fst(uint64_t a, uint64_t b, uint64_t x, uint64_t j) const override;
  std::optional<Pair> rel_min_obj_fst(uint64_t a, uint64_t b, uint64_t g, uint64_t x) const override;
  uint64_t lab_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override;
  std::optional<uint64_t> obj_sel_one(uint64_t a, uint64_t x, uint64_t j) const override;
  uint64_t obj_rnk_one(uint64_t a, uint64_t x) const override;

  std::optional<Pair> rel_sel_obj_fst_with(SelObjStrategy s, uint64_t a, uint64_t b,
                                           uint64_t x, uint64_t j) const;

  uint64_t mu() const { return tree_.mu(); }
  uint64_t map(uint64_t x) const;
  uint64_t unmap(uint64_t m) const;
  const GeneralizedWaveletTree& tree() const { return tree_; }
  std::vector<Pair> decode() const;

  uint64_t payload_bits() const {
    return b_.payload_bits() + tree_.payload_bits();
  }
  uint64_t directory_bits() const {
    return b_.directory_bits() + tree_.directory_bits();
  }

  void save_payload(std::ostream& os) const;
  static BinRelGwt load_payload(std::istream& is, RelationDims dims);

private:
  uint64_t count_rect(uint64_t alo, uint64_t ahi, uint64_t p, uint64_t q) const;
  uint64_t obj_major_rank(uint64_t alo, uint64_t ahi, uint64_t gamma, uint64_t z) const;
  std::optional<uint64_t> first_in_band(int32_t idx, uint64_t p, uint64_t lo,
                                        uint64_t hi) const;
  // Leftmost occurrence, local to nodes_[idx], of the minimum symbol > alpha.
  std::optional<uint64_t> min_above(int32_t idx, uint64_t p, uint64_t q,
                                    uint64_t alpha, bool& searched) const;
  std::optional<uint64_t> min_stage(int32_t idx, uint64_t p, uint64_t q) const;
  uint64_t lab_count(int32_t idx, uint64_t lo, uint64_t hi, uint64_t p,
                     uint64_t q) const;
  struct BandGroup {
    int32_t node;
    uint64_t klo, khi;
    uint64_t prefix;  // candidates start after this many band members
  };
  void cover_bands(int32_t idx, uint64_t lo, uint64_t hi, uint64_t prefix,
                   std::vector<BandGroup>& out) const;

  RelationDims dims_;
  BitVector b_;
  GeneralizedWaveletTree tree_;
};

} // namespace brel
