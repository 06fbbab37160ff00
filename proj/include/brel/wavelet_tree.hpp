#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "brel/bitvector.hpp"

namespace brel {

inline uint64_t ceil_log2(uint64_t x) {
  if (x <= 1) return 0;
  uint64_t h = 0;
  uint64_t v = 1;
  while (v < x) {
    v <<= 1;
    ++h;
  }
  return h;
}

/// Balanced wavelet tree over symbols [1, sigma], stored as one concatenated
/// bitvector per level. Every level holds exactly length() bits: alphabet
/// ranges that shrink to a single symbol before the bottom level continue as
/// all-zero runs, so the payload is always length * ceil(lg sigma) bits.
///
/// A node over [lo, hi] splits at mid = (lo + hi) / 2 with the left child
/// taking [lo, mid]. Node handles expose the traversal primitives the
/// relation structures build on; local positions inside a node are 1-based.
class WaveletTree {
public:
  struct Node {
    uint64_t level;   // 0 = root; level == height() means the leaf row
    uint64_t offset;  // 0-based start of the node's segment within its level
    uint64_t size;
    uint64_t lo, hi;  // alphabet range
    uint64_t mid() const { return (lo + hi) / 2; }
    bool is_leaf() const { return lo == hi; }
  };

  WaveletTree() = default;
  WaveletTree(std::span<const uint64_t> symbols, uint64_t sigma);

  uint64_t size() const { return length_; }
  uint64_t sigma() const { return sigma_; }
  uint64_t height() const { return levels_.size(); }

  uint64_t access(uint64_t i) const;  // 1 <= i <= size
  uint64_t rank(uint64_t symbol, uint64_t i) const;  // 0 <= i <= size
  std::optional<uint64_t> select(uint64_t symbol, uint64_t j) const;
  /// |{p <= i : S[p] <= symbol}|; symbol 0 gives 0, symbol >= sigma gives i.
  uint64_t rank_le(uint64_t symbol, uint64_t i) const;
  /// Count of symbols <= symbol within S[x, y] (0 when x > y).
  uint64_t rank_le_range(uint64_t symbol, uint64_t x, uint64_t y) const;

  Node root() const { return Node{0, 0, length_, 1, sigma_}; }
  /// Highest node on the path of `symbol` whose range is the single symbol.
  Node leaf(uint64_t symbol) const;

  /// Number of 0s (resp. 1s) among the first p local positions of the node.
  uint64_t node_rank0(const Node& v, uint64_t p) const;
  uint64_t node_rank1(const Node& v, uint64_t p) const;
  /// Local position of the j-th 0 (resp. 1) inside the node.
  uint64_t node_select0(const Node& v, uint64_t j) const;
  uint64_t node_select1(const Node& v, uint64_t j) const;
  bool node_bit(const Node& v, uint64_t p) const;

  Node left_child(const Node& v) const;
  Node right_child(const Node& v) const;

  /// Canonical minimal cover of [alpha, beta] by maximal nodes, left to right.
  std::vector<Node> cover(uint64_t alpha, uint64_t beta) const;

  /// Root-level prefix boundary p (0..size) mapped to a node-local prefix.
  uint64_t map_down(const Node& target, uint64_t p) const;
  /// Node-local position (1..v.size) mapped to its root position.
  uint64_t map_up(const Node& v, uint64_t p) const;

  uint64_t payload_bits() const;
  uint64_t directory_bits() const;

  /// Header (sigma, length as 64-bit LE) followed by the level bitvectors in
  /// root-to-leaf order.
  void save(std::ostream& os) const;
  static WaveletTree load(std::istream& is);

  bool operator==(const WaveletTree& o) const {
    return sigma_ == o.sigma_ && length_ == o.length_ && levels_ == o.levels_;
  }

private:
  std::vector<Node> path_to(const Node& target) const;
  void check_symbol(uint64_t symbol) const;

  uint64_t sigma_ = 0;
  uint64_t length_ = 0;
  std::vector<BitVector> levels_;
};

} // namespace brel
