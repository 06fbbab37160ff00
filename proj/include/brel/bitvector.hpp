#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace brel {

/// Plain bitvector with rank/select/access. Positions are 1-based; rank(b, i)
/// counts occurrences of b in positions [1, i]. The payload is packed LSB-first
/// into 64-bit words; rank uses a two-level directory (absolute counts per
/// superblock, relative counts per 512-bit block) and select binary-searches
/// the directories before scanning one block.
class BitVector {
public:
  BitVector() = default;
  explicit BitVector(const std::vector<bool>& bits);

  uint64_t size() const { return size_; }
  uint64_t ones() const { return ones_; }
  uint64_t zeros() const { return size_ - ones_; }

  /// Stored bit at position i, 1 <= i <= size.
  bool access(uint64_t i) const;

  /// Number of positions p <= i with the given bit, 0 <= i <= size.
  uint64_t rank(bool bit, uint64_t i) const {
    return bit ? rank1(i) : rank0(i);
  }
  uint64_t rank1(uint64_t i) const;
  uint64_t rank0(uint64_t i) const { return i - rank1(check_rank_pos(i)); }

  /// Position of the j-th occurrence (j >= 1), or nullopt past the last one.
  std::optional<uint64_t> select(bool bit, uint64_t j) const {
    return bit ? select1(j) : select0(j);
  }
  std::optional<uint64_t> select1(uint64_t j) const;
  std::optional<uint64_t> select0(uint64_t j) const;

  /// rank(bit, y) - rank(bit, x-1); zero when x > y. Requires x >= 1, y <= size.
  uint64_t range_rank(bool bit, uint64_t x, uint64_t y) const;

  uint64_t payload_bits() const { return size_; }
  uint64_t directory_bits() const;

  /// Format: 64-bit LE length, then ceil(size/64) packed words (LE, LSB-first,
  /// zero-padded). Directories are rebuilt on load.
  void save(std::ostream& os) const;
  static BitVector load(std::istream& is);

  bool operator==(const BitVector& other) const {
    return size_ == other.size_ && words_ == other.words_;
  }

private:
  static constexpr uint64_t kBlockBits = 512;
  static constexpr uint64_t kSuperBits = 1ull << 16;
  static constexpr uint64_t kBlocksPerSuper = kSuperBits / kBlockBits;

  void build_directories();
  uint64_t check_rank_pos(uint64_t i) const;
  // Absolute rank1 at the start of block b.
  uint64_t block_rank(uint64_t b) const {
    return super_[b / kBlocksPerSuper] + block_[b];
  }
  std::optional<uint64_t> select_impl(uint64_t j, bool bit) const;

  uint64_t size_ = 0;
  uint64_t ones_ = 0;
  std::vector<uint64_t> words_;
  std::vector<uint64_t> super_;  // absolute rank1 at superblock start
  std::vector<uint32_t> block_;  // rank1 relative to the enclosing superblock
};

} // namespace brel
