#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace brel {

/// Exact range-minimum index over a small-alphabet sequence: sparse table of
/// argmin positions, leftmost winner on ties. Rebuilt from the payload, never
/// serialized.
class RmqIndex {
public:
  RmqIndex() = default;
  explicit RmqIndex(std::span<const uint16_t> values);

  uint64_t size() const { return values_.size(); }
  /// Leftmost argmin position in [i, j], 1-based inclusive, 1 <= i <= j <= size.
  uint64_t query(uint64_t i, uint64_t j) const;

  uint64_t directory_bits() const;

private:
  uint32_t better(uint32_t a, uint32_t b) const {
    if (values_[a] != values_[b]) return values_[a] < values_[b] ? a : b;
    return a < b ? a : b;
  }
  std::vector<uint16_t> values_;
  std::vector<std::vector<uint32_t>> table_;  // table_[k][i]: argmin of [i, i+2^k)
};

enum class BandMode : uint8_t {
  prefix = 0,  // only cumulative rank_le directories; band queries by arithmetic
  full = 1,    // additionally one position index per band [k, l]
};

/// Sequence over a small alphabet [1, mu] with rank/select per symbol,
/// cumulative rank_le, and the simulated band bitmaps B_{k,l} (positions whose
/// symbol lies in [k, l]). The payload is stored plainly; directories hold
/// per-block cumulative counts and, in full mode, explicit per-band position
/// indexes. Positions are 1-based.
class SmallAlphabetSequence {
public:
  SmallAlphabetSequence() = default;
  SmallAlphabetSequence(std::span<const uint16_t> symbols, uint64_t mu,
                        BandMode mode = BandMode::prefix);

  uint64_t size() const { return payload_.size(); }
  uint64_t mu() const { return mu_; }
  BandMode mode() const { return mode_; }

  uint16_t access(uint64_t i) const;
  uint64_t rank(uint64_t k, uint64_t i) const;
  /// |{p <= i : S[p] <= k}|; k = 0 gives 0, k >= mu gives i.
  uint64_t rank_le(uint64_t k, uint64_t i) const;
  std::optional<uint64_t> select(uint64_t k, uint64_t j) const;

  /// Ones of B_{k,l} in [1, p].
  uint64_t band_rank(uint64_t k, uint64_t l, uint64_t p) const;
  /// Smallest q > p with S[q] in [k, l]; select1(B_{k,l}, rank1(B_{k,l}, p)+1).
  std::optional<uint64_t> band_select_next(uint64_t k, uint64_t l,
                                           uint64_t p) const;
  /// Position of the m-th symbol of [k, l]; select1(B_{k,l}, m).
  std::optional<uint64_t> band_select(uint64_t k, uint64_t l, uint64_t m) const;
  /// Distinct symbols of [k, l] occurring in S[p, q], ascending, found by
  /// first-occurrence splitting (one band probe per recursion step).
  std::vector<uint64_t> distinct_in_range(uint64_t k, uint64_t l, uint64_t p,
                                          uint64_t q) const;

  uint64_t payload_bits() const;
  uint64_t directory_bits() const;

  /// Header (mu, length as 64-bit LE) then symbols packed at ceil(lg mu) bits,
  /// LSB-first in 64-bit LE words. Directories are rebuilt on load.
  void save(std::ostream& os) const;
  static SmallAlphabetSequence load(std::istream& is, BandMode mode);

private:
  static constexpr uint64_t kBlock = 64;
  void build_directories();
  void check_band(uint64_t k, uint64_t l) const;
  uint64_t band_index(uint64_t k, uint64_t l) const {
    return (k - 1) * (mu_ + 1) - (k - 1) * k / 2 + (l - k);
  }
  // Cumulative count of symbols <= k within the first b blocks.
  uint64_t cum(uint64_t b, uint64_t k) const { return cum_[b * (mu_ + 1) + k]; }
  void distinct_rec(uint64_t k, uint64_t l, uint64_t p, uint64_t q,
                    std::vector<uint64_t>& out) const;

  uint64_t mu_ = 0;
  BandMode mode_ = BandMode::prefix;
  std::vector<uint16_t> payload_;
  std::vector<uint32_t> cum_;
  std::vector<std::vector<uint32_t>> band_pos_;  // full mode only
};

} // namespace brel
