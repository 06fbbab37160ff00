#pragma once
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "brel/bitvector.hpp"
#include "brel/query_engine.hpp"
#include "brel/wavelet_tree.hpp"

namespace brel {

/// access/rank/select view over the label string S. BinRelStr only ever talks
/// to this interface, so any sequence structure can stand behind it.
class LabelSequence {
public:
  virtual ~LabelSequence() = default;
  virtual uint64_t size() const = 0;
  virtual uint64_t sigma() const = 0;
  virtual uint64_t access(uint64_t i) const = 0;
  virtual uint64_t rank(uint64_t symbol, uint64_t i) const = 0;
  virtual std::optional<uint64_t> select(uint64_t symbol, uint64_t j) const = 0;
  virtual uint64_t payload_bits() const = 0;
  virtual uint64_t directory_bits() const = 0;

  uint64_t range_rank(uint64_t symbol, uint64_t x, uint64_t y) const {
    return x > y ? 0 : rank(symbol, y) - rank(symbol, x - 1);
  }
};

class WaveletSequence final : public LabelSequence {
public:
  WaveletSequence() = default;
  explicit WaveletSequence(WaveletTree wt) : wt_(std::move(wt)) {}
  uint64_t size() const override { return wt_.size(); }
  uint64_t sigma() const override { return wt_.sigma(); }
  uint64_t access(uint64_t i) const override { return wt_.access(i); }
  uint64_t rank(uint64_t symbol, uint64_t i) const override {
    return wt_.rank(symbol, i);
  }
  std::optional<uint64_t> select(uint64_t symbol, uint64_t j) const override {
    return wt_.select(symbol, j);
  }
  uint64_t payload_bits() const override { return wt_.payload_bits(); }
  uint64_t directory_bits() const override { return wt_.directory_bits(); }
  const WaveletTree& tree() const { return wt_; }

private:
  WaveletTree wt_;
};

/// Plain array with per-symbol position lists; the simplest structure that
/// satisfies the sequence contract.
class PlainSequence final : public LabelSequence {
public:
  PlainSequence() = default;
  PlainSequence(std::vector<uint64_t> symbols, uint64_t sigma);
  uint64_t size() const override { return symbols_.size(); }
  uint64_t sigma() const override { return sigma_; }
  uint64_t access(uint64_t i) const override;
  uint64_t rank(uint64_t symbol, uint64_t i) const override;
  std::optional<uint64_t> select(uint64_t symbol, uint64_t j) const override;
  uint64_t payload_bits() const override {
    return symbols_.size() * ceil_log2(sigma_);
  }
  uint64_t directory_bits() const override;

private:
  uint64_t sigma_ = 0;
  std::vector<uint64_t> symbols_;
  std::vector<std::vector<uint64_t>> positions_;  // per symbol, ascending
};

enum class SequenceBackend : uint8_t { wavelet, plain };

/// BinRel-Str: the unary column bitmap B[1, n+t] plus the label string S[1, t]
/// in object-major order (labels ascending inside a column), queried through
/// rank/select/access on B and S only.
class BinRelStr final : public RelationBackend {
public:
  BinRelStr() = default;
  BinRelStr(std::vector<Pair> pairs, uint64_t n, uint64_t sigma,
            SequenceBackend backend = SequenceBackend::wavelet);

  RelationDims dims() const override { return dims_; }
  bool provides(Op op) const override;
  const char* name() const override { return "binrel-str"; }

  /// map(x) = rank1(B, select0(B, x)): last position of column x in S.
  uint64_t map(uint64_t x) const;
  /// unmap(m) = rank0(B, select1(B, m)) + 1: the column owning S[m].
  uint64_t unmap(uint64_t m) const;

  uint64_t rel_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override;
  uint64_t lab_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override;
  uint64_t obj_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const override;
  std::optional<Pair> rel_sel_lab_fst(uint64_t a, uint64_t j, uint64_t x, uint64_t y) const override;
  std::optional<Pair> rel_sel_obj_fst(uint64_t a, uint64_t b, uint64_t x, uint64_t j) const override;
  std::optional<uint64_t> lab_sel_one(uint64_t a, uint64_t j, uint64_t x) const override;
  std::optional<uint64_t> obj_sel_one(uint64_t a, uint64_t x, uint64_t j) const override;
  uint64_t obj_rnk_one(uint64_t a, uint64_t x) const override;

  // Strategy-pinned variants of the dual-route operations.
  uint64_t rel_num_with(ScanStrategy s, uint64_t a, uint64_t b, uint64_t x, uint64_t y) const;
  uint64_t lab_num_with(ScanStrategy s, uint64_t a, uint64_t b, uint64_t x, uint64_t y) const;
  uint64_t obj_num_with(ScanStrategy s, uint64_t a, uint64_t b, uint64_t x, uint64_t y) const;
  std::optional<Pair> rel_sel_lab_fst_with(ScanStrategy s, uint64_t a, uint64_t j, uint64_t x, uint64_t y) const;
  std::optional<Pair> rel_sel_obj_fst_with(ScanStrategy s, uint64_t a, uint64_t b, uint64_t x, uint64_t j) const;

  const BitVector& column_bits() const { return b_; }
  const LabelSequence& label_string() const { return *s_; }
  /// Pairs decoded back from (B, S), object-major.
  std::vector<Pair> decode() const;

  uint64_t payload_bits() const { return b_.payload_bits() + s_->payload_bits(); }
  uint64_t directory_bits() const { return b_.directory_bits() + s_->directory_bits(); }

  void save_payload(std::ostream& os) const;
  static BinRelStr load_payload(std::istream& is, RelationDims dims);

private:
  // First position in S[lo, hi] holding a label >= v (hi+1 if none); the
  // column areas are sorted, probed by exponential then binary search.
  uint64_t area_lower_bound(uint64_t lo, uint64_t hi, uint64_t v) const;

  RelationDims dims_;
  BitVector b_;
  std::unique_ptr<LabelSequence> s_;
};

} // namespace brel
