#include "brel/small_seq.hpp"

#include <algorithm>
#include <stdexcept>

#include "brel/io.hpp"
#include "brel/telemetry.hpp"
#include "brel/wavelet_tree.hpp"  // ceil_log2

namespace brel {

RmqIndex::RmqIndex(std::span<const uint16_t> values)
    : values_(values.begin(), values.end()) {
  const uint64_t n = values_.size();
  if (n == 0) return;
  table_.emplace_back(n);
  for (uint64_t i = 0; i < n; ++i) table_[0][i] = static_cast<uint32_t>(i);
  for (uint64_t span = 2; span <= n; span *= 2) {
    const auto& prev = table_.back();
    std::vector<uint32_t> row(n - span + 1);
    for (uint64_t i = 0; i + span <= n; ++i)
      row[i] = better(prev[i], prev[i + span / 2]);
    table_.push_back(std::move(row));
  }
}

uint64_t RmqIndex::query(uint64_t i, uint64_t j) const {
  if (i < 1 || j > size() || i > j)
    throw std::out_of_range("RmqIndex::query: invalid range");
  ++telemetry::counters().rmq_queries;
  const uint64_t len = j - i + 1;
  uint64_t k = 0;
  while ((uint64_t{2} << k) <= len) ++k;
  const uint64_t a = i - 1;
  const uint64_t b = j - (uint64_t{1} << k);
  return better(table_[k][a], table_[k][b]) + 1;
}

uint64_t RmqIndex::directory_bits() const {
  uint64_t cells = 0;
  for (const auto& row : table_) cells += row.size();
  return 32 * cells;
}

SmallAlphabetSequence::SmallAlphabetSequence(std::span<const uint16_t> symbols,
                                             uint64_t mu, BandMode mode)
    : mu_(mu), mode_(mode), payload_(symbols.begin(), symbols.end()) {
  for (uint16_t s : payload_) {
    if (s < 1 || s > mu_)
      throw std::invalid_argument("SmallAlphabetSequence: symbol outside [1, mu]");
  }
  build_directories();
}

void SmallAlphabetSequence::build_directories() {
  const uint64_t n = payload_.size();
  const uint64_t nblocks = n / kBlock + 1;
  cum_.assign(nblocks * (mu_ + 1), 0);
  std::vector<uint32_t> counts(mu_ + 1, 0);
  for (uint64_t b = 1; b < nblocks; ++b) {
    for (uint64_t i = (b - 1) * kBlock; i < b * kBlock; ++i)
      ++counts[payload_[i]];
    uint32_t acc = 0;
    for (uint64_t k = 0; k <= mu_; ++k) {
      acc += counts[k];
      cum_[b * (mu_ + 1) + k] = acc;
    }
    std::fill(counts.begin(), counts.end(), 0);
  }
  // cum_ rows are cumulative over symbols but per-block relative so far; make
  // them absolute prefixes.
  for (uint64_t b = 2; b < nblocks; ++b)
    for (uint64_t k = 0; k <= mu_; ++k)
      cum_[b * (mu_ + 1) + k] += cum_[(b - 1) * (mu_ + 1) + k];

  band_pos_.clear();
  if (mode_ == BandMode::full) {
    band_pos_.resize(mu_ * (mu_ + 1) / 2);
    for (uint64_t k = 1; k <= mu_; ++k) {
      for (uint64_t l = k; l <= mu_; ++l) {
        auto& pos = band_pos_[band_index(k, l)];
        for (uint64_t i = 0; i < n; ++i)
          if (payload_[i] >= k && payload_[i] <= l)
            pos.push_back(static_cast<uint32_t>(i + 1));
      }
    }
  }
}

uint16_t SmallAlphabetSequence::access(uint64_t i) const {
  if (i < 1 || i > size())
    throw std::out_of_range("SmallAlphabetSequence::access: out of range");
  return payload_[i - 1];
}

uint64_t SmallAlphabetSequence::rank_le(uint64_t k, uint64_t i) const {
  if (i > size())
    throw std::out_of_range("SmallAlphabetSequence::rank_le: out of range");
  if (k == 0) return 0;
  if (k >= mu_) return i;
  const uint64_t b = i / kBlock;
  uint64_t r = cum(b, k);
  for (uint64_t p = b * kBlock; p < i; ++p) r += payload_[p] <= k;
  return r;
}

uint64_t SmallAlphabetSequence::rank(uint64_t k, uint64_t i) const {
  if (k < 1 || k > mu_)
    throw std::invalid_argument("SmallAlphabetSequence::rank: invalid symbol");
  return rank_le(k, i) - rank_le(k - 1, i);
}

std::optional<uint64_t> SmallAlphabetSequence::select(uint64_t k,
                                                      uint64_t j) const {
  if (k < 1 || k > mu_)
    throw std::invalid_argument("SmallAlphabetSequence::select: invalid symbol");
  if (j == 0)
    throw std::out_of_range("SmallAlphabetSequence::select: ordinal must be >= 1");
  if (j > rank(k, size())) return std::nullopt;
  // Last block whose starting count of k is < j, then scan it.
  const uint64_t nblocks = size() / kBlock + 1;
  uint64_t lo = 0, hi = nblocks - 1;
  auto count_at = [&](uint64_t b) { return cum(b, k) - cum(b, k - 1); };
  while (lo < hi) {
    const uint64_t mid = (lo + hi + 1) / 2;
    if (count_at(mid) < j) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  uint64_t remaining = j - count_at(lo);
  for (uint64_t p = lo * kBlock; p < size(); ++p) {
    if (payload_[p] == k && --remaining == 0) return p + 1;
  }
  return std::nullopt;
}

void SmallAlphabetSequence::check_band(uint64_t k, uint64_t l) const {
  if (k < 1 || l > mu_ || k > l)
    throw std::invalid_argument("SmallAlphabetSequence: invalid band");
}

uint64_t SmallAlphabetSequence::band_rank(uint64_t k, uint64_t l,
                                          uint64_t p) const {
  check_band(k, l);
  if (mode_ == BandMode::full) {
    const auto& pos = band_pos_[band_index(k, l)];
    return std::upper_bound(pos.begin(), pos.end(), p) - pos.begin();
  }
  return rank_le(l, p) - rank_le(k - 1, p);
}

std::optional<uint64_t> SmallAlphabetSequence::band_select_next(
    uint64_t k, uint64_t l, uint64_t p) const {
  check_band(k, l);
  if (p > size())
    throw std::out_of_range("SmallAlphabetSequence::band_select_next: out of range");
  ++telemetry::counters().band_probes;
  if (mode_ == BandMode::full) {
    const auto& pos = band_pos_[band_index(k, l)];
    auto it = std::upper_bound(pos.begin(), pos.end(), p);
    if (it == pos.end()) return std::nullopt;
    return *it;
  }
  const uint64_t target = band_rank(k, l, p) + 1;
  if (target > band_rank(k, l, size())) return std::nullopt;
  // Last block whose starting band count is < target, then scan it.
  const uint64_t nblocks = size() / kBlock + 1;
  auto count_at = [&](uint64_t b) { return cum(b, l) - cum(b, k - 1); };
  uint64_t lo = 0, hi = nblocks - 1;
  while (lo < hi) {
    const uint64_t mid = (lo + hi + 1) / 2;
    if (count_at(mid) < target) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  uint64_t remaining = target - count_at(lo);
  for (uint64_t q = lo * kBlock; q < size(); ++q) {
    if (payload_[q] >= k && payload_[q] <= l && --remaining == 0) return q + 1;
  }
  return std::nullopt;
}

std::optional<uint64_t> SmallAlphabetSequence::band_select(uint64_t k, uint64_t l,
                                                           uint64_t m) const {
  check_band(k, l);
  if (m == 0)
    throw std::out_of_range("SmallAlphabetSequence::band_select: ordinal must be >= 1");
  if (mode_ == BandMode::full) {
    const auto& pos = band_pos_[band_index(k, l)];
    if (m > pos.size()) return std::nullopt;
    return pos[m - 1];
  }
  if (m > band_rank(k, l, size())) return std::nullopt;
  const uint64_t nblocks = size() / kBlock + 1;
  auto count_at = [&](uint64_t b) { return cum(b, l) - cum(b, k - 1); };
  uint64_t lo = 0, hi = nblocks - 1;
  while (lo < hi) {
    const uint64_t mid = (lo + hi + 1) / 2;
    if (count_at(mid) < m) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  uint64_t remaining = m - count_at(lo);
  for (uint64_t q = lo * kBlock; q < size(); ++q) {
    if (payload_[q] >= k && payload_[q] <= l && --remaining == 0) return q + 1;
  }
  return std::nullopt;
}

void SmallAlphabetSequence::distinct_rec(uint64_t k, uint64_t l, uint64_t p,
                                         uint64_t q,
                                         std::vector<uint64_t>& out) const {
  if (k > l) return;
  ++telemetry::counters().distinct_probes;
  const auto pos = band_select_next(k, l, p - 1);
  if (!pos || *pos > q) return;
  const uint64_t found = access(*pos);
  distinct_rec(k, found - 1, p, q, out);
  out.push_back(found);
  distinct_rec(found + 1, l, p, q, out);
}

std::vector<uint64_t> SmallAlphabetSequence::distinct_in_range(
    uint64_t k, uint64_t l, uint64_t p, uint64_t q) const {
  check_band(k, l);
  if (p < 1 || q > size())
    throw std::out_of_range("SmallAlphabetSequence::distinct_in_range: out of range");
  std::vector<uint64_t> out;
  if (p > q) return out;
  distinct_rec(k, l, p, q, out);
  return out;
}

uint64_t SmallAlphabetSequence::payload_bits() const {
  return size() * ceil_log2(mu_);
}

uint64_t SmallAlphabetSequence::directory_bits() const {
  uint64_t cells = cum_.size();
  for (const auto& pos : band_pos_) cells += pos.size();
  return 32 * cells;
}

void SmallAlphabetSequence::save(std::ostream& os) const {
  io::write_u64(os, mu_);
  io::write_u64(os, size());
  const uint64_t width = ceil_log2(mu_);
  if (width == 0) return;
  uint64_t word = 0;
  uint64_t used = 0;
  for (uint16_t s : payload_) {
    const uint64_t v = s - 1;
    word |= v << used;
    used += width;
    if (used >= 64) {
      io::write_u64(os, word);
      used -= 64;
      word = used ? v >> (width - used) : 0;
    }
  }
  if (used > 0) io::write_u64(os, word);
}

SmallAlphabetSequence SmallAlphabetSequence::load(std::istream& is,
                                                  BandMode mode) {
  SmallAlphabetSequence s;
  s.mu_ = io::read_u64(is);
  s.mode_ = mode;
  const uint64_t n = io::read_u64(is);
  const uint64_t width = ceil_log2(s.mu_);
  s.payload_.assign(n, 1);
  if (width > 0) {
    const uint64_t mask = (width == 64) ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
    uint64_t word = 0;
    uint64_t avail = 0;
    for (uint64_t i = 0; i < n; ++i) {
      uint64_t v;
      if (avail >= width) {
        v = word & mask;
        word >>= width;
        avail -= width;
      } else {
        uint64_t next = io::read_u64(is);
        v = (word | (next << avail)) & mask;
        const uint64_t taken = width - avail;
        word = taken < 64 ? next >> taken : 0;
        avail = 64 - taken;
      }
      if (v + 1 > s.mu_)
        throw std::runtime_error("SmallAlphabetSequence::load: symbol out of range");
      s.payload_[i] = static_cast<uint16_t>(v + 1);
    }
  }
  s.build_directories();
  return s;
}

} // namespace brel
