#include "brel/bitvector.hpp"

#include <bit>
#include <stdexcept>

#include "brel/io.hpp"

namespace brel {

namespace {

uint64_t words_for(uint64_t bits) { return (bits + 63) / 64; }

// Position (0-based) of the j-th set bit of w, 1 <= j <= popcount(w).
int select_in_word(uint64_t w, uint64_t j) {
  int pos = 0;
  while (true) {
    uint64_t low = w & 0xffffffffu;
    uint64_t c = std::popcount(low);
    if (j <= c) {
      break;
    }
    j -= c;
    w >>= 32;
    pos += 32;
  }
  while (true) {
    if (w & 1) {
      if (--j == 0) return pos;
    }
    w >>= 1;
    ++pos;
  }
}

} // namespace

BitVector::BitVector(const std::vector<bool>& bits) : size_(bits.size()) {
  words_.assign(words_for(size_), 0);
  for (uint64_t i = 0; i < size_; ++i) {
    if (bits[i]) words_[i >> 6] |= uint64_t{1} << (i & 63);
  }
  build_directories();
}

void BitVector::build_directories() {
  const uint64_t nblocks = size_ / kBlockBits + 1;
  super_.assign(nblocks / kBlocksPerSuper + 1, 0);
  block_.assign(nblocks, 0);
  uint64_t total = 0;
  uint64_t super_base = 0;
  for (uint64_t b = 0; b < nblocks; ++b) {
    if (b % kBlocksPerSuper == 0) {
      super_[b / kBlocksPerSuper] = total;
      super_base = total;
    }
    block_[b] = static_cast<uint32_t>(total - super_base);
    const uint64_t w0 = b * (kBlockBits / 64);
    const uint64_t w1 = std::min<uint64_t>(w0 + kBlockBits / 64, words_.size());
    for (uint64_t w = w0; w < w1; ++w) total += std::popcount(words_[w]);
  }
  ones_ = total;
}

uint64_t BitVector::check_rank_pos(uint64_t i) const {
  if (i > size_) throw std::out_of_range("BitVector::rank: position out of range");
  return i;
}

bool BitVector::access(uint64_t i) const {
  if (i < 1 || i > size_)
    throw std::out_of_range("BitVector::access: position out of range");
  const uint64_t p = i - 1;
  return (words_[p >> 6] >> (p & 63)) & 1;
}

uint64_t BitVector::rank1(uint64_t i) const {
  check_rank_pos(i);
  if (i == 0) return 0;
  const uint64_t p = i;  // count bits in [0, p) of the 0-based payload
  const uint64_t b = (p - 1) / kBlockBits;
  uint64_t r = block_rank(b);
  const uint64_t w0 = b * (kBlockBits / 64);
  const uint64_t full = (p / 64);
  for (uint64_t w = w0; w < full; ++w) r += std::popcount(words_[w]);
  const uint64_t rem = p & 63;
  if (rem) r += std::popcount(words_[full] & ((uint64_t{1} << rem) - 1));
  return r;
}

std::optional<uint64_t> BitVector::select_impl(uint64_t j, bool bit) const {
  if (j == 0) throw std::out_of_range("BitVector::select: ordinal must be >= 1");
  const uint64_t total = bit ? ones_ : zeros();
  if (j > total) return std::nullopt;
  // Binary search the last block whose starting rank is < j.
  auto rank_at_block = [&](uint64_t b) {
    const uint64_t r1 = block_rank(b);
    return bit ? r1 : b * kBlockBits - r1;
  };
  uint64_t lo = 0, hi = size_ / kBlockBits;  // block indices, inclusive
  while (lo < hi) {
    const uint64_t mid = (lo + hi + 1) / 2;
    if (rank_at_block(mid) < j) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  uint64_t remaining = j - rank_at_block(lo);
  const uint64_t wend = words_.size();
  for (uint64_t w = lo * (kBlockBits / 64); w < wend; ++w) {
    uint64_t word = bit ? words_[w] : ~words_[w];
    if (w == wend - 1 && (size_ & 63) != 0) {
      word &= (uint64_t{1} << (size_ & 63)) - 1;  // mask padding
    }
    const uint64_t c = std::popcount(word);
    if (remaining <= c) {
      return w * 64 + select_in_word(word, remaining) + 1;
    }
    remaining -= c;
  }
  return std::nullopt;  // unreachable given the total check
}

std::optional<uint64_t> BitVector::select1(uint64_t j) const {
  return select_impl(j, true);
}

std::optional<uint64_t> BitVector::select0(uint64_t j) const {
  return select_impl(j, false);
}

uint64_t BitVector::range_rank(bool bit, uint64_t x, uint64_t y) const {
  if (x < 1 || x > size_ + 1 || y > size_)
    throw std::out_of_range("BitVector::range_rank: endpoint out of range");
  if (x > y) return 0;
  return rank(bit, y) - rank(bit, x - 1);
}

uint64_t BitVector::directory_bits() const {
  return 64 * super_.size() + 32 * block_.size();
}

void BitVector::save(std::ostream& os) const {
  io::write_u64(os, size_);
  for (uint64_t w : words_) io::write_u64(os, w);
}

BitVector BitVector::load(std::istream& is) {
  BitVector bv;
  bv.size_ = io::read_u64(is);
  bv.words_.resize(words_for(bv.size_));
  for (auto& w : bv.words_) w = io::read_u64(is);
  if (bv.size_ & 63) {
    const uint64_t mask = (uint64_t{1} << (bv.size_ & 63)) - 1;
    if (!bv.words_.empty() && (bv.words_.back() & ~mask))
      throw std::runtime_error("BitVector::load: nonzero padding bits");
  }
  bv.build_directories();
  return bv;
}

} // namespace brel
