#include "brel/wavelet_tree.hpp"

#include <stdexcept>

#include "brel/io.hpp"
#include "brel/telemetry.hpp"

namespace brel {

namespace {
void visit() { ++telemetry::counters().wt_nodes; }
} // namespace

WaveletTree::WaveletTree(std::span<const uint64_t> symbols, uint64_t sigma)
    : sigma_(sigma), length_(symbols.size()) {
  for (uint64_t a : symbols) {
    if (a < 1 || a > sigma_)
      throw std::invalid_argument("WaveletTree: symbol outside [1, sigma]");
  }
  const uint64_t h = ceil_log2(sigma_);
  std::vector<std::vector<bool>> bits(h, std::vector<bool>(length_));

  struct Seg {
    uint64_t lo, hi, level, offset;
    std::vector<uint64_t> syms;
  };
  std::vector<Seg> stack;
  if (h > 0 && length_ > 0) {
    stack.push_back({1, sigma_, 0, 0, {symbols.begin(), symbols.end()}});
  }
  while (!stack.empty()) {
    Seg seg = std::move(stack.back());
    stack.pop_back();
    if (seg.level == h || seg.syms.empty()) continue;
    const uint64_t mid = (seg.lo + seg.hi) / 2;
    std::vector<uint64_t> left, right;
    for (uint64_t i = 0; i < seg.syms.size(); ++i) {
      const bool b = seg.syms[i] > mid;
      bits[seg.level][seg.offset + i] = b;
      (b ? right : left).push_back(seg.syms[i]);
    }
    const uint64_t nl = left.size();
    stack.push_back({seg.lo, mid, seg.level + 1, seg.offset, std::move(left)});
    if (mid < seg.hi) {
      stack.push_back(
          {mid + 1, seg.hi, seg.level + 1, seg.offset + nl, std::move(right)});
    }
  }
  levels_.reserve(h);
  for (auto& lvl : bits) levels_.emplace_back(lvl);
}

void WaveletTree::check_symbol(uint64_t symbol) const {
  if (symbol < 1 || symbol > sigma_)
    throw std::invalid_argument("WaveletTree: symbol outside [1, sigma]");
}

uint64_t WaveletTree::node_rank0(const Node& v, uint64_t p) const {
  const BitVector& bv = levels_[v.level];
  return bv.rank0(v.offset + p) - bv.rank0(v.offset);
}

uint64_t WaveletTree::node_rank1(const Node& v, uint64_t p) const {
  const BitVector& bv = levels_[v.level];
  return bv.rank1(v.offset + p) - bv.rank1(v.offset);
}

uint64_t WaveletTree::node_select0(const Node& v, uint64_t j) const {
  const BitVector& bv = levels_[v.level];
  auto pos = bv.select0(bv.rank0(v.offset) + j);
  return *pos - v.offset;
}

uint64_t WaveletTree::node_select1(const Node& v, uint64_t j) const {
  const BitVector& bv = levels_[v.level];
  auto pos = bv.select1(bv.rank1(v.offset) + j);
  return *pos - v.offset;
}

bool WaveletTree::node_bit(const Node& v, uint64_t p) const {
  return levels_[v.level].access(v.offset + p);
}

WaveletTree::Node WaveletTree::left_child(const Node& v) const {
  const uint64_t z = node_rank0(v, v.size);
  return Node{v.level + 1, v.offset, z, v.lo, v.mid()};
}

WaveletTree::Node WaveletTree::right_child(const Node& v) const {
  const uint64_t z = node_rank0(v, v.size);
  return Node{v.level + 1, v.offset + z, v.size - z, v.mid() + 1, v.hi};
}

uint64_t WaveletTree::access(uint64_t i) const {
  if (i < 1 || i > length_)
    throw std::out_of_range("WaveletTree::access: position out of range");
  Node v = root();
  uint64_t p = i;
  visit();
  while (!v.is_leaf()) {
    if (node_bit(v, p)) {
      p = node_rank1(v, p);
      v = right_child(v);
    } else {
      p = node_rank0(v, p);
      v = left_child(v);
    }
    visit();
  }
  return v.lo;
}

uint64_t WaveletTree::rank(uint64_t symbol, uint64_t i) const {
  check_symbol(symbol);
  if (i > length_)
    throw std::out_of_range("WaveletTree::rank: position out of range");
  Node v = root();
  uint64_t p = i;
  visit();
  while (!v.is_leaf() && p > 0) {
    if (symbol > v.mid()) {
      p = node_rank1(v, p);
      v = right_child(v);
    } else {
      p = node_rank0(v, p);
      v = left_child(v);
    }
    visit();
  }
  return v.is_leaf() ? p : 0;
}

WaveletTree::Node WaveletTree::leaf(uint64_t symbol) const {
  check_symbol(symbol);
  Node v = root();
  while (!v.is_leaf()) {
    v = symbol > v.mid() ? right_child(v) : left_child(v);
  }
  return v;
}

std::optional<uint64_t> WaveletTree::select(uint64_t symbol, uint64_t j) const {
  check_symbol(symbol);
  if (j == 0) throw std::out_of_range("WaveletTree::select: ordinal must be >= 1");
  const Node lf = leaf(symbol);
  if (j > lf.size) return std::nullopt;
  return map_up(lf, j);
}

uint64_t WaveletTree::rank_le(uint64_t symbol, uint64_t i) const {
  if (i > length_)
    throw std::out_of_range("WaveletTree::rank_le: position out of range");
  if (symbol == 0) return 0;
  if (symbol >= sigma_) return i;
  Node v = root();
  uint64_t p = i;
  uint64_t c = 0;
  visit();
  while (!v.is_leaf() && p > 0) {
    if (symbol > v.mid()) {
      c += node_rank0(v, p);
      p = node_rank1(v, p);
      v = right_child(v);
    } else {
      p = node_rank0(v, p);
      v = left_child(v);
    }
    visit();
  }
  return c + p;
}

uint64_t WaveletTree::rank_le_range(uint64_t symbol, uint64_t x, uint64_t y) const {
  if (x > y) return 0;
  return rank_le(symbol, y) - rank_le(symbol, x - 1);
}

std::vector<WaveletTree::Node> WaveletTree::cover(uint64_t alpha,
                                                  uint64_t beta) const {
  if (alpha < 1 || beta > sigma_ || alpha > beta)
    throw std::invalid_argument("WaveletTree::cover: invalid symbol range");
  std::vector<Node> out;
  std::vector<Node> stack{root()};
  // Depth-first, right child pushed first so output stays left-to-right.
  while (!stack.empty()) {
    Node v = stack.back();
    stack.pop_back();
    if (v.hi < alpha || v.lo > beta) continue;
    visit();
    if (alpha <= v.lo && v.hi <= beta) {
      out.push_back(v);
      continue;
    }
    stack.push_back(right_child(v));
    stack.push_back(left_child(v));
  }
  return out;
}

std::vector<WaveletTree::Node> WaveletTree::path_to(const Node& target) const {
  std::vector<Node> path{root()};
  while (path.back().level < target.level) {
    const Node& v = path.back();
    path.push_back(target.lo > v.mid() ? right_child(v) : left_child(v));
  }
  return path;
}

uint64_t WaveletTree::map_down(const Node& target, uint64_t p) const {
  Node v = root();
  visit();
  while (v.level < target.level) {
    if (target.lo > v.mid()) {
      p = node_rank1(v, p);
      v = right_child(v);
    } else {
      p = node_rank0(v, p);
      v = left_child(v);
    }
    visit();
  }
  return p;
}

uint64_t WaveletTree::map_up(const Node& v, uint64_t p) const {
  if (p < 1 || p > v.size)
    throw std::out_of_range("WaveletTree::map_up: position out of range");
  const auto path = path_to(v);
  visit();
  for (uint64_t d = path.size(); d-- > 1;) {
    const Node& parent = path[d - 1];
    const Node& child = path[d];
    const bool from_right = child.lo > parent.mid();
    p = from_right ? node_select1(parent, p) : node_select0(parent, p);
    visit();
  }
  return p;
}

uint64_t WaveletTree::payload_bits() const {
  uint64_t total = 0;
  for (const auto& lvl : levels_) total += lvl.payload_bits();
  return total;
}

uint64_t WaveletTree::directory_bits() const {
  uint64_t total = 0;
  for (const auto& lvl : levels_) total += lvl.directory_bits();
  return total;
}

void WaveletTree::save(std::ostream& os) const {
  io::write_u64(os, sigma_);
  io::write_u64(os, length_);
  for (const auto& lvl : levels_) lvl.save(os);
}

WaveletTree WaveletTree::load(std::istream& is) {
  WaveletTree wt;
  wt.sigma_ = io::read_u64(is);
  wt.length_ = io::read_u64(is);
  const uint64_t h = ceil_log2(wt.sigma_);
  wt.levels_.reserve(h);
  for (uint64_t l = 0; l < h; ++l) {
    wt.levels_.push_back(BitVector::load(is));
    if (wt.levels_.back().size() != wt.length_)
      throw std::runtime_error("WaveletTree::load: level length mismatch");
  }
  return wt;
}

} // namespace brel
