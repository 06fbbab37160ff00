#include "brel/brwt.hpp"

#include <algorithm>
#include <stdexcept>

#include "brel/io.hpp"
#include "brel/telemetry.hpp"

namespace brel {

namespace {
void visit() { ++telemetry::counters().brwt_nodes; }
} // namespace

void Brwt::build_shape(uint64_t sigma) {
  nodes_.clear();
  if (sigma < 1) return;
  struct Pending {
    uint64_t lo, hi;
    int32_t parent;
    bool from_right;
  };
  std::vector<Pending> queue{{1, sigma, -1, false}};
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const Pending pend = queue[qi];
    Node v;
    v.lo = pend.lo;
    v.hi = pend.hi;
    v.parent = pend.parent;
    v.from_right = pend.from_right;
    const int32_t self = static_cast<int32_t>(nodes_.size());
    if (pend.parent >= 0) {
      (pend.from_right ? nodes_[pend.parent].right_child
                       : nodes_[pend.parent].left_child) = self;
    }
    nodes_.push_back(std::move(v));
    const uint64_t m = nodes_[self].mid();
    if (m > nodes_[self].lo) queue.push_back({nodes_[self].lo, m, self, false});
    if (nodes_[self].hi > m + 1) queue.push_back({m + 1, nodes_[self].hi, self, true});
  }
}

Brwt::Brwt(std::vector<Pair> pairs, uint64_t n, uint64_t sigma) {
  for (const Pair& p : pairs) {
    if (p.label < 1 || p.label > sigma || p.object < 1 || p.object > n)
      throw std::out_of_range("Brwt: pair outside [1,sigma]x[1,n]");
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  dims_ = RelationDims{n, sigma, pairs.size()};

  std::vector<bool> unary;
  unary.reserve(sigma + pairs.size());
  {
    size_t i = 0;
    for (uint64_t g = 1; g <= sigma; ++g) {
      while (i < pairs.size() && pairs[i].label == g) {
        unary.push_back(true);
        ++i;
      }
      unary.push_back(false);
    }
  }
  row_unary_ = BitVector(unary);

  build_shape(sigma);
  if (nodes_.empty()) return;

  std::vector<std::vector<uint64_t>> obj_labels(n + 1);
  for (const Pair& p : pairs) obj_labels[p.object].push_back(p.label);

  // BFS object lists: the root sees every object; children see the survivors.
  std::vector<std::vector<uint64_t>> objs(nodes_.size());
  objs[0].resize(n);
  for (uint64_t x = 1; x <= n; ++x) objs[0][x - 1] = x;
  for (size_t i = 0; i < nodes_.size(); ++i) {
    Node& v = nodes_[i];
    const uint64_t m = v.mid();
    std::vector<bool> bl(objs[i].size()), br(objs[i].size());
    std::vector<uint64_t> left_objs, right_objs;
    for (size_t k = 0; k < objs[i].size(); ++k) {
      const uint64_t x = objs[i][k];
      const auto& labels = obj_labels[x];
      auto it = std::lower_bound(labels.begin(), labels.end(), v.lo);
      const bool has_left = it != labels.end() && *it <= m;
      auto it2 = std::lower_bound(labels.begin(), labels.end(), m + 1);
      const bool has_right = it2 != labels.end() && *it2 <= v.hi;
      bl[k] = has_left;
      br[k] = has_right;
      if (has_left && v.left_child >= 0) left_objs.push_back(x);
      if (has_right && v.right_child >= 0) right_objs.push_back(x);
    }
    v.left = BitVector(bl);
    v.right = BitVector(br);
    if (v.left_child >= 0) objs[v.left_child] = std::move(left_objs);
    if (v.right_child >= 0) objs[v.right_child] = std::move(right_objs);
    objs[i].clear();
    objs[i].shrink_to_fit();
  }
}

bool Brwt::provides(Op op) const {
  switch (op) {
    case Op::rel_num:
    case Op::rel_min_lab_fst:
    case Op::rel_min_obj_fst:
    case Op::obj_sel_one:
    case Op::lab_num:
      return true;
    default:
      return false;
  }
}

uint64_t Brwt::lab(uint64_t r) const {
  if (r < 1 || r > dims_.t) throw std::out_of_range("Brwt::lab: out of range");
  return 1 + row_unary_.rank0(*row_unary_.select1(r));
}

uint64_t Brwt::poslab(uint64_t alpha) const {
  if (alpha < 1 || alpha > dims_.sigma)
    throw std::out_of_range("Brwt::poslab: out of range");
  return row_unary_.rank1(*row_unary_.select0(alpha));
}

uint64_t Brwt::count(int32_t idx, uint64_t lo, uint64_t hi, uint64_t p,
                     uint64_t q) const {
  if (p > q) return 0;
  visit();
  const Node& v = nodes_[idx];
  const uint64_t m = v.mid();
  uint64_t res = 0;
  if (lo <= m) {
    const uint64_t cp = v.left.rank1(p - 1) + 1;
    const uint64_t cq = v.left.rank1(q);
    if (v.left_child < 0) {
      res += cq + 1 - cp;  // leaf for label v.lo == m
    } else {
      res += count(v.left_child, lo, std::min(hi, m), cp, cq);
    }
  }
  if (hi > m) {
    const uint64_t cp = v.right.rank1(p - 1) + 1;
    const uint64_t cq = v.right.rank1(q);
    if (v.right_child < 0) {
      res += cq + 1 - cp;  // leaf for label m + 1 == v.hi
    } else {
      res += count(v.right_child, std::max(lo, m + 1), hi, cp, cq);
    }
  }
  return res;
}

uint64_t Brwt::rel_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const {
  const auto cl = clip_range(a, b, dims_.sigma);
  const auto co = clip_range(x, y, dims_.n);
  if (cl.empty() || co.empty() || nodes_.empty()) return 0;
  return count(0, cl.lo, cl.hi, co.lo, co.hi);
}

uint64_t Brwt::distinct(int32_t idx, uint64_t lo, uint64_t hi, uint64_t p,
                        uint64_t q) const {
  if (p > q) return 0;
  visit();
  const Node& v = nodes_[idx];
  const uint64_t m = v.mid();
  uint64_t res = 0;
  if (lo <= m) {
    const uint64_t cp = v.left.rank1(p - 1) + 1;
    const uint64_t cq = v.left.rank1(q);
    if (v.left_child < 0) {
      res += cq >= cp ? 1 : 0;
    } else {
      res += distinct(v.left_child, lo, std::min(hi, m), cp, cq);
    }
  }
  if (hi > m) {
    const uint64_t cp = v.right.rank1(p - 1) + 1;
    const uint64_t cq = v.right.rank1(q);
    if (v.right_child < 0) {
      res += cq >= cp ? 1 : 0;
    } else {
      res += distinct(v.right_child, std::max(lo, m + 1), hi, cp, cq);
    }
  }
  return res;
}

uint64_t Brwt::lab_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const {
  const auto cl = clip_range(a, b, dims_.sigma);
  const auto co = clip_range(x, y, dims_.n);
  if (cl.empty() || co.empty() || nodes_.empty()) return 0;
  return distinct(0, cl.lo, cl.hi, co.lo, co.hi);
}

uint64_t Brwt::lift(int32_t idx, uint64_t pos) const {
  while (idx >= 0) {
    const Node& v = nodes_[idx];
    if (v.parent < 0) break;
    const Node& par = nodes_[v.parent];
    pos = v.from_right ? *par.right.select1(pos) : *par.left.select1(pos);
    idx = v.parent;
  }
  return pos;
}

uint64_t Brwt::leftmost_leaf_label(int32_t idx, uint64_t pos) const {
  int32_t cur = idx;
  uint64_t p = pos;
  while (true) {
    visit();
    const Node& v = nodes_[cur];
    if (v.left.access(p)) {
      if (v.left_child < 0) return v.lo;
      p = v.left.rank1(p);
      cur = v.left_child;
    } else {
      // The object survived into this node, so one of the two bits is set.
      if (v.right_child < 0) return v.hi;
      p = v.right.rank1(p);
      cur = v.right_child;
    }
  }
}

std::optional<Pair> Brwt::first_label(int32_t idx, uint64_t lo, uint64_t hi,
                                      uint64_t p, uint64_t q) const {
  if (p > q) return std::nullopt;
  visit();
  const Node& v = nodes_[idx];
  const uint64_t m = v.mid();
  if (lo <= m) {
    const uint64_t cp = v.left.rank1(p - 1) + 1;
    const uint64_t cq = v.left.rank1(q);
    if (cp <= cq) {
      if (v.left_child < 0) {
        const uint64_t root_pos = lift(idx, *v.left.select1(cp));
        return Pair{v.lo, root_pos};
      }
      const auto r = first_label(v.left_child, lo, std::min(hi, m), cp, cq);
      if (r) return r;
    }
  }
  if (hi > m) {
    const uint64_t cp = v.right.rank1(p - 1) + 1;
    const uint64_t cq = v.right.rank1(q);
    if (cp <= cq) {
      if (v.right_child < 0) {
        const uint64_t root_pos = lift(idx, *v.right.select1(cp));
        return Pair{v.hi, root_pos};
      }
      const auto r = first_label(v.right_child, std::max(lo, m + 1), hi, cp, cq);
      if (r) return r;
    }
  }
  return std::nullopt;
}

std::optional<Pair> Brwt::rel_min_lab_fst(uint64_t a, uint64_t x, uint64_t y,
                                          uint64_t z) const {
  if (nodes_.empty()) return std::nullopt;
  // Row a restricted to [z, y] first: project the interval down a's path.
  if (a >= 1 && a <= dims_.sigma) {
    const auto cz = clip_range(z, y, dims_.n);
    if (!cz.empty()) {
      int32_t idx = 0;
      uint64_t p = cz.lo, q = cz.hi;
      int32_t leaf_parent = -1;
      bool leaf_right = false;
      while (p <= q) {
        visit();
        const Node& v = nodes_[idx];
        const bool right = a > v.mid();
        const auto& bv = right ? v.right : v.left;
        const uint64_t cp = bv.rank1(p - 1) + 1;
        const uint64_t cq = bv.rank1(q);
        const int32_t child = right ? v.right_child : v.left_child;
        p = cp;
        q = cq;
        if (child < 0) {
          leaf_parent = idx;
          leaf_right = right;
          break;
        }
        idx = child;
      }
      if (leaf_parent >= 0 && p <= q) {
        const Node& par = nodes_[leaf_parent];
        const auto& bv = leaf_right ? par.right : par.left;
        return Pair{a, lift(leaf_parent, *bv.select1(p))};
      }
    }
  }
  // Then the first label above a over [x, y].
  const auto co = clip_range(x, y, dims_.n);
  if (co.empty() || a >= dims_.sigma) return std::nullopt;
  return first_label(0, a + 1, dims_.sigma, co.lo, co.hi);
}

std::optional<uint64_t> Brwt::column_min_label(int32_t idx, uint64_t lo,
                                               uint64_t hi, uint64_t pos) const {
  visit();
  const Node& v = nodes_[idx];
  const uint64_t m = v.mid();
  if (lo <= m && v.left.access(pos)) {
    if (v.left_child < 0) return v.lo;
    const auto r =
        column_min_label(v.left_child, lo, std::min(hi, m), v.left.rank1(pos));
    if (r) return r;
  }
  if (hi > m && v.right.access(pos)) {
    if (v.right_child < 0) return v.hi;
    return column_min_label(v.right_child, std::max(lo, m + 1), hi,
                            v.right.rank1(pos));
  }
  return std::nullopt;
}

std::optional<Brwt::Candidate> Brwt::next_object(int32_t idx, uint64_t lo,
                                                 uint64_t hi, uint64_t q) const {
  visit();
  const Node& v = nodes_[idx];
  if (lo <= v.lo && v.hi <= hi) {
    if (v.parent < 0) {
      // Root positions also hold objects related to nothing; step to the next
      // position with a set bit on either side.
      const auto pl = v.left.select1(v.left.rank1(q) + 1);
      const auto pr = v.right.select1(v.right.rank1(q) + 1);
      if (!pl && !pr) return std::nullopt;
      const uint64_t pos = std::min(pl.value_or(~uint64_t{0}),
                                    pr.value_or(~uint64_t{0}));
      return Candidate{pos, idx, pos, 0};
    }
    if (q + 1 > v.size()) return std::nullopt;
    return Candidate{q + 1, idx, q + 1, 0};
  }
  const uint64_t m = v.mid();
  std::optional<Candidate> best;
  if (lo <= m) {
    const uint64_t cq = v.left.rank1(q);
    std::optional<Candidate> cand;
    if (v.left_child < 0) {
      if (cq + 1 <= v.left.ones())
        cand = Candidate{*v.left.select1(cq + 1), -1, 0, v.lo};
    } else {
      cand = next_object(v.left_child, lo, std::min(hi, m), cq);
      if (cand) cand->pos = *v.left.select1(cand->pos);
    }
    best = cand;
  }
  if (hi > m) {
    const uint64_t cq = v.right.rank1(q);
    std::optional<Candidate> cand;
    if (v.right_child < 0) {
      if (cq + 1 <= v.right.ones())
        cand = Candidate{*v.right.select1(cq + 1), -1, 0, v.hi};
    } else {
      cand = next_object(v.right_child, std::max(lo, m + 1), hi, cq);
      if (cand) cand->pos = *v.right.select1(cand->pos);
    }
    // Prefer the left child on equal positions: smaller labels come first.
    if (cand && (!best || cand->pos < best->pos)) best = cand;
  }
  return best;
}

std::optional<Pair> Brwt::rel_min_obj_fst(uint64_t a, uint64_t b, uint64_t g,
                                          uint64_t x) const {
  if (nodes_.empty()) return std::nullopt;
  // Column x, labels in [g, b].
  if (x >= 1 && x <= dims_.n) {
    const auto gl = clip_range(g, b, dims_.sigma);
    if (!gl.empty()) {
      const auto r = column_min_label(0, gl.lo, gl.hi, x);
      if (r) return Pair{*r, x};
    }
  }
  // Then the first object > x related to [a, b].
  const auto cl = clip_range(a, b, dims_.sigma);
  if (cl.empty() || x + 1 > dims_.n) return std::nullopt;
  const auto cand = next_object(0, cl.lo, cl.hi, x);
  if (!cand) return std::nullopt;
  const uint64_t label = cand->src >= 0
                             ? leftmost_leaf_label(cand->src, cand->src_pos)
                             : cand->leaf_label;
  return Pair{label, cand->pos};
}

std::optional<uint64_t> Brwt::obj_sel_one(uint64_t a, uint64_t x,
                                          uint64_t j) const {
  if (a < 1 || a > dims_.sigma || nodes_.empty()) return std::nullopt;
  uint64_t q = x == 0 ? 0 : std::min(x - 1, dims_.n);
  int32_t idx = 0;
  while (true) {
    visit();
    const Node& v = nodes_[idx];
    const bool right = a > v.mid();
    const auto& bv = right ? v.right : v.left;
    const uint64_t cq = bv.rank1(q);
    const int32_t child = right ? v.right_child : v.left_child;
    if (child < 0) {
      if (cq + j > bv.ones()) return std::nullopt;
      return lift(idx, *bv.select1(cq + j));
    }
    q = cq;
    idx = child;
  }
}

uint64_t Brwt::leaf_level_ones() const {
  uint64_t total = 0;
  for (const Node& v : nodes_) {
    if (v.left_child < 0) total += v.left.ones();
    if (v.right_child < 0) total += v.right.ones();
  }
  return total;
}

std::vector<Pair> Brwt::decode() const {
  std::vector<Pair> out;
  out.reserve(dims_.t);
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& v = nodes_[i];
    const auto emit = [&](const BitVector& bv, uint64_t label) {
      for (uint64_t k = 1; k <= bv.ones(); ++k)
        out.push_back({label, lift(static_cast<int32_t>(i), *bv.select1(k))});
    };
    if (v.left_child < 0) emit(v.left, v.lo);
    if (v.right_child < 0) emit(v.right, v.hi);
  }
  std::sort(out.begin(), out.end(), object_major_less);
  return out;
}

uint64_t Brwt::payload_bits() const {
  uint64_t total = row_unary_.payload_bits();
  for (const Node& v : nodes_) total += v.left.payload_bits() + v.right.payload_bits();
  return total;
}

uint64_t Brwt::directory_bits() const {
  uint64_t total = row_unary_.directory_bits();
  for (const Node& v : nodes_)
    total += v.left.directory_bits() + v.right.directory_bits();
  return total;
}

void Brwt::save_payload(std::ostream& os) const {
  row_unary_.save(os);
  io::write_u64(os, nodes_.size());
  for (const Node& v : nodes_) {
    v.left.save(os);
    v.right.save(os);
  }
}

Brwt Brwt::load_payload(std::istream& is, RelationDims dims) {
  Brwt r;
  r.dims_ = dims;
  r.row_unary_ = BitVector::load(is);
  if (r.row_unary_.size() != dims.sigma + dims.t ||
      r.row_unary_.ones() != dims.t)
    throw std::runtime_error("Brwt: row bitmap inconsistent with dims");
  r.build_shape(dims.sigma);
  const uint64_t count = io::read_u64(is);
  if (count != r.nodes_.size())
    throw std::runtime_error("Brwt: node count mismatch");
  for (Node& v : r.nodes_) {
    v.left = BitVector::load(is);
    v.right = BitVector::load(is);
    if (v.left.size() != v.right.size())
      throw std::runtime_error("Brwt: node bitmap length mismatch");
  }
  if (!r.nodes_.empty() && r.nodes_[0].size() != dims.n)
    throw std::runtime_error("Brwt: root bitmap length mismatch");
  return r;
}

} // namespace brel
