#include "brel/rel_wt.hpp"

#include <algorithm>
#include <stdexcept>

#include "brel/colmap.hpp"
#include "brel/telemetry.hpp"

namespace brel {

BinRelWt::BinRelWt(std::vector<Pair> pairs, uint64_t n, uint64_t sigma) {
  for (const Pair& p : pairs) {
    if (p.label < 1 || p.label > sigma || p.object < 1 || p.object > n)
      throw std::out_of_range("BinRelWt: pair outside [1,sigma]x[1,n]");
  }
  std::sort(pairs.begin(), pairs.end(), object_major_less);
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  dims_ = RelationDims{n, sigma, pairs.size()};
  b_ = colmap::build(pairs, n);
  std::vector<uint64_t> labels;
  labels.reserve(pairs.size());
  for (const Pair& p : pairs) labels.push_back(p.label);
  w_ = WaveletTree(labels, sigma);
}

bool BinRelWt::provides(Op op) const {
  switch (op) {
    case Op::rel_rnk:
    case Op::rel_sel_lab_fst:
    case Op::rel_sel_obj_fst:
    case Op::rel_min_obj_fst:
    case Op::obj_sel_one:
    case Op::lab_num:
    case Op::obj_rnk_one:
      return true;
    default:
      return false;
  }
}

uint64_t BinRelWt::map(uint64_t x) const {
  return colmap::map(b_, x > dims_.n ? dims_.n : x);
}

uint64_t BinRelWt::unmap(uint64_t m) const { return colmap::unmap(b_, m); }

uint64_t BinRelWt::rel_rnk(uint64_t a, uint64_t x) const {
  return w_.rank_le(a > dims_.sigma ? dims_.sigma : a, map(x));
}

uint64_t BinRelWt::count_rect(uint64_t alo, uint64_t ahi, uint64_t p,
                              uint64_t q) const {
  if (alo > ahi || p > q) return 0;
  return w_.rank_le_range(ahi, p, q) - w_.rank_le_range(alo - 1, p, q);
}

std::optional<Pair> BinRelWt::rel_sel_lab_fst(uint64_t a, uint64_t j, uint64_t x,
                                              uint64_t y) const {
  const auto cl = clip_range(a, dims_.sigma, dims_.sigma);
  const auto co = clip_range(x, y, dims_.n);
  if (cl.empty() || co.empty()) return std::nullopt;
  const uint64_t p0 = map(co.lo - 1) + 1;
  const uint64_t q0 = map(co.hi);
  if (p0 > q0) return std::nullopt;

  // One descent along the path of alpha = cl.lo, recording intervals. The
  // qualifying pairs, in label-major order, are alpha's leaf occurrences
  // followed by the right-subtree intervals of the left turns, deepest first.
  struct Step {
    WaveletTree::Node node;
    uint64_t p, q;
    bool went_right;
  };
  std::vector<Step> path;
  auto v = w_.root();
  uint64_t p = p0, q = q0;
  ++telemetry::counters().wt_nodes;
  while (!v.is_leaf()) {
    const bool right = cl.lo > v.mid();
    path.push_back({v, p, q, right});
    if (right) {
      const uint64_t np = w_.node_rank1(v, p - 1) + 1;
      const uint64_t nq = w_.node_rank1(v, q);
      v = w_.right_child(v);
      p = np;
      q = nq;
    } else {
      const uint64_t np = w_.node_rank0(v, p - 1) + 1;
      const uint64_t nq = w_.node_rank0(v, q);
      v = w_.left_child(v);
      p = np;
      q = nq;
    }
    ++telemetry::counters().wt_nodes;
  }

  auto ascend = [&](size_t from, uint64_t pos) {
    for (size_t d = from; d-- > 0;) {
      pos = path[d].went_right ? w_.node_select1(path[d].node, pos)
                               : w_.node_select0(path[d].node, pos);
    }
    return pos;
  };

  uint64_t jj = j;
  const uint64_t leaf_count = p <= q ? q - p + 1 : 0;
  if (jj <= leaf_count) {
    return Pair{v.lo, unmap(ascend(path.size(), p - 1 + jj))};
  }
  jj -= leaf_count;
  for (size_t d = path.size(); d-- > 0;) {
    if (path[d].went_right) continue;
    const Step& st = path[d];
    const uint64_t right_count =
        w_.node_rank1(st.node, st.q) - w_.node_rank1(st.node, st.p - 1);
    if (jj > right_count) {
      jj -= right_count;
      continue;
    }
    // Quantile descent inside the right sibling subtree.
    std::vector<Step> sub;
    auto u = w_.right_child(st.node);
    uint64_t up = w_.node_rank1(st.node, st.p - 1) + 1;
    uint64_t uq = w_.node_rank1(st.node, st.q);
    ++telemetry::counters().wt_nodes;
    while (!u.is_leaf()) {
      const uint64_t zeros = w_.node_rank0(u, uq) - w_.node_rank0(u, up - 1);
      const bool right = jj > zeros;
      sub.push_back({u, up, uq, right});
      if (right) {
        jj -= zeros;
        const uint64_t np = w_.node_rank1(u, up - 1) + 1;
        const uint64_t nq = w_.node_rank1(u, uq);
        u = w_.right_child(u);
        up = np;
        uq = nq;
      } else {
        const uint64_t np = w_.node_rank0(u, up - 1) + 1;
        const uint64_t nq = w_.node_rank0(u, uq);
        u = w_.left_child(u);
        up = np;
        uq = nq;
      }
      ++telemetry::counters().wt_nodes;
    }
    uint64_t pos = up - 1 + jj;
    for (size_t s = sub.size(); s-- > 0;) {
      pos = sub[s].went_right ? w_.node_select1(sub[s].node, pos)
                              : w_.node_select0(sub[s].node, pos);
    }
    // The candidate subtree is the right sibling of the recorded left turn.
    pos = w_.node_select1(path[d].node, pos);
    return Pair{u.lo, unmap(ascend(d, pos))};
  }
  return std::nullopt;
}

uint64_t BinRelWt::obj_major_rank(uint64_t alo, uint64_t ahi, uint64_t gamma,
                                  uint64_t z) const {
  const uint64_t before = z >= 2 ? count_rect(alo, ahi, 1, map(z - 1)) : 0;
  const uint64_t incol =
      count_rect(alo, gamma, map(z - 1) + 1, map(z));
  return before + incol;
}

std::optional<Pair> BinRelWt::rel_sel_obj_fst(uint64_t a, uint64_t b, uint64_t x,
                                              uint64_t j) const {
  return rel_sel_obj_fst_with(SelObjStrategy::automatic, a, b, x, j);
}

std::optional<Pair> BinRelWt::rel_sel_obj_fst_with(SelObjStrategy strat,
                                                   uint64_t a, uint64_t b,
                                                   uint64_t x, uint64_t j) const {
  const auto cl = clip_range(a, b, dims_.sigma);
  const auto co = clip_range(x, dims_.n, dims_.n);
  if (cl.empty() || co.empty()) return std::nullopt;
  const uint64_t skip = map(co.lo - 1);  // pairs before column co.lo
  if (cl.lo == 1 && cl.hi == dims_.sigma) {
    const uint64_t jj = j + skip;
    if (jj > dims_.t) return std::nullopt;
    return Pair{w_.access(jj), unmap(jj)};
  }
  if (j > count_rect(cl.lo, cl.hi, skip + 1, dims_.t)) return std::nullopt;
  if (strat == SelObjStrategy::automatic) {
    strat = ceil_log2(dims_.n) <=
                    ceil_log2(j + 1) * ceil_log2(cl.hi - cl.lo + 2)
                ? SelObjStrategy::column_search
                : SelObjStrategy::cover_search;
  }
  if (strat == SelObjStrategy::column_search) {
    // Binary search the column holding the j-th pair, then select inside it.
    uint64_t lo = co.lo, hi = dims_.n;
    auto thru = [&](uint64_t w) {
      return count_rect(cl.lo, cl.hi, skip + 1, map(w));
    };
    while (lo < hi) {
      const uint64_t mid = lo + (hi - lo) / 2;
      if (thru(mid) >= j) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    const uint64_t j2 = j - thru(lo - 1);
    auto p = rel_sel_lab_fst(cl.lo, j2, lo, lo);
    return p;
  }
  // Cover-node interval shrinking: in each covering node the candidates sit
  // from the mapped start position onwards, ordered by object-major rank.
  const uint64_t base = count_rect(cl.lo, cl.hi, 1, skip);
  for (const auto& v : w_.cover(cl.lo, cl.hi)) {
    const uint64_t pre = w_.map_down(v, skip);  // candidates start at pre+1
    if (pre >= v.size) continue;
    uint64_t ilo = 1, ihi = std::min<uint64_t>(j, v.size - pre);
    while (ilo <= ihi) {
      const uint64_t mid = ilo + (ihi - ilo) / 2;
      const uint64_t q_root = w_.map_up(v, pre + mid);
      const Pair cand{w_.access(q_root), unmap(q_root)};
      const uint64_t rank =
          obj_major_rank(cl.lo, cl.hi, cand.label, cand.object) - base;
      if (rank == j) return cand;
      if (rank < j) {
        ilo = mid + 1;
      } else {
        ihi = mid - 1;
      }
    }
  }
  return std::nullopt;  // unreachable: the pre-check guarantees a hit
}

std::optional<uint64_t> BinRelWt::first_in_band(const WaveletTree::Node& v,
                                                uint64_t p, uint64_t lo,
                                                uint64_t hi) const {
  if (p > v.size) return std::nullopt;
  ++telemetry::counters().wt_nodes;
  if (lo <= v.lo && v.hi <= hi) return p;
  const uint64_t mid = v.mid();
  std::optional<uint64_t> best;
  if (lo <= mid) {
    const auto left = w_.left_child(v);
    const auto r = first_in_band(left, w_.node_rank0(v, p - 1) + 1, lo,
                                 std::min(hi, mid));
    if (r) best = w_.node_select0(v, *r);
  }
  if (hi > mid) {
    const auto right = w_.right_child(v);
    const auto r = first_in_band(right, w_.node_rank1(v, p - 1) + 1,
                                 std::max(lo, mid + 1), hi);
    if (r) {
      const uint64_t up = w_.node_select1(v, *r);
      if (!best || up < *best) best = up;
    }
  }
  return best;
}

std::optional<Pair> BinRelWt::rel_min_obj_fst(uint64_t a, uint64_t b, uint64_t g,
                                              uint64_t x) const {
  // Column-x band first, then the open area to the right of x.
  if (x >= 1 && x <= dims_.n && g <= b) {
    const auto gl = clip_range(g, b, dims_.sigma);
    if (!gl.empty()) {
      auto probe = rel_sel_lab_fst(gl.lo, 1, x, x);
      if (probe && probe->label <= gl.hi) return probe;
    }
  }
  const auto cl = clip_range(a, b, dims_.sigma);
  if (cl.empty() || x + 1 > dims_.n) return std::nullopt;
  const uint64_t p = map(x) + 1;
  if (p > dims_.t) return std::nullopt;
  const auto pos = first_in_band(w_.root(), p, cl.lo, cl.hi);
  if (!pos) return std::nullopt;
  return Pair{w_.access(*pos), unmap(*pos)};
}

std::optional<uint64_t> BinRelWt::obj_sel_one(uint64_t a, uint64_t x,
                                              uint64_t j) const {
  if (a < 1 || a > dims_.sigma) return std::nullopt;
  const uint64_t before = x == 0 ? 0 : w_.rank(a, map(x - 1));
  const auto pos = w_.select(a, j + before);
  if (!pos) return std::nullopt;
  return unmap(*pos);
}

uint64_t BinRelWt::lab_count(const WaveletTree::Node& v, uint64_t p, uint64_t q,
                             uint64_t lo, uint64_t hi) const {
  if (p > q || v.hi < lo || v.lo > hi) return 0;
  ++telemetry::counters().wt_nodes;
  if (v.is_leaf()) return 1;
  const uint64_t mid = v.mid();
  uint64_t count = 0;
  if (lo <= mid) {
    count += lab_count(w_.left_child(v), w_.node_rank0(v, p - 1) + 1,
                       w_.node_rank0(v, q), lo, hi);
  }
  if (hi > mid) {
    count += lab_count(w_.right_child(v), w_.node_rank1(v, p - 1) + 1,
                       w_.node_rank1(v, q), lo, hi);
  }
  return count;
}

uint64_t BinRelWt::lab_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const {
  const auto cl = clip_range(a, b, dims_.sigma);
  const auto co = clip_range(x, y, dims_.n);
  if (cl.empty() || co.empty()) return 0;
  const uint64_t p = map(co.lo - 1) + 1;
  const uint64_t q = map(co.hi);
  if (p > q) return 0;
  if (w_.height() == 0) return 1;  // single-symbol alphabet, interval nonempty
  return lab_count(w_.root(), p, q, cl.lo, cl.hi);
}

uint64_t BinRelWt::obj_rnk_one(uint64_t a, uint64_t x) const {
  if (a < 1 || a > dims_.sigma) return 0;
  return w_.rank(a, map(x));
}

std::vector<Pair> BinRelWt::decode() const {
  std::vector<Pair> out;
  out.reserve(dims_.t);
  for (uint64_t m = 1; m <= dims_.t; ++m) out.push_back({w_.access(m), unmap(m)});
  return out;
}

void BinRelWt::save_payload(std::ostream& os) const {
  b_.save(os);
  w_.save(os);
}

BinRelWt BinRelWt::load_payload(std::istream& is, RelationDims dims) {
  BinRelWt r;
  r.dims_ = dims;
  r.b_ = BitVector::load(is);
  r.w_ = WaveletTree::load(is);
  if (r.b_.size() != dims.n + dims.t || r.b_.ones() != dims.t ||
      r.w_.size() != dims.t)
    throw std::runtime_error("BinRelWt: payload inconsistent with dims");
  return r;
}

} // namespace brel
