#include "brel/rel_str.hpp"

#include <algorithm>
#include <stdexcept>

#include "brel/colmap.hpp"

namespace brel {

PlainSequence::PlainSequence(std::vector<uint64_t> symbols, uint64_t sigma)
    : sigma_(sigma), symbols_(std::move(symbols)) {
  positions_.assign(sigma_ + 1, {});
  for (uint64_t i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i] < 1 || symbols_[i] > sigma_)
      throw std::invalid_argument("PlainSequence: symbol outside [1, sigma]");
    positions_[symbols_[i]].push_back(i + 1);
  }
}

uint64_t PlainSequence::access(uint64_t i) const {
  if (i < 1 || i > symbols_.size())
    throw std::out_of_range("PlainSequence::access: out of range");
  return symbols_[i - 1];
}

uint64_t PlainSequence::rank(uint64_t symbol, uint64_t i) const {
  if (symbol < 1 || symbol > sigma_)
    throw std::invalid_argument("PlainSequence::rank: invalid symbol");
  const auto& pos = positions_[symbol];
  return std::upper_bound(pos.begin(), pos.end(), i) - pos.begin();
}

std::optional<uint64_t> PlainSequence::select(uint64_t symbol, uint64_t j) const {
  if (symbol < 1 || symbol > sigma_)
    throw std::invalid_argument("PlainSequence::select: invalid symbol");
  if (j == 0) throw std::out_of_range("PlainSequence::select: ordinal must be >= 1");
  const auto& pos = positions_[symbol];
  if (j > pos.size()) return std::nullopt;
  return pos[j - 1];
}

uint64_t PlainSequence::directory_bits() const {
  uint64_t cells = 0;
  for (const auto& pos : positions_) cells += pos.size();
  return 64 * cells;
}

BinRelStr::BinRelStr(std::vector<Pair> pairs, uint64_t n, uint64_t sigma,
                     SequenceBackend backend) {
  for (const Pair& p : pairs) {
    if (p.label < 1 || p.label > sigma || p.object < 1 || p.object > n)
      throw std::out_of_range("BinRelStr: pair outside [1,sigma]x[1,n]");
  }
  std::sort(pairs.begin(), pairs.end(), object_major_less);
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  dims_ = RelationDims{n, sigma, pairs.size()};
  b_ = colmap::build(pairs, n);
  std::vector<uint64_t> labels;
  labels.reserve(pairs.size());
  for (const Pair& p : pairs) labels.push_back(p.label);
  if (backend == SequenceBackend::wavelet) {
    s_ = std::make_unique<WaveletSequence>(WaveletTree(labels, sigma));
  } else {
    s_ = std::make_unique<PlainSequence>(std::move(labels), sigma);
  }
}

bool BinRelStr::provides(Op op) const {
  switch (op) {
    case Op::rel_num:
    case Op::lab_num:
    case Op::obj_num:
    case Op::rel_sel_lab_fst:
    case Op::rel_sel_obj_fst:
    case Op::lab_sel_one:
    case Op::obj_sel_one:
    case Op::obj_rnk_one:
      return true;
    default:
      return false;
  }
}

uint64_t BinRelStr::map(uint64_t x) const {
  return colmap::map(b_, x > dims_.n ? dims_.n : x);
}

uint64_t BinRelStr::unmap(uint64_t m) const { return colmap::unmap(b_, m); }

uint64_t BinRelStr::area_lower_bound(uint64_t lo, uint64_t hi, uint64_t v) const {
  if (lo > hi) return hi + 1;
  uint64_t last = lo - 1;  // labels before lo are conceptually < v
  uint64_t step = 1;
  uint64_t probe = lo;
  while (probe <= hi && s_->access(probe) < v) {
    last = probe;
    probe = last + step;
    step *= 2;
  }
  uint64_t blo = last + 1;
  uint64_t bhi = std::min(probe, hi + 1);
  while (blo < bhi) {
    const uint64_t mid = blo + (bhi - blo) / 2;
    if (s_->access(mid) < v) {
      blo = mid + 1;
    } else {
      bhi = mid;
    }
  }
  return blo;
}

uint64_t BinRelStr::rel_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const {
  return rel_num_with(ScanStrategy::automatic, a, b, x, y);
}

uint64_t BinRelStr::rel_num_with(ScanStrategy strat, uint64_t a, uint64_t b,
                                 uint64_t x, uint64_t y) const {
  const auto cl = clip_range(a, b, dims_.sigma);
  const auto co = clip_range(x, y, dims_.n);
  if (cl.empty() || co.empty()) return 0;
  const uint64_t p = map(co.lo - 1) + 1;
  const uint64_t q = map(co.hi);
  if (cl.lo == 1 && cl.hi == dims_.sigma) return q + 1 - p;  // from B alone
  if (strat == ScanStrategy::automatic) {
    const uint64_t cost_labels = cl.hi - cl.lo + 1;
    const uint64_t cost_objects =
        (co.hi - co.lo + 1) * (1 + ceil_log2(cl.hi - cl.lo + 2));
    strat = cost_labels <= cost_objects ? ScanStrategy::per_label
                                        : ScanStrategy::per_object;
  }
  uint64_t count = 0;
  if (strat == ScanStrategy::per_label) {
    for (uint64_t g = cl.lo; g <= cl.hi; ++g) count += s_->range_rank(g, p, q);
  } else {
    for (uint64_t z = co.lo; z <= co.hi; ++z) {
      const uint64_t alo = map(z - 1) + 1, ahi = map(z);
      const uint64_t first = area_lower_bound(alo, ahi, cl.lo);
      const uint64_t past = area_lower_bound(alo, ahi, cl.hi + 1);
      count += past - first;
    }
  }
  return count;
}

uint64_t BinRelStr::lab_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const {
  return lab_num_with(ScanStrategy::automatic, a, b, x, y);
}

uint64_t BinRelStr::lab_num_with(ScanStrategy strat, uint64_t a, uint64_t b,
                                 uint64_t x, uint64_t y) const {
  const auto cl = clip_range(a, b, dims_.sigma);
  const auto co = clip_range(x, y, dims_.n);
  if (cl.empty() || co.empty()) return 0;
  const uint64_t p = map(co.lo - 1) + 1;
  const uint64_t q = map(co.hi);
  if (strat == ScanStrategy::automatic) {
    strat = cl.hi - cl.lo <= 4 * (co.hi - co.lo + 1) ? ScanStrategy::per_label
                                                     : ScanStrategy::per_object;
  }
  if (strat == ScanStrategy::per_label) {
    uint64_t count = 0;
    for (uint64_t g = cl.lo; g <= cl.hi; ++g)
      count += s_->range_rank(g, p, q) > 0;
    return count;
  }
  // Collect each column's labels within [a, b] into a presence array.
  std::vector<bool> seen(cl.hi - cl.lo + 1, false);
  for (uint64_t z = co.lo; z <= co.hi; ++z) {
    const uint64_t alo = map(z - 1) + 1, ahi = map(z);
    for (uint64_t i = area_lower_bound(alo, ahi, cl.lo); i <= ahi; ++i) {
      const uint64_t g = s_->access(i);
      if (g > cl.hi) break;
      seen[g - cl.lo] = true;
    }
  }
  uint64_t count = 0;
  for (bool v : seen) count += v;
  return count;
}

uint64_t BinRelStr::obj_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const {
  return obj_num_with(ScanStrategy::automatic, a, b, x, y);
}

uint64_t BinRelStr::obj_num_with(ScanStrategy strat, uint64_t a, uint64_t b,
                                 uint64_t x, uint64_t y) const {
  const auto cl = clip_range(a, b, dims_.sigma);
  const auto co = clip_range(x, y, dims_.n);
  if (cl.empty() || co.empty()) return 0;
  if (strat == ScanStrategy::automatic) {
    strat = co.hi - co.lo <= 4 * (cl.hi - cl.lo + 1) ? ScanStrategy::per_object
                                                     : ScanStrategy::per_label;
  }
  if (strat == ScanStrategy::per_object) {
    uint64_t count = 0;
    for (uint64_t z = co.lo; z <= co.hi; ++z) {
      const uint64_t alo = map(z - 1) + 1, ahi = map(z);
      const uint64_t first = area_lower_bound(alo, ahi, cl.lo);
      count += first <= ahi && s_->access(first) <= cl.hi;
    }
    return count;
  }
  // Per label: successive select walks, marking objects in a dictionary.
  std::vector<bool> seen(co.hi - co.lo + 1, false);
  const uint64_t pmax = map(co.hi);
  for (uint64_t g = cl.lo; g <= cl.hi; ++g) {
    uint64_t j = s_->rank(g, map(co.lo - 1)) + 1;
    for (auto pos = s_->select(g, j); pos && *pos <= pmax;
         pos = s_->select(g, ++j)) {
      seen[unmap(*pos) - co.lo] = true;
    }
  }
  uint64_t count = 0;
  for (bool v : seen) count += v;
  return count;
}

std::optional<Pair> BinRelStr::rel_sel_lab_fst(uint64_t a, uint64_t j, uint64_t x,
                                               uint64_t y) const {
  return rel_sel_lab_fst_with(ScanStrategy::automatic, a, j, x, y);
}

std::optional<Pair> BinRelStr::rel_sel_lab_fst_with(ScanStrategy strat, uint64_t a,
                                                    uint64_t j, uint64_t x,
                                                    uint64_t y) const {
  const auto cl = clip_range(a, dims_.sigma, dims_.sigma);
  const auto co = clip_range(x, y, dims_.n);
  if (cl.empty() || co.empty()) return std::nullopt;
  const uint64_t p = map(co.lo - 1) + 1;
  const uint64_t q = map(co.hi);
  if (p > q) return std::nullopt;
  if (strat == ScanStrategy::automatic) {
    strat = cl.hi - cl.lo <= 4 * (co.hi - co.lo + 1) ? ScanStrategy::per_label
                                                     : ScanStrategy::per_object;
  }
  if (strat == ScanStrategy::per_label) {
    uint64_t c = 0;
    for (uint64_t g = cl.lo; g <= cl.hi; ++g) {
      const uint64_t cnt = s_->range_rank(g, p, q);
      if (c + cnt >= j) {
        const auto pos = s_->select(g, j - c + s_->rank(g, p - 1));
        return Pair{g, unmap(*pos)};
      }
      c += cnt;
    }
    return std::nullopt;
  }
  // Accumulate per-label occurrence lists by scanning the column areas.
  std::vector<std::vector<uint64_t>> occ(cl.hi - cl.lo + 1);
  for (uint64_t z = co.lo; z <= co.hi; ++z) {
    const uint64_t alo = map(z - 1) + 1, ahi = map(z);
    for (uint64_t i = area_lower_bound(alo, ahi, cl.lo); i <= ahi; ++i)
      occ[s_->access(i) - cl.lo].push_back(z);
  }
  uint64_t c = 0;
  for (uint64_t g = cl.lo; g <= cl.hi; ++g) {
    const auto& objs = occ[g - cl.lo];
    if (c + objs.size() >= j) return Pair{g, objs[j - c - 1]};
    c += objs.size();
  }
  return std::nullopt;
}

std::optional<Pair> BinRelStr::rel_sel_obj_fst(uint64_t a, uint64_t b, uint64_t x,
                                               uint64_t j) const {
  return rel_sel_obj_fst_with(ScanStrategy::automatic, a, b, x, j);
}

std::optional<Pair> BinRelStr::rel_sel_obj_fst_with(ScanStrategy strat, uint64_t a,
                                                    uint64_t b, uint64_t x,
                                                    uint64_t j) const {
  const auto cl = clip_range(a, b, dims_.sigma);
  const auto co = clip_range(x, dims_.n, dims_.n);
  if (cl.empty() || co.empty()) return std::nullopt;
  if (strat == ScanStrategy::automatic) {
    strat = co.hi - co.lo <= 4 * (cl.hi - cl.lo + 1) ? ScanStrategy::per_object
                                                     : ScanStrategy::per_label;
  }
  if (strat == ScanStrategy::per_object) {
    uint64_t c = 0;
    for (uint64_t z = co.lo; z <= co.hi; ++z) {
      const uint64_t alo = map(z - 1) + 1, ahi = map(z);
      const uint64_t first = area_lower_bound(alo, ahi, cl.lo);
      const uint64_t past = area_lower_bound(alo, ahi, cl.hi + 1);
      const uint64_t cnt = past - first;
      if (c + cnt >= j) return Pair{s_->access(first + (j - c) - 1), z};
      c += cnt;
    }
    return std::nullopt;
  }
  // Select walks per label, then index the object-major merge.
  std::vector<Pair> found;
  const uint64_t pmin = map(co.lo - 1);
  for (uint64_t g = cl.lo; g <= cl.hi; ++g) {
    uint64_t jj = s_->rank(g, pmin) + 1;
    for (auto pos = s_->select(g, jj); pos; pos = s_->select(g, ++jj))
      found.push_back({g, unmap(*pos)});
  }
  if (j > found.size()) return std::nullopt;
  std::sort(found.begin(), found.end(), object_major_less);
  return found[j - 1];
}

std::optional<uint64_t> BinRelStr::lab_sel_one(uint64_t a, uint64_t j,
                                               uint64_t x) const {
  if (x < 1 || x > dims_.n) return std::nullopt;
  const uint64_t alo = map(x - 1) + 1, ahi = map(x);
  const uint64_t first = area_lower_bound(alo, ahi, a < 1 ? 1 : a);
  const uint64_t idx = first + j - 1;
  if (idx > ahi) return std::nullopt;
  return s_->access(idx);
}

std::optional<uint64_t> BinRelStr::obj_sel_one(uint64_t a, uint64_t x,
                                               uint64_t j) const {
  if (a < 1 || a > dims_.sigma) return std::nullopt;
  const uint64_t before = x == 0 ? 0 : s_->rank(a, map(x - 1));
  const auto pos = s_->select(a, j + before);
  if (!pos) return std::nullopt;
  return unmap(*pos);
}

uint64_t BinRelStr::obj_rnk_one(uint64_t a, uint64_t x) const {
  if (a < 1 || a > dims_.sigma) return 0;
  return s_->rank(a, map(x));
}

std::vector<Pair> BinRelStr::decode() const {
  std::vector<Pair> out;
  out.reserve(dims_.t);
  for (uint64_t m = 1; m <= dims_.t; ++m) out.push_back({s_->access(m), unmap(m)});
  return out;
}

void BinRelStr::save_payload(std::ostream& os) const {
  b_.save(os);
  if (const auto* ws = dynamic_cast<const WaveletSequence*>(s_.get())) {
    ws->tree().save(os);
    return;
  }
  std::vector<uint64_t> labels;
  labels.reserve(dims_.t);
  for (uint64_t m = 1; m <= dims_.t; ++m) labels.push_back(s_->access(m));
  WaveletTree(labels, dims_.sigma).save(os);
}

BinRelStr BinRelStr::load_payload(std::istream& is, RelationDims dims) {
  BinRelStr r;
  r.dims_ = dims;
  r.b_ = BitVector::load(is);
  r.s_ = std::make_unique<WaveletSequence>(WaveletTree::load(is));
  if (r.b_.size() != dims.n + dims.t || r.b_.ones() != dims.t ||
      r.s_->size() != dims.t)
    throw std::runtime_error("BinRelStr: payload inconsistent with dims");
  return r;
}

} // namespace brel
