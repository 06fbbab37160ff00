#include "brel/naive_relation.hpp"

#include <algorithm>
#include <stdexcept>

namespace brel {

NaiveRelation::NaiveRelation(std::vector<Pair> pairs, uint64_t n, uint64_t sigma) {
  for (const Pair& p : pairs) {
    if (p.label < 1 || p.label > sigma || p.object < 1 || p.object > n)
      throw std::out_of_range("NaiveRelation: pair outside [1,sigma]x[1,n]");
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  dims_ = RelationDims{n, sigma, pairs.size()};
  label_major_ = pairs;
  object_major_ = std::move(pairs);
  std::sort(object_major_.begin(), object_major_.end(), object_major_less);
  row_objects_.assign(sigma + 1, {});
  col_labels_.assign(n + 1, {});
  for (const Pair& p : label_major_) {
    row_objects_[p.label].push_back(p.object);
    col_labels_[p.object].push_back(p.label);
  }
}

bool NaiveRelation::has(uint64_t label, uint64_t object) const {
  if (label < 1 || label > dims_.sigma || object < 1 || object > dims_.n)
    return false;
  const auto& row = row_objects_[label];
  return std::binary_search(row.begin(), row.end(), object);
}

bool NaiveRelation::row_hits(uint64_t gamma, uint64_t x, uint64_t y) const {
  const auto co = clip_range(x, y, dims_.n);
  if (co.empty()) return false;
  const auto& row = row_objects_[gamma];
  auto it = std::lower_bound(row.begin(), row.end(), co.lo);
  return it != row.end() && *it <= co.hi;
}

bool NaiveRelation::col_hits(uint64_t z, uint64_t a, uint64_t b) const {
  const auto cl = clip_range(a, b, dims_.sigma);
  if (cl.empty()) return false;
  const auto& col = col_labels_[z];
  auto it = std::lower_bound(col.begin(), col.end(), cl.lo);
  return it != col.end() && *it <= cl.hi;
}

std::vector<Pair> NaiveRelation::rel_acc(uint64_t a, uint64_t b, uint64_t x,
                                         uint64_t y) const {
  std::vector<Pair> out;
  for (const Pair& p : label_major_) {
    if (p.label >= a && p.label <= b && p.object >= x && p.object <= y)
      out.push_back(p);
  }
  return out;
}

std::optional<Pair> NaiveRelation::rel_sel_lab_fst(uint64_t a, uint64_t j,
                                                   uint64_t x, uint64_t y) const {
  uint64_t seen = 0;
  for (const Pair& p : label_major_) {
    if (p.label >= a && p.object >= x && p.object <= y && ++seen == j) return p;
  }
  return std::nullopt;
}

std::optional<Pair> NaiveRelation::rel_min_lab_fst(uint64_t a, uint64_t x,
                                                   uint64_t y, uint64_t z) const {
  // Smallest of relacc(a,a,z,y) u relacc(a+1,sigma,x,y) in label-major order;
  // a row-a hit always precedes every pair with a larger label.
  for (const Pair& p : label_major_) {
    if (p.label == a && p.object >= z && p.object <= y) return p;
    if (p.label > a && p.object >= x && p.object <= y) return p;
  }
  return std::nullopt;
}

std::optional<Pair> NaiveRelation::rel_sel_obj_fst(uint64_t a, uint64_t b,
                                                   uint64_t x, uint64_t j) const {
  uint64_t seen = 0;
  for (const Pair& p : object_major_) {
    if (p.label >= a && p.label <= b && p.object >= x && ++seen == j) return p;
  }
  return std::nullopt;
}

std::optional<Pair> NaiveRelation::rel_min_obj_fst(uint64_t a, uint64_t b,
                                                   uint64_t g, uint64_t x) const {
  // Smallest of relacc(g,b,x,x) u relacc(a,b,x+1,n) in object-major order; a
  // column-x hit always precedes every pair with a larger object.
  for (const Pair& p : object_major_) {
    if (p.object == x && p.label >= g && p.label <= b) return p;
    if (p.object > x && p.label >= a && p.label <= b) return p;
  }
  return std::nullopt;
}

uint64_t NaiveRelation::rel_num(uint64_t a, uint64_t b, uint64_t x,
                                uint64_t y) const {
  uint64_t count = 0;
  for (const Pair& p : label_major_) {
    count += p.label >= a && p.label <= b && p.object >= x && p.object <= y;
  }
  return count;
}

uint64_t NaiveRelation::rel_rnk(uint64_t a, uint64_t x) const {
  return rel_num(1, a, 1, x);
}

uint64_t NaiveRelation::rel_rnk_lab_fst(uint64_t a, uint64_t x, uint64_t y,
                                        uint64_t z) const {
  if (a == 0) return 0;
  return rel_num(1, a - 1, x, y) + rel_num(a, a, x, z);
}

uint64_t NaiveRelation::rel_rnk_obj_fst(uint64_t a, uint64_t b, uint64_t g,
                                        uint64_t x) const {
  if (x == 0) return 0;
  return rel_num(a, b, 1, x - 1) + rel_num(a, g, x, x);
}

std::vector<uint64_t> NaiveRelation::lab_acc(uint64_t a, uint64_t b, uint64_t x,
                                             uint64_t y) const {
  std::vector<uint64_t> out;
  const auto cl = clip_range(a, b, dims_.sigma);
  for (uint64_t g = cl.lo; g <= cl.hi && !cl.empty(); ++g) {
    if (row_hits(g, x, y)) out.push_back(g);
  }
  return out;
}

std::vector<uint64_t> NaiveRelation::lab_acc_one(uint64_t a, uint64_t b,
                                                 uint64_t x) const {
  return lab_acc(a, b, x, x);
}

std::optional<uint64_t> NaiveRelation::lab_sel(uint64_t a, uint64_t j, uint64_t x,
                                               uint64_t y) const {
  uint64_t seen = 0;
  const auto cl = clip_range(a, dims_.sigma, dims_.sigma);
  for (uint64_t g = cl.lo; g <= cl.hi && !cl.empty(); ++g) {
    if (row_hits(g, x, y) && ++seen == j) return g;
  }
  return std::nullopt;
}

std::optional<uint64_t> NaiveRelation::lab_sel_one(uint64_t a, uint64_t j,
                                                   uint64_t x) const {
  return lab_sel(a, j, x, x);
}

std::optional<uint64_t> NaiveRelation::lab_min(uint64_t a, uint64_t x,
                                               uint64_t y) const {
  return lab_sel(a, 1, x, y);
}

std::optional<uint64_t> NaiveRelation::lab_min_one(uint64_t a, uint64_t x) const {
  return lab_min(a, x, x);
}

uint64_t NaiveRelation::lab_num(uint64_t a, uint64_t b, uint64_t x,
                                uint64_t y) const {
  return lab_acc(a, b, x, y).size();
}

uint64_t NaiveRelation::lab_rnk(uint64_t a, uint64_t x, uint64_t y) const {
  return lab_num(1, a, x, y);
}

uint64_t NaiveRelation::lab_rnk_one(uint64_t a, uint64_t x) const {
  return lab_rnk(a, x, x);
}

std::vector<uint64_t> NaiveRelation::obj_acc(uint64_t a, uint64_t b, uint64_t x,
                                             uint64_t y) const {
  std::vector<uint64_t> out;
  const auto co = clip_range(x, y, dims_.n);
  for (uint64_t z = co.lo; z <= co.hi && !co.empty(); ++z) {
    if (col_hits(z, a, b)) out.push_back(z);
  }
  return out;
}

std::vector<uint64_t> NaiveRelation::obj_acc_one(uint64_t a, uint64_t x,
                                                 uint64_t y) const {
  return obj_acc(a, a, x, y);
}

std::optional<uint64_t> NaiveRelation::obj_sel(uint64_t a, uint64_t b, uint64_t x,
                                               uint64_t j) const {
  uint64_t seen = 0;
  const auto co = clip_range(x, dims_.n, dims_.n);
  for (uint64_t z = co.lo; z <= co.hi && !co.empty(); ++z) {
    if (col_hits(z, a, b) && ++seen == j) return z;
  }
  return std::nullopt;
}

std::optional<uint64_t> NaiveRelation::obj_sel_one(uint64_t a, uint64_t x,
                                                   uint64_t j) const {
  return obj_sel(a, a, x, j);
}

std::optional<uint64_t> NaiveRelation::obj_min(uint64_t a, uint64_t b,
                                               uint64_t x) const {
  return obj_sel(a, b, x, 1);
}

std::optional<uint64_t> NaiveRelation::obj_min_one(uint64_t a, uint64_t x) const {
  return obj_min(a, a, x);
}

uint64_t NaiveRelation::obj_num(uint64_t a, uint64_t b, uint64_t x,
                                uint64_t y) const {
  return obj_acc(a, b, x, y).size();
}

uint64_t NaiveRelation::obj_rnk(uint64_t a, uint64_t b, uint64_t x) const {
  return obj_num(a, b, 1, x);
}

uint64_t NaiveRelation::obj_rnk_one(uint64_t a, uint64_t x) const {
  return obj_rnk(a, a, x);
}

} // namespace brel
