#pragma once
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>

namespace brel {

/// One related element of R: label in [1, sigma], object in [1, n].
struct Pair {
  uint64_t label = 0;
  uint64_t object = 0;
  auto operator<=>(const Pair&) const = default;  // label-major order
};

inline bool object_major_less(const Pair& a, const Pair& b) {
  return a.object < b.object || (a.object == b.object && a.label < b.label);
}

struct RelationDims {
  uint64_t n = 0;      // object universe size
  uint64_t sigma = 0;  // label universe size
  uint64_t t = 0;      // number of pairs
};

/// The 27-operation query contract. Names map 1:1 to the CLI's op names.
enum class Op : uint8_t {
  rel_acc,
  rel_sel_lab_fst,
  rel_min_lab_fst,
  rel_sel_obj_fst,
  rel_min_obj_fst,
  rel_num,
  rel_rnk,
  rel_rnk_lab_fst,
  rel_rnk_obj_fst,
  lab_acc,
  lab_acc_one,
  lab_sel,
  lab_sel_one,
  lab_min,
  lab_min_one,
  lab_num,
  lab_rnk,
  lab_rnk_one,
  obj_acc,
  obj_acc_one,
  obj_sel,
  obj_sel_one,
  obj_min,
  obj_min_one,
  obj_num,
  obj_rnk,
  obj_rnk_one,
};

inline constexpr int kOpCount = 27;

enum class ArgKind : uint8_t { label, object, ordinal };

enum class ResultKind : uint8_t {
  count,
  pair_list,
  label_list,
  object_list,
  opt_pair,
  opt_label,
  opt_object,
};

/// Strategy knobs for operations that have two implementation routes; automatic
/// picks the route with the smaller predicted work, and tests pin each route
/// to check they agree.
enum class ScanStrategy : uint8_t { automatic, per_label, per_object };
enum class SelObjStrategy : uint8_t { automatic, column_search, cover_search };

std::string_view op_name(Op op);
std::optional<Op> op_from_name(std::string_view name);
std::span<const ArgKind> op_args(Op op);
ResultKind op_result(Op op);

// Range endpoints may sit one step outside the universe (the reductions
// evaluate at alpha-1, alpha+1, x-1, x+1); anything further is an error.
inline void check_label_arg(uint64_t v, uint64_t sigma) {
  if (v > sigma + 1)
    throw std::out_of_range("label argument outside [0, sigma+1]");
}

inline void check_object_arg(uint64_t v, uint64_t n) {
  if (v > n + 1) throw std::out_of_range("object argument outside [0, n+1]");
}

inline void check_ordinal(uint64_t j) {
  if (j == 0) throw std::out_of_range("ordinals start at 1");
}

/// [lo, hi] intersected with [1, universe]; empty comes out as lo > hi.
struct ClippedRange {
  uint64_t lo, hi;
  bool empty() const { return lo > hi; }
};

inline ClippedRange clip_range(uint64_t lo, uint64_t hi, uint64_t universe) {
  return {lo < 1 ? 1 : lo, hi > universe ? universe : hi};
}

} // namespace brel
