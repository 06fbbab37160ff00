#include "brel/relation.hpp"

#include <array>

namespace brel {

namespace {

constexpr ArgKind L = ArgKind::label;
constexpr ArgKind O = ArgKind::object;
constexpr ArgKind J = ArgKind::ordinal;

constexpr std::array<ArgKind, 4> kLLOO{L, L, O, O};
constexpr std::array<ArgKind, 4> kLJOO{L, J, O, O};
constexpr std::array<ArgKind, 4> kLOOO{L, O, O, O};
constexpr std::array<ArgKind, 4> kLLOJ{L, L, O, J};
constexpr std::array<ArgKind, 4> kLLLO{L, L, L, O};
constexpr std::array<ArgKind, 3> kLLO{L, L, O};
constexpr std::array<ArgKind, 3> kLJO{L, J, O};
constexpr std::array<ArgKind, 3> kLOO{L, O, O};
constexpr std::array<ArgKind, 3> kLOJ{L, O, J};
constexpr std::array<ArgKind, 2> kLO{L, O};

struct OpInfo {
  std::string_view name;
  std::span<const ArgKind> args;
  ResultKind result;
};

const std::array<OpInfo, kOpCount> kOps{{
    {"rel_acc", kLLOO, ResultKind::pair_list},
    {"rel_sel_lab_fst", kLJOO, ResultKind::opt_pair},
    {"rel_min_lab_fst", kLOOO, ResultKind::opt_pair},
    {"rel_sel_obj_fst", kLLOJ, ResultKind::opt_pair},
    {"rel_min_obj_fst", kLLLO, ResultKind::opt_pair},
    {"rel_num", kLLOO, ResultKind::count},
    {"rel_rnk", kLO, ResultKind::count},
    {"rel_rnk_lab_fst", kLOOO, ResultKind::count},
    {"rel_rnk_obj_fst", kLLLO, ResultKind::count},
    {"lab_acc", kLLOO, ResultKind::label_list},
    {"lab_acc_one", kLLO, ResultKind::label_list},
    {"lab_sel", kLJOO, ResultKind::opt_label},
    {"lab_sel_one", kLJO, ResultKind::opt_label},
    {"lab_min", kLOO, ResultKind::opt_label},
    {"lab_min_one", kLO, ResultKind::opt_label},
    {"lab_num", kLLOO, ResultKind::count},
    {"lab_rnk", kLOO, ResultKind::count},
    {"lab_rnk_one", kLO, ResultKind::count},
    {"obj_acc", kLLOO, ResultKind::object_list},
    {"obj_acc_one", kLOO, ResultKind::object_list},
    {"obj_sel", kLLOJ, ResultKind::opt_object},
    {"obj_sel_one", kLOJ, ResultKind::opt_object},
    {"obj_min", kLLO, ResultKind::opt_object},
    {"obj_min_one", kLO, ResultKind::opt_object},
    {"obj_num", kLLOO, ResultKind::count},
    {"obj_rnk", kLLO, ResultKind::count},
    {"obj_rnk_one", kLO, ResultKind::count},
}};

} // namespace

std::string_view op_name(Op op) { return kOps[static_cast<int>(op)].name; }

std::optional<Op> op_from_name(std::string_view name) {
  for (int i = 0; i < kOpCount; ++i) {
    if (kOps[i].name == name) return static_cast<Op>(i);
  }
  return std::nullopt;
}

std::span<const ArgKind> op_args(Op op) {
  return kOps[static_cast<int>(op)].args;
}

ResultKind op_result(Op op) { return kOps[static_cast<int>(op)].result; }

} // namespace brel
