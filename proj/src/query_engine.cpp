#include "brel/query_engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace brel {

void RelationBackend::unsupported(const char* op) const {
  throw std::logic_error(std::string(name()) + ": operation not provided natively: " + op);
}

std::vector<Pair> RelationBackend::rel_acc(uint64_t, uint64_t, uint64_t, uint64_t) const { unsupported("rel_acc"); }
std::optional<Pair> RelationBackend::rel_sel_lab_fst(uint64_t, uint64_t, uint64_t, uint64_t) const { unsupported("rel_sel_lab_fst"); }
std::optional<Pair> RelationBackend::rel_min_lab_fst(uint64_t, uint64_t, uint64_t, uint64_t) const { unsupported("rel_min_lab_fst"); }
std::optional<Pair> RelationBackend::rel_sel_obj_fst(uint64_t, uint64_t, uint64_t, uint64_t) const { unsupported("rel_sel_obj_fst"); }
std::optional<Pair> RelationBackend::rel_min_obj_fst(uint64_t, uint64_t, uint64_t, uint64_t) const { unsupported("rel_min_obj_fst"); }
uint64_t RelationBackend::rel_num(uint64_t, uint64_t, uint64_t, uint64_t) const { unsupported("rel_num"); }
uint64_t RelationBackend::rel_rnk(uint64_t, uint64_t) const { unsupported("rel_rnk"); }
uint64_t RelationBackend::rel_rnk_lab_fst(uint64_t, uint64_t, uint64_t, uint64_t) const { unsupported("rel_rnk_lab_fst"); }
uint64_t RelationBackend::rel_rnk_obj_fst(uint64_t, uint64_t, uint64_t, uint64_t) const { unsupported("rel_rnk_obj_fst"); }
std::vector<uint64_t> RelationBackend::lab_acc(uint64_t, uint64_t, uint64_t, uint64_t) const { unsupported("lab_acc"); }
std::vector<uint64_t> RelationBackend::lab_acc_one(uint64_t, uint64_t, uint64_t) const { unsupported("lab_acc_one"); }
std::optional<uint64_t> RelationBackend::lab_sel(uint64_t, uint64_t, uint64_t, uint64_t) const { unsupported("lab_sel"); }
std::optional<uint64_t> RelationBackend::lab_sel_one(uint64_t, uint64_t, uint64_t) const { unsupported("lab_sel_one"); }
std::optional<uint64_t> RelationBackend::lab_min(uint64_t, uint64_t, uint64_t) const { unsupported("lab_min"); }
std::optional<uint64_t> RelationBackend::lab_min_one(uint64_t, uint64_t) const { unsupported("lab_min_one"); }
uint64_t RelationBackend::lab_num(uint64_t, uint64_t, uint64_t, uint64_t) const { unsupported("lab_num"); }
uint64_t RelationBackend::lab_rnk(uint64_t, uint64_t, uint64_t) const { unsupported("lab_rnk"); }
uint64_t RelationBackend::lab_rnk_one(uint64_t, uint64_t) const { unsupported("lab_rnk_one"); }
std::vector<uint64_t> RelationBackend::obj_acc(uint64_t, uint64_t, uint64_t, uint64_t) const { unsupported("obj_acc"); }
std::vector<uint64_t> RelationBackend::obj_acc_one(uint64_t, uint64_t, uint64_t) const { unsupported("obj_acc_one"); }
std::optional<uint64_t> RelationBackend::obj_sel(uint64_t, uint64_t, uint64_t, uint64_t) const { unsupported("obj_sel"); }
std::optional<uint64_t> RelationBackend::obj_sel_one(uint64_t, uint64_t, uint64_t) const { unsupported("obj_sel_one"); }
std::optional<uint64_t> RelationBackend::obj_min(uint64_t, uint64_t, uint64_t) const { unsupported("obj_min"); }
std::optional<uint64_t> RelationBackend::obj_min_one(uint64_t, uint64_t) const { unsupported("obj_min_one"); }
uint64_t RelationBackend::obj_num(uint64_t, uint64_t, uint64_t, uint64_t) const { unsupported("obj_num"); }
uint64_t RelationBackend::obj_rnk(uint64_t, uint64_t, uint64_t) const { unsupported("obj_rnk"); }
uint64_t RelationBackend::obj_rnk_one(uint64_t, uint64_t) const { unsupported("obj_rnk_one"); }

namespace {

// Rule ids; must match the construction order in reduction_rules().
enum RuleId : int {
  kRelAccFromMinLab = 0,
  kRelAccFromMinObj,
  kSelLabFromMinLab,
  kSelLabFromRnkLab,
  kMinLabFromSelLab,
  kSelObjFromMinObj,
  kSelObjFromRnkObj,
  kMinObjFromSelObj,
  kRelNumFromRelRnk,
  kRelNumFromRnkLab,
  kRelNumFromRnkObj,
  kRelNumFromRelAcc,
  kRelRnkFromRelNum,
  kRnkLabFromRelNum,
  kRnkLabFromSelLab,
  kRnkObjFromRelNum,
  kRnkObjFromSelObj,
  kLabAccFromLabMin,
  kLabAccOneFromRelAcc,
  kLabAccOneFromLabAcc,
  kLabAccOneFromLabMinOne,
  kLabSelFromLabMin,
  kLabSelFromLabNum,
  kLabSelOneFromSelLab,
  kLabSelOneFromLabSel,
  kLabMinFromMinLab,
  kLabMinFromLabSel,
  kLabMinOneFromLabMin,
  kLabMinOneFromLabSelOne,
  kLabNumFromRelNum,
  kLabNumFromLabAcc,
  kLabNumFromLabSel,
  kLabRnkFromLabNum,
  kLabRnkOneFromRelNum,
  kLabRnkOneFromLabRnk,
  kObjAccFromObjMin,
  kObjAccOneFromRelAcc,
  kObjAccOneFromObjAcc,
  kObjAccOneFromObjMinOne,
  kObjSelFromObjMin,
  kObjSelFromObjNum,
  kObjSelOneFromSelObj,
  kObjSelOneFromObjSel,
  kObjMinFromMinObj,
  kObjMinFromObjSel,
  kObjMinOneFromObjMin,
  kObjMinOneFromObjSelOne,
  kObjNumFromRelNum,
  kObjNumFromObjAcc,
  kObjNumFromObjSel,
  kObjRnkFromObjNum,
  kObjRnkOneFromRelNum,
  kObjRnkOneFromObjRnk,
  kRuleCount,
};

// Largest j in [0, hi] satisfying a monotone predicate (pred(0) is true).
template <typename Pred>
uint64_t search_last(uint64_t hi, Pred pred) {
  uint64_t lo = 0;
  while (lo < hi) {
    const uint64_t mid = lo + (hi - lo + 1) / 2;
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

// Smallest v in [lo, hi] satisfying a monotone predicate; pred(hi) must hold.
template <typename Pred>
uint64_t search_first(uint64_t lo, uint64_t hi, Pred pred) {
  while (lo < hi) {
    const uint64_t mid = lo + (hi - lo) / 2;
    if (pred(mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

} // namespace

const std::vector<ReductionRule>& reduction_rules() {
  static const std::vector<ReductionRule> rules = [] {
    std::vector<ReductionRule> r(kRuleCount);
    auto def = [&](int id, Op target, std::vector<Op> sources, const char* name) {
      r[id] = ReductionRule{target, std::move(sources), name};
    };
    def(kRelAccFromMinLab, Op::rel_acc, {Op::rel_min_lab_fst}, "rel_acc<-rel_min_lab_fst(iterate)");
    def(kRelAccFromMinObj, Op::rel_acc, {Op::rel_min_obj_fst}, "rel_acc<-rel_min_obj_fst(iterate)");
    def(kSelLabFromMinLab, Op::rel_sel_lab_fst, {Op::rel_min_lab_fst}, "rel_sel_lab_fst<-rel_min_lab_fst(iterate)");
    def(kSelLabFromRnkLab, Op::rel_sel_lab_fst, {Op::rel_rnk_lab_fst}, "rel_sel_lab_fst<-rel_rnk_lab_fst(binsearch)");
    def(kMinLabFromSelLab, Op::rel_min_lab_fst, {Op::rel_sel_lab_fst}, "rel_min_lab_fst<-rel_sel_lab_fst");
    def(kSelObjFromMinObj, Op::rel_sel_obj_fst, {Op::rel_min_obj_fst}, "rel_sel_obj_fst<-rel_min_obj_fst(iterate)");
    def(kSelObjFromRnkObj, Op::rel_sel_obj_fst, {Op::rel_rnk_obj_fst}, "rel_sel_obj_fst<-rel_rnk_obj_fst(binsearch)");
    def(kMinObjFromSelObj, Op::rel_min_obj_fst, {Op::rel_sel_obj_fst}, "rel_min_obj_fst<-rel_sel_obj_fst");
    def(kRelNumFromRelRnk, Op::rel_num, {Op::rel_rnk}, "rel_num<-rel_rnk(inclusion-exclusion)");
    def(kRelNumFromRnkLab, Op::rel_num, {Op::rel_rnk_lab_fst}, "rel_num<-rel_rnk_lab_fst(difference)");
    def(kRelNumFromRnkObj, Op::rel_num, {Op::rel_rnk_obj_fst}, "rel_num<-rel_rnk_obj_fst(difference)");
    def(kRelNumFromRelAcc, Op::rel_num, {Op::rel_acc}, "rel_num<-rel_acc(cardinality)");
    def(kRelRnkFromRelNum, Op::rel_rnk, {Op::rel_num}, "rel_rnk<-rel_num");
    def(kRnkLabFromRelNum, Op::rel_rnk_lab_fst, {Op::rel_num}, "rel_rnk_lab_fst<-rel_num");
    def(kRnkLabFromSelLab, Op::rel_rnk_lab_fst, {Op::rel_sel_lab_fst}, "rel_rnk_lab_fst<-rel_sel_lab_fst(binsearch)");
    def(kRnkObjFromRelNum, Op::rel_rnk_obj_fst, {Op::rel_num}, "rel_rnk_obj_fst<-rel_num");
    def(kRnkObjFromSelObj, Op::rel_rnk_obj_fst, {Op::rel_sel_obj_fst}, "rel_rnk_obj_fst<-rel_sel_obj_fst(binsearch)");
    def(kLabAccFromLabMin, Op::lab_acc, {Op::lab_min}, "lab_acc<-lab_min(iterate)");
    def(kLabAccOneFromRelAcc, Op::lab_acc_one, {Op::rel_acc}, "lab_acc_one<-rel_acc");
    def(kLabAccOneFromLabAcc, Op::lab_acc_one, {Op::lab_acc}, "lab_acc_one<-lab_acc");
    def(kLabAccOneFromLabMinOne, Op::lab_acc_one, {Op::lab_min_one}, "lab_acc_one<-lab_min_one(iterate)");
    def(kLabSelFromLabMin, Op::lab_sel, {Op::lab_min}, "lab_sel<-lab_min(iterate)");
    def(kLabSelFromLabNum, Op::lab_sel, {Op::lab_num}, "lab_sel<-lab_num(binsearch)");
    def(kLabSelOneFromSelLab, Op::lab_sel_one, {Op::rel_sel_lab_fst}, "lab_sel_one<-rel_sel_lab_fst");
    def(kLabSelOneFromLabSel, Op::lab_sel_one, {Op::lab_sel}, "lab_sel_one<-lab_sel");
    def(kLabMinFromMinLab, Op::lab_min, {Op::rel_min_lab_fst}, "lab_min<-rel_min_lab_fst");
    def(kLabMinFromLabSel, Op::lab_min, {Op::lab_sel}, "lab_min<-lab_sel");
    def(kLabMinOneFromLabMin, Op::lab_min_one, {Op::lab_min}, "lab_min_one<-lab_min");
    def(kLabMinOneFromLabSelOne, Op::lab_min_one, {Op::lab_sel_one}, "lab_min_one<-lab_sel_one");
    def(kLabNumFromRelNum, Op::lab_num, {Op::rel_num}, "lab_num<-rel_num(per-label)");
    def(kLabNumFromLabAcc, Op::lab_num, {Op::lab_acc}, "lab_num<-lab_acc(cardinality)");
    def(kLabNumFromLabSel, Op::lab_num, {Op::lab_sel}, "lab_num<-lab_sel(binsearch)");
    def(kLabRnkFromLabNum, Op::lab_rnk, {Op::lab_num}, "lab_rnk<-lab_num");
    def(kLabRnkOneFromRelNum, Op::lab_rnk_one, {Op::rel_num}, "lab_rnk_one<-rel_num");
    def(kLabRnkOneFromLabRnk, Op::lab_rnk_one, {Op::lab_rnk}, "lab_rnk_one<-lab_rnk");
    def(kObjAccFromObjMin, Op::obj_acc, {Op::obj_min}, "obj_acc<-obj_min(iterate)");
    def(kObjAccOneFromRelAcc, Op::obj_acc_one, {Op::rel_acc}, "obj_acc_one<-rel_acc");
    def(kObjAccOneFromObjAcc, Op::obj_acc_one, {Op::obj_acc}, "obj_acc_one<-obj_acc");
    def(kObjAccOneFromObjMinOne, Op::obj_acc_one, {Op::obj_min_one}, "obj_acc_one<-obj_min_one(iterate)");
    def(kObjSelFromObjMin, Op::obj_sel, {Op::obj_min}, "obj_sel<-obj_min(iterate)");
    def(kObjSelFromObjNum, Op::obj_sel, {Op::obj_num}, "obj_sel<-obj_num(binsearch)");
    def(kObjSelOneFromSelObj, Op::obj_sel_one, {Op::rel_sel_obj_fst}, "obj_sel_one<-rel_sel_obj_fst");
    def(kObjSelOneFromObjSel, Op::obj_sel_one, {Op::obj_sel}, "obj_sel_one<-obj_sel");
    def(kObjMinFromMinObj, Op::obj_min, {Op::rel_min_obj_fst}, "obj_min<-rel_min_obj_fst");
    def(kObjMinFromObjSel, Op::obj_min, {Op::obj_sel}, "obj_min<-obj_sel");
    def(kObjMinOneFromObjMin, Op::obj_min_one, {Op::obj_min}, "obj_min_one<-obj_min");
    def(kObjMinOneFromObjSelOne, Op::obj_min_one, {Op::obj_sel_one}, "obj_min_one<-obj_sel_one");
    def(kObjNumFromRelNum, Op::obj_num, {Op::rel_num}, "obj_num<-rel_num(per-column)");
    def(kObjNumFromObjAcc, Op::obj_num, {Op::obj_acc}, "obj_num<-obj_acc(cardinality)");
    def(kObjNumFromObjSel, Op::obj_num, {Op::obj_sel}, "obj_num<-obj_sel(binsearch)");
    def(kObjRnkFromObjNum, Op::obj_rnk, {Op::obj_num}, "obj_rnk<-obj_num");
    def(kObjRnkOneFromRelNum, Op::obj_rnk_one, {Op::rel_num}, "obj_rnk_one<-rel_num");
    def(kObjRnkOneFromObjRnk, Op::obj_rnk_one, {Op::obj_rnk}, "obj_rnk_one<-obj_rnk");
    return r;
  }();
  return rules;
}

QueryEngine::QueryEngine(const RelationBackend& backend,
                         Completeness completeness)
    : backend_(&backend) {
  bool avail[kOpCount] = {};
  for (int i = 0; i < kOpCount; ++i) {
    strategy_[i] = -2;
    if (backend.provides(static_cast<Op>(i))) {
      strategy_[i] = -1;
      avail[i] = true;
    }
  }
  const auto& rules = reduction_rules();
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t r = 0; r < rules.size(); ++r) {
      const int target = static_cast<int>(rules[r].target);
      if (avail[target]) continue;
      bool ok = true;
      for (Op s : rules[r].sources) ok = ok && avail[static_cast<int>(s)];
      if (ok) {
        strategy_[target] = static_cast<int>(r);
        avail[target] = true;
        changed = true;
      }
    }
  }
  if (completeness == Completeness::full) {
    for (int i = 0; i < kOpCount; ++i) {
      if (strategy_[i] == -2)
        throw std::logic_error(std::string("QueryEngine: operation ") +
                               std::string(op_name(static_cast<Op>(i))) +
                               " is unreachable from the native set of " +
                               backend.name());
    }
  }
}

namespace {
[[noreturn]] void unresolved(Op op) {
  throw std::logic_error(std::string("QueryEngine: no strategy resolved for ") +
                         std::string(op_name(op)));
}
} // namespace

std::string QueryEngine::strategy_name(Op op) const {
  const int r = rule_for(op);
  return r < 0 ? "native" : reduction_rules()[r].name;
}

std::vector<Pair> QueryEngine::rel_acc(uint64_t a, uint64_t b, uint64_t x,
                                       uint64_t y) const {
  check_label_arg(a, sigma());
  check_label_arg(b, sigma());
  check_object_arg(x, n());
  check_object_arg(y, n());
  std::vector<Pair> out;
  const auto cl = clip_range(a, b, sigma());
  const auto co = clip_range(x, y, n());
  switch (rule_for(Op::rel_acc)) {
    case -1:
      out = backend_->rel_acc(a, b, x, y);
      break;
    case kRelAccFromMinLab: {
      if (cl.empty() || co.empty()) break;
      auto cur = rel_min_lab_fst(cl.lo, co.lo, co.hi, co.lo);
      while (cur && cur->label <= cl.hi) {
        out.push_back(*cur);
        cur = rel_min_lab_fst(cur->label, co.lo, co.hi, cur->object + 1);
      }
      break;
    }
    case kRelAccFromMinObj: {
      if (cl.empty() || co.empty()) break;
      auto cur = rel_min_obj_fst(cl.lo, cl.hi, cl.lo, co.lo);
      while (cur && cur->object <= co.hi) {
        out.push_back(*cur);
        cur = rel_min_obj_fst(cl.lo, cl.hi, cur->label + 1, cur->object);
      }
      break;
    }
    default:
      unresolved(Op::rel_acc);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Pair> QueryEngine::rel_sel_lab_fst(uint64_t a, uint64_t j,
                                                 uint64_t x, uint64_t y) const {
  check_label_arg(a, sigma());
  check_ordinal(j);
  check_object_arg(x, n());
  check_object_arg(y, n());
  const auto cl = clip_range(a, sigma(), sigma());
  const auto co = clip_range(x, y, n());
  switch (rule_for(Op::rel_sel_lab_fst)) {
    case -1:
      return backend_->rel_sel_lab_fst(a, j, x, y);
    case kSelLabFromMinLab: {
      if (cl.empty() || co.empty()) return std::nullopt;
      auto cur = rel_min_lab_fst(cl.lo, co.lo, co.hi, co.lo);
      for (uint64_t seen = 1; cur; ++seen) {
        if (seen == j) return cur;
        cur = rel_min_lab_fst(cur->label, co.lo, co.hi, cur->object + 1);
      }
      return std::nullopt;
    }
    case kSelLabFromRnkLab: {
      if (cl.empty() || co.empty()) return std::nullopt;
      auto thru_label = [&](uint64_t g) {  // pairs of [cl.lo, g] x [x, y]
        return rel_rnk_lab_fst(g, co.lo, co.hi, co.hi) -
               rel_rnk_lab_fst(cl.lo - 1, co.lo, co.hi, co.hi);
      };
      if (j > thru_label(sigma())) return std::nullopt;
      const uint64_t gamma = search_first(cl.lo, sigma(), [&](uint64_t g) {
        return thru_label(g) >= j;
      });
      const uint64_t j2 = j - thru_label(gamma - 1);
      auto row_thru = [&](uint64_t w) {  // pairs of row gamma within [x, w]
        return rel_rnk_lab_fst(gamma, co.lo, co.hi, w) -
               rel_rnk_lab_fst(gamma - 1, co.lo, co.hi, co.hi);
      };
      const uint64_t z = search_first(co.lo, co.hi, [&](uint64_t w) {
        return row_thru(w) >= j2;
      });
      return Pair{gamma, z};
    }
    default:
      unresolved(Op::rel_sel_lab_fst);
  }
}

std::optional<Pair> QueryEngine::rel_min_lab_fst(uint64_t a, uint64_t x,
                                                 uint64_t y, uint64_t z) const {
  check_label_arg(a, sigma());
  check_object_arg(x, n());
  check_object_arg(y, n());
  check_object_arg(z, n());
  switch (rule_for(Op::rel_min_lab_fst)) {
    case -1:
      return backend_->rel_min_lab_fst(a, x, y, z);
    case kMinLabFromSelLab: {
      if (a >= 1 && a <= sigma()) {
        auto probe = rel_sel_lab_fst(a, 1, z, y);
        if (probe && probe->label == a) return probe;
      }
      if (a + 1 > sigma()) return std::nullopt;
      return rel_sel_lab_fst(a + 1, 1, x, y);
    }
    default:
      unresolved(Op::rel_min_lab_fst);
  }
}

std::optional<Pair> QueryEngine::rel_sel_obj_fst(uint64_t a, uint64_t b,
                                                 uint64_t x, uint64_t j) const {
  check_label_arg(a, sigma());
  check_label_arg(b, sigma());
  check_object_arg(x, n());
  check_ordinal(j);
  const auto cl = clip_range(a, b, sigma());
  const auto co = clip_range(x, n(), n());
  switch (rule_for(Op::rel_sel_obj_fst)) {
    case -1:
      return backend_->rel_sel_obj_fst(a, b, x, j);
    case kSelObjFromMinObj: {
      if (cl.empty() || co.empty()) return std::nullopt;
      auto cur = rel_min_obj_fst(cl.lo, cl.hi, cl.lo, co.lo);
      for (uint64_t seen = 1; cur; ++seen) {
        if (seen == j) return cur;
        cur = rel_min_obj_fst(cl.lo, cl.hi, cur->label + 1, cur->object);
      }
      return std::nullopt;
    }
    case kSelObjFromRnkObj: {
      if (cl.empty() || co.empty()) return std::nullopt;
      auto thru_col = [&](uint64_t w) {  // pairs of [a, b] x [x, w]
        return rel_rnk_obj_fst(cl.lo, cl.hi, cl.hi, w) -
               rel_rnk_obj_fst(cl.lo, cl.hi, cl.hi, co.lo - 1);
      };
      if (j > thru_col(n())) return std::nullopt;
      const uint64_t zcol = search_first(co.lo, n(), [&](uint64_t w) {
        return thru_col(w) >= j;
      });
      const uint64_t j2 = j - thru_col(zcol - 1);
      auto col_thru = [&](uint64_t g) {  // pairs of [a, g] within column zcol
        return rel_rnk_obj_fst(cl.lo, cl.hi, g, zcol) -
               rel_rnk_obj_fst(cl.lo, cl.hi, cl.hi, zcol - 1);
      };
      const uint64_t gamma = search_first(cl.lo, cl.hi, [&](uint64_t g) {
        return col_thru(g) >= j2;
      });
      return Pair{gamma, zcol};
    }
    default:
      unresolved(Op::rel_sel_obj_fst);
  }
}

std::optional<Pair> QueryEngine::rel_min_obj_fst(uint64_t a, uint64_t b,
                                                 uint64_t g, uint64_t x) const {
  check_label_arg(a, sigma());
  check_label_arg(b, sigma());
  check_label_arg(g, sigma());
  check_object_arg(x, n());
  switch (rule_for(Op::rel_min_obj_fst)) {
    case -1:
      return backend_->rel_min_obj_fst(a, b, g, x);
    case kMinObjFromSelObj: {
      if (x >= 1 && x <= n()) {
        auto probe = rel_sel_obj_fst(g, b, x, 1);
        if (probe && probe->object == x) return probe;
      }
      if (x + 1 > n()) return std::nullopt;
      return rel_sel_obj_fst(a, b, x + 1, 1);
    }
    default:
      unresolved(Op::rel_min_obj_fst);
  }
}

uint64_t QueryEngine::rel_num(uint64_t a, uint64_t b, uint64_t x,
                              uint64_t y) const {
  check_label_arg(a, sigma());
  check_label_arg(b, sigma());
  check_object_arg(x, n());
  check_object_arg(y, n());
  const auto cl = clip_range(a, b, sigma());
  const auto co = clip_range(x, y, n());
  if (rule_for(Op::rel_num) != -1 && (cl.empty() || co.empty())) return 0;
  switch (rule_for(Op::rel_num)) {
    case -1:
      return backend_->rel_num(a, b, x, y);
    case kRelNumFromRelRnk:
      return rel_rnk(cl.hi, co.hi) + rel_rnk(cl.lo - 1, co.lo - 1) -
             rel_rnk(cl.lo - 1, co.hi) - rel_rnk(cl.hi, co.lo - 1);
    case kRelNumFromRnkLab:
      return rel_rnk_lab_fst(cl.hi, co.lo, co.hi, co.hi) -
             rel_rnk_lab_fst(cl.lo - 1, co.lo, co.hi, co.hi);
    case kRelNumFromRnkObj:
      return rel_rnk_obj_fst(cl.lo, cl.hi, cl.hi, co.hi) -
             rel_rnk_obj_fst(cl.lo, cl.hi, cl.hi, co.lo - 1);
    case kRelNumFromRelAcc:
      return rel_acc(a, b, x, y).size();
    default:
      unresolved(Op::rel_num);
  }
}

uint64_t QueryEngine::rel_rnk(uint64_t a, uint64_t x) const {
  check_label_arg(a, sigma());
  check_object_arg(x, n());
  switch (rule_for(Op::rel_rnk)) {
    case -1:
      return backend_->rel_rnk(a, x);
    case kRelRnkFromRelNum:
      return rel_num(1, a, 1, x);
    default:
      unresolved(Op::rel_rnk);
  }
}

uint64_t QueryEngine::rel_rnk_lab_fst(uint64_t a, uint64_t x, uint64_t y,
                                      uint64_t z) const {
  check_label_arg(a, sigma());
  check_object_arg(x, n());
  check_object_arg(y, n());
  check_object_arg(z, n());
  if (a == 0) return 0;
  switch (rule_for(Op::rel_rnk_lab_fst)) {
    case -1:
      return backend_->rel_rnk_lab_fst(a, x, y, z);
    case kRnkLabFromRelNum:
      return rel_num(1, a - 1, x, y) + rel_num(a, a, x, z);
    case kRnkLabFromSelLab: {
      const auto co = clip_range(x, y, n());
      uint64_t term1 = 0;
      if (!co.empty() && a >= 2) {
        term1 = search_last(t(), [&](uint64_t jj) {
          auto p = rel_sel_lab_fst(1, jj, co.lo, co.hi);
          return p && p->label <= a - 1;
        });
      }
      uint64_t term2 = 0;
      const auto cz = clip_range(x, z, n());
      if (!cz.empty() && a <= sigma()) {
        term2 = search_last(t(), [&](uint64_t jj) {
          auto p = rel_sel_lab_fst(a, jj, cz.lo, cz.hi);
          return p && p->label == a;
        });
      }
      return term1 + term2;
    }
    default:
      unresolved(Op::rel_rnk_lab_fst);
  }
}

uint64_t QueryEngine::rel_rnk_obj_fst(uint64_t a, uint64_t b, uint64_t g,
                                      uint64_t x) const {
  check_label_arg(a, sigma());
  check_label_arg(b, sigma());
  check_label_arg(g, sigma());
  check_object_arg(x, n());
  if (x == 0) return 0;
  switch (rule_for(Op::rel_rnk_obj_fst)) {
    case -1:
      return backend_->rel_rnk_obj_fst(a, b, g, x);
    case kRnkObjFromRelNum:
      return rel_num(a, b, 1, x - 1) + rel_num(a, g, x, x);
    case kRnkObjFromSelObj: {
      const auto cl = clip_range(a, b, sigma());
      uint64_t term1 = 0;
      if (!cl.empty() && x >= 2) {
        term1 = search_last(t(), [&](uint64_t jj) {
          auto p = rel_sel_obj_fst(cl.lo, cl.hi, 1, jj);
          return p && p->object <= x - 1;
        });
      }
      uint64_t term2 = 0;
      const auto cg = clip_range(a, g, sigma());
      if (!cg.empty() && x <= n()) {
        term2 = search_last(t(), [&](uint64_t jj) {
          auto p = rel_sel_obj_fst(cg.lo, cg.hi, x, jj);
          return p && p->object == x;
        });
      }
      return term1 + term2;
    }
    default:
      unresolved(Op::rel_rnk_obj_fst);
  }
}

std::vector<uint64_t> QueryEngine::lab_acc(uint64_t a, uint64_t b, uint64_t x,
                                           uint64_t y) const {
  check_label_arg(a, sigma());
  check_label_arg(b, sigma());
  check_object_arg(x, n());
  check_object_arg(y, n());
  std::vector<uint64_t> out;
  switch (rule_for(Op::lab_acc)) {
    case -1:
      out = backend_->lab_acc(a, b, x, y);
      break;
    case kLabAccFromLabMin: {
      const auto cl = clip_range(a, b, sigma());
      const auto co = clip_range(x, y, n());
      if (cl.empty() || co.empty()) break;
      auto g = lab_min(cl.lo, co.lo, co.hi);
      while (g && *g <= cl.hi) {
        out.push_back(*g);
        if (*g >= sigma()) break;
        g = lab_min(*g + 1, co.lo, co.hi);
      }
      break;
    }
    default:
      unresolved(Op::lab_acc);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint64_t> QueryEngine::lab_acc_one(uint64_t a, uint64_t b,
                                               uint64_t x) const {
  check_label_arg(a, sigma());
  check_label_arg(b, sigma());
  check_object_arg(x, n());
  switch (rule_for(Op::lab_acc_one)) {
    case -1: {
      auto out = backend_->lab_acc_one(a, b, x);
      std::sort(out.begin(), out.end());
      return out;
    }
    case kLabAccOneFromRelAcc: {
      std::vector<uint64_t> out;
      for (const Pair& p : rel_acc(a, b, x, x)) out.push_back(p.label);
      return out;
    }
    case kLabAccOneFromLabAcc:
      return lab_acc(a, b, x, x);
    case kLabAccOneFromLabMinOne: {
      std::vector<uint64_t> out;
      const auto cl = clip_range(a, b, sigma());
      if (cl.empty() || x < 1 || x > n()) return out;
      auto g = lab_min_one(cl.lo, x);
      while (g && *g <= cl.hi) {
        out.push_back(*g);
        if (*g >= sigma()) break;
        g = lab_min_one(*g + 1, x);
      }
      return out;
    }
    default:
      unresolved(Op::lab_acc_one);
  }
}

std::optional<uint64_t> QueryEngine::lab_sel(uint64_t a, uint64_t j, uint64_t x,
                                             uint64_t y) const {
  check_label_arg(a, sigma());
  check_ordinal(j);
  check_object_arg(x, n());
  check_object_arg(y, n());
  const auto cl = clip_range(a, sigma(), sigma());
  const auto co = clip_range(x, y, n());
  switch (rule_for(Op::lab_sel)) {
    case -1:
      return backend_->lab_sel(a, j, x, y);
    case kLabSelFromLabMin: {
      if (cl.empty() || co.empty()) return std::nullopt;
      auto g = lab_min(cl.lo, co.lo, co.hi);
      for (uint64_t seen = 1; g; ++seen) {
        if (seen == j) return g;
        if (*g >= sigma()) return std::nullopt;
        g = lab_min(*g + 1, co.lo, co.hi);
      }
      return std::nullopt;
    }
    case kLabSelFromLabNum: {
      if (cl.empty() || co.empty()) return std::nullopt;
      if (j > lab_num(cl.lo, sigma(), co.lo, co.hi)) return std::nullopt;
      return search_first(cl.lo, sigma(), [&](uint64_t g) {
        return lab_num(cl.lo, g, co.lo, co.hi) >= j;
      });
    }
    default:
      unresolved(Op::lab_sel);
  }
}

std::optional<uint64_t> QueryEngine::lab_sel_one(uint64_t a, uint64_t j,
                                                 uint64_t x) const {
  check_label_arg(a, sigma());
  check_ordinal(j);
  check_object_arg(x, n());
  switch (rule_for(Op::lab_sel_one)) {
    case -1:
      return backend_->lab_sel_one(a, j, x);
    case kLabSelOneFromSelLab: {
      auto p = rel_sel_lab_fst(a, j, x, x);
      if (!p) return std::nullopt;
      return p->label;
    }
    case kLabSelOneFromLabSel:
      return lab_sel(a, j, x, x);
    default:
      unresolved(Op::lab_sel_one);
  }
}

std::optional<uint64_t> QueryEngine::lab_min(uint64_t a, uint64_t x,
                                             uint64_t y) const {
  check_label_arg(a, sigma());
  check_object_arg(x, n());
  check_object_arg(y, n());
  switch (rule_for(Op::lab_min)) {
    case -1:
      return backend_->lab_min(a, x, y);
    case kLabMinFromMinLab: {
      const auto co = clip_range(x, y, n());
      if (co.empty()) return std::nullopt;
      auto p = rel_min_lab_fst(a < 1 ? 1 : a, co.lo, co.hi, co.lo);
      if (!p) return std::nullopt;
      return p->label;
    }
    case kLabMinFromLabSel:
      return lab_sel(a, 1, x, y);
    default:
      unresolved(Op::lab_min);
  }
}

std::optional<uint64_t> QueryEngine::lab_min_one(uint64_t a, uint64_t x) const {
  check_label_arg(a, sigma());
  check_object_arg(x, n());
  switch (rule_for(Op::lab_min_one)) {
    case -1:
      return backend_->lab_min_one(a, x);
    case kLabMinOneFromLabMin:
      return lab_min(a, x, x);
    case kLabMinOneFromLabSelOne:
      return lab_sel_one(a, 1, x);
    default:
      unresolved(Op::lab_min_one);
  }
}

uint64_t QueryEngine::lab_num(uint64_t a, uint64_t b, uint64_t x,
                              uint64_t y) const {
  check_label_arg(a, sigma());
  check_label_arg(b, sigma());
  check_object_arg(x, n());
  check_object_arg(y, n());
  const auto cl = clip_range(a, b, sigma());
  const auto co = clip_range(x, y, n());
  switch (rule_for(Op::lab_num)) {
    case -1:
      return backend_->lab_num(a, b, x, y);
    case kLabNumFromRelNum: {
      if (cl.empty() || co.empty()) return 0;
      uint64_t count = 0;
      for (uint64_t g = cl.lo; g <= cl.hi; ++g)
        count += rel_num(g, g, co.lo, co.hi) > 0;
      return count;
    }
    case kLabNumFromLabAcc:
      return lab_acc(a, b, x, y).size();
    case kLabNumFromLabSel: {
      if (cl.empty() || co.empty()) return 0;
      return search_last(sigma(), [&](uint64_t jj) {
        auto g = lab_sel(cl.lo, jj, co.lo, co.hi);
        return g && *g <= cl.hi;
      });
    }
    default:
      unresolved(Op::lab_num);
  }
}

uint64_t QueryEngine::lab_rnk(uint64_t a, uint64_t x, uint64_t y) const {
  check_label_arg(a, sigma());
  check_object_arg(x, n());
  check_object_arg(y, n());
  switch (rule_for(Op::lab_rnk)) {
    case -1:
      return backend_->lab_rnk(a, x, y);
    case kLabRnkFromLabNum:
      return lab_num(1, a, x, y);
    default:
      unresolved(Op::lab_rnk);
  }
}

uint64_t QueryEngine::lab_rnk_one(uint64_t a, uint64_t x) const {
  check_label_arg(a, sigma());
  check_object_arg(x, n());
  switch (rule_for(Op::lab_rnk_one)) {
    case -1:
      return backend_->lab_rnk_one(a, x);
    case kLabRnkOneFromRelNum:
      return rel_num(1, a, x, x);
    case kLabRnkOneFromLabRnk:
      return lab_rnk(a, x, x);
    default:
      unresolved(Op::lab_rnk_one);
  }
}

std::vector<uint64_t> QueryEngine::obj_acc(uint64_t a, uint64_t b, uint64_t x,
                                           uint64_t y) const {
  check_label_arg(a, sigma());
  check_label_arg(b, sigma());
  check_object_arg(x, n());
  check_object_arg(y, n());
  std::vector<uint64_t> out;
  switch (rule_for(Op::obj_acc)) {
    case -1:
      out = backend_->obj_acc(a, b, x, y);
      break;
    case kObjAccFromObjMin: {
      const auto cl = clip_range(a, b, sigma());
      const auto co = clip_range(x, y, n());
      if (cl.empty() || co.empty()) break;
      auto z = obj_min(cl.lo, cl.hi, co.lo);
      while (z && *z <= co.hi) {
        out.push_back(*z);
        if (*z >= n()) break;
        z = obj_min(cl.lo, cl.hi, *z + 1);
      }
      break;
    }
    default:
      unresolved(Op::obj_acc);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<uint64_t> QueryEngine::obj_acc_one(uint64_t a, uint64_t x,
                                               uint64_t y) const {
  check_label_arg(a, sigma());
  check_object_arg(x, n());
  check_object_arg(y, n());
  switch (rule_for(Op::obj_acc_one)) {
    case -1: {
      auto out = backend_->obj_acc_one(a, x, y);
      std::sort(out.begin(), out.end());
      return out;
    }
    case kObjAccOneFromRelAcc: {
      std::vector<uint64_t> out;
      for (const Pair& p : rel_acc(a, a, x, y)) out.push_back(p.object);
      return out;
    }
    case kObjAccOneFromObjAcc:
      return obj_acc(a, a, x, y);
    case kObjAccOneFromObjMinOne: {
      std::vector<uint64_t> out;
      const auto co = clip_range(x, y, n());
      if (co.empty() || a < 1 || a > sigma()) return out;
      auto z = obj_min_one(a, co.lo);
      while (z && *z <= co.hi) {
        out.push_back(*z);
        if (*z >= n()) break;
        z = obj_min_one(a, *z + 1);
      }
      return out;
    }
    default:
      unresolved(Op::obj_acc_one);
  }
}

std::optional<uint64_t> QueryEngine::obj_sel(uint64_t a, uint64_t b, uint64_t x,
                                             uint64_t j) const {
  check_label_arg(a, sigma());
  check_label_arg(b, sigma());
  check_object_arg(x, n());
  check_ordinal(j);
  const auto cl = clip_range(a, b, sigma());
  const auto co = clip_range(x, n(), n());
  switch (rule_for(Op::obj_sel)) {
    case -1:
      return backend_->obj_sel(a, b, x, j);
    case kObjSelFromObjMin: {
      if (cl.empty() || co.empty()) return std::nullopt;
      auto z = obj_min(cl.lo, cl.hi, co.lo);
      for (uint64_t seen = 1; z; ++seen) {
        if (seen == j) return z;
        if (*z >= n()) return std::nullopt;
        z = obj_min(cl.lo, cl.hi, *z + 1);
      }
      return std::nullopt;
    }
    case kObjSelFromObjNum: {
      if (cl.empty() || co.empty()) return std::nullopt;
      if (j > obj_num(cl.lo, cl.hi, co.lo, n())) return std::nullopt;
      return search_first(co.lo, n(), [&](uint64_t w) {
        return obj_num(cl.lo, cl.hi, co.lo, w) >= j;
      });
    }
    default:
      unresolved(Op::obj_sel);
  }
}

std::optional<uint64_t> QueryEngine::obj_sel_one(uint64_t a, uint64_t x,
                                                 uint64_t j) const {
  check_label_arg(a, sigma());
  check_object_arg(x, n());
  check_ordinal(j);
  switch (rule_for(Op::obj_sel_one)) {
    case -1:
      return backend_->obj_sel_one(a, x, j);
    case kObjSelOneFromSelObj: {
      auto p = rel_sel_obj_fst(a, a, x, j);
      if (!p) return std::nullopt;
      return p->object;
    }
    case kObjSelOneFromObjSel:
      return obj_sel(a, a, x, j);
    default:
      unresolved(Op::obj_sel_one);
  }
}

std::optional<uint64_t> QueryEngine::obj_min(uint64_t a, uint64_t b,
                                             uint64_t x) const {
  check_label_arg(a, sigma());
  check_label_arg(b, sigma());
  check_object_arg(x, n());
  switch (rule_for(Op::obj_min)) {
    case -1:
      return backend_->obj_min(a, b, x);
    case kObjMinFromMinObj: {
      const auto cl = clip_range(a, b, sigma());
      if (cl.empty()) return std::nullopt;
      auto p = rel_min_obj_fst(cl.lo, cl.hi, cl.lo, x < 1 ? 1 : x);
      if (!p) return std::nullopt;
      return p->object;
    }
    case kObjMinFromObjSel:
      return obj_sel(a, b, x, 1);
    default:
      unresolved(Op::obj_min);
  }
}

std::optional<uint64_t> QueryEngine::obj_min_one(uint64_t a, uint64_t x) const {
  check_label_arg(a, sigma());
  check_object_arg(x, n());
  switch (rule_for(Op::obj_min_one)) {
    case -1:
      return backend_->obj_min_one(a, x);
    case kObjMinOneFromObjMin:
      return obj_min(a, a, x);
    case kObjMinOneFromObjSelOne:
      return obj_sel_one(a, x, 1);
    default:
      unresolved(Op::obj_min_one);
  }
}

uint64_t QueryEngine::obj_num(uint64_t a, uint64_t b, uint64_t x,
                              uint64_t y) const {
  check_label_arg(a, sigma());
  check_label_arg(b, sigma());
  check_object_arg(x, n());
  check_object_arg(y, n());
  const auto cl = clip_range(a, b, sigma());
  const auto co = clip_range(x, y, n());
  switch (rule_for(Op::obj_num)) {
    case -1:
      return backend_->obj_num(a, b, x, y);
    case kObjNumFromRelNum: {
      if (cl.empty() || co.empty()) return 0;
      uint64_t count = 0;
      for (uint64_t z = co.lo; z <= co.hi; ++z)
        count += rel_num(cl.lo, cl.hi, z, z) > 0;
      return count;
    }
    case kObjNumFromObjAcc:
      return obj_acc(a, b, x, y).size();
    case kObjNumFromObjSel: {
      if (cl.empty() || co.empty()) return 0;
      return search_last(n(), [&](uint64_t jj) {
        auto z = obj_sel(cl.lo, cl.hi, co.lo, jj);
        return z && *z <= co.hi;
      });
    }
    default:
      unresolved(Op::obj_num);
  }
}

uint64_t QueryEngine::obj_rnk(uint64_t a, uint64_t b, uint64_t x) const {
  check_label_arg(a, sigma());
  check_label_arg(b, sigma());
  check_object_arg(x, n());
  switch (rule_for(Op::obj_rnk)) {
    case -1:
      return backend_->obj_rnk(a, b, x);
    case kObjRnkFromObjNum:
      return obj_num(a, b, 1, x);
    default:
      unresolved(Op::obj_rnk);
  }
}

uint64_t QueryEngine::obj_rnk_one(uint64_t a, uint64_t x) const {
  check_label_arg(a, sigma());
  check_object_arg(x, n());
  switch (rule_for(Op::obj_rnk_one)) {
    case -1:
      return backend_->obj_rnk_one(a, x);
    case kObjRnkOneFromRelNum:
      return rel_num(a, a, 1, x);
    case kObjRnkOneFromObjRnk:
      return obj_rnk(a, a, x);
    default:
      unresolved(Op::obj_rnk_one);
  }
}

QueryResult run_op(const QueryEngine& e, Op op, std::span<const uint64_t> args) {
  if (args.size() != op_args(op).size())
    throw std::invalid_argument("run_op: wrong argument count");
  const uint64_t a0 = args.size() > 0 ? args[0] : 0;
  const uint64_t a1 = args.size() > 1 ? args[1] : 0;
  const uint64_t a2 = args.size() > 2 ? args[2] : 0;
  const uint64_t a3 = args.size() > 3 ? args[3] : 0;
  switch (op) {
    case Op::rel_acc: return e.rel_acc(a0, a1, a2, a3);
    case Op::rel_sel_lab_fst: return e.rel_sel_lab_fst(a0, a1, a2, a3);
    case Op::rel_min_lab_fst: return e.rel_min_lab_fst(a0, a1, a2, a3);
    case Op::rel_sel_obj_fst: return e.rel_sel_obj_fst(a0, a1, a2, a3);
    case Op::rel_min_obj_fst: return e.rel_min_obj_fst(a0, a1, a2, a3);
    case Op::rel_num: return e.rel_num(a0, a1, a2, a3);
    case Op::rel_rnk: return e.rel_rnk(a0, a1);
    case Op::rel_rnk_lab_fst: return e.rel_rnk_lab_fst(a0, a1, a2, a3);
    case Op::rel_rnk_obj_fst: return e.rel_rnk_obj_fst(a0, a1, a2, a3);
    case Op::lab_acc: return e.lab_acc(a0, a1, a2, a3);
    case Op::lab_acc_one: return e.lab_acc_one(a0, a1, a2);
    case Op::lab_sel: return e.lab_sel(a0, a1, a2, a3);
    case Op::lab_sel_one: return e.lab_sel_one(a0, a1, a2);
    case Op::lab_min: return e.lab_min(a0, a1, a2);
    case Op::lab_min_one: return e.lab_min_one(a0, a1);
    case Op::lab_num: return e.lab_num(a0, a1, a2, a3);
    case Op::lab_rnk: return e.lab_rnk(a0, a1, a2);
    case Op::lab_rnk_one: return e.lab_rnk_one(a0, a1);
    case Op::obj_acc: return e.obj_acc(a0, a1, a2, a3);
    case Op::obj_acc_one: return e.obj_acc_one(a0, a1, a2);
    case Op::obj_sel: return e.obj_sel(a0, a1, a2, a3);
    case Op::obj_sel_one: return e.obj_sel_one(a0, a1, a2);
    case Op::obj_min: return e.obj_min(a0, a1, a2);
    case Op::obj_min_one: return e.obj_min_one(a0, a1);
    case Op::obj_num: return e.obj_num(a0, a1, a2, a3);
    case Op::obj_rnk: return e.obj_rnk(a0, a1, a2);
    case Op::obj_rnk_one: return e.obj_rnk_one(a0, a1);
  }
  throw std::logic_error("run_op: unknown op");
}

std::string result_to_string(const QueryResult& r) {
  struct Visitor {
    std::string operator()(uint64_t v) const { return std::to_string(v); }
    std::string operator()(const std::optional<Pair>& p) const {
      if (!p) return "none";
      return std::to_string(p->label) + " " + std::to_string(p->object);
    }
    std::string operator()(const std::optional<uint64_t>& v) const {
      return v ? std::to_string(*v) : "none";
    }
    std::string operator()(const std::vector<Pair>& ps) const {
      std::string out;
      for (size_t i = 0; i < ps.size(); ++i) {
        if (i) out += '\n';
        out += std::to_string(ps[i].label) + " " + std::to_string(ps[i].object);
      }
      return out;
    }
    std::string operator()(const std::vector<uint64_t>& vs) const {
      std::string out;
      for (size_t i = 0; i < vs.size(); ++i) {
        if (i) out += '\n';
        out += std::to_string(vs[i]);
      }
      return out;
    }
  };
  return std::visit(Visitor{}, r);
}

} // namespace brel
