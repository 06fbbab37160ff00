#pragma once
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "brel/relation.hpp"

namespace brel {

/// A representation's native operation set. Methods are only called for ops
/// the backend claims via provides(); the rest default to throwing. Arguments
/// arrive pre-validated against [0, universe+1] with ordinals >= 1; degenerate
/// ranges denote the empty set.
class RelationBackend {
public:
  virtual ~RelationBackend() = default;
  virtual RelationDims dims() const = 0;
  virtual bool provides(Op op) const = 0;
  virtual const char* name() const = 0;

  virtual std::vector<Pair> rel_acc(uint64_t, uint64_t, uint64_t, uint64_t) const;
  virtual std::optional<Pair> rel_sel_lab_fst(uint64_t, uint64_t, uint64_t, uint64_t) const;
  virtual std::optional<Pair> rel_min_lab_fst(uint64_t, uint64_t, uint64_t, uint64_t) const;
  virtual std::optional<Pair> rel_sel_obj_fst(uint64_t, uint64_t, uint64_t, uint64_t) const;
  virtual std::optional<Pair> rel_min_obj_fst(uint64_t, uint64_t, uint64_t, uint64_t) const;
  virtual uint64_t rel_num(uint64_t, uint64_t, uint64_t, uint64_t) const;
  virtual uint64_t rel_rnk(uint64_t, uint64_t) const;
  virtual uint64_t rel_rnk_lab_fst(uint64_t, uint64_t, uint64_t, uint64_t) const;
  virtual uint64_t rel_rnk_obj_fst(uint64_t, uint64_t, uint64_t, uint64_t) const;
  virtual std::vector<uint64_t> lab_acc(uint64_t, uint64_t, uint64_t, uint64_t) const;
  virtual std::vector<uint64_t> lab_acc_one(uint64_t, uint64_t, uint64_t) const;
  virtual std::optional<uint64_t> lab_sel(uint64_t, uint64_t, uint64_t, uint64_t) const;
  virtual std::optional<uint64_t> lab_sel_one(uint64_t, uint64_t, uint64_t) const;
  virtual std::optional<uint64_t> lab_min(uint64_t, uint64_t, uint64_t) const;
  virtual std::optional<uint64_t> lab_min_one(uint64_t, uint64_t) const;
  virtual uint64_t lab_num(uint64_t, uint64_t, uint64_t, uint64_t) const;
  virtual uint64_t lab_rnk(uint64_t, uint64_t, uint64_t) const;
  virtual uint64_t lab_rnk_one(uint64_t, uint64_t) const;
  virtual std::vector<uint64_t> obj_acc(uint64_t, uint64_t, uint64_t, uint64_t) const;
  virtual std::vector<uint64_t> obj_acc_one(uint64_t, uint64_t, uint64_t) const;
  virtual std::optional<uint64_t> obj_sel(uint64_t, uint64_t, uint64_t, uint64_t) const;
  virtual std::optional<uint64_t> obj_sel_one(uint64_t, uint64_t, uint64_t) const;
  virtual std::optional<uint64_t> obj_min(uint64_t, uint64_t, uint64_t) const;
  virtual std::optional<uint64_t> obj_min_one(uint64_t, uint64_t) const;
  virtual uint64_t obj_num(uint64_t, uint64_t, uint64_t, uint64_t) const;
  virtual uint64_t obj_rnk(uint64_t, uint64_t, uint64_t) const;
  virtual uint64_t obj_rnk_one(uint64_t, uint64_t) const;

protected:
  [[noreturn]] void unsupported(const char* op) const;
};

/// One derivation edge: how a target op is computed from source ops.
struct ReductionRule {
  Op target;
  std::vector<Op> sources;
  const char* name;
};

/// All reduction edges, in resolution priority order per target.
const std::vector<ReductionRule>& reduction_rules();

/// Completes a backend's native subset to the full 27-op contract by chaining
/// reduction rules. Rule choice is resolved once at construction; an op that
/// cannot be reached from the native set is a configuration error.
class QueryEngine {
public:
  /// In full mode every op must be reachable or construction throws; partial
  /// mode defers the error to the first call of an unresolved op (used to
  /// exercise single reduction edges in tests).
  enum class Completeness { full, partial };

  explicit QueryEngine(const RelationBackend& backend,
                       Completeness completeness = Completeness::full);

  const RelationBackend& backend() const { return *backend_; }
  RelationDims dims() const { return backend_->dims(); }

  /// Rule chosen for an op, or "native".
  std::string strategy_name(Op op) const;

  std::vector<Pair> rel_acc(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const;
  std::optional<Pair> rel_sel_lab_fst(uint64_t a, uint64_t j, uint64_t x, uint64_t y) const;
  std::optional<Pair> rel_min_lab_fst(uint64_t a, uint64_t x, uint64_t y, uint64_t z) const;
  std::optional<Pair> rel_sel_obj_fst(uint64_t a, uint64_t b, uint64_t x, uint64_t j) const;
  std::optional<Pair> rel_min_obj_fst(uint64_t a, uint64_t b, uint64_t g, uint64_t x) const;
  uint64_t rel_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const;
  uint64_t rel_rnk(uint64_t a, uint64_t x) const;
  uint64_t rel_rnk_lab_fst(uint64_t a, uint64_t x, uint64_t y, uint64_t z) const;
  uint64_t rel_rnk_obj_fst(uint64_t a, uint64_t b, uint64_t g, uint64_t x) const;
  std::vector<uint64_t> lab_acc(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const;
  std::vector<uint64_t> lab_acc_one(uint64_t a, uint64_t b, uint64_t x) const;
  std::optional<uint64_t> lab_sel(uint64_t a, uint64_t j, uint64_t x, uint64_t y) const;
  std::optional<uint64_t> lab_sel_one(uint64_t a, uint64_t j, uint64_t x) const;
  std::optional<uint64_t> lab_min(uint64_t a, uint64_t x, uint64_t y) const;
  std::optional<uint64_t> lab_min_one(uint64_t a, uint64_t x) const;
  uint64_t lab_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const;
  uint64_t lab_rnk(uint64_t a, uint64_t x, uint64_t y) const;
  uint64_t lab_rnk_one(uint64_t a, uint64_t x) const;
  std::vector<uint64_t> obj_acc(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const;
  std::vector<uint64_t> obj_acc_one(uint64_t a, uint64_t x, uint64_t y) const;
  std::optional<uint64_t> obj_sel(uint64_t a, uint64_t b, uint64_t x, uint64_t j) const;
  std::optional<uint64_t> obj_sel_one(uint64_t a, uint64_t x, uint64_t j) const;
  std::optional<uint64_t> obj_min(uint64_t a, uint64_t b, uint64_t x) const;
  std::optional<uint64_t> obj_min_one(uint64_t a, uint64_t x) const;
  uint64_t obj_num(uint64_t a, uint64_t b, uint64_t x, uint64_t y) const;
  uint64_t obj_rnk(uint64_t a, uint64_t b, uint64_t x) const;
  uint64_t obj_rnk_one(uint64_t a, uint64_t x) const;

private:
  int rule_for(Op op) const { return strategy_[static_cast<int>(op)]; }
  uint64_t sigma() const { return backend_->dims().sigma; }
  uint64_t n() const { return backend_->dims().n; }
  uint64_t t() const { return backend_->dims().t; }

  const RelationBackend* backend_;
  int strategy_[kOpCount];  // -1 = native, otherwise index into reduction_rules()
};

/// Type-erased query result, for oracle-equivalence checks and CLI printing.
using QueryResult = std::variant<uint64_t,                 // counts
                                 std::optional<Pair>,      // selection/min pairs
                                 std::optional<uint64_t>,  // selection/min scalars
                                 std::vector<Pair>,        // rel_acc
                                 std::vector<uint64_t>>;   // lab_acc/obj_acc

QueryResult run_op(const QueryEngine& engine, Op op, std::span<const uint64_t> args);
std::string result_to_string(const QueryResult& r);

} // namespace brel
