#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "nia/integer.h"
#include "nia/term_store.h"

namespace nia {

enum class LBool : std::int8_t { False = -1, Undef = 0, True = 1 };

inline LBool lbool_of(bool b) { return b ? LBool::True : LBool::False; }
inline LBool operator~(LBool v) { return static_cast<LBool>(-static_cast<std::int8_t>(v)); }

class DuplicateAssignment : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class ElementKind : std::uint8_t { DecidedLiteral, PropagatedLiteral, ModelAssignment };

struct Reason {
  enum class Kind : std::uint8_t {
    Decision,
    Clause,                // unit propagation from clause `clause`
    Evaluation,            // the literal's atom evaluates under model assignments
    FeasibilitySingleton,  // forced model assignment; `clause` holds its explanation
  } kind = Kind::Decision;
  std::uint32_t clause = 0;
};

struct TrailElement {
  ElementKind kind;
  Literal lit;  // for model assignments: the exclusion literal (x = value)
  bool owns_literal = true;  // false when the exclusion literal was already true
  VarId var = 0;
  Integer value;
  unsigned level = 0;
  Reason reason;
};

/// Last value of each variable whose assignment was undone, plus values
/// suggested by local search. Booleans are stored as 0/1.
class ValueCache {
 public:
  void resize(std::size_t n) { values_.resize(n); }
  const std::optional<Integer>& get(VarId v) const { return values_[v]; }
  void set(VarId v, Integer value) { values_[v] = std::move(value); }
  void clear(VarId v) { values_[v].reset(); }

 private:
  std::vector<std::optional<Integer>> values_;
};

/// The MCSat trail: decided literals, propagated literals, and model
/// assignments, with decision levels.
class Trail {
 public:
  explicit Trail(const TermStore& store);

  unsigned level() const { return static_cast<unsigned>(level_starts_.size()); }
  std::size_t size() const { return elements_.size(); }
  const TrailElement& operator[](std::size_t i) const { return elements_[i]; }
  std::span<const TrailElement> elements() const { return elements_; }

  /// Model value of an integer variable, or the 0/1 value of an assigned
  /// Boolean variable; nullptr when undefined.
  const Integer* value_of_var(VarId x) const;
  /// Boolean trail value if assigned, else exact evaluation of the atom when
  /// all of its variables carry model assignments, else Undef.
  LBool value_of_lit(Literal l) const;
  /// Boolean trail value only.
  LBool assigned_value(Literal l) const;
  bool is_assigned(Literal l) const { return assigned_value(l) != LBool::Undef; }
  unsigned level_of(Literal l) const { return props_[l.prop()].level; }
  std::size_t position_of(Literal l) const { return props_[l.prop()].position; }
  const Reason& reason_of(Literal l) const { return elements_[props_[l.prop()].position].reason; }
  /// Level at which an assigned variable got its value.
  unsigned var_level(VarId x) const { return vars_[x].level; }
  /// Exclusion literal (x = value) of an assigned integer variable.
  Literal exclusion_literal(VarId x) const { return vars_[x].exclusion; }

  void push_decision(Literal l);
  void push_propagation(Literal l, Reason r);
  /// Pushes x -> value. A decision opens a new level. `exclusion` is the
  /// literal (x - value = 0); it becomes true unless it already is.
  void push_model_assignment(VarId x, Integer value, Literal exclusion, bool decision, Reason r = {});

  /// Removes all elements above `level`, recording undone values in the cache.
  void backtrack_to(unsigned level);

  ValueCache& cache() { return cache_; }
  const ValueCache& cache() const { return cache_; }

  /// Grows per-variable and per-proposition tables after the store grows.
  void sync_with_store();

 private:
  struct PropInfo {
    LBool value = LBool::Undef;  // value of the positive literal
    unsigned level = 0;
    std::size_t position = 0;
  };
  struct VarInfo {
    bool assigned = false;
    unsigned level = 0;
    Literal exclusion;
  };

  void assign_literal(Literal l, std::size_t position, unsigned level);

  const TermStore& store_;
  std::vector<TrailElement> elements_;
  std::vector<std::size_t> level_starts_;  // index of the first element of level i+1
  std::vector<PropInfo> props_;
  std::vector<VarInfo> vars_;
  std::vector<std::optional<Integer>> var_values_;
  ValueCache cache_;
};

}  // namespace nia
