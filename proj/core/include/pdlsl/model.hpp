#pragma once

// Utterance models (finite serial LTS) and the three-valued semantics of
// formulas over them.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pdlsl/vocabulary.hpp"

namespace pdlsl {

enum class ThreeVal { False, Unknown, True };

std::string_view to_string(ThreeVal v);

inline ThreeVal kleene_not(ThreeVal v) {
  if (v == ThreeVal::True) return ThreeVal::False;
  if (v == ThreeVal::False) return ThreeVal::True;
  return ThreeVal::Unknown;
}

inline ThreeVal kleene_and(ThreeVal a, ThreeVal b) {
  if (a == ThreeVal::False || b == ThreeVal::False) return ThreeVal::False;
  if (a == ThreeVal::Unknown || b == ThreeVal::Unknown) return ThreeVal::Unknown;
  return ThreeVal::True;
}

using StateId = std::size_t;
using Edge = std::pair<StateId, StateId>;

/// Dense Boolean relation over states 0..n-1, one bit row per state.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n);

  static Relation identity(std::size_t n);
  static Relation from_edges(std::size_t n, const std::set<Edge>& edges);

  std::size_t size() const { return n_; }
  bool contains(StateId from, StateId to) const;
  void insert(StateId from, StateId to);
  bool empty() const;

  std::set<Edge> edges() const;
  std::vector<StateId> successors(StateId from) const;

  Relation operator&(const Relation& o) const;
  Relation operator|(const Relation& o) const;
  /// Relational composition: (a, c) such that a->b in this and b->c in o.
  Relation compose(const Relation& o) const;
  /// Reflexive transitive closure (identity over all n states included).
  Relation closure() const;

  bool subset_of(const Relation& o) const;
  friend bool operator==(const Relation&, const Relation&) = default;

 private:
  std::size_t words() const { return (n_ + 63) / 64; }
  std::size_t n_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Per-state data: explicit atom values plus which articulators had an
/// observed position (decides the default for unlisted geometric atoms).
struct StateInfo {
  std::map<Atom, ThreeVal> valuation;
  std::set<Articulator> observed;
};

/// The four-tuple (S, R, action interpretation, valuation). Immutable after
/// construction; the constructor checks non-emptiness, seriality and that
/// every interpreted edge belongs to R.
class UtteranceModel {
 public:
  UtteranceModel(std::vector<StateInfo> states, std::set<Edge> relation,
                 std::map<AtomicAction, std::set<Edge>> action_interp);

  std::size_t state_count() const { return states_.size(); }
  const std::vector<StateInfo>& states() const { return states_; }
  const StateInfo& state(StateId s) const;
  const std::set<Edge>& relation() const { return relation_; }
  const std::map<AtomicAction, std::set<Edge>>& action_interp() const { return action_interp_; }

  /// Copy with one atom's value replaced at one state.
  UtteranceModel with_value(StateId s, const Atom& p, ThreeVal v) const;

 private:
  std::vector<StateInfo> states_;
  std::set<Edge> relation_;
  std::map<AtomicAction, std::set<Edge>> action_interp_;
};

Relation interpret_action(const UtteranceModel& m, const Action& a);

/// Listed value, else the default: Config/Orient -> Unknown; RelDir, At,
/// Touch -> False when every articulator involved was observed at `s`,
/// Unknown otherwise. Throws Error(UnknownState).
ThreeVal atom_value(const UtteranceModel& m, StateId s, const Atom& p);

/// Strong-Kleene evaluation; Box quantifies over interpret_action(a)
/// successors. Throws Error(UngroundedFormula) on D/W and
/// Error(UnknownState) on a bad state id.
ThreeVal eval_formula(const UtteranceModel& m, StateId s, const Formula& f);

/// Classical evaluation. With `closed_world`, Unknown atoms read as False;
/// without it, reaching an Unknown atom throws Error(IncompleteValuation).
bool eval_two_valued(const UtteranceModel& m, StateId s, const Formula& f, bool closed_world);

/// Evaluator that caches action relations for the lifetime of the object.
/// Not thread-safe; use one per thread.
class Evaluator {
 public:
  explicit Evaluator(const UtteranceModel& m) : model_(m) {}

  ThreeVal eval(StateId s, const Formula& f);
  const Relation& relation_of(const Action& a);

 private:
  ThreeVal eval_unchecked(StateId s, const Formula& f);

  const UtteranceModel& model_;
  std::unordered_map<const void*, Relation> cache_;
  std::vector<Action> pinned_;
};

}  // namespace pdlsl
