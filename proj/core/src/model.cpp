#include "pdlsl/model.hpp"

#include <string>

#include "pdlsl/error.hpp"
#include "pdlsl/parse.hpp"

namespace pdlsl {

std::string_view to_string(ThreeVal v) {
  switch (v) {
    case ThreeVal::True: return "True";
    case ThreeVal::False: return "False";
    case ThreeVal::Unknown: return "Unknown";
  }
  return "Unknown";
}

// ---- Relation ----------------------------------------------------------------

Relation::Relation(std::size_t n) : n_(n), bits_(n * ((n + 63) / 64), 0) {}

Relation Relation::identity(std::size_t n) {
  Relation r(n);
  for (StateId s = 0; s < n; ++s) r.insert(s, s);
  return r;
}

Relation Relation::from_edges(std::size_t n, const std::set<Edge>& edges) {
  Relation r(n);
  for (const auto& [a, b] : edges) r.insert(a, b);
  return r;
}

bool Relation::contains(StateId from, StateId to) const {
  if (from >= n_ || to >= n_) return false;
  return (bits_[from * words() + to / 64] >> (to % 64)) & 1u;
}

void Relation::insert(StateId from, StateId to) {
  if (from >= n_ || to >= n_) throw Error(ErrorCode::UnknownState, "relation edge out of range");
  bits_[from * words() + to / 64] |= std::uint64_t{1} << (to % 64);
}

bool Relation::empty() const {
  for (auto w : bits_) {
    if (w) return false;
  }
  return true;
}

std::set<Edge> Relation::edges() const {
  std::set<Edge> out;
  for (StateId a = 0; a < n_; ++a) {
    for (StateId b = 0; b < n_; ++b) {
      if (contains(a, b)) out.emplace(a, b);
    }
  }
  return out;
}

std::vector<StateId> Relation::successors(StateId from) const {
  std::vector<StateId> out;
  for (StateId b = 0; b < n_; ++b) {
    if (contains(from, b)) out.push_back(b);
  }
  return out;
}

Relation Relation::operator&(const Relation& o) const {
  Relation r(*this);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= o.bits_[i];
  return r;
}

Relation Relation::operator|(const Relation& o) const {
  Relation r(*this);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= o.bits_[i];
  return r;
}

Relation Relation::compose(const Relation& o) const {
  Relation r(n_);
  const std::size_t w = words();
  for (StateId a = 0; a < n_; ++a) {
    for (StateId b = 0; b < n_; ++b) {
      if (!contains(a, b)) continue;
      for (std::size_t k = 0; k < w; ++k) r.bits_[a * w + k] |= o.bits_[b * w + k];
    }
  }
  return r;
}

Relation Relation::closure() const {
  Relation r = identity(n_);
  std::vector<StateId> worklist;
  for (StateId src = 0; src < n_; ++src) {
    worklist.assign(1, src);
    while (!worklist.empty()) {
      const StateId cur = worklist.back();
      worklist.pop_back();
      for (StateId next = 0; next < n_; ++next) {
        if (contains(cur, next) && !r.contains(src, next)) {
          r.insert(src, next);
          worklist.push_back(next);
        }
      }
    }
  }
  return r;
}

bool Relation::subset_of(const Relation& o) const {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & ~o.bits_[i]) return false;
  }
  return true;
}

// ---- UtteranceModel --------------------------------------------------------------

UtteranceModel::UtteranceModel(std::vector<StateInfo> states, std::set<Edge> relation,
                               std::map<AtomicAction, std::set<Edge>> action_interp)
    : states_(std::move(states)), relation_(std::move(relation)), action_interp_(std::move(action_interp)) {
  if (states_.empty()) throw Error(ErrorCode::MalformedModel, "model has no states");
  const std::size_t n = states_.size();
  std::vector<bool> has_successor(n, false);
  for (const auto& [a, b] : relation_) {
    if (a >= n || b >= n) throw Error(ErrorCode::MalformedModel, "transition refers to a missing state");
    has_successor[a] = true;
  }
  for (StateId s = 0; s < n; ++s) {
    if (!has_successor[s]) {
      throw Error(ErrorCode::MalformedModel, "state s" + std::to_string(s) + " has no successor (seriality)");
    }
  }
  for (const auto& [action, edges] : action_interp_) {
    if (!is_grounded(action)) {
      throw Error(ErrorCode::MalformedModel, "action " + print_atomic_action(action) + " is not grounded");
    }
    for (const auto& e : edges) {
      if (!relation_.count(e)) {
        throw Error(ErrorCode::MalformedModel,
                    "edge of " + print_atomic_action(action) + " is not in the transition relation");
      }
    }
  }
}

const StateInfo& UtteranceModel::state(StateId s) const {
  if (s >= states_.size()) {
    throw Error(ErrorCode::UnknownState, "state " + std::to_string(s) + " does not exist (model has " +
                                             std::to_string(states_.size()) + " states)");
  }
  return states_[s];
}

UtteranceModel UtteranceModel::with_value(StateId s, const Atom& p, ThreeVal v) const {
  state(s);
  UtteranceModel copy(*this);
  copy.states_[s].valuation[p] = v;
  return copy;
}

// ---- semantics ---------------------------------------------------------------------

namespace {

Relation interpret_uncached(const UtteranceModel& m, const Action& a) {
  const std::size_t n = m.state_count();
  switch (a.kind()) {
    case Action::Kind::Atomic: {
      auto it = m.action_interp().find(a.atom());
      return it == m.action_interp().end() ? Relation(n) : Relation::from_edges(n, it->second);
    }
    case Action::Kind::Concurrent: return interpret_action(m, a.lhs()) & interpret_action(m, a.rhs());
    case Action::Kind::Choice: return interpret_action(m, a.lhs()) | interpret_action(m, a.rhs());
    case Action::Kind::Seq: return interpret_action(m, a.lhs()).compose(interpret_action(m, a.rhs()));
    case Action::Kind::Star: return interpret_action(m, a.lhs()).closure();
  }
  return Relation(n);
}

}  // namespace

Relation interpret_action(const UtteranceModel& m, const Action& a) { return interpret_uncached(m, a); }

ThreeVal atom_value(const UtteranceModel& m, StateId s, const Atom& p) {
  const StateInfo& info = m.state(s);
  if (auto it = info.valuation.find(p); it != info.valuation.end()) return it->second;
  if (std::holds_alternative<Config>(p) || std::holds_alternative<Orient>(p)) return ThreeVal::Unknown;
  for (Articulator a : articulators_of(p)) {
    if (!info.observed.count(a)) return ThreeVal::Unknown;
  }
  return ThreeVal::False;
}

const Relation& Evaluator::relation_of(const Action& a) {
  if (auto it = cache_.find(a.id()); it != cache_.end()) return it->second;
  Relation r(model_.state_count());
  switch (a.kind()) {
    case Action::Kind::Atomic: r = interpret_uncached(model_, a); break;
    case Action::Kind::Concurrent: r = relation_of(a.lhs()) & relation_of(a.rhs()); break;
    case Action::Kind::Choice: r = relation_of(a.lhs()) | relation_of(a.rhs()); break;
    case Action::Kind::Seq: r = relation_of(a.lhs()).compose(relation_of(a.rhs())); break;
    case Action::Kind::Star: r = relation_of(a.lhs()).closure(); break;
  }
  pinned_.push_back(a);
  return cache_.emplace(a.id(), std::move(r)).first->second;
}

ThreeVal Evaluator::eval(StateId s, const Formula& f) {
  model_.state(s);
  if (!is_grounded(f)) {
    throw Error(ErrorCode::UngroundedFormula, "formula mentions D/W; ground it first: " + print_formula(f));
  }
  return eval_unchecked(s, f);
}

ThreeVal Evaluator::eval_unchecked(StateId s, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top: return ThreeVal::True;
    case Formula::Kind::Atom: return atom_value(model_, s, f.atom_value());
    case Formula::Kind::Not: return kleene_not(eval_unchecked(s, f.lhs()));
    case Formula::Kind::And: {
      const ThreeVal a = eval_unchecked(s, f.lhs());
      if (a == ThreeVal::False) return a;
      return kleene_and(a, eval_unchecked(s, f.rhs()));
    }
    case Formula::Kind::Box: {
      const Relation& r = relation_of(f.action());
      ThreeVal acc = ThreeVal::True;
      for (StateId t : r.successors(s)) {
        acc = kleene_and(acc, eval_unchecked(t, f.lhs()));
        if (acc == ThreeVal::False) break;
      }
      return acc;
    }
  }
  return ThreeVal::Unknown;
}

ThreeVal eval_formula(const UtteranceModel& m, StateId s, const Formula& f) {
  Evaluator ev(m);
  return ev.eval(s, f);
}

namespace {

bool eval_classical(const UtteranceModel& m, Evaluator& ev, StateId s, const Formula& f, bool closed_world) {
  switch (f.kind()) {
    case Formula::Kind::Top: return true;
    case Formula::Kind::Atom: {
      const ThreeVal v = atom_value(m, s, f.atom_value());
      if (v == ThreeVal::Unknown) {
        if (closed_world) return false;
        throw Error(ErrorCode::IncompleteValuation,
                    "atom " + print_atom(f.atom_value()) + " is Unknown at s" + std::to_string(s));
      }
      return v == ThreeVal::True;
    }
    case Formula::Kind::Not: return !eval_classical(m, ev, s, f.lhs(), closed_world);
    case Formula::Kind::And:
      return eval_classical(m, ev, s, f.lhs(), closed_world) && eval_classical(m, ev, s, f.rhs(), closed_world);
    case Formula::Kind::Box:
      for (StateId t : ev.relation_of(f.action()).successors(s)) {
        if (!eval_classical(m, ev, t, f.lhs(), closed_world)) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

bool eval_two_valued(const UtteranceModel& m, StateId s, const Formula& f, bool closed_world) {
  m.state(s);
  if (!is_grounded(f)) {
    throw Error(ErrorCode::UngroundedFormula, "formula mentions D/W; ground it first: " + print_formula(f));
  }
  Evaluator ev(m);
  return eval_classical(m, ev, s, f, closed_world);
}

}  // namespace pdlsl
