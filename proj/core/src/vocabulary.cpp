#include "pdlsl/vocabulary.hpp"

#include <cmath>
#include <stdexcept>

#include "pdlsl/error.hpp"

namespace pdlsl {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::InvalidPlaceMap: return "InvalidPlaceMap";
    case ErrorCode::EmptySequence: return "EmptySequence";
    case ErrorCode::NoKeyPosture: return "NoKeyPosture";
    case ErrorCode::NonMonotoneTimestamps: return "NonMonotoneTimestamps";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::UngroundedFormula: return "UngroundedFormula";
    case ErrorCode::IncompleteValuation: return "IncompleteValuation";
    case ErrorCode::MalformedModel: return "MalformedModel";
    case ErrorCode::Schema: return "SchemaViolation";
    case ErrorCode::Io: return "IoError";
  }
  return "Error";
}

UnitVector direction_vector(Direction d) {
  constexpr double h = 0.70710678118654752440;
  switch (d) {
    case Direction::N: return {0.0, 1.0};
    case Direction::NE: return {h, h};
    case Direction::E: return {1.0, 0.0};
    case Direction::SE: return {h, -h};
    case Direction::S: return {0.0, -1.0};
    case Direction::SW: return {-h, -h};
    case Direction::W: return {-1.0, 0.0};
    case Direction::NW: return {-h, h};
  }
  return {0.0, 0.0};
}

std::string_view to_string(Articulator a) {
  switch (a) {
    case Articulator::Dominant: return "D";
    case Articulator::Weak: return "W";
    case Articulator::Right: return "R";
    case Articulator::Left: return "L";
  }
  return "?";
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::N: return "N";
    case Direction::NE: return "NE";
    case Direction::E: return "E";
    case Direction::SE: return "SE";
    case Direction::S: return "S";
    case Direction::SW: return "SW";
    case Direction::W: return "W";
    case Direction::NW: return "NW";
  }
  return "?";
}

std::string_view to_string(Handedness h) {
  return h == Handedness::RightDominant ? "right" : "left";
}

std::optional<Articulator> articulator_from_string(std::string_view s) {
  if (s == "D") return Articulator::Dominant;
  if (s == "W") return Articulator::Weak;
  if (s == "R") return Articulator::Right;
  if (s == "L") return Articulator::Left;
  return std::nullopt;
}

std::optional<Direction> direction_from_string(std::string_view s) {
  for (Direction d : kDirections) {
    if (to_string(d) == s) return d;
  }
  return std::nullopt;
}

// ---- Action ------------------------------------------------------------------

struct Action::Node {
  Kind kind;
  AtomicAction atom;
  std::vector<Action> children;
};

Action Action::atomic(AtomicAction a) {
  return Action(std::make_shared<const Node>(Node{Kind::Atomic, std::move(a), {}}));
}

Action Action::concurrent(Action lhs, Action rhs) {
  return Action(std::make_shared<const Node>(
      Node{Kind::Concurrent, Thrill{Articulator::Right}, {std::move(lhs), std::move(rhs)}}));
}

Action Action::choice(Action lhs, Action rhs) {
  return Action(std::make_shared<const Node>(
      Node{Kind::Choice, Thrill{Articulator::Right}, {std::move(lhs), std::move(rhs)}}));
}

Action Action::seq(Action lhs, Action rhs) {
  return Action(std::make_shared<const Node>(
      Node{Kind::Seq, Thrill{Articulator::Right}, {std::move(lhs), std::move(rhs)}}));
}

Action Action::star(Action body) {
  return Action(std::make_shared<const Node>(
      Node{Kind::Star, Thrill{Articulator::Right}, {std::move(body)}}));
}

Action::Kind Action::kind() const { return node_->kind; }

const AtomicAction& Action::atom() const {
  if (node_->kind != Kind::Atomic) throw std::logic_error("Action::atom on composite node");
  return node_->atom;
}

const Action& Action::lhs() const {
  if (node_->children.empty()) throw std::logic_error("Action::lhs on atomic node");
  return node_->children[0];
}

const Action& Action::rhs() const {
  if (node_->children.size() < 2) throw std::logic_error("Action::rhs on unary node");
  return node_->children[1];
}

std::size_t Action::size() const {
  std::size_t n = 1;
  for (const auto& c : node_->children) n += c.size();
  return n;
}

bool operator==(const Action& a, const Action& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Action::Kind::Atomic) return a.atom() == b.atom();
  return a.node_->children == b.node_->children;
}

// ---- Formula -------------------------------------------------------------------

struct Formula::Node {
  Kind kind;
  std::optional<Atom> atom;
  std::optional<Action> action;
  std::vector<Formula> children;
};

Formula Formula::top() {
  static const Formula t(std::make_shared<const Node>(Node{Kind::Top, std::nullopt, std::nullopt, {}}));
  return t;
}

Formula Formula::atom(Atom p) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, std::move(p), std::nullopt, {}}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, std::nullopt, std::nullopt, {std::move(f)}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::And, std::nullopt, std::nullopt, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::box(Action a, Formula body) {
  return Formula(std::make_shared<const Node>(Node{Kind::Box, std::nullopt, std::move(a), {std::move(body)}}));
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  return negation(conjunction(std::move(lhs), negation(std::move(rhs))));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return negation(conjunction(negation(std::move(lhs)), negation(std::move(rhs))));
}

Formula Formula::diamond(Action a, Formula body) {
  return negation(box(std::move(a), negation(std::move(body))));
}

Formula::Kind Formula::kind() const { return node_->kind; }

const Atom& Formula::atom_value() const {
  if (!node_->atom) throw std::logic_error("Formula::atom_value on non-atom node");
  return *node_->atom;
}

const Formula& Formula::lhs() const {
  if (node_->children.empty()) throw std::logic_error("Formula::lhs on leaf node");
  return node_->children[0];
}

const Formula& Formula::rhs() const {
  if (node_->children.size() < 2) throw std::logic_error("Formula::rhs on non-binary node");
  return node_->children[1];
}

const Action& Formula::action() const {
  if (!node_->action) throw std::logic_error("Formula::action on non-box node");
  return *node_->action;
}

std::size_t Formula::size() const {
  std::size_t n = 1;
  if (node_->action) n += node_->action->size();
  for (const auto& c : node_->children) n += c.size();
  return n;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Top: return true;
    case Formula::Kind::Atom: return a.atom_value() == b.atom_value();
    case Formula::Kind::Box:
      if (!(a.action() == b.action())) return false;
      break;
    default: break;
  }
  return a.node_->children == b.node_->children;
}

// ---- grounding -------------------------------------------------------------

Direction mirror_direction(Direction d) {
  switch (d) {
    case Direction::N: return Direction::N;
    case Direction::NE: return Direction::NW;
    case Direction::E: return Direction::W;
    case Direction::SE: return Direction::SW;
    case Direction::S: return Direction::S;
    case Direction::SW: return Direction::SE;
    case Direction::W: return Direction::E;
    case Direction::NW: return Direction::NE;
  }
  return d;
}

Direction resolve_direction(Direction d, Handedness h) {
  return h == Handedness::RightDominant ? d : mirror_direction(d);
}

Articulator resolve_articulator(Articulator a, Handedness h) {
  const bool right = h == Handedness::RightDominant;
  switch (a) {
    case Articulator::Dominant: return right ? Articulator::Right : Articulator::Left;
    case Articulator::Weak: return right ? Articulator::Left : Articulator::Right;
    default: return a;
  }
}

namespace {

struct AtomGrounder {
  Handedness h;

  Atom operator()(const RelDir& p) const {
    const bool alias = is_alias(p.first) || is_alias(p.second);
    return RelDir{resolve_articulator(p.first, h), alias ? resolve_direction(p.dir, h) : p.dir,
                  resolve_articulator(p.second, h)};
  }
  Atom operator()(const At& p) const { return At{resolve_articulator(p.articulator, h), p.place}; }
  Atom operator()(const Touch& p) const {
    return Touch{resolve_articulator(p.first, h), resolve_articulator(p.second, h)};
  }
  Atom operator()(const Config& p) const { return Config{resolve_articulator(p.articulator, h), p.label}; }
  Atom operator()(const Orient& p) const {
    return Orient{resolve_articulator(p.articulator, h),
                  is_alias(p.articulator) ? resolve_direction(p.dir, h) : p.dir};
  }
};

}  // namespace

Atom ground(const Atom& p, Handedness h) { return std::visit(AtomGrounder{h}, p); }

AtomicAction ground(const AtomicAction& a, Handedness h) {
  if (const auto* m = std::get_if<Move>(&a)) {
    return Move{resolve_articulator(m->articulator, h),
                is_alias(m->articulator) ? resolve_direction(m->dir, h) : m->dir};
  }
  return Thrill{resolve_articulator(std::get<Thrill>(a).articulator, h)};
}

Action ground(const Action& a, Handedness h) {
  switch (a.kind()) {
    case Action::Kind::Atomic: return Action::atomic(ground(a.atom(), h));
    case Action::Kind::Concurrent: return Action::concurrent(ground(a.lhs(), h), ground(a.rhs(), h));
    case Action::Kind::Choice: return Action::choice(ground(a.lhs(), h), ground(a.rhs(), h));
    case Action::Kind::Seq: return Action::seq(ground(a.lhs(), h), ground(a.rhs(), h));
    case Action::Kind::Star: return Action::star(ground(a.lhs(), h));
  }
  return a;
}

Formula ground(const Formula& f, Handedness h) {
  switch (f.kind()) {
    case Formula::Kind::Top: return f;
    case Formula::Kind::Atom: return Formula::atom(ground(f.atom_value(), h));
    case Formula::Kind::Not: return Formula::negation(ground(f.lhs(), h));
    case Formula::Kind::And: return Formula::conjunction(ground(f.lhs(), h), ground(f.rhs(), h));
    case Formula::Kind::Box: return Formula::box(ground(f.action(), h), ground(f.lhs(), h));
  }
  return f;
}

std::vector<Articulator> articulators_of(const Atom& p) {
  return std::visit(
      [](const auto& a) -> std::vector<Articulator> {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, RelDir> || std::is_same_v<T, Touch>) {
          return {a.first, a.second};
        } else {
          return {a.articulator};
        }
      },
      p);
}

Articulator articulator_of(const AtomicAction& a) {
  return std::visit([](const auto& x) { return x.articulator; }, a);
}

bool is_grounded(const Atom& p) {
  for (Articulator a : articulators_of(p)) {
    if (is_alias(a)) return false;
  }
  return true;
}

bool is_grounded(const AtomicAction& a) { return !is_alias(articulator_of(a)); }

bool is_grounded(const Action& a) {
  switch (a.kind()) {
    case Action::Kind::Atomic: return is_grounded(a.atom());
    case Action::Kind::Star: return is_grounded(a.lhs());
    default: return is_grounded(a.lhs()) && is_grounded(a.rhs());
  }
}

bool is_grounded(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top: return true;
    case Formula::Kind::Atom: return is_grounded(f.atom_value());
    case Formula::Kind::Not: return is_grounded(f.lhs());
    case Formula::Kind::And: return is_grounded(f.lhs()) && is_grounded(f.rhs());
    case Formula::Kind::Box: return is_grounded(f.action()) && is_grounded(f.lhs());
  }
  return true;
}

}  // namespace pdlsl
