#pragma once

// Domain vocabulary for sign descriptions: articulators, directions, atoms,
// the regular action algebra, formulas, and handedness grounding.

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pdlsl {

enum class Articulator { Dominant, Weak, Right, Left };

/// The eight relative directions, in canonical order. The canonical order is
/// used for tie-breaking in direction classification.
enum class Direction { N, NE, E, SE, S, SW, W, NW };

inline constexpr std::array<Direction, 8> kDirections = {
    Direction::N, Direction::NE, Direction::E, Direction::SE,
    Direction::S, Direction::SW, Direction::W, Direction::NW};

enum class Handedness { RightDominant, LeftDominant };

struct UnitVector {
  double x;
  double y;
};

/// Unit vector of `d` in the signer frame (x to the signer's right, y up).
UnitVector direction_vector(Direction d);

std::string_view to_string(Articulator a);
std::string_view to_string(Direction d);
std::string_view to_string(Handedness h);
std::optional<Articulator> articulator_from_string(std::string_view s);
std::optional<Direction> direction_from_string(std::string_view s);

inline bool is_alias(Articulator a) {
  return a == Articulator::Dominant || a == Articulator::Weak;
}

// ---- atoms ---------------------------------------------------------------

/// `first` lies in direction `dir` relative to `second` (dir(first,second,dir)).
struct RelDir {
  Articulator first;
  Direction dir;
  Articulator second;
  friend bool operator==(const RelDir&, const RelDir&) = default;
  friend auto operator<=>(const RelDir&, const RelDir&) = default;
};

struct At {
  Articulator articulator;
  std::string place;
  friend bool operator==(const At&, const At&) = default;
  friend auto operator<=>(const At&, const At&) = default;
};

struct Touch {
  Articulator first;
  Articulator second;
  friend bool operator==(const Touch&, const Touch&) = default;
  friend auto operator<=>(const Touch&, const Touch&) = default;
};

struct Config {
  Articulator articulator;
  std::string label;
  friend bool operator==(const Config&, const Config&) = default;
  friend auto operator<=>(const Config&, const Config&) = default;
};

struct Orient {
  Articulator articulator;
  Direction dir;
  friend bool operator==(const Orient&, const Orient&) = default;
  friend auto operator<=>(const Orient&, const Orient&) = default;
};

using Atom = std::variant<RelDir, At, Touch, Config, Orient>;

// ---- atomic actions ------------------------------------------------------

struct Move {
  Articulator articulator;
  Direction dir;
  friend bool operator==(const Move&, const Move&) = default;
  friend auto operator<=>(const Move&, const Move&) = default;
};

struct Thrill {
  Articulator articulator;
  friend bool operator==(const Thrill&, const Thrill&) = default;
  friend auto operator<=>(const Thrill&, const Thrill&) = default;
};

using AtomicAction = std::variant<Move, Thrill>;

// ---- action algebra ------------------------------------------------------

/// Immutable action tree: atomic | a & b | a | b | a ; b | a*.
/// Copies share structure.
class Action {
 public:
  enum class Kind { Atomic, Concurrent, Choice, Seq, Star };

  static Action atomic(AtomicAction a);
  static Action concurrent(Action lhs, Action rhs);
  static Action choice(Action lhs, Action rhs);
  static Action seq(Action lhs, Action rhs);
  static Action star(Action body);

  Kind kind() const;
  /// Valid only for Kind::Atomic.
  const AtomicAction& atom() const;
  /// Left operand of a binary node, or the body of a Star.
  const Action& lhs() const;
  const Action& rhs() const;

  /// Identity of the underlying node, usable as a memoization key.
  const void* id() const { return node_.get(); }

  std::size_t size() const;

  friend bool operator==(const Action& a, const Action& b);

 private:
  struct Node;
  explicit Action(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// ---- formulas --------------------------------------------------------------

/// Immutable formula tree over the core connectives true | p | !f | f /\ g |
/// [a]f. Implication, disjunction and diamond are desugared by the factory
/// helpers below and never stored.
class Formula {
 public:
  enum class Kind { Top, Atom, Not, And, Box };

  static Formula top();
  static Formula atom(Atom p);
  static Formula negation(Formula f);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula box(Action a, Formula body);

  // sugar
  static Formula implies(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula diamond(Action a, Formula body);

  Kind kind() const;
  const Atom& atom_value() const;
  /// Operand of Not and the body of Box; left operand of And.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Action& action() const;

  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// ---- handedness grounding --------------------------------------------------

/// Negates the abscissa: E <-> W, NE <-> NW, SE <-> SW; N and S are fixed.
Direction mirror_direction(Direction d);

Direction resolve_direction(Direction d, Handedness h);
Articulator resolve_articulator(Articulator a, Handedness h);

/// Resolves D/W aliases to concrete hands. Directions are mirrored under
/// LeftDominant only when they are attached to an alias articulator; a
/// RelDir is mirrored when either of its articulators is an alias.
Atom ground(const Atom& p, Handedness h);
AtomicAction ground(const AtomicAction& a, Handedness h);
Action ground(const Action& a, Handedness h);
Formula ground(const Formula& f, Handedness h);

bool is_grounded(const Atom& p);
bool is_grounded(const AtomicAction& a);
bool is_grounded(const Action& a);
bool is_grounded(const Formula& f);

/// Articulators mentioned by an atom, in field order.
std::vector<Articulator> articulators_of(const Atom& p);
Articulator articulator_of(const AtomicAction& a);

}  // namespace pdlsl
