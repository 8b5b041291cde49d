#include "support/fixtures.hpp"

namespace pdlsl::testing {

const char* const kRouteFormula =
    "(at(R,FACE) /\\ at(L,FACE) /\\ dir(L,R,E) /\\ cfg(R,CLAMP) /\\ cfg(L,CLAMP) /\\ touch(R,L)) -> "
    "[move(R,W) & move(L,E)](dir(L,R,E) /\\ cfg(R,CLAMP) /\\ cfg(L,CLAMP) /\\ !touch(R,L))";

UtteranceModel route_model() {
  constexpr auto R = Articulator::Right;
  constexpr auto L = Articulator::Left;
  std::vector<StateInfo> states(2);
  for (auto& s : states) s.observed = {R, L};

  // Both orders of RelDir and Touch are listed, as extraction writes them.
  auto& s0 = states[0].valuation;
  s0[At{R, "FACE"}] = ThreeVal::True;
  s0[At{L, "FACE"}] = ThreeVal::True;
  s0[RelDir{L, Direction::E, R}] = ThreeVal::True;
  s0[RelDir{R, Direction::W, L}] = ThreeVal::True;
  s0[Config{R, "CLAMP"}] = ThreeVal::True;
  s0[Config{L, "CLAMP"}] = ThreeVal::True;
  s0[Touch{R, L}] = ThreeVal::True;
  s0[Touch{L, R}] = ThreeVal::True;

  auto& s1 = states[1].valuation;
  s1[RelDir{L, Direction::E, R}] = ThreeVal::True;
  s1[RelDir{R, Direction::W, L}] = ThreeVal::True;
  s1[Config{R, "CLAMP"}] = ThreeVal::True;
  s1[Config{L, "CLAMP"}] = ThreeVal::True;
  s1[Touch{R, L}] = ThreeVal::False;
  s1[Touch{L, R}] = ThreeVal::False;

  std::map<AtomicAction, std::set<Edge>> interp{
      {Move{R, Direction::W}, {{0, 1}}},
      {Move{L, Direction::E}, {{0, 1}}},
  };
  return UtteranceModel(std::move(states), {{0, 1}, {1, 1}}, std::move(interp));
}

std::string fixture_path(const std::string& name) { return std::string(PDLSL_FIXTURE_DIR) + "/" + name; }

}  // namespace pdlsl::testing
