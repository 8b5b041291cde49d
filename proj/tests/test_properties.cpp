// Randomized invariants that span modules. Each generator is seeded so
// failures reproduce.

#include <doctest.h>

#include "pdlsl/check.hpp"
#include "pdlsl/extract.hpp"
#include "pdlsl/io.hpp"
#include "pdlsl/parse.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace pdlsl;

namespace {

UtteranceModel refine(testing::Rng& rng, const UtteranceModel& m, const std::vector<Atom>& atoms) {
  std::bernoulli_distribution coin(0.5);
  UtteranceModel out = m;
  for (StateId s = 0; s < m.state_count(); ++s) {
    for (const auto& p : atoms) {
      if (atom_value(m, s, p) == ThreeVal::Unknown && coin(rng)) {
        out = out.with_value(s, p, coin(rng) ? ThreeVal::True : ThreeVal::False);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("eval_formula agrees with the reference evaluator") {
  testing::Rng rng(71);
  const auto vocab = testing::small_vocabulary();
  for (int i = 0; i < 400; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 4);
    const UtteranceModel m = testing::random_model(rng, n, vocab, 0.35, i % 2 ? 0.3 : 0.0);
    const Formula f = testing::random_formula_over(rng, 3, vocab);
    for (StateId s = 0; s < n; ++s) {
      CHECK(eval_formula(m, s, f) == testing::naive_eval(m, s, f));
      CHECK(eval_two_valued(m, s, f, true) == testing::naive_eval_closed_world(m, s, f));
    }
  }
}

TEST_CASE("two-valued mode agrees with three-valued results that are known") {
  testing::Rng rng(73);
  const auto vocab = testing::small_vocabulary();
  for (int i = 0; i < 300; ++i) {
    const UtteranceModel m = testing::random_model(rng, 3, vocab, 0.35, 0.0);
    const Formula f = testing::random_formula_over(rng, 3, vocab);
    for (StateId s = 0; s < 3; ++s) {
      const ThreeVal v = eval_formula(m, s, f);
      REQUIRE(v != ThreeVal::Unknown);
      CHECK(eval_two_valued(m, s, f, false) == (v == ThreeVal::True));
    }
  }
}

TEST_CASE("Kleene monotonicity under refinement") {
  testing::Rng rng(79);
  const auto vocab = testing::small_vocabulary();
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 4);
    const UtteranceModel m = testing::random_model(rng, n, vocab, 0.35, 0.5);
    const UtteranceModel r = refine(rng, m, vocab.atoms);
    const Formula f = testing::random_formula_over(rng, 3, vocab);
    for (StateId s = 0; s < n; ++s) {
      const ThreeVal before = eval_formula(m, s, f);
      if (before != ThreeVal::Unknown) CHECK(eval_formula(r, s, f) == before);
    }
  }
}

TEST_CASE("grounding laws over every atom shape") {
  const Articulator arts[] = {Articulator::Dominant, Articulator::Weak, Articulator::Right, Articulator::Left};
  for (Handedness h : {Handedness::RightDominant, Handedness::LeftDominant}) {
    for (Articulator a : arts) {
      for (Direction d : kDirections) {
        const AtomicAction mv = Move{a, d};
        const AtomicAction g = ground(mv, h);
        CHECK(ground(g, h) == g);
        CHECK(is_grounded(g));
        const Direction expected = is_alias(a) ? resolve_direction(d, h) : d;
        CHECK(std::get<Move>(g).dir == expected);
        const Atom o = ground(Atom{Orient{a, d}}, h);
        CHECK(std::get<Orient>(o).dir == expected);
        for (Articulator b : arts) {
          if (a == b) continue;
          const Atom rd = ground(Atom{RelDir{a, d, b}}, h);
          CHECK(ground(rd, h) == rd);
          CHECK(std::get<RelDir>(rd).dir == (is_alias(a) || is_alias(b) ? resolve_direction(d, h) : d));
        }
      }
    }
  }
}

TEST_CASE("parse and print round trip with grounded and aliased syntax") {
  testing::Rng rng(83);
  testing::SyntaxPools concrete;
  concrete.allow_aliases = false;
  for (int i = 0; i < 300; ++i) {
    const Formula f = testing::random_formula(rng, 4, i % 2 ? concrete : testing::SyntaxPools{});
    CHECK(parse_formula(print_formula(f)) == f);
    const Action a = testing::random_action(rng, 4, testing::SyntaxPools{});
    CHECK(parse_action(print_action(a)) == a);
  }
}

TEST_CASE("reports are deterministic") {
  testing::Rng rng(89);
  const auto vocab = testing::small_vocabulary();
  for (int i = 0; i < 30; ++i) {
    const UtteranceModel m = testing::random_model(rng, 4, vocab, 0.3, 0.3);
    LexiconFile lex;
    for (int k = 0; k < 5; ++k) {
      lex.entries.push_back({"S" + std::to_string(k), testing::random_formula_over(rng, 3, vocab), std::nullopt, {}});
    }
    const std::string a = report_to_json(verify(m, lex, Handedness::RightDominant)).dump();
    const std::string b = report_to_json(verify(m, lex, Handedness::RightDominant)).dump();
    CHECK(a == b);
  }
}

TEST_CASE("extracted models are serial with consistent valuations") {
  testing::Rng rng(97);
  const SegmentationParams p;
  for (int i = 0; i < 60; ++i) {
    const auto planted = testing::planted_sequence(rng, 1 + i % 5, p);
    const UtteranceModel m = build_model(planted.seq, p, PlaceMap::defaults(), {"CLAMP"});
    for (StateId s = 0; s < m.state_count(); ++s) {
      bool serial = false;
      for (const auto& [from, to] : m.relation()) serial = serial || from == s;
      CHECK(serial);
    }
    for (const auto& [a, edges] : m.action_interp()) {
      for (const auto& e : edges) CHECK(m.relation().count(e) == 1);
    }
  }
}
