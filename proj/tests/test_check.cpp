#include <doctest.h>

#include "pdlsl/check.hpp"
#include "pdlsl/error.hpp"
#include "pdlsl/parse.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace pdlsl;

namespace {

constexpr auto R = Articulator::Right;
constexpr auto L = Articulator::Left;

LexiconFile route_lexicon() { return parse_lexicon(std::string("sign ROUTE := ") + testing::kRouteFormula + " ."); }

using States = std::vector<std::vector<Proposal>>;

}  // namespace

TEST_CASE("verify examples") {
  const UtteranceModel m = testing::route_model();
  const ProposalReport report = verify(m, route_lexicon(), Handedness::RightDominant);
  CHECK(report.states == States{{{"ROUTE", Verdict::Match}}, {}});
  CHECK(report.meta.handedness == Handedness::RightDominant);
  CHECK(report.meta.lexicon_hash.size() == 16);

  const ProposalReport empty = verify(m, LexiconFile{}, Handedness::RightDominant);
  CHECK(empty.states == States{{}, {}});

  const UtteranceModel voided = m.with_value(0, Config{R, "CLAMP"}, ThreeVal::Unknown)
                                    .with_value(0, Config{L, "CLAMP"}, ThreeVal::Unknown)
                                    .with_value(1, Config{R, "CLAMP"}, ThreeVal::Unknown)
                                    .with_value(1, Config{L, "CLAMP"}, ThreeVal::Unknown);
  CHECK(verify(voided, route_lexicon(), Handedness::RightDominant).states ==
        States{{{"ROUTE", Verdict::Possible}}, {}});
}

TEST_CASE("the anchor keeps the sign off states that lack its first posture") {
  // Without the anchor, material implication would make the entry
  // vacuously true at s1, whose posture is not the ROUTE start.
  const UtteranceModel m = testing::route_model();
  CHECK(eval_formula(m, 1, parse_formula(testing::kRouteFormula)) == ThreeVal::True);
  const LexiconFile lex = route_lexicon();
  CHECK(eval_formula(m, 1, effective_formula(lex.entries[0], Handedness::RightDominant)) == ThreeVal::False);
}

TEST_CASE("verify ordering: Match before Possible, lexicon order within class") {
  const Atom known = At{R, "FACE"};
  const Atom unknown = Config{R, "CLAMP"};
  const UtteranceModel m = testing::make_model(1, {{{known, ThreeVal::True}, {unknown, ThreeVal::Unknown}}}, {});
  const LexiconFile lex = parse_lexicon(
      "sign P1 := cfg(R,CLAMP) .\n"
      "sign M1 := at(R,FACE) .\n"
      "sign NO := !at(R,FACE) .\n"
      "sign P2 := at(R,FACE) /\\ cfg(R,CLAMP) .\n"
      "sign M2 := true .\n");
  CHECK(verify(m, lex, Handedness::RightDominant).states ==
        States{{{"M1", Verdict::Match}, {"M2", Verdict::Match}, {"P1", Verdict::Possible}, {"P2", Verdict::Possible}}});
}

TEST_CASE("verify grounds with the run's handedness") {
  const UtteranceModel m = testing::route_model();
  const LexiconFile lex = parse_lexicon(
      "sign START := at(D,FACE) /\\ dir(W,D,E) /\\ touch(D,W) .\n"
      "sign MOVE := [move(D,W) & move(W,E)] !touch(D,W) .\n");
  const auto right = verify(m, lex, Handedness::RightDominant);
  CHECK(right.states[0] == std::vector<Proposal>{{"START", Verdict::Match}, {"MOVE", Verdict::Match}});
  // Left-dominant: D=L, W=R, and directions tied to aliases are mirrored, so
  // dir(W,D,E) becomes dir(R,L,W), which holds at s0. MOVE grounds to
  // [move(L,W) & move(R,E)], which has no successors anywhere.
  const auto left = verify(m, lex, Handedness::LeftDominant);
  CHECK(left.states[0] == std::vector<Proposal>{{"START", Verdict::Match}, {"MOVE", Verdict::Match}});
  CHECK(verify(m, parse_lexicon("sign START := at(D,FACE) /\\ dir(D,W,E) ."), Handedness::LeftDominant).states[0].empty());
  CHECK(left.meta.handedness == Handedness::LeftDominant);
}

TEST_CASE("prefilter examples") {
  const UtteranceModel m = testing::route_model();
  const LexiconFile lex = route_lexicon();
  const Formula route = effective_formula(lex.entries[0], Handedness::RightDominant);
  CHECK(prefilter(m, 0, route));
  CHECK_FALSE(prefilter(m, 1, route));  // at(R,FACE) is False at s1
  CHECK(prefilter(m, 0, Formula::top()));
  CHECK(prefilter(m, 1, Formula::top()));
  CHECK(prefilter(m, 1, parse_formula("[move(R,W)] at(R,NECK)")));
  CHECK(prefilter(m, 1, parse_formula("!at(R,FACE)")));
}

TEST_CASE("prefilter never changes the report") {
  testing::Rng rng(53);
  const auto vocab = testing::small_vocabulary();
  for (int i = 0; i < 100; ++i) {
    const UtteranceModel m = testing::random_model(rng, 1 + static_cast<std::size_t>(i % 4), vocab, 0.4, 0.3);
    LexiconFile lex;
    for (int k = 0; k < 6; ++k) {
      lex.entries.push_back({"S" + std::to_string(k), testing::random_formula_over(rng, 3, vocab), std::nullopt, {}});
    }
    CHECK(verify(m, lex, Handedness::RightDominant, {true}) == verify(m, lex, Handedness::RightDominant, {false}));
  }
}

TEST_CASE("lexicon_hash and config_labels") {
  const LexiconFile a = route_lexicon();
  const LexiconFile b = parse_lexicon(std::string("# same lexicon, other layout\nsign ROUTE :=\n   ") +
                                      testing::kRouteFormula + "\n.\n");
  CHECK(lexicon_hash(a) == lexicon_hash(b));
  CHECK(lexicon_hash(a) != lexicon_hash(parse_lexicon("sign ROUTE := true .")));
  CHECK(config_labels(a) == std::set<std::string>{"CLAMP"});
  CHECK(config_labels(parse_lexicon("sign X := [thrill(D)] cfg(W,KEY) /\\ !cfg(D,BEAK) .")) ==
        std::set<std::string>{"BEAK", "KEY"});
}

TEST_CASE("overrides") {
  const auto overrides = parse_overrides(
      "# expert corrections\n"
      "state 0: cfg(D,CLAMP) = true\n"
      "\n"
      "state 1: touch(R,L) = unknown   # not sure\n");
  REQUIRE(overrides.size() == 2);
  CHECK(overrides[0].state == 0);
  CHECK(overrides[0].value == ThreeVal::True);
  CHECK(overrides[1].value == ThreeVal::Unknown);
  CHECK(overrides[1].span.line == 4);

  const UtteranceModel m = testing::route_model().with_value(0, Config{R, "CLAMP"}, ThreeVal::Unknown);
  const UtteranceModel fixed = apply_overrides(m, overrides, Handedness::RightDominant);
  CHECK(atom_value(fixed, 0, Config{R, "CLAMP"}) == ThreeVal::True);
  CHECK(atom_value(fixed, 1, Touch{R, L}) == ThreeVal::Unknown);

  const UtteranceModel left = apply_overrides(m, overrides, Handedness::LeftDominant);
  CHECK(atom_value(left, 0, Config{L, "CLAMP"}) == ThreeVal::True);

  CHECK_THROWS_AS(parse_overrides("state x: touch(R,L) = true"), ParseError);
  CHECK_THROWS_AS(parse_overrides("state 0: touch(R,L) = maybe"), ParseError);
  CHECK_THROWS_AS(parse_overrides("state 0: touch(R,Q) = true"), ParseError);
  CHECK_THROWS_AS(apply_overrides(m, parse_overrides("state 9: touch(R,L) = true"), Handedness::RightDominant),
                  Error);
}

TEST_CASE("refinement keeps Matches and only resolves Possibles") {
  testing::Rng rng(59);
  const auto vocab = testing::small_vocabulary();
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 4);
    const UtteranceModel m = testing::random_model(rng, n, vocab, 0.4, 0.4);
    LexiconFile lex;
    for (int k = 0; k < 5; ++k) {
      lex.entries.push_back({"S" + std::to_string(k), testing::random_formula_over(rng, 3, vocab), std::nullopt, {}});
    }
    UtteranceModel refined = m;
    for (StateId s = 0; s < n; ++s) {
      for (const auto& p : vocab.atoms) {
        if (atom_value(m, s, p) == ThreeVal::Unknown && coin(rng)) {
          refined = refined.with_value(s, p, coin(rng) ? ThreeVal::True : ThreeVal::False);
        }
      }
    }
    const auto before = verify(m, lex, Handedness::RightDominant);
    const auto after = verify(refined, lex, Handedness::RightDominant);
    for (StateId s = 0; s < n; ++s) {
      for (const auto& p : before.states[s]) {
        const auto it = std::find_if(after.states[s].begin(), after.states[s].end(),
                                     [&](const Proposal& q) { return q.sign == p.sign; });
        if (p.verdict == Verdict::Match) {
          REQUIRE(it != after.states[s].end());
          CHECK(it->verdict == Verdict::Match);
        }
      }
      for (const auto& q : after.states[s]) {
        const auto it = std::find_if(before.states[s].begin(), before.states[s].end(),
                                     [&](const Proposal& p) { return p.sign == q.sign; });
        CHECK(it != before.states[s].end());  // nothing appears from omitted
      }
    }
  }
}
