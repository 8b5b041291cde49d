#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "pdlsl/check.hpp"
#include "pdlsl/extract.hpp"
#include "pdlsl/parse.hpp"

using namespace pdlsl;

namespace {

const char* const kRoute =
    "(at(R,FACE) /\\ at(L,FACE) /\\ dir(L,R,E) /\\ cfg(R,CLAMP) /\\ cfg(L,CLAMP) /\\ touch(R,L)) -> "
    "[move(R,W) & move(L,E)](dir(L,R,E) /\\ cfg(R,CLAMP) /\\ cfg(L,CLAMP) /\\ !touch(R,L))";

// A chain of n postures: hands still for 8 frames, then one hand moves for 6.
TrackingSequence chain(int postures) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> angle(0, 6.283185307179586);
  TrackingSequence seq;
  Point2D r{0.3, 0.3}, l{-0.3, 0.3};
  auto emit = [&] {
    TrackingFrame f;
    f.t = static_cast<std::int64_t>(seq.frames.size());
    f.head = Point2D{0, kHeadHeight};
    f.right.pos = r;
    f.left.pos = l;
    f.right.config = "CLAMP";
    seq.frames.push_back(f);
  };
  for (int k = 0; k < postures; ++k) {
    for (int i = 0; i < 8; ++i) emit();
    if (k + 1 == postures) break;
    const double a = angle(rng);
    for (int i = 0; i < 6; ++i) {
      (k % 2 ? l : r) = (k % 2 ? l : r) + Vec2{0.05 * std::cos(a), 0.05 * std::sin(a)};
      emit();
    }
  }
  return seq;
}

UtteranceModel random_model(std::size_t n, double rate) {
  std::mt19937 rng(7);
  std::bernoulli_distribution edge(rate);
  std::vector<StateInfo> states(n);
  std::set<Edge> rel;
  std::map<AtomicAction, std::set<Edge>> interp;
  for (std::size_t i = 0; i < n; ++i) {
    states[i].observed = {Articulator::Right, Articulator::Left};
    rel.emplace(i, (i + 1) % n);
    for (std::size_t j = 0; j < n; ++j) {
      if (edge(rng)) {
        rel.emplace(i, j);
        interp[Move{Articulator::Right, Direction::E}].emplace(i, j);
      }
    }
  }
  return UtteranceModel(std::move(states), std::move(rel), std::move(interp));
}

}  // namespace

static void BM_StarClosure(benchmark::State& state) {
  const UtteranceModel m = random_model(static_cast<std::size_t>(state.range(0)), 2.0 / static_cast<double>(state.range(0)));
  const Action a = Action::star(Action::atomic(Move{Articulator::Right, Direction::E}));
  for (auto _ : state) benchmark::DoNotOptimize(interpret_action(m, a));
}
BENCHMARK(BM_StarClosure)->Arg(16)->Arg(64)->Arg(256);

static void BM_ParseRoute(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_formula(kRoute));
}
BENCHMARK(BM_ParseRoute);

static void BM_ExtractChain(benchmark::State& state) {
  const TrackingSequence seq = chain(static_cast<int>(state.range(0)));
  const SegmentationParams p;
  for (auto _ : state) benchmark::DoNotOptimize(extract(seq, p, PlaceMap::defaults(), {"CLAMP"}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(seq.frames.size()));
}
BENCHMARK(BM_ExtractChain)->Arg(4)->Arg(32)->Arg(128);

static void BM_VerifyRoute(benchmark::State& state) {
  const UtteranceModel m = build_model(chain(static_cast<int>(state.range(0))), SegmentationParams{},
                                       PlaceMap::defaults(), {"CLAMP"});
  const LexiconFile lex = parse_lexicon(std::string("sign ROUTE := ") + kRoute + " .\n" +
                                        "sign WANDER := [(move(W,NE) | move(D,SW))*] !touch(D,W) .\n");
  for (auto _ : state) benchmark::DoNotOptimize(verify(m, lex, Handedness::RightDominant));
}
BENCHMARK(BM_VerifyRoute)->Arg(4)->Arg(32)->Arg(128);
BENCHMARK_MAIN();
