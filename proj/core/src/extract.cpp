#include "pdlsl/extract.hpp"

#include <algorithm>
#include <cmath>

#include "pdlsl/error.hpp"

namespace pdlsl {

namespace {

// Relative slack on threshold comparisons so that values sitting exactly on
// a threshold (0.02 computed as 0.0199999...) land on the documented side.
constexpr double kSlack = 1e-9;

bool below(double value, double threshold) { return value < threshold * (1.0 - kSlack); }
bool at_least(double value, double threshold) { return !below(value, threshold); }

}  // namespace

void SegmentationParams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(tau_still)) throw Error(ErrorCode::Schema, "tau_still must be > 0");
  if (min_still < 1) throw Error(ErrorCode::Schema, "min_still must be >= 1");
  if (!positive(tau_touch)) throw Error(ErrorCode::Schema, "tau_touch must be > 0");
  if (!std::isfinite(touch_unknown_band) || touch_unknown_band < 0.0) {
    throw Error(ErrorCode::Schema, "touch_unknown_band must be >= 0");
  }
  if (thrill_window < 2) throw Error(ErrorCode::Schema, "thrill_window must be >= 2");
  if (!positive(thrill_net_disp)) throw Error(ErrorCode::Schema, "thrill_net_disp must be > 0");
  if (thrill_min_reversals < 1) throw Error(ErrorCode::Schema, "thrill_min_reversals must be >= 1");
  if (!positive(max_jump)) throw Error(ErrorCode::Schema, "max_jump must be > 0");
}

// ---- normalization and validation -----------------------------------------

TrackingSequence normalize_sequence(const TrackingSequence& raw, const FrameOptions& options,
                                    std::vector<Diagnostic>& diagnostics) {
  double scale = 1.0;
  if (options.scale) {
    scale = *options.scale;
  } else {
    for (const auto& f : raw.frames) {
      if (f.head && f.torso) {
        const double d = norm(*f.head - *f.torso) / kHeadHeight;
        if (d > 0.0) {
          scale = d;
          break;
        }
      }
    }
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorCode::Schema, "body frame scale must be > 0");
  const bool mirrored = options.mirrored.value_or(raw.mirrored);

  auto origin_of = [&](const TrackingFrame& f) -> std::optional<Point2D> {
    if (f.torso) return *f.torso;
    if (f.head) return *f.head - Vec2{0.0, kHeadHeight * scale};
    return std::nullopt;
  };

  std::optional<Point2D> origin;
  for (const auto& f : raw.frames) {
    if ((origin = origin_of(f))) break;
  }

  TrackingSequence out = raw;
  out.mirrored = false;
  if (!origin) {
    diagnostics.push_back({"NoHead", std::nullopt, std::nullopt,
                           "no head or torso position in any frame; using raw coordinates"});
    return out;
  }

  for (auto& f : out.frames) {
    if (auto o = origin_of(f)) origin = o;
    const BodyFrame frame{*origin, scale};
    auto conv = [&](std::optional<Point2D>& p) {
      if (p) p = normalize(*p, frame, mirrored);
    };
    conv(f.head);
    conv(f.torso);
    conv(f.right.pos);
    conv(f.left.pos);
  }
  return out;
}

ValidationResult validate_model(const TrackingSequence& seq, const SegmentationParams& p) {
  ValidationResult result;
  result.cleaned.fps = seq.fps;
  result.cleaned.mirrored = seq.mirrored;

  for (const auto& f : seq.frames) {
    if (!result.cleaned.frames.empty()) {
      const std::int64_t prev = result.cleaned.frames.back().t;
      if (f.t == prev) {
        result.diagnostics.push_back(
            {"DuplicateFrame", f.t, std::nullopt, "duplicate frame index " + std::to_string(f.t) + "; dropped"});
        continue;
      }
      if (f.t < prev) {
        throw Error(ErrorCode::NonMonotoneTimestamps, "frame index " + std::to_string(f.t) + " follows " +
                                                          std::to_string(prev) + "; indices must increase");
      }
    }
    result.cleaned.frames.push_back(f);
  }

  for (Articulator hand : kHands) {
    std::optional<Point2D> last;
    std::int64_t last_t = 0;
    for (auto& f : result.cleaned.frames) {
      auto& pos = f.hand(hand).pos;
      if (!pos) continue;
      if (last) {
        const double jump = norm(*pos - *last);
        const double allowed = p.max_jump * static_cast<double>(f.t - last_t);
        if (jump > allowed) {
          result.diagnostics.push_back({"Teleport", f.t, hand,
                                        std::string(to_string(hand)) + " hand jumped " + std::to_string(jump) +
                                            " body units; position voided"});
          pos.reset();
          continue;
        }
      }
      last = pos;
      last_t = f.t;
    }
  }
  return result;
}

// ---- velocities and segmentation --------------------------------------------

HandVelocities compute_velocities(const TrackingSequence& seq) {
  HandVelocities v;
  const std::size_t n = seq.frames.size();
  v.right.resize(n);
  v.left.resize(n);
  for (Articulator hand : kHands) {
    auto& out = hand == Articulator::Left ? v.left : v.right;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& cur = seq.frames[i].hand(hand).pos;
      if (!cur) continue;
      if (i == 0) {
        out[i] = Vec2{0.0, 0.0};
        continue;
      }
      const auto& prev = seq.frames[i - 1].hand(hand).pos;
      if (!prev) continue;
      const double dt = static_cast<double>(seq.frames[i].t - seq.frames[i - 1].t);
      out[i] = (*cur - *prev) * (1.0 / (dt > 0.0 ? dt : 1.0));
    }
  }
  return v;
}

std::vector<Segment> segment(const TrackingSequence& seq, const SegmentationParams& p) {
  const std::size_t n = seq.frames.size();
  if (n == 0) throw Error(ErrorCode::EmptySequence, "tracking sequence has no frames");
  const std::size_t m = static_cast<std::size_t>(p.min_still);

  const HandVelocities vel = compute_velocities(seq);
  std::vector<bool> still(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    for (Articulator hand : kHands) {
      const auto& v = vel.of(hand)[i];
      if (v && !below(norm(*v), p.tau_still)) still[i] = false;
    }
  }

  struct Span {
    std::size_t first, last;
  };
  std::vector<Span> postures;
  for (std::size_t i = 0; i < n;) {
    if (!still[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && still[j + 1]) ++j;
    if (j - i + 1 >= m) postures.push_back({i, j});
    i = j + 1;
  }

  if (postures.empty()) {
    if (n <= 2 * m) {
      postures.push_back({0, n - 1});
    } else {
      postures.push_back({0, m - 1});
      postures.push_back({n - m, n - 1});
    }
  } else {
    if (const std::size_t lead = postures.front().first; lead > 0) {
      if (lead > m) {
        postures.insert(postures.begin(), Span{0, m - 1});
      } else {
        postures.front().first = 0;
      }
    }
    if (const std::size_t trail = n - 1 - postures.back().last; trail > 0) {
      if (trail > m) {
        postures.push_back({n - m, n - 1});
      } else {
        postures.back().last = n - 1;
      }
    }
  }

  std::vector<Segment> out;
  for (std::size_t k = 0; k < postures.size(); ++k) {
    if (k > 0) out.push_back({Segment::Kind::Transition, postures[k - 1].last + 1, postures[k].first - 1});
    out.push_back({Segment::Kind::KeyPosture, postures[k].first, postures[k].last});
  }
  return out;
}

// ---- atoms ----------------------------------------------------------------------

StateInfo posture_state(const TrackingSequence& seq, const Segment& seg, const PlaceMap& map,
                        const SegmentationParams& p, const std::set<std::string>& config_labels) {
  const TrackingFrame& frame = seq.frames.at(seg.first + (seg.last - seg.first) / 2);
  StateInfo info;
  auto& val = info.valuation;

  const auto& r = frame.right.pos;
  const auto& l = frame.left.pos;
  for (Articulator hand : kHands) {
    if (frame.hand(hand).pos) info.observed.insert(hand);
  }

  // Relative direction: exactly one True per ordered pair when defined.
  const bool defined = r && l && !(*r == *l);
  const std::optional<Direction> r_of_l = defined ? std::optional(relative_direction(*r, *l)) : std::nullopt;
  const std::optional<Direction> l_of_r = defined ? std::optional(relative_direction(*l, *r)) : std::nullopt;
  for (Direction d : kDirections) {
    val[RelDir{Articulator::Right, d, Articulator::Left}] =
        r_of_l ? (*r_of_l == d ? ThreeVal::True : ThreeVal::False) : ThreeVal::Unknown;
    val[RelDir{Articulator::Left, d, Articulator::Right}] =
        l_of_r ? (*l_of_r == d ? ThreeVal::True : ThreeVal::False) : ThreeVal::Unknown;
  }

  ThreeVal touch = ThreeVal::Unknown;
  if (r && l) {
    const double d = norm(*r - *l);
    if (below(d, p.tau_touch)) {
      touch = ThreeVal::True;
    } else if (below(d, p.tau_touch + p.touch_unknown_band)) {
      touch = ThreeVal::Unknown;
    } else {
      touch = ThreeVal::False;
    }
  }
  val[Touch{Articulator::Right, Articulator::Left}] = touch;
  val[Touch{Articulator::Left, Articulator::Right}] = touch;

  for (Articulator hand : kHands) {
    const HandSample& sample = frame.hand(hand);
    const bool seen = sample.pos.has_value();

    const std::set<std::string> inside = seen ? places_containing(*sample.pos, map) : std::set<std::string>{};
    for (const auto& place : map.places()) {
      val[At{hand, place.name}] =
          !seen ? ThreeVal::Unknown : (inside.count(place.name) ? ThreeVal::True : ThreeVal::False);
    }

    std::set<std::string> labels = config_labels;
    if (seen && sample.config) labels.insert(*sample.config);
    for (const auto& label : labels) {
      ThreeVal v = ThreeVal::Unknown;
      if (seen && sample.config) v = *sample.config == label ? ThreeVal::True : ThreeVal::False;
      val[Config{hand, label}] = v;
    }

    for (Direction d : kDirections) {
      ThreeVal v = ThreeVal::Unknown;
      if (seen && sample.orient) v = *sample.orient == d ? ThreeVal::True : ThreeVal::False;
      val[Orient{hand, d}] = v;
    }
  }
  return info;
}

std::map<Atom, ThreeVal> posture_valuation(const TrackingSequence& seq, const Segment& seg, const PlaceMap& map,
                                           const SegmentationParams& p, const std::set<std::string>& config_labels) {
  return posture_state(seq, seg, map, p, config_labels).valuation;
}

// ---- transitions ------------------------------------------------------------------

namespace {

std::optional<AtomicAction> hand_action(const TrackingSequence& seq, const HandVelocities& vel,
                                        const Segment& seg, Articulator hand, const SegmentationParams& p) {
  const std::size_t n = seq.frames.size();
  const std::size_t lo = seg.first > 0 ? seg.first - 1 : seg.first;
  const std::size_t hi = seg.last + 1 < n ? seg.last + 1 : seg.last;

  std::optional<Point2D> start, end;
  for (std::size_t i = lo; i <= hi; ++i) {
    const auto& pos = seq.frames[i].hand(hand).pos;
    if (!pos) continue;
    if (!start) start = pos;
    end = pos;
  }
  if (!start) return std::nullopt;

  const Vec2 net = *end - *start;
  if (norm(net) > 0.0 && at_least(norm(net), p.thrill_net_disp)) return Move{hand, classify_direction(net)};

  const auto& v = vel.of(hand);
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t i = seg.first; i <= seg.last; ++i) {
    if (!v[i]) continue;
    total += norm(*v[i]);
    ++count;
  }
  if (count == 0 || below(total / static_cast<double>(count), p.tau_still)) return std::nullopt;

  // Reversals: consecutive non-zero velocities pointing in opposing
  // directions, counted inside a sliding window of thrill_window frames.
  const std::size_t window = static_cast<std::size_t>(p.thrill_window);
  int best = 0;
  for (std::size_t start_i = seg.first; start_i <= seg.last; ++start_i) {
    int reversals = 0;
    std::optional<Vec2> prev;
    for (std::size_t i = start_i; i <= seg.last && i < start_i + window; ++i) {
      if (!v[i] || norm(*v[i]) == 0.0) continue;
      if (prev && dot(*prev, *v[i]) < 0.0) ++reversals;
      prev = v[i];
    }
    best = std::max(best, reversals);
    if (start_i + window > seg.last) break;
  }
  if (best >= p.thrill_min_reversals) return Thrill{hand};
  return std::nullopt;
}

}  // namespace

std::optional<Action> transition_action(const TrackingSequence& seq, const Segment& seg,
                                        const SegmentationParams& p) {
  const HandVelocities vel = compute_velocities(seq);
  std::optional<Action> result;
  for (Articulator hand : kHands) {
    if (auto a = hand_action(seq, vel, seg, hand, p)) {
      Action atom = Action::atomic(*a);
      result = result ? Action::concurrent(*result, atom) : atom;
    }
  }
  return result;
}

std::set<AtomicAction> atomic_actions_of(const Action& a) {
  std::set<AtomicAction> out;
  switch (a.kind()) {
    case Action::Kind::Atomic: out.insert(a.atom()); break;
    case Action::Kind::Concurrent: {
      out = atomic_actions_of(a.lhs());
      auto rhs = atomic_actions_of(a.rhs());
      out.insert(rhs.begin(), rhs.end());
      break;
    }
    default: break;
  }
  return out;
}

// ---- model building -------------------------------------------------------------

namespace {

struct Built {
  std::vector<StateInfo> states;
  std::set<Edge> relation;
  std::map<AtomicAction, std::set<Edge>> interp;
  std::vector<Segment> segments;
  std::vector<StateId> posture_states;
};

Built build(const TrackingSequence& seq, const SegmentationParams& p, const PlaceMap& map,
            const std::set<std::string>& config_labels) {
  p.validate();
  Built b;
  b.segments = segment(seq, p);

  StateId current = 0;
  const Segment* previous_posture = nullptr;
  const Segment* pending_transition = nullptr;
  for (const Segment& seg : b.segments) {
    if (seg.kind == Segment::Kind::Transition) {
      pending_transition = &seg;
      continue;
    }
    StateInfo info = posture_state(seq, seg, map, p, config_labels);
    if (!previous_posture) {
      b.states.push_back(std::move(info));
      b.posture_states.push_back(0);
      previous_posture = &seg;
      continue;
    }

    std::set<AtomicAction> atoms;
    if (pending_transition) {
      if (auto label = transition_action(seq, *pending_transition, p)) atoms = atomic_actions_of(*label);
    }
    const bool thrill_only =
        !atoms.empty() && std::all_of(atoms.begin(), atoms.end(),
                                      [](const AtomicAction& a) { return std::holds_alternative<Thrill>(a); });
    const StateInfo& here = b.states[current];
    Edge edge;
    if (thrill_only && here.valuation == info.valuation && here.observed == info.observed) {
      edge = {current, current};
    } else {
      b.states.push_back(std::move(info));
      edge = {current, b.states.size() - 1};
      current = b.states.size() - 1;
    }
    b.posture_states.push_back(current);
    b.relation.insert(edge);
    for (const auto& a : atoms) b.interp[a].insert(edge);
    previous_posture = &seg;
    pending_transition = nullptr;
  }

  if (b.states.empty()) throw Error(ErrorCode::NoKeyPosture, "segmentation produced no key posture");
  // Seriality: the last posture has no following movement.
  b.relation.insert({current, current});
  return b;
}

}  // namespace

UtteranceModel build_model(const TrackingSequence& seq, const SegmentationParams& p, const PlaceMap& map,
                           const std::set<std::string>& config_labels) {
  Built b = build(seq, p, map, config_labels);
  return UtteranceModel(std::move(b.states), std::move(b.relation), std::move(b.interp));
}

ExtractionResult extract(const TrackingSequence& raw, const SegmentationParams& p, const PlaceMap& map,
                         const std::set<std::string>& config_labels, const FrameOptions& frame) {
  if (raw.frames.empty()) throw Error(ErrorCode::EmptySequence, "tracking sequence has no frames");
  if (!(raw.fps > 0.0)) throw Error(ErrorCode::Schema, "fps must be > 0");
  p.validate();
  std::vector<Diagnostic> diagnostics;
  // Duplicates and ordering are checked on raw indices; jumps in body units.
  TrackingSequence normalized = normalize_sequence(raw, frame, diagnostics);
  ValidationResult checked = validate_model(normalized, p);
  diagnostics.insert(diagnostics.end(), checked.diagnostics.begin(), checked.diagnostics.end());

  Built b = build(checked.cleaned, p, map, config_labels);
  return ExtractionResult{UtteranceModel(std::move(b.states), std::move(b.relation), std::move(b.interp)),
                          std::move(b.segments), std::move(b.posture_states), std::move(diagnostics)};
}

}  // namespace pdlsl
