#pragma once

// Tracking data -> utterance model: validation, normalization, velocity,
// key-posture segmentation, atom synthesis and transition labeling.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pdlsl/geometry.hpp"
#include "pdlsl/model.hpp"
#include "pdlsl/vocabulary.hpp"

namespace pdlsl {

struct HandSample {
  std::optional<Point2D> pos;
  std::optional<std::string> config;
  std::optional<Direction> orient;
};

struct TrackingFrame {
  std::int64_t t = 0;
  std::optional<Point2D> head;
  /// Optional torso reference point; used as the body-frame origin.
  std::optional<Point2D> torso;
  HandSample right;
  HandSample left;

  const HandSample& hand(Articulator a) const { return a == Articulator::Left ? left : right; }
  HandSample& hand(Articulator a) { return a == Articulator::Left ? left : right; }
};

struct TrackingSequence {
  std::vector<TrackingFrame> frames;
  double fps = 25.0;
  bool mirrored = false;
};

inline constexpr std::array<Articulator, 2> kHands = {Articulator::Right, Articulator::Left};

struct SegmentationParams {
  double tau_still = 0.02;  // body units / frame
  int min_still = 3;
  double tau_touch = 0.05;
  double touch_unknown_band = 0.05;
  int thrill_window = 5;
  double thrill_net_disp = 0.03;
  int thrill_min_reversals = 2;
  double max_jump = 0.5;  // body units / frame

  /// Throws Error(Schema) when a field is out of range.
  void validate() const;
};

struct Segment {
  enum class Kind { KeyPosture, Transition };
  Kind kind;
  std::size_t first;  // inclusive, positions in the frame list
  std::size_t last;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct Diagnostic {
  std::string kind;  // Teleport, DuplicateFrame, NoHead, ...
  std::optional<std::int64_t> frame;
  std::optional<Articulator> hand;
  std::string message;
};

struct HandVelocities {
  std::vector<std::optional<Vec2>> right;
  std::vector<std::optional<Vec2>> left;

  const std::vector<std::optional<Vec2>>& of(Articulator a) const { return a == Articulator::Left ? left : right; }
};

/// Scale and mirroring applied when converting raw tracker coordinates.
struct FrameOptions {
  std::optional<double> scale;
  std::optional<bool> mirrored;
};

/// Vertical offset of the head centre above the torso origin, in body units.
inline constexpr double kHeadHeight = 1.2;

/// Converts raw tracker coordinates to the normalized signer frame.
TrackingSequence normalize_sequence(const TrackingSequence& raw, const FrameOptions& options,
                                    std::vector<Diagnostic>& diagnostics);

struct ValidationResult {
  TrackingSequence cleaned;
  std::vector<Diagnostic> diagnostics;
};

/// Drops duplicate frame indices and voids teleporting positions. Throws
/// Error(NonMonotoneTimestamps) when frame indices go backwards.
ValidationResult validate_model(const TrackingSequence& seq, const SegmentationParams& p);

HandVelocities compute_velocities(const TrackingSequence& seq);

/// Throws Error(EmptySequence) for an empty sequence.
std::vector<Segment> segment(const TrackingSequence& seq, const SegmentationParams& p);

/// Atom values and observed articulators of a key posture, read from its
/// median frame. `config_labels` is the closed vocabulary for Config atoms.
StateInfo posture_state(const TrackingSequence& seq, const Segment& seg, const PlaceMap& map,
                        const SegmentationParams& p, const std::set<std::string>& config_labels);

std::map<Atom, ThreeVal> posture_valuation(const TrackingSequence& seq, const Segment& seg, const PlaceMap& map,
                                           const SegmentationParams& p, const std::set<std::string>& config_labels);

/// Action performed during a transition, or nullopt when no hand qualifies
/// (the edge is then labeled by no atomic action).
std::optional<Action> transition_action(const TrackingSequence& seq, const Segment& seg,
                                        const SegmentationParams& p);

/// Atomic actions occurring in a transition label (atoms under Concurrent).
std::set<AtomicAction> atomic_actions_of(const Action& a);

UtteranceModel build_model(const TrackingSequence& seq, const SegmentationParams& p, const PlaceMap& map,
                           const std::set<std::string>& config_labels);

struct ExtractionResult {
  UtteranceModel model;
  std::vector<Segment> segments;
  /// State assigned to each key posture, in temporal order.
  std::vector<StateId> posture_states;
  std::vector<Diagnostic> diagnostics;
};

/// Full pipeline from raw tracker output: normalize, validate, segment, build.
ExtractionResult extract(const TrackingSequence& raw, const SegmentationParams& p, const PlaceMap& map,
                         const std::set<std::string>& config_labels, const FrameOptions& frame = {});

}  // namespace pdlsl
