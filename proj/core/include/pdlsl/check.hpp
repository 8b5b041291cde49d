#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdlsl/extract.hpp"
#include "pdlsl/model.hpp"
#include "pdlsl/parse.hpp"

namespace pdlsl {

enum class Verdict { Match, Possible };

std::string_view to_string(Verdict v);

struct Proposal {
  std::string sign;
  Verdict verdict;
  friend bool operator==(const Proposal&, const Proposal&) = default;
};

struct ReportMetadata {
  Handedness handedness = Handedness::RightDominant;
  std::string lexicon_hash;
  /// Extraction thresholds the model was built with, when known.
  std::optional<SegmentationParams> params;
};

/// Per-state proposals. Within a state, Match entries come first, then
/// Possible entries; each group keeps lexicon order.
struct ProposalReport {
  std::vector<std::vector<Proposal>> states;
  ReportMetadata meta;

  friend bool operator==(const ProposalReport& a, const ProposalReport& b) { return a.states == b.states; }
};

struct VerifyOptions {
  bool prefilter = true;
};

/// The formula actually checked for an entry at a state: the grounded
/// formula, conjoined with its grounded anchor when the entry has one.
Formula effective_formula(const LexiconEntry& entry, Handedness h);

/// False only when an atom among the top-level conjuncts of `grounded`
/// (outside any modality) is False at `s`, which refutes the formula.
bool prefilter(const UtteranceModel& m, StateId s, const Formula& grounded);

/// Evaluates every sign at every state: Match when True, Possible when
/// Unknown, omitted when False.
ProposalReport verify(const UtteranceModel& m, const LexiconFile& lexicon, Handedness h,
                      const VerifyOptions& options = {});

/// FNV-1a 64 of the canonical printed lexicon, as 16 hex digits.
std::string lexicon_hash(const LexiconFile& lexicon);

/// Config labels mentioned anywhere in the lexicon.
std::set<std::string> config_labels(const LexiconFile& lexicon);

// ---- valuation overrides ----------------------------------------------------

struct ValuationOverride {
  StateId state;
  Atom atom;
  ThreeVal value;
  SourceSpan span;
};

/// Lines `state <id>: <atom> = true|false|unknown`, `#` comments allowed.
std::vector<ValuationOverride> parse_overrides(std::string_view text);

/// Grounds each override atom with `h` and applies it. Throws
/// Error(UnknownState) for a state outside the model.
UtteranceModel apply_overrides(const UtteranceModel& m, const std::vector<ValuationOverride>& overrides,
                               Handedness h);

}  // namespace pdlsl
