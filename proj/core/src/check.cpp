#include "pdlsl/check.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

#include "pdlsl/error.hpp"

namespace pdlsl {

std::string_view to_string(Verdict v) { return v == Verdict::Match ? "Match" : "Possible"; }

Formula effective_formula(const LexiconEntry& entry, Handedness h) {
  Formula f = ground(entry.formula, h);
  if (entry.anchor) return Formula::conjunction(ground(*entry.anchor, h), f);
  return f;
}

namespace {

void top_level_atoms(const Formula& f, std::vector<const Atom*>& out) {
  if (f.kind() == Formula::Kind::And) {
    top_level_atoms(f.lhs(), out);
    top_level_atoms(f.rhs(), out);
  } else if (f.kind() == Formula::Kind::Atom) {
    out.push_back(&f.atom_value());
  }
}

void collect_labels(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Top: return;
    case Formula::Kind::Atom:
      if (const auto* c = std::get_if<Config>(&f.atom_value())) out.insert(c->label);
      return;
    case Formula::Kind::And:
      collect_labels(f.lhs(), out);
      collect_labels(f.rhs(), out);
      return;
    case Formula::Kind::Not:
    case Formula::Kind::Box: collect_labels(f.lhs(), out); return;
  }
}

}  // namespace

bool prefilter(const UtteranceModel& m, StateId s, const Formula& grounded) {
  std::vector<const Atom*> atoms;
  top_level_atoms(grounded, atoms);
  for (const Atom* p : atoms) {
    if (atom_value(m, s, *p) == ThreeVal::False) return false;
  }
  return true;
}

ProposalReport verify(const UtteranceModel& m, const LexiconFile& lexicon, Handedness h,
                      const VerifyOptions& options) {
  std::vector<Formula> formulas;
  formulas.reserve(lexicon.entries.size());
  for (const auto& e : lexicon.entries) formulas.push_back(effective_formula(e, h));

  ProposalReport report;
  report.meta.handedness = h;
  report.meta.lexicon_hash = lexicon_hash(lexicon);
  report.states.resize(m.state_count());

  Evaluator ev(m);
  for (StateId s = 0; s < m.state_count(); ++s) {
    std::vector<Proposal> possible;
    for (std::size_t i = 0; i < formulas.size(); ++i) {
      if (options.prefilter && !prefilter(m, s, formulas[i])) continue;
      switch (ev.eval(s, formulas[i])) {
        case ThreeVal::True: report.states[s].push_back({lexicon.entries[i].name, Verdict::Match}); break;
        case ThreeVal::Unknown: possible.push_back({lexicon.entries[i].name, Verdict::Possible}); break;
        case ThreeVal::False: break;
      }
    }
    report.states[s].insert(report.states[s].end(), possible.begin(), possible.end());
  }
  return report;
}

std::string lexicon_hash(const LexiconFile& lexicon) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : print_lexicon(lexicon)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::set<std::string> config_labels(const LexiconFile& lexicon) {
  std::set<std::string> out;
  for (const auto& e : lexicon.entries) {
    collect_labels(e.formula, out);
    if (e.anchor) collect_labels(*e.anchor, out);
  }
  return out;
}

// ---- overrides ----------------------------------------------------------------

std::vector<ValuationOverride> parse_overrides(std::string_view text) {
  std::vector<ValuationOverride> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) {
      if (eol == text.size()) break;
      continue;
    }

    auto fail = [&](std::size_t col, const std::string& msg, std::vector<std::string> expected = {}) {
      throw ParseError(ParseErrorKind::Syntax, SourceSpan{line_no, col + 1, 1}, msg, std::move(expected));
    };

    if (line.compare(first, 5, "state") != 0) fail(first, "override must start with 'state'", {"state"});
    std::size_t i = first + 5;
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t id_start = i;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
    if (i == id_start) fail(i, "expected a state id", {"number"});
    const StateId state = std::stoull(line.substr(id_start, i - id_start));
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size() || line[i] != ':') fail(i, "expected ':'", {":"});
    ++i;
    const std::size_t eq = line.rfind('=');
    if (eq == std::string::npos || eq < i) fail(line.size(), "expected '= true|false|unknown'", {"="});

    Atom atom;
    try {
      atom = parse_atom(line.substr(i, eq - i));
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), SourceSpan{line_no, i + e.span().column, e.span().length}, e.detail(),
                       e.expected());
    }
    std::string value = line.substr(eq + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    value.erase(value.find_last_not_of(" \t") + 1);
    ThreeVal v;
    if (value == "true") {
      v = ThreeVal::True;
    } else if (value == "false") {
      v = ThreeVal::False;
    } else if (value == "unknown") {
      v = ThreeVal::Unknown;
    } else {
      fail(eq + 1, "expected true, false or unknown", {"true", "false", "unknown"});
    }
    out.push_back({state, std::move(atom), v, SourceSpan{line_no, first + 1, line.size() - first}});
    if (eol == text.size()) break;
  }
  return out;
}

UtteranceModel apply_overrides(const UtteranceModel& m, const std::vector<ValuationOverride>& overrides,
                               Handedness h) {
  UtteranceModel out = m;
  for (const auto& o : overrides) out = out.with_value(o.state, ground(o.atom, h), o.value);
  return out;
}

}  // namespace pdlsl
