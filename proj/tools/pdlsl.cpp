// pdlsl: batch front end for the extraction and verification pipeline.
//
//   pdlsl extract TRACKING.json [-o MODEL.json] [--lexicon LEX.pdlsl]
//   pdlsl check MODEL.json LEX.pdlsl [--overrides FILE] [--format json|table]
//   pdlsl eval MODEL.json FORMULA STATE
//   pdlsl lint LEX.pdlsl
//
// Exit codes: 0 success, 1 data error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pdlsl/check.hpp"
#include "pdlsl/extract.hpp"
#include "pdlsl/io.hpp"
#include "pdlsl/parse.hpp"

namespace fs = std::filesystem;
using namespace pdlsl;

namespace {

constexpr int kOk = 0;
constexpr int kDataError = 1;
constexpr int kUsageError = 2;

struct CommonFlags {
  std::string config;
  std::string dominant;
  bool mirrored = false;
  std::string placemap;
  std::string format;
  std::string overrides;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration");
  cmd->add_option("--dominant", f.dominant, "Dominant hand")->check(CLI::IsMember({"right", "left"}));
  cmd->add_flag("--mirrored", f.mirrored, "Footage is camera-facing (negate x)");
  cmd->add_option("--placemap", f.placemap, "JSON place map (default: built-in)");
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "table"}));
  cmd->add_option("--overrides", f.overrides, "Valuation override file");
}

RunConfig resolve_config(const CommonFlags& f) {
  RunConfig config;
  if (!f.config.empty()) {
    const fs::path path(f.config);
    apply_config_json(config, parse_json_text(read_text_file(path)), path.parent_path());
  }
  if (!f.dominant.empty()) {
    config.handedness = f.dominant == "left" ? Handedness::LeftDominant : Handedness::RightDominant;
  }
  if (f.mirrored) config.mirrored = true;
  if (!f.placemap.empty()) config.placemap = fs::path(f.placemap);
  if (!f.format.empty()) config.format = f.format == "table" ? OutputFormat::Table : OutputFormat::Json;
  return config;
}

PlaceMap load_placemap(const RunConfig& config) {
  if (!config.placemap) return PlaceMap::defaults();
  return placemap_from_json(parse_json_text(read_text_file(*config.placemap)));
}

void emit_json_line(const Json& line) { std::cerr << line.dump() << "\n"; }

void report_error(const std::string& file, const Error& e) {
  Json line{{"level", "error"}, {"kind", error_code_name(e.code())}, {"file", file}};
  if (const auto* se = dynamic_cast<const SchemaError*>(&e)) line["path"] = se->pointer();
  line["message"] = e.what();
  emit_json_line(line);
}

void report_parse_error(const std::string& file, const ParseError& e) {
  std::cerr << file << ":" << e.span().line << ":" << e.span().column << ": error: " << e.what() << "\n";
  if (e.other_span()) {
    std::cerr << file << ":" << e.other_span()->line << ":" << e.other_span()->column
              << ": note: first definition is here\n";
  }
}

struct LocatedParseError {
  std::string file;
  ParseError error;
};

template <typename Fn>
auto located(const std::string& file, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    throw LocatedParseError{file, e};
  }
}

LexiconFile load_lexicon(const std::string& path) {
  const std::string text = read_text_file(path);
  return located(path, [&] { return parse_lexicon(text); });
}

std::vector<ValuationOverride> load_overrides(const std::string& path) {
  const std::string text = read_text_file(path);
  return located(path, [&] { return parse_overrides(text); });
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write '" + out_path + "'");
  out << text;
}

// ---- commands ------------------------------------------------------------------

int cmd_extract(const std::string& input, const std::string& output, const std::string& lexicon_path,
                const CommonFlags& flags) {
  const RunConfig config = resolve_config(flags);
  const PlaceMap map = load_placemap(config);
  std::set<std::string> labels;
  if (!lexicon_path.empty()) labels = config_labels(load_lexicon(lexicon_path));

  const TrackingSequence seq = tracking_from_json(parse_json_text(read_text_file(input)));
  const ExtractionResult result = extract(seq, config.params, map, labels, FrameOptions{config.scale, config.mirrored});
  for (const auto& d : result.diagnostics) {
    Json line{{"level", "warning"}, {"file", input}};
    const Json details = diagnostic_to_json(d);
    for (const auto& [k, v] : details.items()) line[k] = v;
    emit_json_line(line);
  }
  write_output(output, model_to_json(result.model, config.params).dump(2) + "\n");
  return kOk;
}

int cmd_check(const std::string& model_path, const std::string& lexicon_path, const std::string& output,
              bool no_prefilter, const CommonFlags& flags) {
  const RunConfig config = resolve_config(flags);
  ModelDocument doc = model_from_json(parse_json_text(read_text_file(model_path)));
  const LexiconFile lexicon = load_lexicon(lexicon_path);

  UtteranceModel model = doc.model;
  if (!flags.overrides.empty()) {
    model = apply_overrides(model, load_overrides(flags.overrides), config.handedness);
  }
  ProposalReport report = verify(model, lexicon, config.handedness, VerifyOptions{!no_prefilter});
  report.meta.params = doc.params;
  write_output(output, config.format == OutputFormat::Table ? report_to_table(report)
                                                             : report_to_json(report).dump(2) + "\n");
  return kOk;
}

int cmd_eval(const std::string& model_path, const std::string& formula_text, long long state,
             const CommonFlags& flags) {
  const RunConfig config = resolve_config(flags);
  ModelDocument doc = model_from_json(parse_json_text(read_text_file(model_path)));
  UtteranceModel model = doc.model;
  if (!flags.overrides.empty()) {
    model = apply_overrides(model, load_overrides(flags.overrides), config.handedness);
  }
  if (state < 0) throw Error(ErrorCode::UnknownState, "state id must be non-negative");
  const Formula f = ground(located("<formula>", [&] { return parse_formula(formula_text); }), config.handedness);
  std::cout << to_string(eval_formula(model, static_cast<StateId>(state), f)) << "\n";
  return kOk;
}

bool mentions_orient(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Top: return false;
    case Formula::Kind::Atom: return std::holds_alternative<Orient>(f.atom_value());
    case Formula::Kind::And: return mentions_orient(f.lhs()) || mentions_orient(f.rhs());
    default: return mentions_orient(f.lhs());
  }
}

int cmd_lint(const std::string& lexicon_path) {
  const LexiconFile lexicon = load_lexicon(lexicon_path);
  for (const auto& e : lexicon.entries) {
    if (mentions_orient(e.formula)) {
      std::cerr << lexicon_path << ":" << e.span.line << ":" << e.span.column << ": warning: sign '" << e.name
                << "' uses orient(...); palm orientation is not observable from 2-D tracking and stays "
                   "Unknown unless frames carry orientation labels\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sign description model checking over tracking-derived utterance models"};
  app.require_subcommand(1);

  CommonFlags flags;

  std::string extract_input, extract_output, extract_lexicon;
  auto* extract = app.add_subcommand("extract", "Build an utterance model from a tracking file");
  extract->add_option("tracking", extract_input, "Tracking JSON file")->required();
  extract->add_option("-o,--output", extract_output, "Model output path (default: stdout)");
  extract->add_option("--lexicon", extract_lexicon, "Lexicon whose configuration labels close the Config atoms");
  add_common(extract, flags);

  std::string check_model, check_lexicon, check_output;
  bool no_prefilter = false;
  auto* check = app.add_subcommand("check", "Verify a lexicon against a model and emit sign proposals");
  check->add_option("model", check_model, "Model JSON file")->required();
  check->add_option("lexicon", check_lexicon, "Lexicon file (.pdlsl)")->required();
  check->add_option("-o,--output", check_output, "Report output path (default: stdout)");
  check->add_flag("--no-prefilter", no_prefilter, "Evaluate every sign at every state");
  add_common(check, flags);

  std::string eval_model, eval_formula_text;
  long long eval_state = 0;
  auto* eval = app.add_subcommand("eval", "Evaluate one formula at one state");
  eval->add_option("model", eval_model, "Model JSON file")->required();
  eval->add_option("formula", eval_formula_text, "Formula text")->required();
  eval->add_option("state", eval_state, "State id")->required();
  add_common(eval, flags);

  std::string lint_lexicon;
  auto* lint = app.add_subcommand("lint", "Check a lexicon file");
  lint->add_option("lexicon", lint_lexicon, "Lexicon file (.pdlsl)")->required();
  add_common(lint, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  std::string current_file;
  try {
    if (*extract) {
      current_file = extract_input;
      return cmd_extract(extract_input, extract_output, extract_lexicon, flags);
    }
    if (*check) {
      current_file = check_model;
      return cmd_check(check_model, check_lexicon, check_output, no_prefilter, flags);
    }
    if (*eval) {
      current_file = eval_model;
      return cmd_eval(eval_model, eval_formula_text, eval_state, flags);
    }
    if (*lint) {
      current_file = lint_lexicon;
      return cmd_lint(lint_lexicon);
    }
  } catch (const LocatedParseError& e) {
    report_parse_error(e.file, e.error);
    return kDataError;
  } catch (const Error& e) {
    report_error(current_file, e);
    return kDataError;
  }
  return kUsageError;
}
