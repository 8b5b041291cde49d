#pragma once

// JSON documents: tracking input, place maps, run configuration, model dumps
// and proposal reports. Every document written here carries `"format": 1`.

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "pdlsl/check.hpp"
#include "pdlsl/extract.hpp"
#include "pdlsl/geometry.hpp"
#include "pdlsl/model.hpp"

namespace pdlsl {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Schema violation; `pointer` is a JSON pointer to the offending value.
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& message)
      : Error(ErrorCode::Schema, pointer + ": " + message), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

std::string read_text_file(const std::filesystem::path& path);
/// Parses JSON text; syntax errors become SchemaError at "".
Json parse_json_text(const std::string& text);

// tracking
TrackingSequence tracking_from_json(const Json& doc);
Json tracking_to_json(const TrackingSequence& seq);

// place map: {"format":1, "places":[{"name":..., "x":[min,max], "y":[min,max]}]}
PlaceMap placemap_from_json(const Json& doc);
Json placemap_to_json(const PlaceMap& map);

Json params_to_json(const SegmentationParams& p);
/// Overrides fields present in `doc`; unknown keys rejected.
void apply_params_json(SegmentationParams& p, const Json& doc, const std::string& pointer);

// model
struct ModelDocument {
  UtteranceModel model;
  std::optional<SegmentationParams> params;
};

Json model_to_json(const UtteranceModel& m, const std::optional<SegmentationParams>& params = std::nullopt);
ModelDocument model_from_json(const Json& doc);

// report
Json report_to_json(const ProposalReport& report);
std::string report_to_table(const ProposalReport& report);

Json diagnostic_to_json(const Diagnostic& d);

// run configuration
enum class OutputFormat { Json, Table };

struct RunConfig {
  Handedness handedness = Handedness::RightDominant;
  SegmentationParams params;
  std::optional<std::filesystem::path> placemap;
  std::optional<bool> mirrored;
  std::optional<double> scale;
  OutputFormat format = OutputFormat::Json;
};

/// Applies a config document on top of `config`. Relative paths resolve
/// against `base_dir`. Unknown keys raise SchemaError.
void apply_config_json(RunConfig& config, const Json& doc, const std::filesystem::path& base_dir);

}  // namespace pdlsl
