#include <doctest.h>

#include "pdlsl/check.hpp"
#include "pdlsl/io.hpp"
#include "pdlsl/parse.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace pdlsl;

namespace {

std::string schema_pointer(const std::string& text) {
  try {
    tracking_from_json(parse_json_text(text));
  } catch (const SchemaError& e) {
    return e.pointer();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("tracking documents") {
  const TrackingSequence seq =
      tracking_from_json(parse_json_text(read_text_file(testing::fixture_path("route_tracking.json"))));
  CHECK(seq.frames.size() == 30);
  CHECK(seq.fps == doctest::Approx(25));
  CHECK_FALSE(seq.mirrored);
  CHECK(seq.frames[0].right.config == std::optional<std::string>("CLAMP"));

  const TrackingSequence again = tracking_from_json(tracking_to_json(seq));
  REQUIRE(again.frames.size() == seq.frames.size());
  for (std::size_t i = 0; i < seq.frames.size(); ++i) {
    CHECK(again.frames[i].t == seq.frames[i].t);
    CHECK(again.frames[i].right.pos == seq.frames[i].right.pos);
    CHECK(again.frames[i].left.config == seq.frames[i].left.config);
  }

  const auto dropout =
      tracking_from_json(parse_json_text(read_text_file(testing::fixture_path("dropout.json"))));
  CHECK_FALSE(dropout.frames[4].right.pos.has_value());
}

TEST_CASE("tracking schema errors carry JSON pointers") {
  CHECK(schema_pointer(R"({"frames":[{"t":0}]})") == "/fps");
  CHECK(schema_pointer(R"({"fps":0,"frames":[{"t":0}]})") == "/fps");
  CHECK(schema_pointer(R"({"fps":25,"frames":[]})") == "/frames");
  CHECK(schema_pointer(R"({"fps":25,"frames":[{"t":-1}]})") == "/frames/0/t");
  CHECK(schema_pointer(R"({"fps":25,"frames":[{"t":0},{"t":1,"right":{"pos":[1]}}]})") == "/frames/1/right/pos");
  CHECK(schema_pointer(R"({"fps":25,"frames":[{"t":0,"right":{"orient":"UP"}}]})") == "/frames/0/right/orient");
  CHECK(schema_pointer(R"({"fps":25,"frames":[{"t":0,"elbow":[0,0]}]})") == "/frames/0/elbow");
  CHECK(schema_pointer(R"({"fps":25,"format":2,"frames":[{"t":0}]})") == "/format");
  CHECK(schema_pointer("{not json") == "");
  CHECK(schema_pointer(R"({"fps":25,"frames":[{"t":0}]})") == "<accepted>");
}

TEST_CASE("read_text_file reports missing files") {
  try {
    read_text_file("/nonexistent/input.json");
    FAIL("read succeeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("place map documents") {
  const PlaceMap map = placemap_from_json(parse_json_text(read_text_file(testing::fixture_path("placemap_default.json"))));
  REQUIRE(map.places().size() == PlaceMap::defaults().places().size());
  for (std::size_t i = 0; i < map.places().size(); ++i) {
    CHECK(map.places()[i].name == PlaceMap::defaults().places()[i].name);
    CHECK(map.places()[i].region.x_min == PlaceMap::defaults().places()[i].region.x_min);
  }
  CHECK(placemap_to_json(PlaceMap::defaults()) == parse_json_text(read_text_file(testing::fixture_path("placemap_default.json"))));
  CHECK_THROWS_AS(placemap_from_json(parse_json_text(R"({"places":[{"name":"A","x":[1,0],"y":[0,1]}]})")),
                  SchemaError);
}

TEST_CASE("model documents round trip") {
  testing::Rng rng(61);
  const auto vocab = testing::small_vocabulary();
  for (int i = 0; i < 50; ++i) {
    const UtteranceModel m = testing::random_model(rng, 1 + static_cast<std::size_t>(i % 5), vocab, 0.3, 0.3);
    const Json doc = model_to_json(m, SegmentationParams{});
    const ModelDocument back = model_from_json(parse_json_text(doc.dump()));
    CHECK(back.model.relation() == m.relation());
    CHECK(back.model.action_interp() == m.action_interp());
    for (StateId s = 0; s < m.state_count(); ++s) {
      CHECK(back.model.state(s).valuation == m.state(s).valuation);
      CHECK(back.model.state(s).observed == m.state(s).observed);
    }
    REQUIRE(back.params.has_value());
    CHECK(back.params->tau_still == doctest::Approx(0.02));
    CHECK(model_to_json(back.model, back.params).dump() == doc.dump());
  }
}

TEST_CASE("model documents are validated") {
  CHECK_THROWS_AS(model_from_json(parse_json_text(R"({"format":1,"states":[],"relation":[]})")), Error);
  CHECK_THROWS_AS(model_from_json(parse_json_text(
                      R"js({"format":1,"states":[{"id":0,"observed":["R"],"valuation":{"at(D,FACE)":"True"}}],"relation":[[0,0]],"actions":{}})js")),
                  SchemaError);
  CHECK_THROWS_AS(model_from_json(parse_json_text(
                      R"({"format":1,"states":[{"id":0,"observed":[],"valuation":{}}],"relation":[],"actions":{}})")),
                  Error);
}

TEST_CASE("reports") {
  const LexiconFile lex = parse_lexicon(std::string("sign ROUTE := ") + testing::kRouteFormula + " .");
  const ProposalReport report = verify(testing::route_model(), lex, Handedness::RightDominant);
  const Json j = report_to_json(report);
  CHECK(j["format"] == 1);
  CHECK(j["handedness"] == "right");
  CHECK(j["lexicon_hash"] == lexicon_hash(lex));
  CHECK(j["states"].size() == 2);
  CHECK(j["states"][0]["proposals"][0]["sign"] == "ROUTE");
  CHECK(j["states"][0]["proposals"][0]["verdict"] == "Match");
  CHECK(j["states"][1]["proposals"].empty());

  const std::string table = report_to_table(report);
  CHECK(table.find("ROUTE") != std::string::npos);
  CHECK(table.find("Match") != std::string::npos);
  CHECK(table.rfind("# handedness=right", 0) == 0);
}

TEST_CASE("run configuration") {
  RunConfig config;
  apply_config_json(config, parse_json_text(read_text_file(testing::fixture_path("config.json"))), "/base");
  CHECK(config.handedness == Handedness::RightDominant);
  CHECK(config.params.min_still == 3);

  apply_config_json(config,
                    parse_json_text(R"({"dominant":"left","placemap":"maps/p.json","output_format":"table",
                                        "segmentation":{"tau_touch":0.07}})"),
                    "/base");
  CHECK(config.handedness == Handedness::LeftDominant);
  CHECK(config.placemap == std::filesystem::path("/base/maps/p.json"));
  CHECK(config.format == OutputFormat::Table);
  CHECK(config.params.tau_touch == doctest::Approx(0.07));

  CHECK_THROWS_AS(apply_config_json(config, parse_json_text(R"({"colour":"red"})"), "."), SchemaError);
  CHECK_THROWS_AS(apply_config_json(config, parse_json_text(R"({"segmentation":{"tau":1}})"), "."), SchemaError);
  CHECK_THROWS_AS(apply_config_json(config, parse_json_text(R"({"segmentation":{"min_still":0}})"), "."), Error);
}

TEST_CASE("diagnostics") {
  const Json j = diagnostic_to_json({"Teleport", 25, Articulator::Left, "jump"});
  CHECK(j["kind"] == "Teleport");
  CHECK(j["frame"] == 25);
  CHECK(j["hand"] == "L");
}
