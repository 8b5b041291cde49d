#include "pdlsl/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "pdlsl/parse.hpp"

namespace pdlsl {

namespace {

std::string child(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }
std::string child(const std::string& pointer, std::size_t index) { return pointer + "/" + std::to_string(index); }

void require_object(const Json& v, const std::string& pointer) {
  if (!v.is_object()) throw SchemaError(pointer, "expected an object");
}

void reject_unknown_keys(const Json& obj, const std::string& pointer, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw SchemaError(child(pointer, key), "unknown key");
  }
}

void check_format(const Json& doc, const std::string& pointer) {
  if (!doc.contains("format")) return;
  const Json& f = doc["format"];
  if (!f.is_number_integer() || f.get<int>() != kFormatVersion) {
    throw SchemaError(child(pointer, "format"), "unsupported format version (expected 1)");
  }
}

double number(const Json& v, const std::string& pointer) {
  if (!v.is_number()) throw SchemaError(pointer, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw SchemaError(pointer, "expected a finite number");
  return d;
}

bool boolean(const Json& v, const std::string& pointer) {
  if (!v.is_boolean()) throw SchemaError(pointer, "expected true or false");
  return v.get<bool>();
}

std::string string(const Json& v, const std::string& pointer) {
  if (!v.is_string()) throw SchemaError(pointer, "expected a string");
  return v.get<std::string>();
}

Point2D point(const Json& v, const std::string& pointer) {
  if (!v.is_array() || v.size() != 2) throw SchemaError(pointer, "expected [x, y]");
  return {number(v[0], child(pointer, 0)), number(v[1], child(pointer, 1))};
}

Json point_json(Point2D p) { return Json::array({p.x, p.y}); }

std::optional<Point2D> optional_point(const Json& obj, const char* key, const std::string& pointer) {
  if (!obj.contains(key) || obj[key].is_null()) return std::nullopt;
  return point(obj[key], child(pointer, key));
}

HandSample hand_from_json(const Json& v, const std::string& pointer) {
  require_object(v, pointer);
  reject_unknown_keys(v, pointer, {"pos", "config", "orient"});
  HandSample h;
  h.pos = optional_point(v, "pos", pointer);
  if (v.contains("config") && !v["config"].is_null()) {
    h.config = string(v["config"], child(pointer, "config"));
    if (h.config->empty()) throw SchemaError(child(pointer, "config"), "empty configuration label");
  }
  if (v.contains("orient") && !v["orient"].is_null()) {
    const std::string d = string(v["orient"], child(pointer, "orient"));
    h.orient = direction_from_string(d);
    if (!h.orient) throw SchemaError(child(pointer, "orient"), "unknown direction '" + d + "'");
  }
  return h;
}

Json hand_to_json(const HandSample& h) {
  Json out = Json::object();
  if (h.pos) out["pos"] = point_json(*h.pos);
  if (h.config) out["config"] = *h.config;
  if (h.orient) out["orient"] = std::string(to_string(*h.orient));
  return out;
}

ThreeVal threeval(const Json& v, const std::string& pointer) {
  const std::string s = string(v, pointer);
  if (s == "True") return ThreeVal::True;
  if (s == "False") return ThreeVal::False;
  if (s == "Unknown") return ThreeVal::Unknown;
  throw SchemaError(pointer, "expected True, False or Unknown");
}

Edge edge(const Json& v, const std::string& pointer) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_unsigned() || !v[1].is_number_unsigned()) {
    throw SchemaError(pointer, "expected [from, to] state ids");
  }
  return {v[0].get<StateId>(), v[1].get<StateId>()};
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "': file not found or unreadable");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

// ---- tracking ------------------------------------------------------------------

TrackingSequence tracking_from_json(const Json& doc) {
  require_object(doc, "");
  reject_unknown_keys(doc, "", {"format", "fps", "mirrored", "frames"});
  check_format(doc, "");
  TrackingSequence seq;
  if (!doc.contains("fps")) throw SchemaError("/fps", "missing required key");
  seq.fps = number(doc["fps"], "/fps");
  if (!(seq.fps > 0.0)) throw SchemaError("/fps", "fps must be > 0");
  if (doc.contains("mirrored")) seq.mirrored = boolean(doc["mirrored"], "/mirrored");
  if (!doc.contains("frames") || !doc["frames"].is_array()) throw SchemaError("/frames", "expected an array");
  const Json& frames = doc["frames"];
  if (frames.empty()) throw SchemaError("/frames", "sequence must contain at least one frame");
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const std::string ptr = child("/frames", i);
    const Json& f = frames[i];
    require_object(f, ptr);
    reject_unknown_keys(f, ptr, {"t", "head", "torso", "right", "left"});
    TrackingFrame frame;
    if (!f.contains("t") || !f["t"].is_number_integer() || f["t"].get<std::int64_t>() < 0) {
      throw SchemaError(child(ptr, "t"), "expected a non-negative integer frame index");
    }
    frame.t = f["t"].get<std::int64_t>();
    frame.head = optional_point(f, "head", ptr);
    frame.torso = optional_point(f, "torso", ptr);
    if (f.contains("right") && !f["right"].is_null()) frame.right = hand_from_json(f["right"], child(ptr, "right"));
    if (f.contains("left") && !f["left"].is_null()) frame.left = hand_from_json(f["left"], child(ptr, "left"));
    seq.frames.push_back(std::move(frame));
  }
  return seq;
}

Json tracking_to_json(const TrackingSequence& seq) {
  Json out;
  out["format"] = kFormatVersion;
  out["fps"] = seq.fps;
  out["mirrored"] = seq.mirrored;
  Json frames = Json::array();
  for (const auto& f : seq.frames) {
    Json jf;
    jf["t"] = f.t;
    if (f.head) jf["head"] = point_json(*f.head);
    if (f.torso) jf["torso"] = point_json(*f.torso);
    jf["right"] = hand_to_json(f.right);
    jf["left"] = hand_to_json(f.left);
    frames.push_back(std::move(jf));
  }
  out["frames"] = std::move(frames);
  return out;
}

// ---- place map ----------------------------------------------------------------------

PlaceMap placemap_from_json(const Json& doc) {
  require_object(doc, "");
  reject_unknown_keys(doc, "", {"format", "places"});
  check_format(doc, "");
  if (!doc.contains("places") || !doc["places"].is_array()) throw SchemaError("/places", "expected an array");
  std::vector<Place> places;
  for (std::size_t i = 0; i < doc["places"].size(); ++i) {
    const std::string ptr = child("/places", i);
    const Json& p = doc["places"][i];
    require_object(p, ptr);
    reject_unknown_keys(p, ptr, {"name", "x", "y"});
    if (!p.contains("name")) throw SchemaError(child(ptr, "name"), "missing required key");
    if (!p.contains("x")) throw SchemaError(child(ptr, "x"), "missing required key");
    if (!p.contains("y")) throw SchemaError(child(ptr, "y"), "missing required key");
    const Point2D x = point(p["x"], child(ptr, "x"));
    const Point2D y = point(p["y"], child(ptr, "y"));
    places.push_back({string(p["name"], child(ptr, "name")), Rect{x.x, x.y, y.x, y.y}});
  }
  try {
    return PlaceMap(std::move(places));
  } catch (const Error& e) {
    throw SchemaError("/places", e.what());
  }
}

Json placemap_to_json(const PlaceMap& map) {
  Json out;
  out["format"] = kFormatVersion;
  Json places = Json::array();
  for (const auto& p : map.places()) {
    places.push_back(Json{{"name", p.name},
                          {"x", Json::array({p.region.x_min, p.region.x_max})},
                          {"y", Json::array({p.region.y_min, p.region.y_max})}});
  }
  out["places"] = std::move(places);
  return out;
}

// ---- params -------------------------------------------------------------------------

Json params_to_json(const SegmentationParams& p) {
  return Json{{"tau_still", p.tau_still},
              {"min_still", p.min_still},
              {"tau_touch", p.tau_touch},
              {"touch_unknown_band", p.touch_unknown_band},
              {"thrill_window", p.thrill_window},
              {"thrill_net_disp", p.thrill_net_disp},
              {"thrill_min_reversals", p.thrill_min_reversals},
              {"max_jump", p.max_jump}};
}

void apply_params_json(SegmentationParams& p, const Json& doc, const std::string& pointer) {
  require_object(doc, pointer);
  reject_unknown_keys(doc, pointer,
                      {"tau_still", "min_still", "tau_touch", "touch_unknown_band", "thrill_window",
                       "thrill_net_disp", "thrill_min_reversals", "max_jump"});
  auto real = [&](const char* key, double& field) {
    if (doc.contains(key)) field = number(doc[key], child(pointer, key));
  };
  auto integer = [&](const char* key, int& field) {
    if (!doc.contains(key)) return;
    if (!doc[key].is_number_integer()) throw SchemaError(child(pointer, key), "expected an integer");
    field = doc[key].get<int>();
  };
  real("tau_still", p.tau_still);
  integer("min_still", p.min_still);
  real("tau_touch", p.tau_touch);
  real("touch_unknown_band", p.touch_unknown_band);
  integer("thrill_window", p.thrill_window);
  real("thrill_net_disp", p.thrill_net_disp);
  integer("thrill_min_reversals", p.thrill_min_reversals);
  real("max_jump", p.max_jump);
  try {
    p.validate();
  } catch (const Error& e) {
    throw SchemaError(pointer, e.what());
  }
}

// ---- model ----------------------------------------------------------------------------

Json model_to_json(const UtteranceModel& m, const std::optional<SegmentationParams>& params) {
  Json out;
  out["format"] = kFormatVersion;
  out["kind"] = "pdlsl-model";
  Json states = Json::array();
  for (StateId s = 0; s < m.state_count(); ++s) {
    const StateInfo& info = m.state(s);
    Json js;
    js["id"] = s;
    Json observed = Json::array();
    for (Articulator a : info.observed) observed.push_back(std::string(to_string(a)));
    js["observed"] = std::move(observed);
    // Keyed by printed atom, in printed order so the dump is stable.
    std::map<std::string, ThreeVal> printed;
    for (const auto& [atom, v] : info.valuation) printed.emplace(print_atom(atom), v);
    Json val = Json::object();
    for (const auto& [atom, v] : printed) val[atom] = std::string(to_string(v));
    js["valuation"] = std::move(val);
    states.push_back(std::move(js));
  }
  out["states"] = std::move(states);

  Json relation = Json::array();
  for (const auto& [a, b] : m.relation()) relation.push_back(Json::array({a, b}));
  out["relation"] = std::move(relation);

  std::map<std::string, const std::set<Edge>*> actions;
  for (const auto& [action, edges] : m.action_interp()) actions.emplace(print_atomic_action(action), &edges);
  Json ja = Json::object();
  for (const auto& [name, edges] : actions) {
    Json list = Json::array();
    for (const auto& [a, b] : *edges) list.push_back(Json::array({a, b}));
    ja[name] = std::move(list);
  }
  out["actions"] = std::move(ja);
  out["params"] = params ? params_to_json(*params) : Json(nullptr);
  return out;
}

ModelDocument model_from_json(const Json& doc) {
  require_object(doc, "");
  reject_unknown_keys(doc, "", {"format", "kind", "states", "relation", "actions", "params"});
  check_format(doc, "");
  if (doc.contains("kind") && doc["kind"] != "pdlsl-model") throw SchemaError("/kind", "expected \"pdlsl-model\"");
  if (!doc.contains("states") || !doc["states"].is_array()) throw SchemaError("/states", "expected an array");

  std::vector<StateInfo> states;
  for (std::size_t i = 0; i < doc["states"].size(); ++i) {
    const std::string ptr = child("/states", i);
    const Json& js = doc["states"][i];
    require_object(js, ptr);
    reject_unknown_keys(js, ptr, {"id", "observed", "valuation"});
    if (js.contains("id") && (!js["id"].is_number_unsigned() || js["id"].get<std::size_t>() != i)) {
      throw SchemaError(child(ptr, "id"), "state ids must be 0..n-1 in order");
    }
    StateInfo info;
    if (js.contains("observed")) {
      const Json& obs = js["observed"];
      if (!obs.is_array()) throw SchemaError(child(ptr, "observed"), "expected an array");
      for (std::size_t k = 0; k < obs.size(); ++k) {
        const std::string name = string(obs[k], child(child(ptr, "observed"), k));
        auto a = articulator_from_string(name);
        if (!a || is_alias(*a)) throw SchemaError(child(child(ptr, "observed"), k), "expected R or L");
        info.observed.insert(*a);
      }
    }
    if (js.contains("valuation")) {
      require_object(js["valuation"], child(ptr, "valuation"));
      for (const auto& [key, value] : js["valuation"].items()) {
        const std::string vptr = child(child(ptr, "valuation"), key);
        Atom atom;
        try {
          atom = parse_atom(key);
        } catch (const ParseError& e) {
          throw SchemaError(vptr, e.what());
        }
        if (!is_grounded(atom)) throw SchemaError(vptr, "model atoms must use R/L only");
        info.valuation[atom] = threeval(value, vptr);
      }
    }
    states.push_back(std::move(info));
  }

  std::set<Edge> relation;
  if (!doc.contains("relation") || !doc["relation"].is_array()) throw SchemaError("/relation", "expected an array");
  for (std::size_t i = 0; i < doc["relation"].size(); ++i) {
    relation.insert(edge(doc["relation"][i], child("/relation", i)));
  }

  std::map<AtomicAction, std::set<Edge>> interp;
  if (doc.contains("actions")) {
    require_object(doc["actions"], "/actions");
    for (const auto& [key, list] : doc["actions"].items()) {
      const std::string aptr = child("/actions", key);
      Action a = Action::atomic(Thrill{Articulator::Right});
      try {
        a = parse_action(key);
      } catch (const ParseError& e) {
        throw SchemaError(aptr, e.what());
      }
      if (a.kind() != Action::Kind::Atomic) throw SchemaError(aptr, "expected an atomic action");
      if (!list.is_array()) throw SchemaError(aptr, "expected an array of edges");
      auto& edges = interp[a.atom()];
      for (std::size_t i = 0; i < list.size(); ++i) edges.insert(edge(list[i], child(aptr, i)));
    }
  }

  std::optional<SegmentationParams> params;
  if (doc.contains("params") && !doc["params"].is_null()) {
    SegmentationParams p;
    apply_params_json(p, doc["params"], "/params");
    params = p;
  }

  try {
    return ModelDocument{UtteranceModel(std::move(states), std::move(relation), std::move(interp)), params};
  } catch (const Error& e) {
    throw SchemaError("", e.what());
  }
}

// ---- report -----------------------------------------------------------------------------

Json report_to_json(const ProposalReport& report) {
  Json out;
  out["format"] = kFormatVersion;
  out["handedness"] = std::string(to_string(report.meta.handedness));
  out["lexicon_hash"] = report.meta.lexicon_hash;
  out["params"] = report.meta.params ? params_to_json(*report.meta.params) : Json(nullptr);
  Json states = Json::array();
  for (std::size_t s = 0; s < report.states.size(); ++s) {
    Json proposals = Json::array();
    for (const auto& p : report.states[s]) {
      proposals.push_back(Json{{"sign", p.sign}, {"verdict", std::string(to_string(p.verdict))}});
    }
    states.push_back(Json{{"state", s}, {"proposals", std::move(proposals)}});
  }
  out["states"] = std::move(states);
  return out;
}

std::string report_to_table(const ProposalReport& report) {
  std::ostringstream out;
  out << "# handedness=" << to_string(report.meta.handedness) << " lexicon=" << report.meta.lexicon_hash << "\n";
  out << std::left << std::setw(8) << "state" << std::setw(24) << "sign"
      << "verdict\n";
  for (std::size_t s = 0; s < report.states.size(); ++s) {
    if (report.states[s].empty()) {
      out << std::setw(8) << ("s" + std::to_string(s)) << std::setw(24) << "-"
          << "-\n";
    }
    for (const auto& p : report.states[s]) {
      out << std::setw(8) << ("s" + std::to_string(s)) << std::setw(24) << p.sign << to_string(p.verdict) << "\n";
    }
  }
  return out.str();
}

Json diagnostic_to_json(const Diagnostic& d) {
  Json out;
  out["kind"] = d.kind;
  if (d.frame) out["frame"] = *d.frame;
  if (d.hand) out["hand"] = std::string(to_string(*d.hand));
  out["message"] = d.message;
  return out;
}

// ---- config -----------------------------------------------------------------------------

void apply_config_json(RunConfig& config, const Json& doc, const std::filesystem::path& base_dir) {
  require_object(doc, "");
  reject_unknown_keys(doc, "",
                      {"format", "dominant", "mirrored", "placemap", "scale", "output_format", "segmentation"});
  check_format(doc, "");
  if (doc.contains("dominant")) {
    const std::string d = string(doc["dominant"], "/dominant");
    if (d == "right") {
      config.handedness = Handedness::RightDominant;
    } else if (d == "left") {
      config.handedness = Handedness::LeftDominant;
    } else {
      throw SchemaError("/dominant", "expected \"right\" or \"left\"");
    }
  }
  if (doc.contains("mirrored")) config.mirrored = boolean(doc["mirrored"], "/mirrored");
  if (doc.contains("placemap")) {
    std::filesystem::path p = string(doc["placemap"], "/placemap");
    config.placemap = p.is_absolute() ? p : base_dir / p;
  }
  if (doc.contains("scale")) {
    const double s = number(doc["scale"], "/scale");
    if (!(s > 0.0)) throw SchemaError("/scale", "scale must be > 0");
    config.scale = s;
  }
  if (doc.contains("output_format")) {
    const std::string f = string(doc["output_format"], "/output_format");
    if (f == "json") {
      config.format = OutputFormat::Json;
    } else if (f == "table") {
      config.format = OutputFormat::Table;
    } else {
      throw SchemaError("/output_format", "expected \"json\" or \"table\"");
    }
  }
  if (doc.contains("segmentation")) apply_params_json(config.params, doc["segmentation"], "/segmentation");
}

}  // namespace pdlsl
