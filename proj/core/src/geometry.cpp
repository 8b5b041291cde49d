#include "pdlsl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pdlsl/error.hpp"

namespace pdlsl {

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

double rotation_angle(Vec2 v1, Vec2 v2) {
  const double n1 = norm(v1);
  const double n2 = norm(v2);
  if (n1 == 0.0 || n2 == 0.0) throw Error(ErrorCode::ZeroVector, "rotation angle of a zero vector");
  // atan2 of (|cross|, dot) stays exact for parallel inputs, where acos of a
  // rounded cosine does not.
  const double cross = v1.x * v2.y - v1.y * v2.x;
  return std::atan2(std::abs(cross), dot(v1, v2)) * 180.0 / std::numbers::pi;
}

Direction classify_direction(Vec2 v) {
  if (norm(v) == 0.0) throw Error(ErrorCode::ZeroVector, "cannot classify a zero vector");
  // Comparing cosines keeps exact ties exact where acos rounding might not.
  // The angles of two neighbours at a 22.5 degree boundary differ only by
  // rounding noise, so treat cosines within a few ulps as equal.
  const Vec2 u = v * (1.0 / norm(v));
  Direction best = kDirections[0];
  double best_cos = -2.0;
  for (Direction d : kDirections) {
    const UnitVector dv = direction_vector(d);
    const double c = u.x * dv.x + u.y * dv.y;
    if (c > best_cos + 1e-12) {
      best_cos = c;
      best = d;
    }
  }
  return best;
}

Direction relative_direction(Point2D p1, Point2D p2) {
  if (p1 == p2) throw Error(ErrorCode::CoincidentPoints, "relative direction of coincident points");
  return classify_direction(p1 - p2);
}

Point2D normalize(Point2D raw, const BodyFrame& frame, bool mirrored) {
  Vec2 d = raw - frame.origin;
  if (mirrored) d.x = -d.x;
  return d * (1.0 / frame.scale);
}

PlaceMap::PlaceMap(std::vector<Place> places) : places_(std::move(places)) {
  for (std::size_t i = 0; i < places_.size(); ++i) {
    const Rect& r = places_[i].region;
    if (!(r.x_min < r.x_max) || !(r.y_min < r.y_max)) {
      throw Error(ErrorCode::InvalidPlaceMap,
                  "place '" + places_[i].name + "' must have positive area and min < max per axis");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (places_[j].name == places_[i].name) {
        throw Error(ErrorCode::InvalidPlaceMap, "duplicate place name '" + places_[i].name + "'");
      }
    }
  }
}

const PlaceMap& PlaceMap::defaults() {
  static const PlaceMap map({
      {"HEAD", {-0.35, 0.35, 0.8, 1.6}},
      {"FACE", {-0.3, 0.3, 0.9, 1.5}},
      {"R_SIDEOFHEAD", {0.05, 0.6, 0.8, 1.6}},
      {"L_SIDEOFHEAD", {-0.6, -0.05, 0.8, 1.6}},
      {"NECK", {-0.2, 0.2, 0.6, 0.9}},
      {"CHEST", {-0.5, 0.5, 0.1, 0.7}},
      {"TORSE", {-0.6, 0.6, -0.5, 0.7}},
      {"CENTEROFBODY", {-0.2, 0.2, -0.5, 0.7}},
      {"R_SIDEOFBODY", {0.2, 1.2, -0.5, 0.7}},
      {"L_SIDEOFBODY", {-1.2, -0.2, -0.5, 0.7}},
      {"NEUTRAL", {-0.7, 0.7, -0.2, 0.6}},
  });
  return map;
}

const Place* PlaceMap::find(const std::string& name) const {
  for (const auto& p : places_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::set<std::string> places_containing(Point2D p, const PlaceMap& map) {
  std::set<std::string> out;
  for (const auto& place : map.places()) {
    if (place.region.contains(p)) out.insert(place.name);
  }
  return out;
}

}  // namespace pdlsl
