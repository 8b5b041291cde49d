#pragma once

#include <set>
#include <string>
#include <vector>

#include "pdlsl/vocabulary.hpp"

namespace pdlsl {

/// Point or vector in normalized body units, signer frame: x grows to the
/// signer's right, y grows upward.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

using Point2D = Vec2;
using Vector2D = Vec2;

double norm(Vec2 v);
double dot(Vec2 a, Vec2 b);
bool is_finite(Vec2 v);

/// Angle between two non-zero vectors in degrees, in [0, 180].
/// Throws Error(ZeroVector) if either vector has zero magnitude.
double rotation_angle(Vec2 v1, Vec2 v2);

/// Direction whose unit vector has the smallest rotation angle to `v`.
/// Exact ties go to the direction that comes first in canonical order.
Direction classify_direction(Vec2 v);

/// Direction of `p1` as seen from `p2`. Throws Error(CoincidentPoints) when
/// the points are equal.
Direction relative_direction(Point2D p1, Point2D p2);

struct BodyFrame {
  Point2D origin;
  double scale = 1.0;
};

/// (raw - origin) / scale; with `mirrored`, the x offset is negated first
/// (camera-facing footage to signer frame).
Point2D normalize(Point2D raw, const BodyFrame& frame, bool mirrored);

struct Rect {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  bool contains(Point2D p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  Point2D center() const { return {(x_min + x_max) / 2.0, (y_min + y_max) / 2.0}; }
};

struct Place {
  std::string name;
  Rect region;
};

/// Named places of articulation. Regions may overlap; names are unique and
/// every region has positive area (checked on construction).
class PlaceMap {
 public:
  PlaceMap() = default;
  explicit PlaceMap(std::vector<Place> places);

  /// The compiled-in default map (normalized units, torso origin, y up).
  static const PlaceMap& defaults();

  const std::vector<Place>& places() const { return places_; }
  const Place* find(const std::string& name) const;

 private:
  std::vector<Place> places_;
};

/// Names of every place whose rectangle contains `p`, boundary inclusive.
std::set<std::string> places_containing(Point2D p, const PlaceMap& map);

}  // namespace pdlsl
