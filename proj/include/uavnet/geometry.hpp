#pragma once

#include <cmath>

namespace uavnet {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline double distance_sq(Point2 a, Point2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(Point2 a, Point2 b) { return std::sqrt(distance_sq(a, b)); }

// Slant distance between a ground point and an aerial point at the given
// altitude above the projection `air`.
inline double slant_distance(Point2 ground, Point2 air, double altitude) {
  return std::sqrt(distance_sq(ground, air) + altitude * altitude);
}

inline Point2 lerp(Point2 a, Point2 b, double t) {
  return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}

struct BoundingBox {
  Point2 min;
  Point2 max;

  double diagonal() const { return distance(min, max); }
};

}  // namespace uavnet
