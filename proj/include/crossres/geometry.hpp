#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace crossres {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(Vec2 a, Vec2 b) { return !(a == b); }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Sign of the signed area of triangle (a, b, c): +1 counterclockwise,
/// -1 clockwise, 0 collinear. The double evaluation is trusted only when
/// |det| exceeds 1e-12 of the determinant magnitude scale; otherwise the
/// sign is recomputed with exact expansion arithmetic.
int orientation(Vec2 a, Vec2 b, Vec2 c);

/// Distance from p to the closed segment [a, b].
double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

struct Segment {
  Vec2 a, b;
};

enum class SegmentRelation {
  disjoint,    // includes shared endpoints and T-touches: open interiors miss
  crossing,    // open interiors intersect in exactly one point
  degenerate,  // collinear with an overlap of positive length
};

SegmentRelation classify_segments(const Segment& s1, const Segment& s2);

struct Intersection {
  SegmentRelation relation = SegmentRelation::disjoint;
  Vec2 point{};  // meaningful only when relation == crossing
};

Intersection proper_intersection(const Segment& s1, const Segment& s2);

/// Angle between two direction vectors folded to (0, 90], in degrees.
double angle_between_degrees(Vec2 d1, Vec2 d2);

struct CrossingAngle {
  bool degenerate = false;              // collinear overlap encountered
  std::optional<double> degrees;       // set iff the segments properly cross
};

CrossingAngle crossing_angle(const Segment& s1, const Segment& s2);

/// Cyclic gaps (degrees) between consecutive edge directions center->neighbor,
/// in cyclic order. Empty for fewer than two neighbors. Gaps sum to 360.
std::vector<double> angular_gaps(Vec2 center, const std::vector<Vec2>& neighbors);

inline double degrees_from_radians(double rad) { return rad * (180.0 / M_PI); }

}  // namespace crossres
