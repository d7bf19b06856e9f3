#include "crossres/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace crossres {

namespace {

// ---- floating-point expansion primitives (Dekker / Knuth / Shewchuk) ----

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  double bv = x - a;
  double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void two_diff(double a, double b, double& x, double& y) {
  x = a - b;
  double bv = a - x;
  double av = x + bv;
  y = (a - av) + (bv - b);
}

inline void two_product(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

// Sums two nonoverlapping expansions (components in increasing magnitude),
// eliminating zero components. h must hold elen + flen doubles; returns the
// length written. Merge order follows the fast-expansion-sum scheme, so the
// output is again a nonoverlapping expansion.
int expansion_sum(int elen, const double* e, int flen, const double* f,
                  double* h) {
  int eindex = 0, findex = 0, hindex = 0;
  auto next = [&]() {
    if (eindex >= elen) return f[findex++];
    if (findex >= flen) return e[eindex++];
    // take the smaller-magnitude head
    if ((f[findex] > e[eindex]) == (f[findex] > -e[eindex])) {
      return e[eindex++];
    }
    return f[findex++];
  };
  double q = next();
  for (int remaining = elen + flen - 1; remaining > 0; --remaining) {
    double qnew, hh;
    two_sum(q, next(), qnew, hh);
    q = qnew;
    if (hh != 0.0) h[hindex++] = hh;
  }
  if (q != 0.0 || hindex == 0) h[hindex++] = q;
  return hindex;
}

// Exact sign of ax*by - ax*cy + bx*cy - bx*ay + cx*ay - cx*by,
// i.e. of the orientation determinant (b - a) x (c - a).
int orientation_exact(Vec2 a, Vec2 b, Vec2 c) {
  double t1[2], t2[2], t3[2], t4[2], t5[2], t6[2];
  two_product(a.x, b.y, t1[1], t1[0]);
  two_product(-a.x, c.y, t2[1], t2[0]);
  two_product(b.x, c.y, t3[1], t3[0]);
  two_product(-b.x, a.y, t4[1], t4[0]);
  two_product(c.x, a.y, t5[1], t5[0]);
  two_product(-c.x, b.y, t6[1], t6[0]);

  double s12[4], s34[4], s56[4], s1234[8], det[12];
  int n12 = expansion_sum(2, t1, 2, t2, s12);
  int n34 = expansion_sum(2, t3, 2, t4, s34);
  int n56 = expansion_sum(2, t5, 2, t6, s56);
  int n1234 = expansion_sum(n12, s12, n34, s34, s1234);
  int ndet = expansion_sum(n1234, s1234, n56, s56, det);

  double top = det[ndet - 1];
  return (top > 0.0) - (top < 0.0);
}

constexpr double kOrientationFilter = 1e-12;

// Interval [lo, hi] of the projections of segment s onto coordinate axis.
inline void axis_range(const Segment& s, bool use_x, double& lo, double& hi) {
  double p = use_x ? s.a.x : s.a.y;
  double q = use_x ? s.b.x : s.b.y;
  lo = std::min(p, q);
  hi = std::max(p, q);
}

}  // namespace

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  double detleft = (b.x - a.x) * (c.y - a.y);
  double detright = (b.y - a.y) * (c.x - a.x);
  double det = detleft - detright;
  double detsum = std::fabs(detleft) + std::fabs(detright);
  if (std::fabs(det) > kOrientationFilter * detsum) {
    return (det > 0.0) - (det < 0.0);
  }
  return orientation_exact(a, b, c);
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 ab = b - a;
  double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

SegmentRelation classify_segments(const Segment& s1, const Segment& s2) {
  int o1 = orientation(s1.a, s1.b, s2.a);
  int o2 = orientation(s1.a, s1.b, s2.b);
  int o3 = orientation(s2.a, s2.b, s1.a);
  int o4 = orientation(s2.a, s2.b, s1.b);

  if (o1 * o2 < 0 && o3 * o4 < 0) return SegmentRelation::crossing;

  if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
    // All collinear: degenerate iff the closed overlap has positive length.
    bool use_x = std::fabs(s1.b.x - s1.a.x) >= std::fabs(s1.b.y - s1.a.y);
    double lo1, hi1, lo2, hi2;
    axis_range(s1, use_x, lo1, hi1);
    axis_range(s2, use_x, lo2, hi2);
    if (std::min(hi1, hi2) > std::max(lo1, lo2)) {
      return SegmentRelation::degenerate;
    }
  }
  return SegmentRelation::disjoint;
}

Intersection proper_intersection(const Segment& s1, const Segment& s2) {
  Intersection result;
  result.relation = classify_segments(s1, s2);
  if (result.relation == SegmentRelation::crossing) {
    Vec2 d1 = s1.b - s1.a;
    Vec2 d2 = s2.b - s2.a;
    double t = cross(s2.a - s1.a, d2) / cross(d1, d2);
    result.point = s1.a + t * d1;
  }
  return result;
}

double angle_between_degrees(Vec2 d1, Vec2 d2) {
  double theta = degrees_from_radians(
      std::atan2(std::fabs(cross(d1, d2)), dot(d1, d2)));
  return std::min(theta, 180.0 - theta);
}

CrossingAngle crossing_angle(const Segment& s1, const Segment& s2) {
  CrossingAngle result;
  switch (classify_segments(s1, s2)) {
    case SegmentRelation::crossing:
      result.degrees = angle_between_degrees(s1.b - s1.a, s2.b - s2.a);
      break;
    case SegmentRelation::degenerate:
      result.degenerate = true;
      break;
    case SegmentRelation::disjoint:
      break;
  }
  return result;
}

std::vector<double> angular_gaps(Vec2 center,
                                 const std::vector<Vec2>& neighbors) {
  if (neighbors.size() < 2) return {};
  std::vector<double> angles;
  angles.reserve(neighbors.size());
  for (const Vec2& p : neighbors) {
    if (p == center) {
      throw std::invalid_argument("angular_gaps: neighbor coincides with center");
    }
    Vec2 d = p - center;
    angles.push_back(degrees_from_radians(std::atan2(d.y, d.x)));
  }
  std::sort(angles.begin(), angles.end());
  std::vector<double> gaps;
  gaps.reserve(angles.size());
  for (std::size_t i = 1; i < angles.size(); ++i) {
    gaps.push_back(angles[i] - angles[i - 1]);
  }
  gaps.push_back(360.0 - (angles.back() - angles.front()));
  return gaps;
}

}  // namespace crossres
