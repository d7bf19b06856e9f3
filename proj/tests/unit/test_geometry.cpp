#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "crossres/geometry.hpp"
#include "crossres/rng.hpp"
#include "../support/oracles.hpp"

using namespace crossres;

TEST_CASE("proper intersection of a symmetric X") {
  Segment s1{{0, 0}, {2, 2}};
  Segment s2{{0, 2}, {2, 0}};
  Intersection hit = proper_intersection(s1, s2);
  REQUIRE(hit.relation == SegmentRelation::crossing);
  CHECK(hit.point.x == doctest::Approx(1.0));
  CHECK(hit.point.y == doctest::Approx(1.0));
}

TEST_CASE("shared endpoint is not a proper intersection") {
  Segment s1{{0, 0}, {1, 0}};
  Segment s2{{1, 0}, {2, 1}};
  CHECK(proper_intersection(s1, s2).relation == SegmentRelation::disjoint);
}

TEST_CASE("T-touch is not a proper intersection") {
  Segment s1{{0, 0}, {4, 0}};
  Segment s2{{2, 0}, {2, 3}};
  CHECK(classify_segments(s1, s2) == SegmentRelation::disjoint);
}

TEST_CASE("collinear overlap is degenerate") {
  Segment s1{{0, 0}, {4, 0}};
  Segment s2{{1, 0}, {3, 0}};
  CHECK(classify_segments(s1, s2) == SegmentRelation::degenerate);

  // collinear but only touching in one point: not an overlap
  Segment s3{{4, 0}, {6, 0}};
  CHECK(classify_segments(s1, s3) == SegmentRelation::disjoint);

  Segment s4{{5, 0}, {7, 0}};
  CHECK(classify_segments(s1, s4) == SegmentRelation::disjoint);
}

TEST_CASE("crossing angles of known configurations") {
  CHECK(*crossing_angle({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}).degrees ==
        doctest::Approx(90.0));
  CHECK(*crossing_angle({{0, 0}, {2, 0}}, {{0, -1}, {2, 1}}).degrees ==
        doctest::Approx(45.0));
  CHECK_FALSE(crossing_angle({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}).degrees);
  CHECK(crossing_angle({{0, 0}, {4, 0}}, {{1, 0}, {3, 0}}).degenerate);
}

TEST_CASE("crossing angle is symmetric and endpoint-order invariant") {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    Segment s1{{rng.uniform(-5, 5), rng.uniform(-5, 5)},
               {rng.uniform(-5, 5), rng.uniform(-5, 5)}};
    Segment s2{{rng.uniform(-5, 5), rng.uniform(-5, 5)},
               {rng.uniform(-5, 5), rng.uniform(-5, 5)}};
    CrossingAngle a = crossing_angle(s1, s2);
    CrossingAngle b = crossing_angle(s2, s1);
    REQUIRE(a.degrees.has_value() == b.degrees.has_value());
    if (a.degrees) {
      CHECK(*a.degrees == *b.degrees);  // exact symmetry
      CrossingAngle c = crossing_angle({s1.b, s1.a}, s2);
      REQUIRE(c.degrees);
      CHECK(*c.degrees == doctest::Approx(*a.degrees).epsilon(1e-12));
    }
  }
}

TEST_CASE("crossing angle is invariant under joint rotation and translation") {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Segment s1{{rng.uniform(-5, 5), rng.uniform(-5, 5)},
               {rng.uniform(-5, 5), rng.uniform(-5, 5)}};
    Segment s2{{rng.uniform(-5, 5), rng.uniform(-5, 5)},
               {rng.uniform(-5, 5), rng.uniform(-5, 5)}};
    CrossingAngle base = crossing_angle(s1, s2);
    if (!base.degrees) continue;

    double phi = rng.uniform(0, 2 * M_PI);
    Vec2 shift{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    auto transform = [&](Vec2 p) {
      return Vec2{p.x * std::cos(phi) - p.y * std::sin(phi) + shift.x,
                  p.x * std::sin(phi) + p.y * std::cos(phi) + shift.y};
    };
    CrossingAngle moved = crossing_angle(
        {transform(s1.a), transform(s1.b)}, {transform(s2.a), transform(s2.b)});
    REQUIRE(moved.degrees);
    CHECK(std::fabs(*moved.degrees - *base.degrees) < 1e-9);
  }
}

TEST_CASE("intersection and angle agree with the oracle on random pairs") {
  Rng rng(13);
  for (int i = 0; i < 20000; ++i) {
    Segment s1{{rng.uniform(-1, 1), rng.uniform(-1, 1)},
               {rng.uniform(-1, 1), rng.uniform(-1, 1)}};
    Segment s2{{rng.uniform(-1, 1), rng.uniform(-1, 1)},
               {rng.uniform(-1, 1), rng.uniform(-1, 1)}};
    oracle::Relation expected = oracle::classify(s1, s2);
    SegmentRelation got = classify_segments(s1, s2);
    REQUIRE((got == SegmentRelation::crossing) ==
            (expected == oracle::Relation::crossing));
    auto want_angle = oracle::crossing_angle(s1, s2);
    CrossingAngle have = crossing_angle(s1, s2);
    REQUIRE(want_angle.has_value() == have.degrees.has_value());
    if (want_angle) {
      CHECK(std::fabs(*want_angle - *have.degrees) < 1e-9);
    }
  }
}

TEST_CASE("orientation resolves one-ulp perturbations exactly") {
  Vec2 a{1.25, 2.5};
  Vec2 b{3.75, 7.5};
  Vec2 c{8.75, 17.5};  // a + 3*(b-a), exactly representable
  CHECK(orientation(a, b, c) == 0);
  Vec2 up{c.x, std::nextafter(c.y, 1e30)};
  Vec2 down{c.x, std::nextafter(c.y, -1e30)};
  CHECK(orientation(a, b, up) == 1);
  CHECK(orientation(a, b, down) == -1);
}

TEST_CASE("angular gaps of a right-angle cross") {
  std::vector<Vec2> neighbors{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  auto gaps = angular_gaps({0, 0}, neighbors);
  REQUIRE(gaps.size() == 4);
  for (double g : gaps) CHECK(g == doctest::Approx(90.0));
}

TEST_CASE("angular gaps of a straight path") {
  auto gaps = angular_gaps({0, 0}, {{1, 0}, {-1, 0}});
  REQUIRE(gaps.size() == 2);
  CHECK(gaps[0] == doctest::Approx(180.0));
  CHECK(gaps[1] == doctest::Approx(180.0));
}

TEST_CASE("angular gaps with a sliver direction pair") {
  double eps = 1e-3;
  auto gaps = angular_gaps({0, 0}, {{1, 0}, {1, eps}});
  REQUIRE(gaps.size() == 2);
  double sum = gaps[0] + gaps[1];
  CHECK(std::fabs(sum - 360.0) < 1e-6);
  CHECK(std::min(gaps[0], gaps[1]) < 0.1);
  CHECK(std::max(gaps[0], gaps[1]) > 359.9);
}

TEST_CASE("angular gaps: fewer than two neighbors and bad input") {
  CHECK(angular_gaps({0, 0}, {}).empty());
  CHECK(angular_gaps({0, 0}, {{1, 1}}).empty());
  CHECK_THROWS_AS(angular_gaps({1, 1}, {{1, 1}, {2, 2}}), std::invalid_argument);
}

TEST_CASE("angular gaps sum to 360 and ignore neighbor order") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    int k = 2 + static_cast<int>(rng.uniform_index(8));
    std::vector<Vec2> neighbors;
    for (int i = 0; i < k; ++i) {
      neighbors.push_back({rng.uniform(-3, 3), rng.uniform(-3, 3)});
    }
    bool coincident = false;
    for (const Vec2& p : neighbors) {
      if (p == Vec2{0, 0}) coincident = true;
    }
    if (coincident) continue;

    auto gaps = angular_gaps({0, 0}, neighbors);
    double sum = 0;
    for (double g : gaps) sum += g;
    CHECK(std::fabs(sum - 360.0) < 1e-6);

    std::rotate(neighbors.begin(), neighbors.begin() + 1, neighbors.end());
    auto rotated = angular_gaps({0, 0}, neighbors);
    REQUIRE(rotated.size() == gaps.size());
    for (std::size_t i = 0; i < gaps.size(); ++i) {
      CHECK(rotated[i] == gaps[i]);  // sorting makes order canonical
    }
  }
}
