#include <doctest.h>

#include <cmath>
#include <random>

#include "cq/geometry.hpp"
#include "test_util.hpp"

using namespace cq;

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

TEST_CASE("squared_distance basics") {
  CHECK(squared_distance({0, 0}, {0, 0}) == 0.0);
  CHECK(squared_distance({0, 0}, {0.25, kSqrt3 / 4}) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(squared_distance({2, 0}, {1.75, kSqrt3 / 4}) == doctest::Approx(0.25).epsilon(1e-15));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ud(-3.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const Point2 p{ud(rng), ud(rng)}, q{ud(rng), ud(rng)};
    const double d = squared_distance(p, q);
    CHECK(d == squared_distance(q, p));
    CHECK(d >= 0.0);
    if (!(p == q)) CHECK(d > 0.0);
  }
  const Point2 p{ud(rng), ud(rng)};
  CHECK(squared_distance(p, p) == 0.0);
}

TEST_CASE("normal_foot on the canonical sides") {
  const TriangleConfig cfg = cqtest::canon();
  CHECK(normal_foot(cfg.point(Side::S1, 0.125), cfg) == doctest::Approx(0.5).epsilon(1e-15));
  // b = 15/8 corresponds to param 2 - b = 1/8; the foot is 4b - 6 = 3/2.
  CHECK(normal_foot(cfg.point(Side::S2, 0.125), cfg) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(normal_foot(cfg.point(Side::S1, 0.0), cfg) == 0.0);

  // Monotone increasing in the parameter along each side (foot vs abscissa
  // moves with the parameter on S1 and against it on S2).
  for (Side s : {Side::S1, Side::S2}) {
    double prev = normal_foot(cfg.point(s, 0.0), cfg);
    for (int i = 1; i <= 50; ++i) {
      const double cur = normal_foot(cfg.point(s, i / 50.0), cfg);
      if (s == Side::S1) CHECK(cur > prev);
      else CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("feasible windows") {
  const TriangleConfig cfg = cqtest::canon();
  const ParamWindow w1 = feasible_param_window(Side::S1, cfg);
  CHECK(w1.lo == 0.0);
  CHECK(w1.hi == doctest::Approx(0.5).epsilon(1e-15));
  const ParamWindow w2 = feasible_param_window(Side::S2, cfg);
  CHECK(w2.lo == 0.0);
  // In b-coordinates the window is [3/2, 2].
  CHECK(cfg.point(Side::S2, w2.hi).abscissa() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(cfg.point(Side::S2, w2.lo).abscissa() == doctest::Approx(2.0).epsilon(1e-15));

  // Apex over a base endpoint: the S1 window collapses but stays well-ordered.
  const TriangleConfig squeezed(2.0, Point2{0.0, 1.0});
  const ParamWindow c1 = feasible_param_window(Side::S1, squeezed);
  CHECK(c1.lo <= c1.hi);
  CHECK(c1.hi == 0.0);
  const ParamWindow c2 = feasible_param_window(Side::S2, squeezed);
  CHECK(c2.lo <= c2.hi);
  CHECK(c2.hi > 0.0);
}

TEST_CASE("bisector_cut canonical forms") {
  const TriangleConfig cfg = cqtest::canon();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ud(0.0, 1.0);

  // Same side: d = 2(a1 + a2).
  for (int i = 0; i < 200; ++i) {
    double a1 = ud(rng), a2 = ud(rng);
    if (a1 == a2) continue;
    const auto cut = bisector_cut(Point2{a1, a1 * kSqrt3}, Point2{a2, a2 * kSqrt3});
    REQUIRE(cut.has_value());
    CHECK(*cut == doctest::Approx(2 * (a1 + a2)).epsilon(1e-13));
  }

  // The symmetric two-point codebook cuts at the midpoint of the base.
  const auto mid = bisector_cut(Point2{0.125, kSqrt3 / 8}, Point2{1.875, kSqrt3 / 8});
  REQUIRE(mid.has_value());
  CHECK(*mid == doctest::Approx(1.0).epsilon(1e-15));

  // Cross side: d = 2(a^2 - b^2 + 3b - 3)/(a - b).
  for (int i = 0; i < 200; ++i) {
    const double a = 0.5 * ud(rng);
    const double b = 1.5 + 0.5 * ud(rng);
    const auto cut = bisector_cut(Point2{a, a * kSqrt3}, Point2{b, -kSqrt3 * (b - 2)});
    REQUIRE(cut.has_value());
    const double expected = 2 * (a * a - b * b + 3 * b - 3) / (a - b);
    CHECK(*cut == doctest::Approx(expected).epsilon(1e-12));
  }

  // Equal abscissas: the bisector never crosses the base.
  CHECK(!bisector_cut(Point2{1.0, 0.5}, Point2{1.0, 1.5}).has_value());
  CHECK(!bisector_cut(Point2{0.7, 0.7 * kSqrt3}, Point2{0.7, -kSqrt3 * (0.7 - 2)}).has_value());
}

TEST_CASE("bisector_cut symmetry and residual") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> ud(-2.0, 4.0);
  for (int i = 0; i < 2000; ++i) {
    const Point2 p{ud(rng), ud(rng)}, q{ud(rng), ud(rng)};
    const auto c1 = bisector_cut(p, q);
    const auto c2 = bisector_cut(q, p);
    CHECK(c1.has_value() == c2.has_value());
    if (!c1) continue;
    CHECK(*c1 == doctest::Approx(*c2).epsilon(1e-13));
    const Point2 base{*c1, 0.0};
    CHECK(std::abs(squared_distance(p, base) - squared_distance(q, base)) <= 1e-12);
  }
}

TEST_CASE("reflection symmetry of the canonical config") {
  const TriangleConfig cfg = cqtest::canon();
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const Side s = ud(rng) < 0.5 ? Side::S1 : Side::S2;
    const ConstraintPoint cp = cfg.point(s, ud(rng));
    const ConstraintPoint mir = cfg.mirrored(cp);
    CHECK(mir.position.x == doctest::Approx(2.0 - cp.position.x).epsilon(1e-15));
    CHECK(mir.position.y == doctest::Approx(cp.position.y).epsilon(1e-15));
    CHECK(normal_foot(mir, cfg) == doctest::Approx(2.0 - normal_foot(cp, cfg)).epsilon(1e-13));

    const ConstraintPoint cq2 = cfg.point(s == Side::S1 ? Side::S2 : Side::S1, ud(rng));
    const auto cut = bisector_cut(cp.position, cq2.position);
    const auto mcut = bisector_cut(mir.position, cfg.mirrored(cq2).position);
    REQUIRE(cut.has_value() == mcut.has_value());
    if (cut) CHECK(*mcut == doctest::Approx(2.0 - *cut).epsilon(1e-12));
  }
}

TEST_CASE("config validation") {
  CHECK_THROWS_AS(TriangleConfig(0.0, Point2{1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(TriangleConfig(2.0, Point2{1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(TriangleConfig(2.0, Point2{1, -1}), std::invalid_argument);
  CHECK(cqtest::canon().is_canonical());
  CHECK(!TriangleConfig(2.0, Point2{1, 1}).is_canonical());
  CHECK_THROWS_AS(cqtest::canon().point(Side::S1, 1.5), std::invalid_argument);
}
