#include <doctest.h>

#include <cmath>

#include "cq/closed_form.hpp"
#include "cq/errors.hpp"
#include "cq/quantizer.hpp"
#include "test_util.hpp"

using namespace cq;
using cqtest::canon;

namespace {

const double kSqrt13 = std::sqrt(13.0);
const double kSqrt109 = std::sqrt(109.0);
const double kSqrt21037 = std::sqrt(21037.0);

// Paper values for the small optima, in the forms the propositions state.
const double kV3 = 637.0 / (12.0 * (101.0 + 28.0 * kSqrt13));
const double kV5 = 5341.0 / (12.0 * (877.0 + 84.0 * kSqrt109));
const double kV7 = 21037.0 / (288.0 * kSqrt21037 + 41772.0);

}  // namespace

TEST_CASE("uv reproduces the tabulated gaps") {
  const auto p6 = uv({3, 3});
  CHECK(p6.u == doctest::Approx(1.0 / 12).epsilon(1e-15));
  CHECK(p6.v == doctest::Approx(1.0 / 12).epsilon(1e-15));

  const auto p7 = uv({4, 3});
  CHECK(p7.u == doctest::Approx(1.0 / (2.0 * (3.0 * std::sqrt(193.0 / 109.0) + 4.0))).epsilon(1e-15));
  CHECK(p7.v == doctest::Approx(1.0 / (8.0 * std::sqrt(109.0 / 193.0) + 6.0)).epsilon(1e-15));

  // (1, 1) must reproduce the two-point codebook a1 = 1/8, b1 = 15/8.
  const auto p2 = uv({1, 1});
  CHECK(p2.u == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(p2.v == doctest::Approx(0.25).epsilon(1e-15));

  CHECK_THROWS_AS(uv({0, 2}), std::invalid_argument);
}

TEST_CASE("vn reproduces the paper errors") {
  CHECK(vn({3, 3}).value == doctest::Approx(109.0 / 432).epsilon(1e-15));
  CHECK(vn({4, 3}).value == doctest::Approx(kV7).epsilon(1e-15));
  CHECK(vn({2, 2}).value == doctest::Approx(49.0 / 192).epsilon(1e-15));
  CHECK(vn({1, 1}).value == doctest::Approx(13.0 / 48).epsilon(1e-15));

  // The three-point value, rationalized: (101 - 28 sqrt(13))(101 + 28 sqrt(13)) = 9,
  // so the paper's (637/108)(101 - 28 sqrt13) equals 637/(12(101 + 28 sqrt13)).
  CHECK(std::abs((101.0 - 28.0 * kSqrt13) * (101.0 + 28.0 * kSqrt13) - 9.0) <= 1e-12);
  const double paper_form_v3 = (637.0 / 108.0) * (101.0 - 28.0 * kSqrt13);
  CHECK(vn({2, 1}).value == doctest::Approx(kV3).epsilon(1e-14));
  CHECK(paper_form_v3 == doctest::Approx(kV3).epsilon(1e-14));

  // Same identity for five points: (877 - 84 sqrt109)(877 + 84 sqrt109) = 25.
  CHECK(std::abs((877.0 - 84.0 * kSqrt109) * (877.0 + 84.0 * kSqrt109) - 25.0) <= 1e-9);
  CHECK(vn({3, 2}).value == doctest::Approx(kV5).epsilon(1e-14));
  CHECK((5341.0 / 300.0) * (877.0 - 84.0 * kSqrt109) == doctest::Approx(kV5).epsilon(1e-12));

  // Balanced allocations collapse to the corollary form.
  for (int k = 1; k <= 100; ++k)
    CHECK(vn({k, k}).value ==
          doctest::Approx((12.0 + 1.0 / (double(k) * k)) / 48.0).epsilon(1e-15));
}

TEST_CASE("vn is exactly symmetric") {
  for (int l = 1; l <= 20; ++l)
    for (int m = 1; m <= 20; ++m) CHECK(vn({l, m}).value == vn({m, l}).value);
}

TEST_CASE("vn_gap is the rationalized excess over 1/4") {
  for (int k = 1; k <= 100; ++k)
    CHECK(vn_gap({k, k}) == doctest::Approx(1.0 / (48.0 * k * k)).epsilon(1e-15));
  for (int l = 1; l <= 12; ++l)
    for (int m = 1; m <= 12; ++m)
      CHECK(vn_gap({l, m}) == doctest::Approx(vn({l, m}).value - 0.25).epsilon(1e-9));
  // Where direct subtraction sheds digits the rationalized form must not.
  CHECK(vn_gap({100, 99}) > 0.0);
  CHECK(std::abs(vn_gap({100, 99}) - (vn({100, 99}).value - 0.25)) < 1e-13);
}

TEST_CASE("single-side error curve") {
  CHECK(single_side_vn(1).value == doctest::Approx(13.0 / 12).epsilon(1e-15));
  CHECK(single_side_vn(2).value == doctest::Approx(49.0 / 48).epsilon(1e-15));
  CHECK(single_side_vn(3).value == doctest::Approx(109.0 / 108).epsilon(1e-15));
  // The curve stays above 1, hence above V_3 < 1 for every n.
  for (int n = 1; n <= 400; n += 7) CHECK(single_side_vn(n).value > 1.0);
  CHECK(single_side_vn(1000000).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(kV3 < 1.0);
}

TEST_CASE("build_codebook places progressions") {
  const TriangleConfig cfg = canon();

  const Codebook six = build_codebook({3, 3}, {1.0 / 12, 1.0 / 12}, cfg);
  const double ax[] = {1.0 / 24, 1.0 / 8, 5.0 / 24, 43.0 / 24, 15.0 / 8, 47.0 / 24};
  REQUIRE(six.size() == 6);
  for (int i = 0; i < 6; ++i)
    CHECK(six.points[i].abscissa() == doctest::Approx(ax[i]).epsilon(1e-15));
  CHECK(six.ell == 3);
  CHECK(six.m == 3);

  const Codebook two = build_codebook({1, 1}, uv({1, 1}), cfg);
  CHECK(two.points[0].abscissa() == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(two.points[1].abscissa() == doctest::Approx(1.875).epsilon(1e-15));
  CHECK(two.points[0].position.y == doctest::Approx(std::sqrt(3.0) / 8).epsilon(1e-15));

  // Five points with the remark's gaps u = 7(21 - 2 sqrt109)/10,
  // v = (21 sqrt109 - 218)/10.
  const double u5 = 7.0 * (21.0 - 2.0 * kSqrt109) / 10.0;
  const double v5 = (21.0 * kSqrt109 - 218.0) / 10.0;
  const auto params = uv({3, 2});
  CHECK(params.u == doctest::Approx(u5).epsilon(1e-13));
  CHECK(params.v == doctest::Approx(v5).epsilon(1e-13));
  const Codebook five = build_codebook({3, 2}, {u5, v5}, cfg);
  for (int i = 0; i < 3; ++i)
    CHECK(five.points[i].abscissa() == doctest::Approx((2.0 * (i + 1) - 1.0) * u5 / 2).epsilon(1e-13));
  CHECK(five.points[3].abscissa() == doctest::Approx(2.0 - 3.0 * v5 / 2).epsilon(1e-13));
  CHECK(five.points[4].abscissa() == doctest::Approx(2.0 - v5 / 2).epsilon(1e-13));

  CHECK_THROWS_AS(build_codebook({3, 3}, {0.25, 0.05}, cfg), InfeasibleProgression);
  CHECK_THROWS_AS(build_codebook({3, 3}, {0.05, 0.25}, cfg), InfeasibleProgression);
}

TEST_CASE("best_allocation picks the paper splits") {
  const auto b6 = best_allocation(6);
  CHECK(b6.alloc == Allocation{3, 3});
  CHECK(b6.value.value == doctest::Approx(109.0 / 432).epsilon(1e-15));
  CHECK(!b6.mirror);

  const auto b7 = best_allocation(7);
  CHECK(b7.alloc == Allocation{4, 3});
  CHECK(b7.value.value == doctest::Approx(kV7).epsilon(1e-15));
  CHECK(b7.mirror);

  const auto b2 = best_allocation(2);
  CHECK(b2.alloc == Allocation{1, 1});
  CHECK(b2.value.value == doctest::Approx(13.0 / 48).epsilon(1e-15));

  const auto b1 = best_allocation(1);
  CHECK(b1.alloc == Allocation{1, 0});
  CHECK(b1.value.value == doctest::Approx(13.0 / 12).epsilon(1e-15));
  CHECK(b1.mirror);
}

TEST_CASE("balanced optimum, monotonicity and single-side dominance") {
  double prev = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= 200; ++n) {
    const auto best = best_allocation(n);
    CHECK(best.value.value < prev);
    prev = best.value.value;
    if (n >= 2) {
      CHECK(std::abs(best.alloc.ell - best.alloc.m) <= 1);
      CHECK(single_side_vn(n).value > best.value.value);
    }
  }
}

TEST_CASE("closed form agrees with the exact integrator") {
  const TriangleConfig cfg = canon();
  for (int l = 1; l <= 30; ++l)
    for (int m = 1; m <= 30; ++m) {
      const Allocation alloc{l, m};
      const double via_cells = distortion(build_codebook(alloc, uv(alloc), cfg), cfg).value;
      CHECK(std::abs(via_cells - vn(alloc).value) <= 1e-12);
    }
}

TEST_CASE("uv is a stationary point of the distortion") {
  const TriangleConfig cfg = canon();
  const double h = 1e-6;
  for (int l = 1; l <= 10; ++l)
    for (int m = 1; m <= 10; ++m) {
      const Allocation alloc{l, m};
      const auto params = uv(alloc);
      const auto f = [&](double u, double v) {
        return distortion(build_codebook(alloc, {u, v}, cfg), cfg).value;
      };
      const double gu = (f(params.u + h, params.v) - f(params.u - h, params.v)) / (2 * h);
      const double gv = (f(params.u, params.v + h) - f(params.u, params.v - h)) / (2 * h);
      CHECK(std::hypot(gu, gv) <= 1e-6);
    }
}

TEST_CASE("single_side_codebook spreads the optimal gap") {
  const TriangleConfig cfg = canon();
  const Codebook cb = single_side_codebook(3, Side::S1, cfg);
  REQUIRE(cb.size() == 3);
  CHECK(cb.points[0].abscissa() == doctest::Approx(1.0 / 12).epsilon(1e-15));
  CHECK(cb.points[1].abscissa() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(cb.points[2].abscissa() == doctest::Approx(5.0 / 12).epsilon(1e-15));
  CHECK(distortion(cb, cfg).value == doctest::Approx(109.0 / 108).epsilon(1e-14));
}
