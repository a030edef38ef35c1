#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "grasp_gauge/sizing.hpp"
#include "helpers.hpp"

using namespace gg;
using gg::testing::profile_with_range;

TEST_CASE("relative size follows (d - m) / (M - m)") {
  const auto p0 = profile_with_range(0, 100);
  CHECK(relative_size(p0, GraspKind::Precision, 25).fraction == doctest::Approx(0.25));

  const auto p = profile_with_range(20, 100);
  CHECK(relative_size(p, GraspKind::Precision, 20).fraction == doctest::Approx(0.0));
  // Oracle: one-line arithmetic, (110 - 20) / (100 - 20).
  CHECK(relative_size(p, GraspKind::Precision, 110).fraction == doctest::Approx(90.0 / 80.0));
}

TEST_CASE("relative size error cases") {
  auto p = profile_with_range(20, 100);
  p.precision.reset();
  CHECK_THROWS_AS(relative_size(p, GraspKind::Precision, 50), DomainError);

  auto q = profile_with_range(20, 100);
  for (auto& s : q.precision->samples) s.span = 50;
  CHECK_THROWS_AS(relative_size(q, GraspKind::Precision, 50), DomainError);
}

TEST_CASE("classification boundaries") {
  const auto cls = [](double f) { return classify(RelativeSize{f, 0, 100}); };
  CHECK(cls(0.25) == SizeClass::Small);
  CHECK(cls(0.50) == SizeClass::Medium);
  CHECK(cls(0.75) == SizeClass::Large);
  CHECK(cls(0.70) == SizeClass::Large);   // 70+% includes 70%
  CHECK(cls(-0.01) == SizeClass::TooSmall);
  CHECK(cls(0.0) == SizeClass::Small);
  CHECK(cls(0.30) == SizeClass::Small);
  CHECK(cls(1.0) == SizeClass::Large);
  CHECK(cls(1.01) == SizeClass::TooLarge);
}

TEST_CASE("object_dimension_for inverts relative_size") {
  const auto p0 = profile_with_range(0, 100);
  CHECK(object_dimension_for(p0, 0.5) == doctest::Approx(50));
  CHECK(object_dimension_for(p0, 0.0) == doctest::Approx(0));

  const auto p = profile_with_range(20, 100);
  const double d = object_dimension_for(p, 0.75);
  CHECK(d == doctest::Approx(80));
  CHECK(relative_size(p, GraspKind::Precision, d).fraction == doctest::Approx(0.75));
}

TEST_CASE("classify_object gates height through the width range") {
  auto p = profile_with_range(0, 100);
  p.width = {30, 90, false};

  ObjectSpec obj{"short thing", std::nullopt, ObjectShape::Cylinder, 25, 20};
  CHECK(!classify_object(p, obj).height_ok);
  CHECK(classify_object(p, obj).size == SizeClass::Small);

  obj.height = 50;
  CHECK(classify_object(p, obj).height_ok);

  obj.height = 900;  // 10x max_width
  CHECK(!classify_object(p, obj).height_ok);
  p.width.object_height_unbounded = true;
  CHECK(classify_object(p, obj).height_ok);

  // Object exactly at the open span is at the grasp boundary: Large.
  obj.grasp_diameter = 100;
  CHECK(classify_object(p, obj).size == SizeClass::Large);
}

TEST_CASE("class boundaries are affine invariant") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.01, 400.0);
  std::uniform_real_distribution<double> frac(-0.5, 1.5);
  for (int i = 0; i < 200; ++i) {
    double m = dist(rng);
    double M = m + dist(rng);
    const double f = frac(rng);
    const double d = m + f * (M - m);
    const auto base = classify(relative_size(profile_with_range(m, M), GraspKind::Precision, d));
    for (double k : {0.5, 2.0, 7.25}) {
      const auto scaled =
          classify(relative_size(profile_with_range(m * k, M * k), GraspKind::Precision, d * k));
      CHECK(scaled == base);
    }
  }
}

TEST_CASE("classification is monotone in object dimension") {
  const auto p = profile_with_range(15, 90);
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> dim(0.0, 150.0);
  for (int i = 0; i < 500; ++i) {
    double a = dim(rng);
    double b = dim(rng);
    if (a > b) std::swap(a, b);
    const auto ca = classify(relative_size(p, GraspKind::Precision, a));
    const auto cb = classify(relative_size(p, GraspKind::Precision, b));
    CHECK(static_cast<int>(ca) <= static_cast<int>(cb));
  }
}

TEST_CASE("class is constant on the interior of each class interval") {
  const auto p = profile_with_range(10, 110);
  struct Interval {
    double lo, hi;
    SizeClass expected;
  };
  const Interval intervals[] = {
      {0.01, 0.29, SizeClass::Small},
      {0.31, 0.69, SizeClass::Medium},
      {0.71, 0.99, SizeClass::Large},
  };
  for (const auto& iv : intervals) {
    for (int i = 0; i <= 20; ++i) {
      const double f = iv.lo + (iv.hi - iv.lo) * i / 20.0;
      const double d = object_dimension_for(p, f);
      CHECK(classify(relative_size(p, GraspKind::Precision, d)) == iv.expected);
    }
  }
}
