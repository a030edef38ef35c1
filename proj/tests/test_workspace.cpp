#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "grasp_gauge/sizing.hpp"
#include "grasp_gauge/workspace.hpp"
#include "helpers.hpp"

using namespace gg;
using gg::testing::sample_profile;

namespace {

SpanDepthCurve make_curve(std::vector<SpanDepthCurve::Point> pts) {
  SpanDepthCurve c;
  c.points = std::move(pts);
  return c;
}

PowerCylindricalSet sample_cylindrical_set() {
  const auto pose = [](PoseLabel label, double inner_s, double mid_s, double line_s,
                       double line_d) {
    PowerCylindricalPose pose;
    pose.pose = label;
    pose.sections = {{SectionLine::Inner, inner_s, 10},
                     {SectionLine::Mid, mid_s, 40},
                     {SectionLine::SpanLine, line_s, line_d}};
    return pose;
  };
  PowerCylindricalSet set;
  set.poses = {pose(PoseLabel::open(), 90, 100, 95, 70),
               pose(PoseLabel::intermediate(1), 60, 70, 65, 75),
               pose(PoseLabel::closed(), 10, 15, 12, 80)};
  return set;
}

PowerSphericalSet sample_spherical_set() {
  PowerSphericalSet set;
  set.poses = {{PoseLabel::open(), {60, 110, 70}},
               {PoseLabel::intermediate(1), {50, 80, 50}},
               {PoseLabel::closed(), {40, 45, 35}}};
  return set;
}

}  // namespace

TEST_CASE("build_precision_curve sorts samples by span") {
  const auto p = sample_profile();  // spans 100, 50, 0
  const auto curve = build_precision_curve(*p.precision);
  REQUIRE(curve.points.size() == 3);
  CHECK(curve.points[0].span == 0);
  CHECK(curve.points[1].span == 50);
  CHECK(curve.points[2].span == 100);
  CHECK(curve.source == CurveSource::Measured);
}

TEST_CASE("flat parallel-jaw style samples give a constant-depth curve") {
  PrecisionSet set;
  set.samples = {{PoseLabel::open(), 85, 40},
                 {PoseLabel::intermediate(1), 42, 40},
                 {PoseLabel::closed(), 0, 40}};
  const auto curve = build_precision_curve(set);
  for (const auto& pt : curve.points) CHECK(pt.depth == 40);
}

TEST_CASE("interpolate_depth is exact at knots and linear between them") {
  const auto curve = make_curve({{0, 80}, {50, 75}, {100, 60}});
  CHECK(interpolate_depth(curve, 0) == 80);
  CHECK(interpolate_depth(curve, 50) == 75);
  CHECK(interpolate_depth(curve, 100) == 60);
  CHECK(interpolate_depth(curve, 75) == doctest::Approx(67.5));  // (75 + 60) / 2
  CHECK_THROWS_AS(interpolate_depth(curve, 120), DomainError);
  CHECK_THROWS_AS(interpolate_depth(curve, -1), DomainError);
}

TEST_CASE("interpolation is continuous across knots") {
  const auto curve = make_curve({{0, 80}, {50, 75}, {100, 60}});
  const double eps = 1e-9;
  for (double knot : {50.0}) {
    const double lo = interpolate_depth(curve, knot - eps);
    const double hi = interpolate_depth(curve, knot + eps);
    CHECK(std::abs(lo - hi) < 1e-6);
  }
}

TEST_CASE("graspable_area matches the trapezoid rule") {
  CHECK(graspable_area(make_curve({{0, 40}, {85, 40}})) == doctest::Approx(3400));
  CHECK(graspable_area(make_curve({{0, 80}, {100, 60}})) == doctest::Approx(7000));
  CHECK(graspable_area(make_curve({{10, 55}})) == 0);
}

TEST_CASE("area is invariant to inserting a collinear point") {
  const auto base = make_curve({{0, 80}, {100, 60}});
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> pos(0.01, 99.99);
  for (int i = 0; i < 100; ++i) {
    const double s = pos(rng);
    const auto split = make_curve({{0, 80}, {s, interpolate_depth(base, s)}, {100, 60}});
    CHECK(std::abs(graspable_area(split) - graspable_area(base)) < 1e-9);
  }
}

TEST_CASE("area is additive over span subdivision") {
  const auto curve = make_curve({{0, 80}, {40, 70}, {100, 60}});
  const auto left = make_curve({{0, 80}, {40, 70}});
  const auto right = make_curve({{40, 70}, {100, 60}});
  CHECK(graspable_area(curve) == doctest::Approx(graspable_area(left) + graspable_area(right)));
}

TEST_CASE("fits_precision boundaries and limiting constraints") {
  auto p = sample_profile();  // m = 0, M = 100
  p.width = {30, 90, false};

  ObjectSpec obj{"thing", std::nullopt, ObjectShape::Cylinder, 0, 50};
  auto fit = fits_precision(p, obj);
  CHECK(fit.fits);
  CHECK(*fit.pose_fraction == doctest::Approx(0.0));

  obj.grasp_diameter = 120;
  fit = fits_precision(p, obj);
  CHECK(!fit.fits);
  CHECK(fit.limiting_constraint == "span");

  obj.grasp_diameter = 50;
  obj.height = 10;  // below min_width
  fit = fits_precision(p, obj);
  CHECK(!fit.fits);
  CHECK(fit.limiting_constraint == "width");
}

TEST_CASE("fits_precision agrees with sizing classes") {
  auto p = sample_profile();
  p.width = {30, 90, true};
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dim(0.1, 140.0);
  std::uniform_real_distribution<double> height(1.0, 200.0);
  for (int i = 0; i < 300; ++i) {
    ObjectSpec obj{"rand", std::nullopt, ObjectShape::Cylinder, dim(rng), height(rng)};
    const auto cls = classify_object(p, obj);
    const bool expected = cls.size != SizeClass::TooSmall && cls.size != SizeClass::TooLarge &&
                          cls.height_ok;
    CHECK(fits_precision(p, obj).fits == expected);
  }
}

TEST_CASE("cylindrical power fit uses the inscribed-circle test") {
  const auto set = sample_cylindrical_set();
  ObjectSpec obj{"cyl", std::nullopt, ObjectShape::Cylinder, 0, 50};

  // Oracle: exhaustive evaluation of the postcondition predicate per pose.
  const auto oracle_fits = [&](double d) {
    for (const auto& pose : set.poses) {
      const double min_span = std::min({pose.section(SectionLine::Inner)->span,
                                        pose.section(SectionLine::Mid)->span,
                                        pose.section(SectionLine::SpanLine)->span});
      if (d <= min_span && d <= pose.section(SectionLine::SpanLine)->depth) return true;
    }
    return false;
  };

  auto fit = fits_power_cylindrical(set, obj);
  CHECK(fit.fits);
  CHECK(*fit.pose_fraction == doctest::Approx(0.0));  // fits even closed

  obj.grasp_diameter = 95;  // above the open pose's min section span (90)
  CHECK(!fits_power_cylindrical(set, obj).fits);

  obj.grasp_diameter = 10;  // exactly the closed pose's min section span
  fit = fits_power_cylindrical(set, obj);
  CHECK(fit.fits);
  CHECK(*fit.pose_fraction == doctest::Approx(0.0));

  for (double d : {1.0, 9.0, 11.0, 35.0, 59.0, 61.0, 80.0, 91.0, 120.0}) {
    obj.grasp_diameter = d;
    CHECK(fits_power_cylindrical(set, obj).fits == oracle_fits(d));
  }

  obj.shape = ObjectShape::Sphere;
  CHECK_THROWS_AS(fits_power_cylindrical(set, obj), DomainError);
}

TEST_CASE("cylindrical fit region is upward-closed in pose span") {
  const auto set = sample_cylindrical_set();
  // If the object fits at some pose, it fits at every pose with larger
  // section spans (here spans grow strictly toward open).
  for (double d = 1; d <= 95; d += 1.0) {
    ObjectSpec obj{"cyl", std::nullopt, ObjectShape::Cylinder, d, 50};
    bool seen_fit = false;
    for (auto it = set.poses.rbegin(); it != set.poses.rend(); ++it) {
      const double min_span = std::min({it->section(SectionLine::Inner)->span,
                                        it->section(SectionLine::Mid)->span,
                                        it->section(SectionLine::SpanLine)->span});
      const bool here = d <= min_span && d <= it->section(SectionLine::SpanLine)->depth;
      if (seen_fit && d <= 70) CHECK(here);  // depth cap kicks in above 70
      seen_fit = seen_fit || here;
    }
    if (seen_fit) CHECK(fits_power_cylindrical(set, obj).fits);
  }
}

TEST_CASE("spherical power fit and enclosure") {
  const auto set = sample_spherical_set();
  ObjectSpec obj{"ball", std::nullopt, ObjectShape::Sphere, 30, 30};

  // Diameter below every distal diameter: fits somewhere but never enclosed.
  auto res = fits_power_spherical(set, obj);
  CHECK(res.fit.fits);
  CHECK(!res.enclosed);

  obj.grasp_diameter = 120;  // above max widest
  CHECK(!fits_power_spherical(set, obj).fit.fits);

  obj.grasp_diameter = 90;  // between distal (70) and widest (110) at open
  res = fits_power_spherical(set, obj);
  CHECK(res.fit.fits);
  CHECK(res.enclosed);

  obj.shape = ObjectShape::Box;
  CHECK_THROWS_AS(fits_power_spherical(set, obj), DomainError);
}

TEST_CASE("compare_profiles") {
  const auto derived = make_curve({{0, 80}, {50, 75}, {100, 60}});

  SUBCASE("identical curves pass with zero error") {
    const auto r = compare_profiles(derived, derived, 0.5);
    CHECK(r.pass);
    CHECK(r.max_abs_depth_error == 0);
    CHECK(r.span_range_mismatch == 0);
  }

  SUBCASE("constant 2 mm offset fails a 1 mm tolerance") {
    auto measured = derived;
    for (auto& p : measured.points) p.depth += 2;
    const auto r = compare_profiles(derived, measured, 1.0);
    CHECK(!r.pass);
    CHECK(r.max_abs_depth_error == doctest::Approx(2.0));
  }

  SUBCASE("disjoint ranges throw") {
    const auto other = make_curve({{150, 40}, {200, 35}});
    CHECK_THROWS_AS(compare_profiles(derived, other, 1.0), DomainError);
  }
}
