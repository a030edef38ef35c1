#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grasp_gauge/model.hpp"

namespace gg {

enum class CurveSource { Measured, Derived };

/// A piecewise-linear span -> depth map, the continuous approximation of the
/// graspable region as the hand closes.
struct SpanDepthCurve {
  struct Point {
    Millimeters span = 0;
    Millimeters depth = 0;

    bool operator==(const Point&) const = default;
  };

  std::vector<Point> points;  // strictly increasing span
  CurveSource source = CurveSource::Measured;

  Millimeters min_span() const { return points.front().span; }
  Millimeters max_span() const { return points.back().span; }
};

struct FitResult {
  bool fits = false;
  // 0 = closed, 1 = open; present iff fits.
  std::optional<double> pose_fraction;
  std::string limiting_constraint;  // first failed check when !fits
};

struct SphericalFitResult {
  FitResult fit;
  bool enclosed = false;
};

struct CurveComparison {
  Millimeters max_abs_depth_error = 0;
  Millimeters span_range_mismatch = 0;
  bool pass = false;
};

/// Sorts the validated set's samples by span. source = Measured.
SpanDepthCurve build_precision_curve(const PrecisionSet& set);

/// Piecewise-linear interpolation, exact at sample points.
/// Throws DomainError{OutOfRange} outside the curve's span extent.
Millimeters interpolate_depth(const SpanDepthCurve& curve, Millimeters span);

/// Trapezoid-rule area (mm^2) under the curve between min and max span.
double graspable_area(const SpanDepthCurve& curve);

FitResult fits_precision(const HandProfile& profile, const ObjectSpec& object);

FitResult fits_power_cylindrical(const PowerCylindricalSet& set, const ObjectSpec& object);

SphericalFitResult fits_power_spherical(const PowerSphericalSet& set, const ObjectSpec& object);

/// Evaluates measured depths against the derived curve at the measured span
/// knots inside the overlapping span range.
/// Throws DomainError{DisjointSpanRanges} when the ranges do not overlap.
CurveComparison compare_profiles(const SpanDepthCurve& derived, const SpanDepthCurve& measured,
                                 Millimeters tolerance);

}  // namespace gg
