#include "grasp_gauge/workspace.hpp"

#include <algorithm>
#include <cmath>

#include "grasp_gauge/sizing.hpp"

namespace gg {

SpanDepthCurve build_precision_curve(const PrecisionSet& set) {
  SpanDepthCurve curve;
  curve.source = CurveSource::Measured;
  for (const auto& s : set.samples) {
    curve.points.push_back({s.span, s.depth});
  }
  std::sort(curve.points.begin(), curve.points.end(),
            [](const auto& a, const auto& b) { return a.span < b.span; });
  return curve;
}

Millimeters interpolate_depth(const SpanDepthCurve& curve, Millimeters span) {
  if (curve.points.empty() || span < curve.min_span() || span > curve.max_span()) {
    throw DomainError(ErrorCode::OutOfRange,
                      "span " + std::to_string(span) + " outside curve extent");
  }
  const auto& pts = curve.points;
  auto it = std::lower_bound(pts.begin(), pts.end(), span,
                             [](const SpanDepthCurve::Point& p, Millimeters s) { return p.span < s; });
  if (it->span == span) return it->depth;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double t = (span - lo.span) / (hi.span - lo.span);
  return lo.depth + t * (hi.depth - lo.depth);
}

double graspable_area(const SpanDepthCurve& curve) {
  double area = 0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    area += 0.5 * (a.depth + b.depth) * (b.span - a.span);
  }
  return area;
}

FitResult fits_precision(const HandProfile& profile, const ObjectSpec& object) {
  const RelativeSize r = relative_size(profile, GraspKind::Precision, object.grasp_diameter);
  FitResult out;
  if (object.grasp_diameter < r.hand_min_span || object.grasp_diameter > r.hand_max_span) {
    out.limiting_constraint = "span";
    return out;
  }
  if (!classify_object(profile, object).height_ok) {
    out.limiting_constraint = "width";
    return out;
  }
  out.fits = true;
  out.pose_fraction = r.fraction;
  return out;
}

namespace {

// Pose fraction by the given per-pose measure, normalized so that the closed
// pose maps to 0 and the open pose to 1.
double pose_fraction_at(const std::vector<double>& measure, std::size_t index) {
  const double open_v = measure.front();
  const double closed_v = measure.back();
  if (open_v == closed_v) return 0.0;
  return (measure[index] - closed_v) / (open_v - closed_v);
}

// Poses run Open -> Closed. fit_at[i] tells whether the object fits at pose i;
// clearance[i] is the margin measure that the diameter is tested against.
// Contact happens where the hand, closing from open, first meets the object.
FitResult power_fit(const std::vector<bool>& fit_at, const std::vector<double>& clearance,
                    const std::vector<double>& pose_measure, double diameter,
                    const std::string& limit_name) {
  FitResult out;
  std::optional<std::size_t> tightest_fit;  // closest-to-closed fitting pose
  for (std::size_t i = 0; i < fit_at.size(); ++i) {
    if (fit_at[i]) tightest_fit = i;
  }
  if (!tightest_fit) {
    out.limiting_constraint = limit_name;
    return out;
  }
  out.fits = true;
  const std::size_t i = *tightest_fit;
  if (i + 1 == fit_at.size()) {
    // Fits even fully closed.
    out.pose_fraction = 0.0;
    return out;
  }
  // Interpolate between the tightest fitting pose and the next (non-fitting)
  // pose by where the clearance crosses the diameter.
  const double f_fit = pose_fraction_at(pose_measure, i);
  const double f_no = pose_fraction_at(pose_measure, i + 1);
  const double c_fit = clearance[i];
  const double c_no = clearance[i + 1];
  double t = 1.0;
  if (c_fit != c_no) t = (diameter - c_no) / (c_fit - c_no);
  t = std::clamp(t, 0.0, 1.0);
  out.pose_fraction = std::clamp(f_no + t * (f_fit - f_no), 0.0, 1.0);
  return out;
}

}  // namespace

FitResult fits_power_cylindrical(const PowerCylindricalSet& set, const ObjectSpec& object) {
  if (object.shape != ObjectShape::Cylinder) {
    throw DomainError(ErrorCode::WrongShape, "cylindrical power fit requires a cylinder");
  }
  const double d = object.grasp_diameter;
  std::vector<bool> fit_at;
  std::vector<double> min_section_span;
  std::vector<double> span_line_span;
  bool depth_limited = false;
  for (const auto& pose : set.poses) {
    const auto* inner = pose.section(SectionLine::Inner);
    const auto* mid = pose.section(SectionLine::Mid);
    const auto* line = pose.section(SectionLine::SpanLine);
    const double min_span = std::min({inner->span, mid->span, line->span});
    const bool span_ok = d <= min_span;
    const bool depth_ok = d <= line->depth;
    if (span_ok && !depth_ok) depth_limited = true;
    fit_at.push_back(span_ok && depth_ok);
    min_section_span.push_back(min_span);
    span_line_span.push_back(line->span);
  }
  FitResult out = power_fit(fit_at, min_section_span, span_line_span, d, "section_span");
  if (!out.fits && depth_limited) out.limiting_constraint = "span_line_depth";
  return out;
}

SphericalFitResult fits_power_spherical(const PowerSphericalSet& set, const ObjectSpec& object) {
  if (object.shape != ObjectShape::Sphere) {
    throw DomainError(ErrorCode::WrongShape, "spherical power fit requires a sphere");
  }
  const double d = object.grasp_diameter;
  std::vector<bool> fit_at;
  std::vector<double> widest;
  SphericalFitResult out;
  for (const auto& pose : set.poses) {
    const bool fits_here = d <= pose.section.widest_diameter;
    fit_at.push_back(fits_here);
    widest.push_back(pose.section.widest_diameter);
    if (fits_here && d >= pose.section.distal_diameter) out.enclosed = true;
  }
  out.fit = power_fit(fit_at, widest, widest, d, "widest_diameter");
  return out;
}

CurveComparison compare_profiles(const SpanDepthCurve& derived, const SpanDepthCurve& measured,
                                 Millimeters tolerance) {
  const double lo = std::max(derived.min_span(), measured.min_span());
  const double hi = std::min(derived.max_span(), measured.max_span());
  if (lo > hi) {
    throw DomainError(ErrorCode::DisjointSpanRanges, "curve span ranges do not overlap");
  }
  CurveComparison out;
  for (const auto& p : measured.points) {
    if (p.span < lo || p.span > hi) continue;
    const double err = std::abs(p.depth - interpolate_depth(derived, p.span));
    out.max_abs_depth_error = std::max(out.max_abs_depth_error, err);
  }
  out.span_range_mismatch = std::max(std::abs(derived.min_span() - measured.min_span()),
                                     std::abs(derived.max_span() - measured.max_span()));
  out.pass = out.max_abs_depth_error <= tolerance && out.span_range_mismatch <= tolerance;
  return out;
}

}  // namespace gg
