#include "grasp_gauge/sizing.hpp"

namespace gg {

const char* to_string(SizeClass c) {
  switch (c) {
    case SizeClass::TooSmall: return "too-small";
    case SizeClass::Small: return "small";
    case SizeClass::Medium: return "medium";
    case SizeClass::Large: return "large";
    case SizeClass::TooLarge: return "too-large";
  }
  return "small";
}

namespace {

// m = closed-pose span, M = open-pose span of the precision set.
std::pair<Millimeters, Millimeters> precision_span_range(const HandProfile& profile) {
  if (!profile.precision || profile.precision->samples.empty()) {
    throw DomainError(ErrorCode::MissingGraspSet, "profile has no precision measurement set");
  }
  const auto& samples = profile.precision->samples;
  const Millimeters max_span = samples.front().span;
  const Millimeters min_span = samples.back().span;
  if (max_span == min_span) {
    throw DomainError(ErrorCode::DegenerateSpanRange, "precision span range has zero extent");
  }
  return {min_span, max_span};
}

}  // namespace

RelativeSize relative_size(const HandProfile& profile, GraspKind, Millimeters object_dim) {
  const auto [m, M] = precision_span_range(profile);
  return {(object_dim - m) / (M - m), m, M};
}

SizeClass classify(const RelativeSize& r) {
  const double f = r.fraction;
  if (f < 0.0) return SizeClass::TooSmall;
  if (f <= 0.30) return SizeClass::Small;
  if (f < 0.70) return SizeClass::Medium;
  if (f <= 1.0) return SizeClass::Large;
  return SizeClass::TooLarge;
}

Millimeters object_dimension_for(const HandProfile& profile, double fraction) {
  const auto [m, M] = precision_span_range(profile);
  return m + fraction * (M - m);
}

ObjectClassification classify_object(const HandProfile& profile, const ObjectSpec& object) {
  ObjectClassification out;
  out.size = classify(relative_size(profile, GraspKind::Precision, object.grasp_diameter));
  const auto& w = profile.width;
  out.height_ok = object.height >= w.min_width &&
                  (object.height <= w.max_width || w.object_height_unbounded);
  return out;
}

}  // namespace gg
