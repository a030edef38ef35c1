#pragma once

#include "grasp_gauge/model.hpp"

namespace gg {

/// An object dimension normalized to a hand's precision span range [m, M].
struct RelativeSize {
  double fraction = 0;       // (d - m) / (M - m); may be < 0 or > 1
  Millimeters hand_min_span = 0;  // m, closed-pose span
  Millimeters hand_max_span = 0;  // M, open-pose span
};

enum class SizeClass { TooSmall, Small, Medium, Large, TooLarge };

const char* to_string(SizeClass c);

enum class GraspKind { Precision };

struct ObjectClassification {
  SizeClass size = SizeClass::Small;
  bool height_ok = false;
};

/// fraction = (object_dim - m) / (M - m) over the precision span range.
/// Throws DomainError{MissingGraspSet} without precision data and
/// DomainError{DegenerateSpanRange} when M == m.
RelativeSize relative_size(const HandProfile& profile, GraspKind grasp, Millimeters object_dim);

/// TooSmall < 0 <= Small <= 0.30 < Medium < 0.70 <= Large <= 1.0 < TooLarge.
SizeClass classify(const RelativeSize& r);

/// Inverse of relative_size: returns m + fraction * (M - m).
Millimeters object_dimension_for(const HandProfile& profile, double fraction);

/// Span-based class plus the orthogonal width gate on object height.
ObjectClassification classify_object(const HandProfile& profile, const ObjectSpec& object);

}  // namespace gg
