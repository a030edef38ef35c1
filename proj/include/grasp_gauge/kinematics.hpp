#pragma once

#include <array>
#include <optional>
#include <utility>

#include "grasp_gauge/model.hpp"
#include "grasp_gauge/workspace.hpp"

namespace gg {

struct Degrees {
  double min = 0;
  double max = 0;

  bool contains(double v) const { return v >= min && v <= max; }
  bool operator==(const Degrees&) const = default;
};

/// One two-link planar finger. Angles are in degrees in the finger's own
/// frame: theta1 is measured from the palm plane (90 = straight out of the
/// palm), theta2 is the distal bend toward the opposing finger.
struct PlanarFinger {
  double proximal_length = 0;  // L1, mm
  double distal_length = 0;    // L2, mm
  Degrees theta1_limits;
  Degrees theta2_limits;

  bool operator==(const PlanarFinger&) const = default;
};

/// Base position of a finger along the span axis; a non-degenerate interval
/// models a prismatic base (parallel-jaw travel).
struct BaseRange {
  double min = 0;  // mm
  double max = 0;  // mm

  bool fixed() const { return min == max; }
  bool operator==(const BaseRange&) const = default;
};

/// Simplified two-opposing-finger planar hand, palm plane at depth 0.
struct PlanarHandModel {
  std::string name;
  BaseRange left_base;   // left_base.max < right_base.min required
  BaseRange right_base;
  PlanarFinger left_finger;
  PlanarFinger right_finger;
  ContactChoice contact_choice = ContactChoice::DistalMidpoint;
};

struct JointConfig {
  double theta1_left = 0;
  double theta2_left = 0;
  double theta1_right = 0;
  double theta2_right = 0;
  // Base x-coordinates; fixed-base hands leave these at the model values.
  double left_base_x = 0;
  double right_base_x = 0;
};

struct ContactFrame {
  double span_coord = 0;   // mm along the span axis
  double depth_coord = 0;  // mm out of the palm plane
  double surface_angle_vs_palm = 0;      // degrees in [0, 180)
  double surface_angle_vs_spanline = 0;  // degrees in [0, 180)
};

using ContactPair = std::pair<ContactFrame, ContactFrame>;  // left, right

/// Closed-form planar chain evaluation at the model's contact choice.
/// Throws DomainError{JointLimitViolation} when the config is out of limits.
ContactPair forward_kinematics(const PlanarHandModel& model, const JointConfig& config);

/// Precision rule: each distal face within 30 degrees of the palm plane
/// (>= 120 degrees included between the opposing faces) and contact depths
/// equal within 0.5 mm.
bool precision_valid(const ContactPair& frames);

/// Power rule: contacts strictly past the object centerline (depth beyond the
/// center) and faces at >= 80 degrees to the span line.
bool power_valid(const ContactPair& frames, Millimeters object_center_depth);

/// Exhaustive grid search over the joint box (and prismatic base travel) at
/// grid_step resolution. Returns the max-span and min-span precision-valid
/// poses plus n_poses - 2 evenly spaced intermediates; depth is measured from
/// the span line midpoint to the palm plane. source = Derived.
/// Throws DomainError{NoValidConfiguration} when nothing on the grid is valid.
SpanDepthCurve derive_precision_curve(const PlanarHandModel& model, int n_poses,
                                      double grid_step_deg);

/// Distal-tip separation with all grasp constraints dropped, joints explored
/// at grid_step over their full box.
Millimeters absolute_max_span(const PlanarHandModel& model, double grid_step_deg);

/// Cylindrical power sections for one enclosing pose: SpanLine at the contact
/// depth, Inner at the base-joint depth, Mid at the maximum-bulge depth.
/// Throws DomainError{ConstraintUnsatisfied} when power_valid fails against
/// the inscribed object's center.
std::array<CylindricalSection, 3> derive_power_sections(const PlanarHandModel& model,
                                                        const JointConfig& config);

}  // namespace gg
