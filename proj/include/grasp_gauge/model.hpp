#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gg {

/// Lengths are always millimeters, stored at 0.01 mm resolution.
using Millimeters = double;

/// Rounds a length to the 0.01 mm resolution used throughout the data model.
Millimeters round_mm(Millimeters v);

enum class ErrorCode {
  MissingGraspSet,
  DegenerateSpanRange,
  OutOfRange,
  WrongShape,
  JointLimitViolation,
  NoValidConfiguration,
  ConstraintUnsatisfied,
  DisjointSpanRanges,
};

const char* to_string(ErrorCode code);

/// Thrown by operations whose contract names a hard error condition.
class DomainError : public std::runtime_error {
public:
  DomainError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

struct WidthRange {
  Millimeters min_width = 0;
  Millimeters max_width = 0;
  // The "+" marker: object height is not constrained by the hand.
  bool object_height_unbounded = false;
};

struct PoseLabel {
  enum class Kind { Open, Intermediate, Closed };

  Kind kind = Kind::Open;
  int index = 0;  // positive, meaningful only for Intermediate

  static PoseLabel open() { return {Kind::Open, 0}; }
  static PoseLabel closed() { return {Kind::Closed, 0}; }
  static PoseLabel intermediate(int index) { return {Kind::Intermediate, index}; }

  bool operator==(const PoseLabel&) const = default;
};

std::string to_string(const PoseLabel& label);
std::optional<PoseLabel> parse_pose_label(const std::string& text);

struct PoseSample {
  PoseLabel pose;
  Millimeters span = 0;
  Millimeters depth = 0;

  bool operator==(const PoseSample&) const = default;
};

enum class ContactChoice { DistalMidpoint, Fingertip };

struct PrecisionSet {
  ContactChoice contact_choice = ContactChoice::DistalMidpoint;
  std::vector<PoseSample> samples;  // ordered Open -> Closed, strictly decreasing span

  bool operator==(const PrecisionSet&) const = default;
};

/// Reorders samples into the canonical Open -> Closed (strictly decreasing
/// span) order. Throws DomainError{ConstraintUnsatisfied} on span ties, since
/// no deterministic order exists for them.
std::vector<PoseSample> canonical_precision_samples(std::vector<PoseSample> samples);

enum class SectionLine { Inner, Mid, SpanLine };

std::string to_string(SectionLine line);
std::optional<SectionLine> parse_section_line(const std::string& text);

struct CylindricalSection {
  SectionLine line = SectionLine::Inner;
  Millimeters span = 0;
  Millimeters depth = 0;  // distance of this line from the palm plane

  bool operator==(const CylindricalSection&) const = default;
};

struct PowerCylindricalPose {
  PoseLabel pose;
  std::vector<CylindricalSection> sections;  // exactly Inner, Mid, SpanLine

  bool operator==(const PowerCylindricalPose&) const = default;

  const CylindricalSection* section(SectionLine line) const;
};

struct PowerCylindricalSet {
  std::vector<PowerCylindricalPose> poses;  // Open -> Closed by decreasing SpanLine span

  bool operator==(const PowerCylindricalSet&) const = default;
};

struct SphericalSection {
  Millimeters base_diameter = 0;
  Millimeters widest_diameter = 0;
  Millimeters distal_diameter = 0;

  bool operator==(const SphericalSection&) const = default;
};

struct PowerSphericalPose {
  PoseLabel pose;
  SphericalSection section;

  bool operator==(const PowerSphericalPose&) const = default;
};

struct PowerSphericalSet {
  std::vector<PowerSphericalPose> poses;  // Open -> Closed by decreasing widest_diameter

  bool operator==(const PowerSphericalSet&) const = default;
};

enum class MeasurementMethod { Physical, CadModel };

struct Provenance {
  std::string measurer;
  MeasurementMethod method = MeasurementMethod::Physical;
  std::vector<std::string> photo_refs;

  bool operator==(const Provenance&) const = default;
};

/// One hand configuration's complete measurement record.
struct HandProfile {
  std::string name;
  std::string configuration;  // e.g. "cylindrical", "spherical"
  Millimeters absolute_max_span = 0;
  WidthRange width;
  std::optional<PrecisionSet> precision;
  std::optional<PowerCylindricalSet> power_cylindrical;
  std::optional<PowerSphericalSet> power_spherical;
  Provenance provenance;
};

enum class ObjectShape { Cylinder, Sphere, Box };

std::string to_string(ObjectShape shape);
std::optional<ObjectShape> parse_object_shape(const std::string& text);

struct ObjectSpec {
  std::string name;
  std::optional<std::string> id;  // e.g. YCB id
  ObjectShape shape = ObjectShape::Cylinder;
  Millimeters grasp_diameter = 0;  // at the intended grasp point
  Millimeters height = 0;
};

enum class Severity { Error, Warning };

struct ValidationIssue {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::string path;  // e.g. "precision.samples[2].span"
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool has_errors() const;
  std::vector<ValidationIssue> errors() const;
};

/// Checks every protocol invariant of the profile. Violations come back as
/// data; this never throws. Warnings never block downstream use.
ValidationReport validate_profile(const HandProfile& profile);

}  // namespace gg
