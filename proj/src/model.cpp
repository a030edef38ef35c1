#include "grasp_gauge/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace gg {

Millimeters round_mm(Millimeters v) { return std::round(v * 100.0) / 100.0; }

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingGraspSet: return "MissingGraspSet";
    case ErrorCode::DegenerateSpanRange: return "DegenerateSpanRange";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::JointLimitViolation: return "JointLimitViolation";
    case ErrorCode::NoValidConfiguration: return "NoValidConfiguration";
    case ErrorCode::ConstraintUnsatisfied: return "ConstraintUnsatisfied";
    case ErrorCode::DisjointSpanRanges: return "DisjointSpanRanges";
  }
  return "UnknownError";
}

std::string to_string(const PoseLabel& label) {
  switch (label.kind) {
    case PoseLabel::Kind::Open: return "open";
    case PoseLabel::Kind::Closed: return "closed";
    case PoseLabel::Kind::Intermediate: return "intermediate-" + std::to_string(label.index);
  }
  return "open";
}

std::optional<PoseLabel> parse_pose_label(const std::string& text) {
  if (text == "open") return PoseLabel::open();
  if (text == "closed") return PoseLabel::closed();
  const std::string prefix = "intermediate";
  if (text.rfind(prefix, 0) == 0) {
    std::string rest = text.substr(prefix.size());
    if (rest.empty()) return PoseLabel::intermediate(1);
    if (rest.size() >= 2 && rest[0] == '-') {
      rest = rest.substr(1);
      if (!rest.empty() && std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        int idx = std::atoi(rest.c_str());
        if (idx >= 1) return PoseLabel::intermediate(idx);
      }
    }
  }
  return std::nullopt;
}

std::string to_string(SectionLine line) {
  switch (line) {
    case SectionLine::Inner: return "inner";
    case SectionLine::Mid: return "mid";
    case SectionLine::SpanLine: return "span_line";
  }
  return "inner";
}

std::optional<SectionLine> parse_section_line(const std::string& text) {
  if (text == "inner") return SectionLine::Inner;
  if (text == "mid") return SectionLine::Mid;
  if (text == "span_line") return SectionLine::SpanLine;
  return std::nullopt;
}

std::string to_string(ObjectShape shape) {
  switch (shape) {
    case ObjectShape::Cylinder: return "cylinder";
    case ObjectShape::Sphere: return "sphere";
    case ObjectShape::Box: return "box";
  }
  return "cylinder";
}

std::optional<ObjectShape> parse_object_shape(const std::string& text) {
  if (text == "cylinder") return ObjectShape::Cylinder;
  if (text == "sphere") return ObjectShape::Sphere;
  if (text == "box") return ObjectShape::Box;
  return std::nullopt;
}

const CylindricalSection* PowerCylindricalPose::section(SectionLine line) const {
  for (const auto& s : sections) {
    if (s.line == line) return &s;
  }
  return nullptr;
}

std::vector<PoseSample> canonical_precision_samples(std::vector<PoseSample> samples) {
  std::stable_sort(samples.begin(), samples.end(),
                   [](const PoseSample& a, const PoseSample& b) { return a.span > b.span; });
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i - 1].span == samples[i].span) {
      throw DomainError(ErrorCode::ConstraintUnsatisfied,
                        "duplicate span " + std::to_string(samples[i].span) +
                            " has no canonical order");
    }
  }
  return samples;
}

bool ValidationReport::has_errors() const {
  return std::any_of(issues.begin(), issues.end(),
                     [](const ValidationIssue& i) { return i.severity == Severity::Error; });
}

std::vector<ValidationIssue> ValidationReport::errors() const {
  std::vector<ValidationIssue> out;
  for (const auto& i : issues) {
    if (i.severity == Severity::Error) out.push_back(i);
  }
  return out;
}

namespace {

std::string fmt_mm(Millimeters v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void add(ValidationReport& report, Severity severity, std::string code, std::string message,
         std::string path) {
  report.issues.push_back({severity, std::move(code), std::move(message), std::move(path)});
}

void check_pose_labels(ValidationReport& report, const std::vector<PoseLabel>& labels,
                       const std::string& path) {
  if (labels.size() < 3) {
    add(report, Severity::Error, "MIN_THREE_POSES",
        "need at least 3 poses (open, closed, >=1 intermediate), got " +
            std::to_string(labels.size()),
        path);
    return;
  }
  const bool has_open = labels.front().kind == PoseLabel::Kind::Open;
  const bool has_closed = labels.back().kind == PoseLabel::Kind::Closed;
  bool has_intermediate = false;
  for (std::size_t i = 1; i + 1 < labels.size(); ++i) {
    if (labels[i].kind == PoseLabel::Kind::Intermediate) has_intermediate = true;
  }
  if (!has_open || !has_closed || !has_intermediate) {
    add(report, Severity::Error, "POSE_LABELS",
        "poses must run open -> intermediates -> closed", path);
  }
}

void check_strictly_decreasing(ValidationReport& report, const std::vector<Millimeters>& spans,
                               const std::string& path, const std::string& what) {
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i] == spans[i - 1]) {
      add(report, Severity::Error, "SPAN_TIE",
          what + " tie at " + fmt_mm(spans[i]) + " mm between adjacent poses",
          path + "[" + std::to_string(i) + "]");
    } else if (spans[i] > spans[i - 1]) {
      add(report, Severity::Error, "SPAN_NOT_DECREASING",
          what + " increases from " + fmt_mm(spans[i - 1]) + " to " + fmt_mm(spans[i]) +
              " mm toward the closed pose",
          path + "[" + std::to_string(i) + "]");
    }
  }
}

void check_nonnegative(ValidationReport& report, Millimeters v, const std::string& path) {
  if (v < 0) {
    add(report, Severity::Error, "NEGATIVE_LENGTH", "length " + fmt_mm(v) + " mm is negative",
        path);
  }
}

}  // namespace

ValidationReport validate_profile(const HandProfile& profile) {
  ValidationReport report;

  check_nonnegative(report, profile.absolute_max_span, "absolute_max_span");
  check_nonnegative(report, profile.width.min_width, "width.min_width");
  check_nonnegative(report, profile.width.max_width, "width.max_width");
  if (profile.width.min_width > profile.width.max_width) {
    add(report, Severity::Error, "WIDTH_ORDER",
        "min_width " + fmt_mm(profile.width.min_width) + " exceeds max_width " +
            fmt_mm(profile.width.max_width),
        "width");
  }

  if (!profile.precision && !profile.power_cylindrical && !profile.power_spherical) {
    add(report, Severity::Error, "NO_GRASP_SET",
        "profile carries no precision or power measurement set", "");
  }

  if (profile.precision) {
    const auto& set = *profile.precision;
    std::vector<PoseLabel> labels;
    std::vector<Millimeters> spans;
    for (std::size_t i = 0; i < set.samples.size(); ++i) {
      const auto& s = set.samples[i];
      const std::string base = "precision.samples[" + std::to_string(i) + "]";
      check_nonnegative(report, s.span, base + ".span");
      check_nonnegative(report, s.depth, base + ".depth");
      labels.push_back(s.pose);
      spans.push_back(s.span);
      if (s.span > profile.absolute_max_span) {
        add(report, Severity::Error, "ABS_SPAN_LT_GRASP_SPAN",
            "precision span " + fmt_mm(s.span) + " exceeds absolute_max_span " +
                fmt_mm(profile.absolute_max_span),
            base + ".span");
      }
    }
    check_pose_labels(report, labels, "precision.samples");
    check_strictly_decreasing(report, spans, "precision.samples", "span");
  }

  if (profile.power_cylindrical) {
    const auto& set = *profile.power_cylindrical;
    std::vector<PoseLabel> labels;
    std::vector<Millimeters> span_line_spans;
    for (std::size_t i = 0; i < set.poses.size(); ++i) {
      const auto& pose = set.poses[i];
      const std::string base = "power_cylindrical.poses[" + std::to_string(i) + "]";
      labels.push_back(pose.pose);

      const auto* inner = pose.section(SectionLine::Inner);
      const auto* mid = pose.section(SectionLine::Mid);
      const auto* span_line = pose.section(SectionLine::SpanLine);
      if (pose.sections.size() != 3 || !inner || !mid || !span_line) {
        add(report, Severity::Error, "SECTION_LINES",
            "pose must carry exactly one inner, mid, and span_line section", base + ".sections");
        continue;
      }
      for (std::size_t j = 0; j < pose.sections.size(); ++j) {
        const std::string sec = base + ".sections[" + std::to_string(j) + "]";
        check_nonnegative(report, pose.sections[j].span, sec + ".span");
        check_nonnegative(report, pose.sections[j].depth, sec + ".depth");
      }
      if (!(inner->depth < mid->depth && mid->depth < span_line->depth)) {
        add(report, Severity::Error, "SECTION_DEPTH_ORDER",
            "depths must satisfy inner < mid < span_line", base + ".sections");
      }
      span_line_spans.push_back(span_line->span);
    }
    check_pose_labels(report, labels, "power_cylindrical.poses");
    check_strictly_decreasing(report, span_line_spans, "power_cylindrical.poses",
                              "span_line span");
  }

  if (profile.power_spherical) {
    const auto& set = *profile.power_spherical;
    std::vector<PoseLabel> labels;
    std::vector<Millimeters> widest;
    for (std::size_t i = 0; i < set.poses.size(); ++i) {
      const auto& pose = set.poses[i];
      const std::string base = "power_spherical.poses[" + std::to_string(i) + "]";
      labels.push_back(pose.pose);
      check_nonnegative(report, pose.section.base_diameter, base + ".base_diameter");
      check_nonnegative(report, pose.section.widest_diameter, base + ".widest_diameter");
      check_nonnegative(report, pose.section.distal_diameter, base + ".distal_diameter");
      widest.push_back(pose.section.widest_diameter);
      if (pose.section.widest_diameter <
          std::max(pose.section.base_diameter, pose.section.distal_diameter)) {
        add(report, Severity::Warning, "WIDEST_BELOW_EXTREMES",
            "widest_diameter is below the base or distal diameter; recorded as measured", base);
      }
    }
    check_pose_labels(report, labels, "power_spherical.poses");
    check_strictly_decreasing(report, widest, "power_spherical.poses", "widest_diameter");
  }

  return report;
}

}  // namespace gg
