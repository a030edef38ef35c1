#include "grasp_gauge/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>
#include <vector>

namespace gg {

namespace {

constexpr double kDepthMatchTolerance = 0.5;  // mm, span-line ends must agree
constexpr double kPrecisionFaceLimitDeg = 30.0;
constexpr double kPowerFaceLimitDeg = 80.0;
constexpr double kAngleEps = 1e-9;

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

// Line angle normalized to [0, 180).
double normalize_line_angle(double deg) {
  double a = std::fmod(deg, 180.0);
  if (a < 0) a += 180.0;
  return a;
}

// Acute angle between two lines given by their [0, 180) angles.
double line_angle_between(double a_deg, double b_deg) {
  double d = std::abs(normalize_line_angle(a_deg) - normalize_line_angle(b_deg));
  return std::min(d, 180.0 - d);
}

struct FingerPose {
  double contact_u = 0;  // inward offset of the contact from the base, mm
  double contact_v = 0;  // contact depth, mm
  double tip_u = 0;
  double tip_v = 0;
  double knuckle_u = 0;
  double knuckle_v = 0;
  double distal_angle_deg = 0;  // absolute distal direction in the finger frame
};

// Finger frame: +u toward the opposing finger, +v out of the palm.
FingerPose evaluate_finger(const PlanarFinger& finger, double theta1_deg, double theta2_deg,
                           ContactChoice contact) {
  FingerPose pose;
  pose.distal_angle_deg = theta1_deg - theta2_deg;
  const double t1 = deg_to_rad(theta1_deg);
  const double td = deg_to_rad(pose.distal_angle_deg);
  pose.knuckle_u = finger.proximal_length * std::cos(t1);
  pose.knuckle_v = finger.proximal_length * std::sin(t1);
  pose.tip_u = pose.knuckle_u + finger.distal_length * std::cos(td);
  pose.tip_v = pose.knuckle_v + finger.distal_length * std::sin(td);
  const double reach = contact == ContactChoice::Fingertip ? finger.distal_length
                                                           : finger.distal_length * 0.5;
  pose.contact_u = pose.knuckle_u + reach * std::cos(td);
  pose.contact_v = pose.knuckle_v + reach * std::sin(td);
  return pose;
}

// World x of a left/right finger point given its inward offset.
double left_x(double base_x, double u) { return base_x + u; }
double right_x(double base_x, double u) { return base_x - u; }

// Distal face line angle in world coordinates.
double world_distal_angle(double distal_angle_deg, bool is_left) {
  return normalize_line_angle(is_left ? distal_angle_deg : 180.0 - distal_angle_deg);
}

// Inclusive grid over [min, max]: min + k*step plus the right endpoint, so
// halving the step always yields a superset.
std::vector<double> grid_values(double min, double max, double step) {
  std::vector<double> out;
  const double eps = step * 1e-9;
  const auto n = static_cast<long>(std::floor((max - min) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(min + static_cast<double>(i) * step);
  if (out.empty() || out.back() < max - eps) out.push_back(max);
  return out;
}

ContactFrame make_frame(double x, double v, double face_angle_world) {
  ContactFrame f;
  f.span_coord = x;
  f.depth_coord = v;
  f.surface_angle_vs_palm = normalize_line_angle(face_angle_world);
  return f;
}

void fill_spanline_angles(ContactFrame& left, ContactFrame& right, double left_face_world,
                          double right_face_world) {
  const double spanline_deg =
      std::atan2(right.depth_coord - left.depth_coord, right.span_coord - left.span_coord) *
      180.0 / std::numbers::pi;
  left.surface_angle_vs_spanline = line_angle_between(left_face_world, spanline_deg);
  right.surface_angle_vs_spanline = line_angle_between(right_face_world, spanline_deg);
}

// One precision-valid candidate finger placement.
struct Candidate {
  double x = 0;  // world contact x
  double v = 0;  // contact depth
  double theta1 = 0;
  double theta2 = 0;
  double base_x = 0;
};

std::vector<Candidate> precision_candidates(const PlanarFinger& finger, const BaseRange& base,
                                            bool is_left, ContactChoice contact, double step_deg) {
  std::vector<Candidate> out;
  const auto theta1s = grid_values(finger.theta1_limits.min, finger.theta1_limits.max, step_deg);
  const auto theta2s = grid_values(finger.theta2_limits.min, finger.theta2_limits.max, step_deg);
  const auto bases = base.fixed() ? std::vector<double>{base.min}
                                  : grid_values(base.min, base.max, step_deg);
  for (double t1 : theta1s) {
    for (double t2 : theta2s) {
      const double face = line_angle_between(world_distal_angle(t1 - t2, is_left), 0.0);
      if (face > kPrecisionFaceLimitDeg + kAngleEps) continue;
      const FingerPose pose = evaluate_finger(finger, t1, t2, contact);
      if (pose.contact_v < 0) continue;  // contact below the table/palm plane
      for (double b : bases) {
        Candidate c;
        c.x = is_left ? left_x(b, pose.contact_u) : right_x(b, pose.contact_u);
        c.v = pose.contact_v;
        c.theta1 = t1;
        c.theta2 = t2;
        c.base_x = b;
        out.push_back(c);
      }
    }
  }
  return out;
}

struct PosePick {
  double span = 0;
  double depth = 0;
  bool found = false;
};

// Streams all depth-compatible left/right candidate pairs through `visit`.
template <typename Visit>
void for_each_pair(const std::vector<Candidate>& left, const std::vector<Candidate>& right_sorted,
                   Visit&& visit) {
  for (const auto& l : left) {
    auto lo = std::lower_bound(right_sorted.begin(), right_sorted.end(),
                               l.v - kDepthMatchTolerance,
                               [](const Candidate& c, double v) { return c.v < v; });
    for (auto it = lo; it != right_sorted.end() && it->v <= l.v + kDepthMatchTolerance; ++it) {
      const double span = it->x - l.x;
      if (span < -1e-9) continue;  // fingers crossed
      visit(std::max(0.0, span), (l.v + it->v) * 0.5);
    }
  }
}

}  // namespace

ContactPair forward_kinematics(const PlanarHandModel& model, const JointConfig& config) {
  const double lb = model.left_base.fixed() ? model.left_base.min : config.left_base_x;
  const double rb = model.right_base.fixed() ? model.right_base.min : config.right_base_x;
  const bool in_limits = model.left_finger.theta1_limits.contains(config.theta1_left) &&
                         model.left_finger.theta2_limits.contains(config.theta2_left) &&
                         model.right_finger.theta1_limits.contains(config.theta1_right) &&
                         model.right_finger.theta2_limits.contains(config.theta2_right) &&
                         lb >= model.left_base.min && lb <= model.left_base.max &&
                         rb >= model.right_base.min && rb <= model.right_base.max;
  if (!in_limits) {
    throw DomainError(ErrorCode::JointLimitViolation, "joint configuration outside model limits");
  }

  const FingerPose lp = evaluate_finger(model.left_finger, config.theta1_left, config.theta2_left,
                                        model.contact_choice);
  const FingerPose rp = evaluate_finger(model.right_finger, config.theta1_right,
                                        config.theta2_right, model.contact_choice);
  const double lface = world_distal_angle(lp.distal_angle_deg, true);
  const double rface = world_distal_angle(rp.distal_angle_deg, false);
  ContactFrame left = make_frame(left_x(lb, lp.contact_u), lp.contact_v, lface);
  ContactFrame right = make_frame(right_x(rb, rp.contact_u), rp.contact_v, rface);
  fill_spanline_angles(left, right, lface, rface);
  return {left, right};
}

bool precision_valid(const ContactPair& frames) {
  const auto face_ok = [](const ContactFrame& f) {
    const double acute = std::min(f.surface_angle_vs_palm, 180.0 - f.surface_angle_vs_palm);
    return acute <= kPrecisionFaceLimitDeg + kAngleEps;
  };
  return face_ok(frames.first) && face_ok(frames.second) &&
         std::abs(frames.first.depth_coord - frames.second.depth_coord) <= kDepthMatchTolerance;
}

bool power_valid(const ContactPair& frames, Millimeters object_center_depth) {
  const auto ok = [&](const ContactFrame& f) {
    return f.depth_coord > object_center_depth &&
           f.surface_angle_vs_spanline >= kPowerFaceLimitDeg - kAngleEps;
  };
  return ok(frames.first) && ok(frames.second);
}

SpanDepthCurve derive_precision_curve(const PlanarHandModel& model, int n_poses,
                                      double grid_step_deg) {
  if (n_poses < 3) throw std::invalid_argument("n_poses must be >= 3");
  if (grid_step_deg <= 0) throw std::invalid_argument("grid_step must be positive");

  const auto left = precision_candidates(model.left_finger, model.left_base, true,
                                         model.contact_choice, grid_step_deg);
  auto right = precision_candidates(model.right_finger, model.right_base, false,
                                    model.contact_choice, grid_step_deg);
  std::sort(right.begin(), right.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.v, a.theta1, a.theta2, a.base_x) < std::tie(b.v, b.theta1, b.theta2, b.base_x);
  });

  PosePick widest, tightest;
  for_each_pair(left, right, [&](double span, double depth) {
    if (!widest.found || span > widest.span) widest = {span, depth, true};
    if (!tightest.found || span < tightest.span) tightest = {span, depth, true};
  });
  if (!widest.found) {
    throw DomainError(ErrorCode::NoValidConfiguration,
                      "no precision-valid configuration on the joint grid");
  }

  // Intermediate poses at evenly spaced target spans between min and max.
  const int n_mid = n_poses - 2;
  std::vector<double> targets;
  for (int k = 1; k <= n_mid; ++k) {
    targets.push_back(tightest.span +
                      (widest.span - tightest.span) * static_cast<double>(k) /
                          static_cast<double>(n_mid + 1));
  }
  std::vector<PosePick> picks(targets.size());
  if (!targets.empty()) {
    for_each_pair(left, right, [&](double span, double depth) {
      for (std::size_t i = 0; i < targets.size(); ++i) {
        if (!picks[i].found || std::abs(span - targets[i]) < std::abs(picks[i].span - targets[i])) {
          picks[i] = {span, depth, true};
        }
      }
    });
  }

  // Snap to the 0.01 mm measurement grid: the joint grid already quantizes
  // poses far more coarsely, and this keeps analytic cases exactly analytic.
  std::vector<SpanDepthCurve::Point> points;
  points.push_back({round_mm(tightest.span), round_mm(tightest.depth)});
  for (const auto& p : picks) points.push_back({round_mm(p.span), round_mm(p.depth)});
  points.push_back({round_mm(widest.span), round_mm(widest.depth)});
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a.span < b.span; });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const auto& a, const auto& b) { return a.span == b.span; }),
               points.end());

  SpanDepthCurve curve;
  curve.points = std::move(points);
  curve.source = CurveSource::Derived;
  return curve;
}

Millimeters absolute_max_span(const PlanarHandModel& model, double grid_step_deg) {
  // Fully open, grasp validity ignored: widest separation of the distal link
  // ends (knuckle or tip, whichever reaches furthest out).
  const auto extreme_distal_x = [&](const PlanarFinger& finger, const BaseRange& base,
                                    bool is_left) {
    double best = is_left ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
    const double b = is_left ? base.min : base.max;  // widest base placement
    for (double t1 : grid_values(finger.theta1_limits.min, finger.theta1_limits.max, grid_step_deg)) {
      for (double t2 : grid_values(finger.theta2_limits.min, finger.theta2_limits.max, grid_step_deg)) {
        const FingerPose pose = evaluate_finger(finger, t1, t2, ContactChoice::Fingertip);
        for (double u : {pose.knuckle_u, pose.tip_u}) {
          const double x = is_left ? left_x(b, u) : right_x(b, u);
          best = is_left ? std::min(best, x) : std::max(best, x);
        }
      }
    }
    return best;
  };
  const double lx = extreme_distal_x(model.left_finger, model.left_base, true);
  const double rx = extreme_distal_x(model.right_finger, model.right_base, false);
  return std::max(0.0, rx - lx);
}

namespace {

double point_segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  const double dx = bx - ax;
  const double dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((px - ax) * dx + (py - ay) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double cx = ax + t * dx;
  const double cy = ay + t * dy;
  return std::hypot(px - cx, py - cy);
}

struct Polyline {
  // base -> knuckle -> tip, world coordinates
  std::array<std::pair<double, double>, 3> pts;

  double distance_to(double x, double y) const {
    return std::min(point_segment_distance(x, y, pts[0].first, pts[0].second, pts[1].first,
                                           pts[1].second),
                    point_segment_distance(x, y, pts[1].first, pts[1].second, pts[2].first,
                                           pts[2].second));
  }

  // x-coordinates where the polyline crosses depth d.
  std::vector<double> crossings(double d) const {
    std::vector<double> xs;
    for (int i = 0; i < 2; ++i) {
      const auto [ax, ay] = pts[i];
      const auto [bx, by] = pts[i + 1];
      if ((ay <= d && by >= d) || (ay >= d && by <= d)) {
        if (ay == by) {
          xs.push_back(ax);
          xs.push_back(bx);
        } else {
          xs.push_back(ax + (d - ay) / (by - ay) * (bx - ax));
        }
      }
    }
    return xs;
  }
};

Polyline finger_polyline(const PlanarFinger& finger, double t1, double t2, double base_x,
                         bool is_left) {
  const FingerPose pose = evaluate_finger(finger, t1, t2, ContactChoice::Fingertip);
  const auto wx = [&](double u) { return is_left ? left_x(base_x, u) : right_x(base_x, u); };
  return Polyline{{{{base_x, 0.0},
                    {wx(pose.knuckle_u), pose.knuckle_v},
                    {wx(pose.tip_u), pose.tip_v}}}};
}

}  // namespace

std::array<CylindricalSection, 3> derive_power_sections(const PlanarHandModel& model,
                                                        const JointConfig& config) {
  const ContactPair frames = forward_kinematics(model, config);
  const double lb = model.left_base.fixed() ? model.left_base.min : config.left_base_x;
  const double rb = model.right_base.fixed() ? model.right_base.min : config.right_base_x;
  const Polyline left =
      finger_polyline(model.left_finger, config.theta1_left, config.theta2_left, lb, true);
  const Polyline right =
      finger_polyline(model.right_finger, config.theta1_right, config.theta2_right, rb, false);

  const double span_line_depth = (frames.first.depth_coord + frames.second.depth_coord) * 0.5;
  const double span_line_span = std::max(0.0, frames.second.span_coord - frames.first.span_coord);
  const double center_x = (frames.first.span_coord + frames.second.span_coord) * 0.5;

  // Inscribed object: largest circle centered on the grasp centerline between
  // the palm plane and the span line.
  double best_radius = -1;
  double center_depth = 0;
  const int n_center = 512;
  for (int i = 1; i < n_center; ++i) {
    const double t = span_line_depth * static_cast<double>(i) / n_center;
    const double r = std::min({t, left.distance_to(center_x, t), right.distance_to(center_x, t)});
    if (r > best_radius) {
      best_radius = r;
      center_depth = t;
    }
  }
  if (!power_valid(frames, center_depth)) {
    throw DomainError(ErrorCode::ConstraintUnsatisfied,
                      "configuration is not power-valid against the inscribed object center");
  }

  // Inner-face separation along the span axis at depth d.
  const auto separation = [&](double d) -> std::optional<double> {
    const auto lxs = left.crossings(d);
    const auto rxs = right.crossings(d);
    if (lxs.empty() || rxs.empty()) return std::nullopt;
    const double lx = *std::max_element(lxs.begin(), lxs.end());
    const double rx = *std::min_element(rxs.begin(), rxs.end());
    return std::max(0.0, rx - lx);
  };

  // Mid line: maximum bulge strictly between the palm plane and the span line.
  const int n_sweep = 1024;
  double mid_depth = span_line_depth * 0.5;
  double mid_span = -1;
  for (int i = 1; i < n_sweep; ++i) {
    const double d = span_line_depth * static_cast<double>(i) / n_sweep;
    if (const auto s = separation(d); s && *s > mid_span) {
      mid_span = *s;
      mid_depth = d;
    }
  }

  return {CylindricalSection{SectionLine::Inner, std::max(0.0, rb - lb), 0.0},
          CylindricalSection{SectionLine::Mid, mid_span, mid_depth},
          CylindricalSection{SectionLine::SpanLine, span_line_span, span_line_depth}};
}

}  // namespace gg
