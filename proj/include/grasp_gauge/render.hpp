#pragma once

#include <string>
#include <vector>

#include "grasp_gauge/model.hpp"
#include "grasp_gauge/workspace.hpp"

namespace gg {

struct RenderSpec {
  int width_px = 800;
  int height_px = 600;
  std::string x_label = "span (mm)";
  std::string y_label = "depth (mm)";
  std::vector<std::pair<std::string, SpanDepthCurve>> series;
};

/// Deterministic SVG: one polyline per series, axis ticks every 10 mm.
std::string render_svg(const RenderSpec& spec);

struct ClassifyRow {
  std::string name;
  std::string id;  // empty when the object has none
  Millimeters grasp_diameter = 0;
  double fraction = 0;
  std::string size_class;
  bool height_ok = false;
};

std::vector<ClassifyRow> classify_rows(const HandProfile& profile,
                                       const std::vector<ObjectSpec>& objects);

std::string format_classify_table(const std::vector<ClassifyRow>& rows, bool color);
std::string format_classify_csv(const std::vector<ClassifyRow>& rows);

/// Per-hand summary columns plus an optional per-object class matrix.
std::string format_compare_table(const std::vector<HandProfile>& profiles,
                                 const std::vector<ObjectSpec>* objects, bool color);

}  // namespace gg
