#include "grasp_gauge/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "grasp_gauge/sizing.hpp"

namespace gg {

namespace {

std::string fmt(double v, int decimals = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  std::string s = buf;
  if (s == "-0.00" || s == "-0.0" || s == "-0") s = s.substr(1);
  return s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string render_svg(const RenderSpec& spec) {
  if (spec.series.empty() || spec.width_px <= 0 || spec.height_px <= 0) {
    throw std::invalid_argument("render spec needs positive dimensions and >= 1 series");
  }

  double max_span = 0;
  double max_depth = 0;
  for (const auto& [label, curve] : spec.series) {
    for (const auto& p : curve.points) {
      max_span = std::max(max_span, p.span);
      max_depth = std::max(max_depth, p.depth);
    }
  }
  // Round the plotted range up to the 10 mm tick grid.
  const double span_range = std::max(10.0, std::ceil(max_span / 10.0) * 10.0);
  const double depth_range = std::max(10.0, std::ceil(max_depth / 10.0) * 10.0);

  const double ml = 60, mr = 20, mt = 20, mb = 45;
  const double pw = spec.width_px - ml - mr;
  const double ph = spec.height_px - mt - mb;
  const auto px = [&](double span) { return ml + span / span_range * pw; };
  const auto py = [&](double depth) { return mt + ph - depth / depth_range * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(spec.width_px) +
         "\" height=\"" + std::to_string(spec.height_px) + "\" viewBox=\"0 0 " +
         std::to_string(spec.width_px) + " " + std::to_string(spec.height_px) + "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes
  svg += "  <line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt + ph) + "\" x2=\"" + fmt(ml + pw) +
         "\" y2=\"" + fmt(mt + ph) + "\" stroke=\"black\"/>\n";
  svg += "  <line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(ml) + "\" y2=\"" +
         fmt(mt + ph) + "\" stroke=\"black\"/>\n";

  // Ticks every 10 mm
  for (double s = 0; s <= span_range + 1e-9; s += 10.0) {
    const double x = px(s);
    svg += "  <line x1=\"" + fmt(x) + "\" y1=\"" + fmt(mt + ph) + "\" x2=\"" + fmt(x) +
           "\" y2=\"" + fmt(mt + ph + 5) + "\" stroke=\"black\"/>\n";
    svg += "  <text x=\"" + fmt(x) + "\" y=\"" + fmt(mt + ph + 18) +
           "\" font-size=\"10\" text-anchor=\"middle\">" + fmt(s, 0) + "</text>\n";
  }
  for (double d = 0; d <= depth_range + 1e-9; d += 10.0) {
    const double y = py(d);
    svg += "  <line x1=\"" + fmt(ml - 5) + "\" y1=\"" + fmt(y) + "\" x2=\"" + fmt(ml) +
           "\" y2=\"" + fmt(y) + "\" stroke=\"black\"/>\n";
    svg += "  <text x=\"" + fmt(ml - 8) + "\" y=\"" + fmt(y + 3) +
           "\" font-size=\"10\" text-anchor=\"end\">" + fmt(d, 0) + "</text>\n";
  }

  svg += "  <text x=\"" + fmt(ml + pw / 2) + "\" y=\"" + fmt(mt + ph + 35) +
         "\" font-size=\"12\" text-anchor=\"middle\">" + xml_escape(spec.x_label) + "</text>\n";
  svg += "  <text x=\"15\" y=\"" + fmt(mt + ph / 2) +
         "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 15 " +
         fmt(mt + ph / 2) + ")\">" + xml_escape(spec.y_label) + "</text>\n";

  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const auto& [label, curve] = spec.series[i];
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::string pts;
    for (const auto& p : curve.points) {
      if (!pts.empty()) pts += " ";
      pts += fmt(px(p.span)) + "," + fmt(py(p.depth));
    }
    svg += "  <polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"" +
           pts + "\"><title>" + xml_escape(label) + "</title></polyline>\n";
    svg += "  <text x=\"" + fmt(ml + pw - 5) + "\" y=\"" + fmt(mt + 14 + 14 * double(i)) +
           "\" font-size=\"11\" text-anchor=\"end\" fill=\"" + color + "\">" + xml_escape(label) +
           "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

std::vector<ClassifyRow> classify_rows(const HandProfile& profile,
                                       const std::vector<ObjectSpec>& objects) {
  std::vector<ClassifyRow> rows;
  for (const auto& obj : objects) {
    ClassifyRow row;
    row.name = obj.name;
    row.id = obj.id.value_or("");
    row.grasp_diameter = obj.grasp_diameter;
    row.fraction = relative_size(profile, GraspKind::Precision, obj.grasp_diameter).fraction;
    const auto cls = classify_object(profile, obj);
    row.size_class = to_string(cls.size);
    row.height_ok = cls.height_ok;
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::string colorize(const std::string& text, const std::string& size_class, bool color) {
  if (!color) return text;
  const char* code = "0";
  if (size_class == "small") code = "36";
  else if (size_class == "medium") code = "32";
  else if (size_class == "large") code = "33";
  else code = "31";
  return "\x1b[" + std::string(code) + "m" + text + "\x1b[0m";
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  return out + "\"";
}

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(s.size() < width ? width - s.size() : 0, ' ');
}

std::string render_rows(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += i + 1 == row.size() ? row[i] : pad(row[i], widths[i] + 2);
    }
    out += "\n";
  }
  return out;
}

}  // namespace

std::string format_classify_table(const std::vector<ClassifyRow>& rows, bool color) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"name", "id", "grasp_diameter", "fraction", "size", "height_ok"});
  for (const auto& r : rows) {
    cells.push_back({r.name, r.id.empty() ? "-" : r.id, fmt(r.grasp_diameter), fmt(r.fraction),
                     colorize(r.size_class, r.size_class, color), r.height_ok ? "yes" : "no"});
  }
  return render_rows(cells);
}

std::string format_classify_csv(const std::vector<ClassifyRow>& rows) {
  std::string out = "name,id,grasp_diameter,fraction,size,height_ok\r\n";
  for (const auto& r : rows) {
    out += csv_quote(r.name) + "," + csv_quote(r.id) + "," + fmt(r.grasp_diameter) + "," +
           fmt(r.fraction) + "," + r.size_class + "," + (r.height_ok ? "true" : "false") + "\r\n";
  }
  return out;
}

std::string format_compare_table(const std::vector<HandProfile>& profiles,
                                 const std::vector<ObjectSpec>* objects, bool color) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"hand", "m", "M", "absolute_max_span", "graspable_area"});
  for (const auto& p : profiles) {
    const auto& samples = p.precision->samples;
    const auto curve = build_precision_curve(*p.precision);
    cells.push_back({p.name, fmt(samples.back().span), fmt(samples.front().span),
                     fmt(p.absolute_max_span), fmt(graspable_area(curve))});
  }
  std::string out = render_rows(cells);

  if (objects) {
    out += "\n";
    std::vector<std::vector<std::string>> matrix;
    std::vector<std::string> header = {"object"};
    for (const auto& p : profiles) header.push_back(p.name);
    matrix.push_back(std::move(header));
    for (const auto& obj : *objects) {
      std::vector<std::string> row = {obj.name};
      for (const auto& p : profiles) {
        const auto cls = classify_object(p, obj);
        row.push_back(colorize(to_string(cls.size), to_string(cls.size), color));
      }
      matrix.push_back(std::move(row));
    }
    out += render_rows(matrix);
  }
  return out;
}

}  // namespace gg
