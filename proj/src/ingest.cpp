#include "grasp_gauge/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "json.hpp"

namespace gg {

const char* to_string(ParseDiagnostic::Kind kind) {
  switch (kind) {
    case ParseDiagnostic::Kind::SyntaxError: return "SyntaxError";
    case ParseDiagnostic::Kind::UnknownField: return "UnknownField";
    case ParseDiagnostic::Kind::TypeMismatch: return "TypeMismatch";
    case ParseDiagnostic::Kind::MissingField: return "MissingField";
    case ParseDiagnostic::Kind::UnitError: return "UnitError";
  }
  return "SyntaxError";
}

std::string format_diagnostic(const ParseDiagnostic& d) {
  return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " +
         (d.severity == Severity::Error ? "error" : "warning") + ": " +
         std::string(to_string(d.kind)) + ": " + d.message;
}

namespace {

using nlohmann::json;

// Maps byte offsets in the source text to 1-based line/column pairs and finds
// key occurrences, so diagnostics can point inside the input.
class TextLocator {
public:
  explicit TextLocator(std::string_view text) : text_(text) {}

  std::pair<int, int> position(std::size_t offset) const {
    offset = std::min(offset, text_.size());
    int line = 1;
    std::size_t line_start = 0;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text_[i] == '\n') {
        ++line;
        line_start = i + 1;
      }
    }
    return {line, static_cast<int>(offset - line_start) + 1};
  }

  std::size_t find_key(const std::string& key, std::size_t from) const {
    const std::string needle = "\"" + key + "\"";
    const std::size_t pos = text_.find(needle, std::min(from, text_.size()));
    return pos == std::string_view::npos ? from : pos;
  }

private:
  std::string_view text_;
};

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text), locator_(text) {}

  std::vector<ParseDiagnostic>&& take_diagnostics() { return std::move(diagnostics_); }

  bool has_errors() const {
    return std::any_of(diagnostics_.begin(), diagnostics_.end(),
                       [](const ParseDiagnostic& d) { return d.severity == Severity::Error; });
  }

  std::optional<json> parse_document() {
    json doc = json::parse(text_, nullptr, false);
    if (doc.is_discarded()) {
      // Re-parse with exceptions for the error position and message.
      try {
        [[maybe_unused]] auto reparse = json::parse(text_);
        report(ParseDiagnostic::Kind::SyntaxError, Severity::Error, "malformed JSON", 0);
      } catch (const json::parse_error& e) {
        report(ParseDiagnostic::Kind::SyntaxError, Severity::Error, e.what(),
               e.byte > 0 ? e.byte - 1 : 0);
      }
      return std::nullopt;
    }
    if (!doc.is_object()) {
      report(ParseDiagnostic::Kind::SyntaxError, Severity::Error,
             "document root must be an object", 0);
      return std::nullopt;
    }
    return doc;
  }

  void report(ParseDiagnostic::Kind kind, Severity severity, const std::string& message,
              std::size_t offset) {
    const auto [line, col] = locator_.position(offset);
    diagnostics_.push_back({line, col, kind, severity, message});
  }

  void report_at_key(ParseDiagnostic::Kind kind, Severity severity, const std::string& message,
                     const std::string& key, std::size_t scope) {
    report(kind, severity, message, locator_.find_key(key, scope));
  }

  std::size_t key_offset(const std::string& key, std::size_t scope) const {
    return locator_.find_key(key, scope);
  }

  void check_unknown_fields(const json& obj, const std::set<std::string>& known,
                            const std::string& path, std::size_t scope) {
    for (const auto& [key, value] : obj.items()) {
      (void)value;
      if (!known.count(key)) {
        report_at_key(ParseDiagnostic::Kind::UnknownField, Severity::Warning,
                      "unknown field \"" + path + key + "\" ignored", key, scope);
      }
    }
  }

  std::optional<double> get_length(const json& obj, const std::string& key,
                                   const std::string& path, std::size_t scope,
                                   bool required = true) {
    if (!obj.contains(key)) {
      if (required) {
        report(ParseDiagnostic::Kind::MissingField, Severity::Error,
               "missing field \"" + path + key + "\"", scope);
      }
      return std::nullopt;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) {
      report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                    "field \"" + path + key + "\" must be a number", key, scope);
      return std::nullopt;
    }
    const double raw = v.get<double>();
    if (raw < 0) {
      report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                    "field \"" + path + key + "\" must be a non-negative length", key, scope);
      return std::nullopt;
    }
    return round_mm(raw);
  }

  std::optional<std::string> get_string(const json& obj, const std::string& key,
                                        const std::string& path, std::size_t scope,
                                        bool required = true) {
    if (!obj.contains(key)) {
      if (required) {
        report(ParseDiagnostic::Kind::MissingField, Severity::Error,
               "missing field \"" + path + key + "\"", scope);
      }
      return std::nullopt;
    }
    const json& v = obj.at(key);
    if (!v.is_string()) {
      report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                    "field \"" + path + key + "\" must be a string", key, scope);
      return std::nullopt;
    }
    return v.get<std::string>();
  }

  std::optional<bool> get_bool(const json& obj, const std::string& key, const std::string& path,
                               std::size_t scope, bool required = true) {
    if (!obj.contains(key)) {
      if (required) {
        report(ParseDiagnostic::Kind::MissingField, Severity::Error,
               "missing field \"" + path + key + "\"", scope);
      }
      return std::nullopt;
    }
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
      report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                    "field \"" + path + key + "\" must be a boolean", key, scope);
      return std::nullopt;
    }
    return v.get<bool>();
  }

  const json* get_object(const json& obj, const std::string& key, const std::string& path,
                         std::size_t scope, bool required = true) {
    if (!obj.contains(key)) {
      if (required) {
        report(ParseDiagnostic::Kind::MissingField, Severity::Error,
               "missing field \"" + path + key + "\"", scope);
      }
      return nullptr;
    }
    const json& v = obj.at(key);
    if (!v.is_object()) {
      report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                    "field \"" + path + key + "\" must be an object", key, scope);
      return nullptr;
    }
    return &v;
  }

  const json* get_array(const json& obj, const std::string& key, const std::string& path,
                        std::size_t scope, bool required = true) {
    if (!obj.contains(key)) {
      if (required) {
        report(ParseDiagnostic::Kind::MissingField, Severity::Error,
               "missing field \"" + path + key + "\"", scope);
      }
      return nullptr;
    }
    const json& v = obj.at(key);
    if (!v.is_array()) {
      report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                    "field \"" + path + key + "\" must be an array", key, scope);
      return nullptr;
    }
    return &v;
  }

  void check_schema_version(const json& doc) {
    if (!doc.contains("schema_version")) {
      report(ParseDiagnostic::Kind::MissingField, Severity::Error,
             "missing field \"schema_version\"", 0);
      return;
    }
    const json& v = doc.at("schema_version");
    if (!v.is_number_integer() || v.get<int>() != 1) {
      report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                    "unsupported schema_version; expected 1", "schema_version", 0);
    }
  }

  std::optional<PoseLabel> get_pose(const json& obj, const std::string& path, std::size_t scope) {
    const auto text = get_string(obj, "pose", path, scope);
    if (!text) return std::nullopt;
    const auto label = parse_pose_label(*text);
    if (!label) {
      report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                    "field \"" + path + "pose\" must be open, closed, or intermediate-<n>",
                    "pose", scope);
    }
    return label;
  }

private:
  std::string_view text_;
  TextLocator locator_;
  std::vector<ParseDiagnostic> diagnostics_;
};

std::optional<ContactChoice> parse_contact_choice(const std::string& text) {
  if (text == "distal_midpoint") return ContactChoice::DistalMidpoint;
  if (text == "fingertip") return ContactChoice::Fingertip;
  return std::nullopt;
}

const char* to_string(ContactChoice c) {
  return c == ContactChoice::DistalMidpoint ? "distal_midpoint" : "fingertip";
}

const char* to_string(MeasurementMethod m) {
  return m == MeasurementMethod::Physical ? "physical" : "cad_model";
}

std::optional<PrecisionSet> parse_precision(Parser& p, const json& obj, std::size_t scope) {
  PrecisionSet set;
  p.check_unknown_fields(obj, {"contact_choice", "samples"}, "precision.", scope);
  if (const auto choice = p.get_string(obj, "contact_choice", "precision.", scope)) {
    if (const auto parsed = parse_contact_choice(*choice)) {
      set.contact_choice = *parsed;
    } else {
      p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                      "contact_choice must be distal_midpoint or fingertip", "contact_choice",
                      scope);
    }
  }
  if (const json* samples = p.get_array(obj, "samples", "precision.", scope)) {
    std::size_t cursor = p.key_offset("samples", scope);
    for (std::size_t i = 0; i < samples->size(); ++i) {
      const json& s = (*samples)[i];
      const std::string path = "precision.samples[" + std::to_string(i) + "].";
      if (!s.is_object()) {
        p.report(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                 "sample entries must be objects", cursor);
        continue;
      }
      cursor = p.key_offset("pose", cursor + 1);
      p.check_unknown_fields(s, {"pose", "span", "depth"}, path, cursor);
      PoseSample sample;
      const auto pose = p.get_pose(s, path, cursor);
      const auto span = p.get_length(s, "span", path, cursor);
      const auto depth = p.get_length(s, "depth", path, cursor);
      if (pose) sample.pose = *pose;
      if (span) sample.span = *span;
      if (depth) sample.depth = *depth;
      set.samples.push_back(sample);
    }
  }
  return set;
}

std::optional<PowerCylindricalSet> parse_power_cylindrical(Parser& p, const json& obj,
                                                           std::size_t scope) {
  PowerCylindricalSet set;
  p.check_unknown_fields(obj, {"poses"}, "power_cylindrical.", scope);
  const json* poses = p.get_array(obj, "poses", "power_cylindrical.", scope);
  if (!poses) return set;
  std::size_t cursor = p.key_offset("poses", scope);
  for (std::size_t i = 0; i < poses->size(); ++i) {
    const json& entry = (*poses)[i];
    const std::string path = "power_cylindrical.poses[" + std::to_string(i) + "].";
    if (!entry.is_object()) {
      p.report(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
               "pose entries must be objects", cursor);
      continue;
    }
    cursor = p.key_offset("pose", cursor + 1);
    p.check_unknown_fields(entry, {"pose", "sections"}, path, cursor);
    PowerCylindricalPose pose;
    if (const auto label = p.get_pose(entry, path, cursor)) pose.pose = *label;
    if (const json* sections = p.get_array(entry, "sections", path, cursor)) {
      std::size_t sec_cursor = cursor;
      for (std::size_t j = 0; j < sections->size(); ++j) {
        const json& s = (*sections)[j];
        const std::string spath = path + "sections[" + std::to_string(j) + "].";
        if (!s.is_object()) {
          p.report(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                   "section entries must be objects", sec_cursor);
          continue;
        }
        sec_cursor = p.key_offset("line", sec_cursor + 1);
        p.check_unknown_fields(s, {"line", "span", "depth"}, spath, sec_cursor);
        CylindricalSection section;
        if (const auto line = p.get_string(s, "line", spath, sec_cursor)) {
          if (const auto parsed = parse_section_line(*line)) {
            section.line = *parsed;
          } else {
            p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                            "line must be inner, mid, or span_line", "line", sec_cursor);
          }
        }
        if (const auto span = p.get_length(s, "span", spath, sec_cursor)) section.span = *span;
        if (const auto depth = p.get_length(s, "depth", spath, sec_cursor)) section.depth = *depth;
        pose.sections.push_back(section);
      }
    }
    set.poses.push_back(std::move(pose));
  }
  return set;
}

std::optional<PowerSphericalSet> parse_power_spherical(Parser& p, const json& obj,
                                                       std::size_t scope) {
  PowerSphericalSet set;
  p.check_unknown_fields(obj, {"poses"}, "power_spherical.", scope);
  const json* poses = p.get_array(obj, "poses", "power_spherical.", scope);
  if (!poses) return set;
  std::size_t cursor = p.key_offset("poses", scope);
  for (std::size_t i = 0; i < poses->size(); ++i) {
    const json& entry = (*poses)[i];
    const std::string path = "power_spherical.poses[" + std::to_string(i) + "].";
    if (!entry.is_object()) {
      p.report(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
               "pose entries must be objects", cursor);
      continue;
    }
    cursor = p.key_offset("pose", cursor + 1);
    p.check_unknown_fields(
        entry, {"pose", "base_diameter", "widest_diameter", "distal_diameter"}, path, cursor);
    PowerSphericalPose pose;
    if (const auto label = p.get_pose(entry, path, cursor)) pose.pose = *label;
    if (const auto v = p.get_length(entry, "base_diameter", path, cursor)) {
      pose.section.base_diameter = *v;
    }
    if (const auto v = p.get_length(entry, "widest_diameter", path, cursor)) {
      pose.section.widest_diameter = *v;
    }
    if (const auto v = p.get_length(entry, "distal_diameter", path, cursor)) {
      pose.section.distal_diameter = *v;
    }
    set.poses.push_back(pose);
  }
  return set;
}

Provenance parse_provenance(Parser& p, const json& obj, std::size_t scope) {
  Provenance out;
  p.check_unknown_fields(obj, {"measurer", "method", "photo_refs"}, "provenance.", scope);
  if (const auto v = p.get_string(obj, "measurer", "provenance.", scope, false)) out.measurer = *v;
  if (const auto v = p.get_string(obj, "method", "provenance.", scope, false)) {
    if (*v == "physical") {
      out.method = MeasurementMethod::Physical;
    } else if (*v == "cad_model") {
      out.method = MeasurementMethod::CadModel;
    } else {
      p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                      "method must be physical or cad_model", "method", scope);
    }
  }
  if (obj.contains("photo_refs")) {
    if (const json* refs = p.get_array(obj, "photo_refs", "provenance.", scope)) {
      for (const auto& r : *refs) {
        if (r.is_string()) {
          out.photo_refs.push_back(r.get<std::string>());
        } else {
          p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                          "photo_refs entries must be strings", "photo_refs", scope);
        }
      }
    }
  }
  return out;
}

}  // namespace

ParseResult<HandProfile> parse_hand_profile(std::string_view text) {
  Parser p(text);
  ParseResult<HandProfile> result;
  const auto doc = p.parse_document();
  if (!doc) {
    result.diagnostics = p.take_diagnostics();
    return result;
  }

  p.check_schema_version(*doc);
  p.check_unknown_fields(*doc,
                         {"schema_version", "name", "configuration", "units",
                          "absolute_max_span", "width", "precision", "power_cylindrical",
                          "power_spherical", "provenance"},
                         "", 0);

  HandProfile profile;
  if (const auto v = p.get_string(*doc, "name", "", 0)) profile.name = *v;
  if (const auto v = p.get_string(*doc, "configuration", "", 0, false)) profile.configuration = *v;

  if (const auto units = p.get_string(*doc, "units", "", 0)) {
    if (*units != "mm") {
      p.report_at_key(ParseDiagnostic::Kind::UnitError, Severity::Error,
                      "only \"mm\" units are supported, got \"" + *units + "\"", "units", 0);
    }
  }

  if (const auto v = p.get_length(*doc, "absolute_max_span", "", 0)) profile.absolute_max_span = *v;

  if (const json* width = p.get_object(*doc, "width", "", 0)) {
    const std::size_t scope = p.key_offset("width", 0);
    p.check_unknown_fields(*width, {"min_width", "max_width", "object_height_unbounded"},
                           "width.", scope);
    if (const auto v = p.get_length(*width, "min_width", "width.", scope)) {
      profile.width.min_width = *v;
    }
    if (const auto v = p.get_length(*width, "max_width", "width.", scope)) {
      profile.width.max_width = *v;
    }
    if (const auto v = p.get_bool(*width, "object_height_unbounded", "width.", scope, false)) {
      profile.width.object_height_unbounded = *v;
    }
  }

  if (doc->contains("precision")) {
    if (const json* obj = p.get_object(*doc, "precision", "", 0)) {
      profile.precision = parse_precision(p, *obj, p.key_offset("precision", 0));
    }
  }
  if (doc->contains("power_cylindrical")) {
    if (const json* obj = p.get_object(*doc, "power_cylindrical", "", 0)) {
      profile.power_cylindrical =
          parse_power_cylindrical(p, *obj, p.key_offset("power_cylindrical", 0));
    }
  }
  if (doc->contains("power_spherical")) {
    if (const json* obj = p.get_object(*doc, "power_spherical", "", 0)) {
      profile.power_spherical = parse_power_spherical(p, *obj, p.key_offset("power_spherical", 0));
    }
  }
  if (doc->contains("provenance")) {
    if (const json* obj = p.get_object(*doc, "provenance", "", 0)) {
      profile.provenance = parse_provenance(p, *obj, p.key_offset("provenance", 0));
    }
  }

  result.diagnostics = p.take_diagnostics();
  bool ok = std::none_of(result.diagnostics.begin(), result.diagnostics.end(),
                         [](const ParseDiagnostic& d) { return d.severity == Severity::Error; });
  if (ok) result.value = std::move(profile);
  return result;
}

ParseResult<std::vector<ObjectSpec>> parse_object_set(std::string_view text) {
  Parser p(text);
  ParseResult<std::vector<ObjectSpec>> result;
  const auto doc = p.parse_document();
  if (!doc) {
    result.diagnostics = p.take_diagnostics();
    return result;
  }

  p.check_schema_version(*doc);
  p.check_unknown_fields(*doc, {"schema_version", "objects"}, "", 0);

  std::vector<ObjectSpec> objects;
  std::set<std::string> seen_names;
  if (const json* arr = p.get_array(*doc, "objects", "", 0)) {
    std::size_t cursor = p.key_offset("objects", 0);
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const json& entry = (*arr)[i];
      const std::string path = "objects[" + std::to_string(i) + "].";
      if (!entry.is_object()) {
        p.report(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                 "object entries must be objects", cursor);
        continue;
      }
      cursor = p.key_offset("name", cursor + 1);
      p.check_unknown_fields(entry, {"name", "id", "shape", "grasp_diameter", "height"}, path,
                             cursor);
      ObjectSpec spec;
      if (const auto v = p.get_string(entry, "name", path, cursor)) {
        spec.name = *v;
        if (!seen_names.insert(*v).second) {
          p.report_at_key(ParseDiagnostic::Kind::UnknownField, Severity::Warning,
                          "duplicate object name \"" + *v + "\"", "name", cursor);
        }
      }
      if (const auto v = p.get_string(entry, "id", path, cursor, false)) spec.id = *v;
      if (const auto v = p.get_string(entry, "shape", path, cursor)) {
        if (const auto shape = parse_object_shape(*v)) {
          spec.shape = *shape;
        } else {
          p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                          "shape must be cylinder, sphere, or box", "shape", cursor);
        }
      }
      if (const auto v = p.get_length(entry, "grasp_diameter", path, cursor)) {
        if (*v <= 0) {
          p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                          "grasp_diameter must be positive", "grasp_diameter", cursor);
        }
        spec.grasp_diameter = *v;
      }
      if (const auto v = p.get_length(entry, "height", path, cursor)) {
        if (*v <= 0) {
          p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                          "height must be positive", "height", cursor);
        }
        spec.height = *v;
      }
      objects.push_back(std::move(spec));
    }
  }

  result.diagnostics = p.take_diagnostics();
  bool ok = std::none_of(result.diagnostics.begin(), result.diagnostics.end(),
                         [](const ParseDiagnostic& d) { return d.severity == Severity::Error; });
  if (ok) result.value = std::move(objects);
  return result;
}

namespace {

std::optional<BaseRange> parse_base(Parser& p, const json& obj, const std::string& key,
                                    std::size_t scope) {
  if (!obj.contains(key)) {
    p.report(ParseDiagnostic::Kind::MissingField, Severity::Error,
             "missing field \"bases." + key + "\"", scope);
    return std::nullopt;
  }
  const json& v = obj.at(key);
  if (v.is_number()) return BaseRange{v.get<double>(), v.get<double>()};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    BaseRange r{v[0].get<double>(), v[1].get<double>()};
    if (r.min > r.max) {
      p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                      "bases." + key + " interval must be [min, max]", key, scope);
      return std::nullopt;
    }
    return r;
  }
  p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                  "bases." + key + " must be a number or [min, max]", key, scope);
  return std::nullopt;
}

std::optional<Degrees> parse_limits(Parser& p, const json& obj, const std::string& key,
                                    const std::string& path, std::size_t scope) {
  if (!obj.contains(key)) {
    p.report(ParseDiagnostic::Kind::MissingField, Severity::Error,
             "missing field \"" + path + key + "\"", scope);
    return std::nullopt;
  }
  const json& v = obj.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                    "field \"" + path + key + "\" must be [min_deg, max_deg]", key, scope);
    return std::nullopt;
  }
  Degrees d{v[0].get<double>(), v[1].get<double>()};
  if (d.min > d.max) {
    p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                    "field \"" + path + key + "\" interval is empty", key, scope);
    return std::nullopt;
  }
  return d;
}

std::optional<PlanarFinger> parse_finger(Parser& p, const json& obj, const std::string& key,
                                         std::size_t scope) {
  const std::string path = "fingers." + key + ".";
  if (!obj.contains(key)) {
    p.report(ParseDiagnostic::Kind::MissingField, Severity::Error,
             "missing field \"fingers." + key + "\"", scope);
    return std::nullopt;
  }
  const json& f = obj.at(key);
  if (!f.is_object()) {
    p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                    "fingers." + key + " must be an object", key, scope);
    return std::nullopt;
  }
  const std::size_t fscope = p.key_offset(key, scope);
  p.check_unknown_fields(f, {"L1", "L2", "theta1_limits", "theta2_limits"}, path, fscope);
  PlanarFinger finger;
  bool ok = true;
  if (const auto v = p.get_length(f, "L1", path, fscope)) {
    finger.proximal_length = *v;
    if (*v <= 0) {
      p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                      "L1 must be positive", "L1", fscope);
      ok = false;
    }
  } else {
    ok = false;
  }
  if (const auto v = p.get_length(f, "L2", path, fscope)) {
    finger.distal_length = *v;
    if (*v <= 0) {
      p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                      "L2 must be positive", "L2", fscope);
      ok = false;
    }
  } else {
    ok = false;
  }
  if (const auto v = parse_limits(p, f, "theta1_limits", path, fscope)) {
    finger.theta1_limits = *v;
  } else {
    ok = false;
  }
  if (const auto v = parse_limits(p, f, "theta2_limits", path, fscope)) {
    finger.theta2_limits = *v;
  } else {
    ok = false;
  }
  if (!ok) return std::nullopt;
  return finger;
}

}  // namespace

ParseResult<PlanarHandModel> parse_hand_model(std::string_view text) {
  Parser p(text);
  ParseResult<PlanarHandModel> result;
  const auto doc = p.parse_document();
  if (!doc) {
    result.diagnostics = p.take_diagnostics();
    return result;
  }

  p.check_schema_version(*doc);
  p.check_unknown_fields(*doc, {"schema_version", "name", "bases", "fingers", "contact_choice"},
                         "", 0);

  PlanarHandModel model;
  if (const auto v = p.get_string(*doc, "name", "", 0, false)) model.name = *v;
  if (const auto choice = p.get_string(*doc, "contact_choice", "", 0)) {
    if (const auto parsed = parse_contact_choice(*choice)) {
      model.contact_choice = *parsed;
    } else {
      p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                      "contact_choice must be distal_midpoint or fingertip", "contact_choice", 0);
    }
  }
  if (const json* bases = p.get_object(*doc, "bases", "", 0)) {
    const std::size_t scope = p.key_offset("bases", 0);
    p.check_unknown_fields(*bases, {"left", "right"}, "bases.", scope);
    const auto left = parse_base(p, *bases, "left", scope);
    const auto right = parse_base(p, *bases, "right", scope);
    if (left && right) {
      if (left->max >= right->min) {
        p.report_at_key(ParseDiagnostic::Kind::TypeMismatch, Severity::Error,
                        "left base must stay left of the right base", "bases", 0);
      }
      model.left_base = *left;
      model.right_base = *right;
    }
  }
  if (const json* fingers = p.get_object(*doc, "fingers", "", 0)) {
    const std::size_t scope = p.key_offset("fingers", 0);
    p.check_unknown_fields(*fingers, {"left", "right"}, "fingers.", scope);
    if (const auto f = parse_finger(p, *fingers, "left", scope)) model.left_finger = *f;
    if (const auto f = parse_finger(p, *fingers, "right", scope)) model.right_finger = *f;
  }

  result.diagnostics = p.take_diagnostics();
  bool ok = std::none_of(result.diagnostics.begin(), result.diagnostics.end(),
                         [](const ParseDiagnostic& d) { return d.severity == Severity::Error; });
  if (ok) result.value = std::move(model);
  return result;
}

namespace {

// Canonical serializer: stable key order, lengths with two fractional digits.
class Writer {
public:
  std::string str() && { return std::move(out_); }

  void begin_object() {
    open("{");
  }
  void end_object() {
    close("}");
  }
  void begin_array_field(const std::string& key) {
    field_prefix();
    out_ += quote(key) + ": ";
    open("[");
    just_opened_ = true;
  }
  void end_array() { close("]"); }
  void begin_object_field(const std::string& key) {
    field_prefix();
    out_ += quote(key) + ": ";
    open("{");
    just_opened_ = true;
  }
  void begin_array_object() {
    field_prefix();
    open("{");
    just_opened_ = true;
  }

  void field(const std::string& key, const std::string& value) {
    field_prefix();
    out_ += quote(key) + ": " + quote(value);
  }
  void field_raw(const std::string& key, const std::string& raw) {
    field_prefix();
    out_ += quote(key) + ": " + raw;
  }
  void field_mm(const std::string& key, Millimeters v) { field_raw(key, fmt_mm(v)); }
  void field_bool(const std::string& key, bool v) { field_raw(key, v ? "true" : "false"); }
  void string_element(const std::string& value) {
    field_prefix();
    out_ += quote(value);
  }

  static std::string fmt_mm(Millimeters v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    std::string s = buf;
    if (s == "-0.00") s = "0.00";
    return s;
  }

  static std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out += buf;
          } else {
            out += c;
          }
      }
    }
    return out + "\"";
  }

private:
  void open(const char* brace) {
    if (!just_opened_ && !out_.empty() && out_.back() != ' ') {
      // element in an array context handled by field_prefix callers
    }
    out_ += brace;
    ++indent_;
    just_opened_ = true;
  }

  void close(const char* brace) {
    --indent_;
    out_ += "\n" + std::string(indent_ * 2, ' ') + brace;
    just_opened_ = false;
  }

  void field_prefix() {
    if (just_opened_) {
      just_opened_ = false;
    } else {
      out_ += ",";
    }
    out_ += "\n" + std::string(indent_ * 2, ' ');
  }

  std::string out_;
  int indent_ = 0;
  bool just_opened_ = true;
};

}  // namespace

std::string serialize_hand_profile(const HandProfile& profile) {
  Writer w;
  w.begin_object();
  w.field_raw("schema_version", "1");
  w.field("name", profile.name);
  w.field("configuration", profile.configuration);
  w.field("units", "mm");
  w.field_mm("absolute_max_span", profile.absolute_max_span);

  w.begin_object_field("width");
  w.field_mm("min_width", profile.width.min_width);
  w.field_mm("max_width", profile.width.max_width);
  w.field_bool("object_height_unbounded", profile.width.object_height_unbounded);
  w.end_object();

  if (profile.precision) {
    w.begin_object_field("precision");
    w.field("contact_choice", to_string(profile.precision->contact_choice));
    w.begin_array_field("samples");
    for (const auto& s : profile.precision->samples) {
      w.begin_array_object();
      w.field("pose", to_string(s.pose));
      w.field_mm("span", s.span);
      w.field_mm("depth", s.depth);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }

  if (profile.power_cylindrical) {
    w.begin_object_field("power_cylindrical");
    w.begin_array_field("poses");
    for (const auto& pose : profile.power_cylindrical->poses) {
      w.begin_array_object();
      w.field("pose", to_string(pose.pose));
      w.begin_array_field("sections");
      for (const auto& s : pose.sections) {
        w.begin_array_object();
        w.field("line", to_string(s.line));
        w.field_mm("span", s.span);
        w.field_mm("depth", s.depth);
        w.end_object();
      }
      w.end_array();
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }

  if (profile.power_spherical) {
    w.begin_object_field("power_spherical");
    w.begin_array_field("poses");
    for (const auto& pose : profile.power_spherical->poses) {
      w.begin_array_object();
      w.field("pose", to_string(pose.pose));
      w.field_mm("base_diameter", pose.section.base_diameter);
      w.field_mm("widest_diameter", pose.section.widest_diameter);
      w.field_mm("distal_diameter", pose.section.distal_diameter);
      w.end_object();
    }
    w.end_array();
    w.end_object();
  }

  w.begin_object_field("provenance");
  w.field("measurer", profile.provenance.measurer);
  w.field("method", to_string(profile.provenance.method));
  w.begin_array_field("photo_refs");
  for (const auto& r : profile.provenance.photo_refs) w.string_element(r);
  w.end_array();
  w.end_object();

  w.end_object();
  return std::move(w).str() + "\n";
}

}  // namespace gg
