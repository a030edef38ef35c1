#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "grasp_gauge/ingest.hpp"
#include "grasp_gauge/kinematics.hpp"
#include "grasp_gauge/model.hpp"
#include "grasp_gauge/render.hpp"
#include "grasp_gauge/sizing.hpp"
#include "grasp_gauge/workspace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return ss.str();
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return false;
  out << content;
  out.flush();
  return out.good();
}

void print_diagnostics(const std::string& path, const std::vector<gg::ParseDiagnostic>& diags) {
  for (const auto& d : diags) {
    std::cerr << path << ":" << gg::format_diagnostic(d) << "\n";
  }
}

void print_issues(const std::string& path, const gg::ValidationReport& report) {
  for (const auto& i : report.issues) {
    std::cerr << path << ": " << (i.severity == gg::Severity::Error ? "error" : "warning") << ": "
              << i.code << ": " << i.message;
    if (!i.path.empty()) std::cerr << " (at " << i.path << ")";
    std::cerr << "\n";
  }
}

// Parses and protocol-validates a profile; nullopt means diagnostics were
// printed and *exit_code holds the right status.
std::optional<gg::HandProfile> load_profile(const std::string& path, int* exit_code) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << path << ": cannot read file\n";
    *exit_code = kExitIo;
    return std::nullopt;
  }
  auto parsed = gg::parse_hand_profile(*text);
  print_diagnostics(path, parsed.diagnostics);
  if (!parsed.ok()) {
    *exit_code = kExitInvalid;
    return std::nullopt;
  }
  const auto report = gg::validate_profile(*parsed.value);
  print_issues(path, report);
  if (report.has_errors()) {
    *exit_code = kExitInvalid;
    return std::nullopt;
  }
  return std::move(parsed.value);
}

std::optional<std::vector<gg::ObjectSpec>> load_objects(const std::string& path, int* exit_code) {
  const auto text = read_file(path);
  if (!text) {
    std::cerr << path << ": cannot read file\n";
    *exit_code = kExitIo;
    return std::nullopt;
  }
  auto parsed = gg::parse_object_set(*text);
  print_diagnostics(path, parsed.diagnostics);
  if (!parsed.ok()) {
    *exit_code = kExitInvalid;
    return std::nullopt;
  }
  return std::move(parsed.value);
}

bool color_enabled(bool color_flag) {
  return color_flag && std::getenv("GRASP_GAUGE_NO_COLOR") == nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hand workspace measurement toolkit"};
  app.require_subcommand(1);

  std::string profile_path, objects_path, model_path, out_path;
  std::string format = "table";
  std::string grasp = "precision";
  bool color_flag = false;
  int n_poses = 3;
  double grid_step = 0.5;
  std::vector<std::string> compare_paths;

  auto* validate = app.add_subcommand("validate", "Parse and protocol-check a hand profile");
  validate->add_option("profile", profile_path, "hand profile JSON")->required();

  auto* classify = app.add_subcommand("classify", "Classify object sizes against a hand");
  classify->add_option("profile", profile_path, "hand profile JSON")->required();
  classify->add_option("objects", objects_path, "object set JSON")->required();
  classify->add_option("--format", format, "table or csv")
      ->check(CLI::IsMember({"table", "csv"}));
  classify->add_flag("--color", color_flag, "ANSI-colored size classes");

  auto* plot = app.add_subcommand("plot", "Render a span-depth plot as SVG");
  plot->add_option("profile", profile_path, "hand profile JSON")->required();
  plot->add_option("--grasp", grasp, "precision or power-cyl")
      ->check(CLI::IsMember({"precision", "power-cyl"}));
  plot->add_option("--out", out_path, "output SVG path")->required();

  auto* compare = app.add_subcommand("compare", "Compare measurement summaries across hands");
  compare->add_option("profiles", compare_paths, "two or more hand profile JSON files")
      ->expected(-1);
  compare->add_option("--objects", objects_path, "object set JSON for a class matrix");
  compare->add_flag("--color", color_flag, "ANSI-colored size classes");

  auto* derive = app.add_subcommand("derive", "Derive a profile from a planar hand model");
  derive->add_option("model", model_path, "planar hand model JSON")->required();
  derive->add_option("--poses", n_poses, "number of poses (>= 3)")->check(CLI::Range(3, 99));
  derive->add_option("--grid-step", grid_step, "joint grid resolution in degrees")
      ->check(CLI::PositiveNumber);
  derive->add_option("--out", out_path, "output profile JSON path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      int code = kExitOk;
      if (!load_profile(profile_path, &code)) return code;
      return kExitOk;
    }

    if (classify->parsed()) {
      int code = kExitOk;
      const auto profile = load_profile(profile_path, &code);
      if (!profile) return code;
      const auto objects = load_objects(objects_path, &code);
      if (!objects) return code;
      const auto rows = gg::classify_rows(*profile, *objects);
      if (format == "csv") {
        std::cout << gg::format_classify_csv(rows);
      } else {
        std::cout << gg::format_classify_table(rows, color_enabled(color_flag));
      }
      return kExitOk;
    }

    if (plot->parsed()) {
      int code = kExitOk;
      const auto profile = load_profile(profile_path, &code);
      if (!profile) return code;

      gg::RenderSpec spec;
      if (grasp == "precision") {
        if (!profile->precision) {
          std::cerr << profile_path << ": error: MissingGraspSet: no precision set to plot\n";
          return kExitInvalid;
        }
        spec.series.emplace_back("precision", gg::build_precision_curve(*profile->precision));
      } else {
        if (!profile->power_cylindrical) {
          std::cerr << profile_path
                    << ": error: MissingGraspSet: no power_cylindrical set to plot\n";
          return kExitInvalid;
        }
        // One polyline per pose across the inner, mid, and span lines.
        for (const auto& pose : profile->power_cylindrical->poses) {
          gg::SpanDepthCurve curve;
          curve.source = gg::CurveSource::Measured;
          for (auto line :
               {gg::SectionLine::Inner, gg::SectionLine::Mid, gg::SectionLine::SpanLine}) {
            const auto* s = pose.section(line);
            curve.points.push_back({s->span, s->depth});
          }
          spec.series.emplace_back(gg::to_string(pose.pose), std::move(curve));
        }
      }
      if (!write_file(out_path, gg::render_svg(spec))) {
        std::cerr << out_path << ": cannot write file\n";
        return kExitIo;
      }
      return kExitOk;
    }

    if (compare->parsed()) {
      if (compare_paths.size() < 2) {
        std::cerr << "compare needs at least two profiles\n";
        return kExitInvalid;
      }
      int code = kExitOk;
      std::vector<gg::HandProfile> profiles;
      for (const auto& path : compare_paths) {
        const auto profile = load_profile(path, &code);
        if (!profile) return code;
        if (!profile->precision) {
          std::cerr << path << ": error: MissingGraspSet: compare needs precision sets\n";
          return kExitInvalid;
        }
        profiles.push_back(*profile);
      }
      std::optional<std::vector<gg::ObjectSpec>> objects;
      if (!objects_path.empty()) {
        objects = load_objects(objects_path, &code);
        if (!objects) return code;
      }
      std::cout << gg::format_compare_table(profiles, objects ? &*objects : nullptr,
                                            color_enabled(color_flag));
      return kExitOk;
    }

    if (derive->parsed()) {
      const auto text = read_file(model_path);
      if (!text) {
        std::cerr << model_path << ": cannot read file\n";
        return kExitIo;
      }
      auto parsed = gg::parse_hand_model(*text);
      print_diagnostics(model_path, parsed.diagnostics);
      if (!parsed.ok()) return kExitInvalid;
      const auto& model = *parsed.value;

      const auto curve = gg::derive_precision_curve(model, n_poses, grid_step);

      gg::HandProfile profile;
      profile.name = model.name.empty() ? "derived hand" : model.name;
      profile.configuration = "planar-derived";
      profile.absolute_max_span = gg::round_mm(gg::absolute_max_span(model, grid_step));
      profile.width = {0.0, 0.0, true};
      gg::PrecisionSet set;
      set.contact_choice = model.contact_choice;
      const auto& pts = curve.points;
      for (std::size_t i = pts.size(); i-- > 0;) {
        gg::PoseSample sample;
        const std::size_t rank = pts.size() - 1 - i;  // 0 = open
        if (rank == 0) {
          sample.pose = gg::PoseLabel::open();
        } else if (i == 0) {
          sample.pose = gg::PoseLabel::closed();
        } else {
          sample.pose = gg::PoseLabel::intermediate(static_cast<int>(rank));
        }
        sample.span = gg::round_mm(pts[i].span);
        sample.depth = gg::round_mm(pts[i].depth);
        set.samples.push_back(sample);
      }
      profile.precision = std::move(set);
      profile.provenance = {"kinematics-oracle", gg::MeasurementMethod::CadModel, {}};

      if (!write_file(out_path, gg::serialize_hand_profile(profile))) {
        std::cerr << out_path << ": cannot write file\n";
        return kExitIo;
      }
      return kExitOk;
    }
  } catch (const gg::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  return kExitOk;
}
