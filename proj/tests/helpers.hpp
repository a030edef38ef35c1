#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "grasp_gauge/model.hpp"

namespace gg::testing {

inline std::string read_fixture(const std::string& name) {
  const std::string path = std::string(GG_FIXTURES_DIR) + "/" + name;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read fixture " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Minimal valid profile: precision spans 100 / 50 / 0, absolute max 120.
inline HandProfile sample_profile() {
  HandProfile p;
  p.name = "sample";
  p.configuration = "cylindrical";
  p.absolute_max_span = 120;
  p.width = {10, 60, false};
  PrecisionSet set;
  set.contact_choice = ContactChoice::Fingertip;
  set.samples = {
      {PoseLabel::open(), 100, 60},
      {PoseLabel::intermediate(1), 50, 75},
      {PoseLabel::closed(), 0, 80},
  };
  p.precision = std::move(set);
  p.provenance = {"tests", MeasurementMethod::Physical, {}};
  return p;
}

inline HandProfile profile_with_range(Millimeters m, Millimeters M) {
  HandProfile p = sample_profile();
  p.absolute_max_span = M + 20;
  p.precision->samples = {
      {PoseLabel::open(), M, 60},
      {PoseLabel::intermediate(1), (m + M) / 2, 70},
      {PoseLabel::closed(), m, 80},
  };
  return p;
}

}  // namespace gg::testing
