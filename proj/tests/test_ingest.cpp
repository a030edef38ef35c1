#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>

#include "grasp_gauge/ingest.hpp"
#include "helpers.hpp"

using namespace gg;
using gg::testing::read_fixture;
using gg::testing::sample_profile;

namespace {

const char* kMinimalProfile = R"({
  "schema_version": 1,
  "name": "minimal",
  "units": "mm",
  "absolute_max_span": 120,
  "width": {"min_width": 10, "max_width": 60},
  "precision": {
    "contact_choice": "fingertip",
    "samples": [
      {"pose": "open", "span": 100, "depth": 50},
      {"pose": "intermediate-1", "span": 50, "depth": 60},
      {"pose": "closed", "span": 0, "depth": 65}
    ]
  }
})";

bool has_kind(const std::vector<ParseDiagnostic>& diags, ParseDiagnostic::Kind kind) {
  return std::any_of(diags.begin(), diags.end(),
                     [&](const ParseDiagnostic& d) { return d.kind == kind; });
}

bool profiles_equal(const HandProfile& a, const HandProfile& b) {
  return a.name == b.name && a.configuration == b.configuration &&
         a.absolute_max_span == b.absolute_max_span && a.width.min_width == b.width.min_width &&
         a.width.max_width == b.width.max_width &&
         a.width.object_height_unbounded == b.width.object_height_unbounded &&
         a.precision == b.precision && a.power_cylindrical == b.power_cylindrical &&
         a.power_spherical == b.power_spherical && a.provenance == b.provenance;
}

}  // namespace

TEST_CASE("minimal valid document parses") {
  const auto result = parse_hand_profile(kMinimalProfile);
  REQUIRE(result.ok());
  CHECK(result.value->name == "minimal");
  CHECK(result.value->precision->samples.size() == 3);
  CHECK(result.value->precision->samples[0].span == 100);
}

TEST_CASE("non-mm units are a UnitError") {
  std::string doc = kMinimalProfile;
  const auto pos = doc.find("\"mm\"");
  doc.replace(pos, 4, "\"in\"");
  const auto result = parse_hand_profile(doc);
  CHECK(!result.ok());
  CHECK(has_kind(result.diagnostics, ParseDiagnostic::Kind::UnitError));
}

TEST_CASE("negative lengths are a TypeMismatch") {
  std::string doc = kMinimalProfile;
  const auto pos = doc.find("\"span\": 100");
  doc.replace(pos, 11, "\"span\": -5 ");
  const auto result = parse_hand_profile(doc);
  CHECK(!result.ok());
  CHECK(has_kind(result.diagnostics, ParseDiagnostic::Kind::TypeMismatch));

  // Independent oracle: a negative literal follows the span key in the text.
  const auto span_at = doc.find("\"span\":");
  CHECK(doc.substr(span_at, 16).find("-") != std::string::npos);
}

TEST_CASE("all diagnostics are reported, not just the first") {
  std::string doc = kMinimalProfile;
  doc.replace(doc.find("\"mm\""), 4, "\"in\"");
  doc.replace(doc.find("\"span\": 100"), 11, "\"span\": -5 ");
  const auto result = parse_hand_profile(doc);
  CHECK(result.diagnostics.size() >= 2);
}

TEST_CASE("diagnostics carry positions inside the input") {
  std::string doc = kMinimalProfile;
  doc.replace(doc.find("\"mm\""), 4, "\"in\"");
  const auto result = parse_hand_profile(doc);
  REQUIRE(!result.diagnostics.empty());
  int lines = 1;
  for (char c : doc) lines += c == '\n';
  for (const auto& d : result.diagnostics) {
    CHECK(d.line >= 1);
    CHECK(d.line <= lines);
    CHECK(d.column >= 1);
  }
  // The units error points at the units line.
  CHECK(result.diagnostics.front().line == 4);
}

TEST_CASE("missing required fields are reported") {
  const auto result = parse_hand_profile(R"({"schema_version": 1, "units": "mm"})");
  CHECK(!result.ok());
  CHECK(has_kind(result.diagnostics, ParseDiagnostic::Kind::MissingField));
}

TEST_CASE("unknown fields warn and are dropped") {
  std::string doc = kMinimalProfile;
  doc.insert(doc.find("\"name\""), "\"favorite_color\": \"teal\",\n  ");
  const auto result = parse_hand_profile(doc);
  REQUIRE(result.ok());  // warnings never block
  CHECK(has_kind(result.diagnostics, ParseDiagnostic::Kind::UnknownField));
}

TEST_CASE("malformed JSON yields a positioned SyntaxError") {
  const auto result = parse_hand_profile("{\n  \"name\": \n}");
  CHECK(!result.value.has_value());
  REQUIRE(!result.diagnostics.empty());
  CHECK(result.diagnostics[0].kind == ParseDiagnostic::Kind::SyntaxError);
  CHECK(result.diagnostics[0].line == 3);
}

TEST_CASE("fixture profiles round-trip exactly") {
  for (const char* name : {"model_o_cylindrical.json", "model_o_spherical.json"}) {
    const auto parsed = parse_hand_profile(read_fixture(name));
    REQUIRE(parsed.ok());
    const auto text = serialize_hand_profile(*parsed.value);
    const auto reparsed = parse_hand_profile(text);
    REQUIRE(reparsed.ok());
    CHECK(profiles_equal(*parsed.value, *reparsed.value));
    CHECK(serialize_hand_profile(*reparsed.value) == text);  // canonical after one pass
  }
}

TEST_CASE("serialization is deterministic and carries the + marker") {
  auto p = sample_profile();
  p.width.object_height_unbounded = true;
  const auto a = serialize_hand_profile(p);
  const auto b = serialize_hand_profile(p);
  CHECK(a == b);
  CHECK(a.find("\"object_height_unbounded\": true") != std::string::npos);

  const auto reparsed = parse_hand_profile(a);
  REQUIRE(reparsed.ok());
  CHECK(profiles_equal(p, *reparsed.value));
}

TEST_CASE("numbers are stored at 0.01 mm resolution") {
  std::string doc = kMinimalProfile;
  doc.replace(doc.find("\"depth\": 50"), 11, "\"depth\": 50.005");
  const auto result = parse_hand_profile(doc);
  REQUIRE(result.ok());
  // Half-away rounding: 50.005 lands on the 50.01 grid point.
  CHECK(result.value->precision->samples[0].depth == doctest::Approx(50.01).epsilon(1e-12));
}

TEST_CASE("object set parsing") {
  const auto result = parse_object_set(read_fixture("objects_ycb.json"));
  REQUIRE(result.ok());
  REQUIRE(result.value->size() == 7);
  CHECK((*result.value)[0].name == "soup can");  // input order preserved
  CHECK((*result.value)[0].grasp_diameter == 66);
  CHECK((*result.value)[6].name == "pitcher");
}

TEST_CASE("single-cylinder object file") {
  const auto result = parse_object_set(
      R"({"schema_version": 1, "objects": [
          {"name": "can", "shape": "cylinder", "grasp_diameter": 66, "height": 120}]})");
  REQUIRE(result.ok());
  REQUIRE(result.value->size() == 1);
  CHECK(!(*result.value)[0].id.has_value());
}

TEST_CASE("duplicate object names warn but both are kept") {
  const auto result = parse_object_set(
      R"({"schema_version": 1, "objects": [
          {"name": "can", "shape": "cylinder", "grasp_diameter": 66, "height": 120},
          {"name": "can", "shape": "cylinder", "grasp_diameter": 30, "height": 80}]})");
  REQUIRE(result.ok());
  CHECK(result.value->size() == 2);
  bool warned = false;
  for (const auto& d : result.diagnostics) warned |= d.severity == Severity::Warning;
  CHECK(warned);
}

TEST_CASE("empty object list parses cleanly") {
  const auto result = parse_object_set(R"({"schema_version": 1, "objects": []})");
  REQUIRE(result.ok());
  CHECK(result.value->empty());
  CHECK(result.diagnostics.empty());
}

TEST_CASE("hand model parsing") {
  const auto result = parse_hand_model(read_fixture("two_link.json"));
  REQUIRE(result.ok());
  CHECK(result.value->left_base.min == -40);
  CHECK(result.value->left_finger.proximal_length == 50);
  CHECK(result.value->contact_choice == ContactChoice::Fingertip);

  const auto jaw = parse_hand_model(read_fixture("parallel_jaw.json"));
  REQUIRE(jaw.ok());
  CHECK(!jaw.value->right_base.fixed());
  CHECK(jaw.value->right_base.max == 105);
}

TEST_CASE("hand model rejects overlapping bases") {
  const auto result = parse_hand_model(
      R"({"schema_version": 1, "contact_choice": "fingertip",
          "bases": {"left": 10.0, "right": 5.0},
          "fingers": {
            "left": {"L1": 50, "L2": 30, "theta1_limits": [60, 120], "theta2_limits": [0, 90]},
            "right": {"L1": 50, "L2": 30, "theta1_limits": [60, 120], "theta2_limits": [0, 90]}}})");
  CHECK(!result.ok());
}

TEST_CASE("parser survives random byte input") {
  std::mt19937 rng(2026);
  std::uniform_int_distribution<int> len(0, 64);
  std::uniform_int_distribution<int> byte(0, 255);
  for (int i = 0; i < 20000; ++i) {
    std::string noise;
    const int n = len(rng);
    for (int j = 0; j < n; ++j) noise.push_back(static_cast<char>(byte(rng)));
    (void)parse_hand_profile(noise);
    (void)parse_object_set(noise);
    (void)parse_hand_model(noise);
  }
}
