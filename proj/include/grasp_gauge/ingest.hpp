#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grasp_gauge/kinematics.hpp"
#include "grasp_gauge/model.hpp"

namespace gg {

struct ParseDiagnostic {
  enum class Kind { SyntaxError, UnknownField, TypeMismatch, MissingField, UnitError };

  int line = 1;    // 1-based, points inside the input text
  int column = 1;  // 1-based
  Kind kind = Kind::SyntaxError;
  Severity severity = Severity::Error;
  std::string message;
};

const char* to_string(ParseDiagnostic::Kind kind);
std::string format_diagnostic(const ParseDiagnostic& d);

template <typename T>
struct ParseResult {
  std::optional<T> value;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const {
    if (!value) return false;
    for (const auto& d : diagnostics) {
      if (d.severity == Severity::Error) return false;
    }
    return true;
  }
};

/// Parses a hand profile document. A returned profile has NOT been validated
/// against the measurement protocol; run validate_profile separately.
/// On failure all diagnostics found are reported, not just the first.
ParseResult<HandProfile> parse_hand_profile(std::string_view text);

/// Deterministic canonical serialization: stable key order, lengths with two
/// fractional digits. parse_hand_profile(serialize_hand_profile(p)) == p.
std::string serialize_hand_profile(const HandProfile& profile);

ParseResult<std::vector<ObjectSpec>> parse_object_set(std::string_view text);

ParseResult<PlanarHandModel> parse_hand_model(std::string_view text);

}  // namespace gg
