#pragma once

#include <stdexcept>
#include <string>

namespace ucr {

enum class Errc {
  negative_entry,
  not_normalized,
  degenerate_sum,
  dimension_mismatch,
  group_too_large,
  bad_parameter,
  invalid_state,
  empty_list,
  parse_error,
};

const char* errc_name(Errc code) noexcept;

/// Validation failure raised by every library entry point.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::negative_entry: return "NegativeEntry";
    case Errc::not_normalized: return "NotNormalized";
    case Errc::degenerate_sum: return "DegenerateSum";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::group_too_large: return "GroupTooLarge";
    case Errc::bad_parameter: return "BadParameter";
    case Errc::invalid_state: return "InvalidState";
    case Errc::empty_list: return "EmptyList";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

}  // namespace ucr
