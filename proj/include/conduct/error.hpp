#pragma once

#include <stdexcept>
#include <string>

namespace conduct {

enum class Errc {
  RankDeficient,
  DimensionMismatch,
  UnderIdentified,
  NegativeSd,
  NegativeSigma,
  DegenerateDenominator,
  NonpositiveQuantity,
  InvalidParams,
  InvalidDemandEstimate,
  NonpositiveVariance,
  CoordinateMismatch,
  CellFailed,
  ParseError,
  InvalidConfig,
  IoError,
};

const char* errc_name(Errc code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace conduct
