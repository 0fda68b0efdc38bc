#include "conduct/error.hpp"

namespace conduct {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::UnderIdentified: return "UnderIdentified";
    case Errc::NegativeSd: return "NegativeSd";
    case Errc::NegativeSigma: return "NegativeSigma";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::NonpositiveQuantity: return "NonpositiveQuantity";
    case Errc::InvalidParams: return "InvalidParams";
    case Errc::InvalidDemandEstimate: return "InvalidDemandEstimate";
    case Errc::NonpositiveVariance: return "NonpositiveVariance";
    case Errc::CoordinateMismatch: return "CoordinateMismatch";
    case Errc::CellFailed: return "CellFailed";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace conduct
