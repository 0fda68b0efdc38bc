#pragma once

#include <filesystem>
#include <iosfwd>

#include "conduct/dgp.hpp"

namespace conduct {

inline constexpr const char* kDatasetHeader = "t,P,Q,Y,ZR,W,R,H,K";

// One row per market, t counted from 1, 17 significant digits. The latent
// errors are not written.
void write_dataset_csv(std::ostream& out, const Dataset& data);
void write_dataset_csv(const std::filesystem::path& path, const Dataset& data);

// Parses the format above. The error vectors of the result are empty and
// params/seed keep their defaults. Throws ParseError with the line number.
Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace conduct
