#include "conduct/dataset_io.hpp"

#include <array>
#include <fstream>
#include <string>
#include <vector>

#include "conduct/csv.hpp"
#include "conduct/error.hpp"

namespace conduct {

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  const auto& x = data.exog;
  out << kDatasetHeader << '\n';
  for (Eigen::Index t = 0; t < data.markets(); ++t) {
    out << (t + 1);
    for (double v : {data.P[t], data.Q[t], x.Y[t], x.ZR[t], x.W[t], x.R[t], x.H[t], x.K[t]}) {
      out << ',' << csv::format(v);
    }
    out << '\n';
  }
}

void write_dataset_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot open " + path.string() + " for writing");
  write_dataset_csv(out, data);
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

Dataset read_dataset_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::ParseError, "line 1: empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kDatasetHeader) {
    throw Error(Errc::ParseError, "line 1: expected header '" + std::string(kDatasetHeader) + "'");
  }

  std::vector<std::array<double, 8>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = csv::split(line);
    if (fields.size() != 9) {
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected 9 fields, got " +
                                        std::to_string(fields.size()));
    }
    std::array<double, 8> row{};
    for (std::size_t j = 0; j < 8; ++j) {
      if (!csv::parse(fields[j + 1], row[j])) {
        throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": bad number '" +
                                          std::string(fields[j + 1]) + "'");
      }
    }
    rows.push_back(row);
  }
  if (rows.empty()) throw Error(Errc::ParseError, "no data rows");

  const auto T = static_cast<Eigen::Index>(rows.size());
  Dataset data;
  data.P.resize(T);
  data.Q.resize(T);
  auto& x = data.exog;
  for (Vector* v : {&x.Y, &x.ZR, &x.W, &x.R, &x.H, &x.K}) v->resize(T);
  for (Eigen::Index t = 0; t < T; ++t) {
    const auto& r = rows[static_cast<std::size_t>(t)];
    data.P[t] = r[0];
    data.Q[t] = r[1];
    x.Y[t] = r[2];
    x.ZR[t] = r[3];
    x.W[t] = r[4];
    x.R[t] = r[5];
    x.H[t] = r[6];
    x.K[t] = r[7];
  }
  return data;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  return read_dataset_csv(in);
}

}  // namespace conduct
