#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "projshape/types.hpp"

namespace projshape {

// Configuration file formats. JSON is canonical:
//   {"d": int, "k": int, "matrix": [[float; d+1]; k]}
// CSV is k lines of d+1 comma-separated floats with d, k inferred.
// Both round-trip finite doubles exactly (shortest round-trip formatting).

inline Configuration configuration_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("d") || !j.contains("k") || !j.contains("matrix"))
    throw Error(errc::parse_error, "configuration JSON needs fields d, k, matrix");
  int d, k;
  try {
    d = j.at("d").get<int>();
    k = j.at("k").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::parse_error, std::string("bad d/k field: ") + e.what());
  }
  const auto& rows = j.at("matrix");
  if (!rows.is_array() || static_cast<int>(rows.size()) != k)
    throw Error(errc::parse_error, "matrix must be an array of k rows");
  Eigen::MatrixXd m(k, d + 1);
  for (int i = 0; i < k; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != d + 1)
      throw Error(errc::parse_error, "matrix row " + std::to_string(i + 1) + " must have d+1 entries");
    for (int c = 0; c <= d; ++c) {
      const auto& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) throw Error(errc::parse_error, "matrix entries must be numbers");
      m(i, c) = v.get<double>();
    }
  }
  return Configuration(d, k, std::move(m));
}

inline nlohmann::json configuration_to_json(const Configuration& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < c.k(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j <= c.d(); ++j) row.push_back(c.matrix()(i, j));
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"d", c.d()}, {"k", c.k()}, {"matrix", std::move(rows)}};
}

namespace detail {

inline std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace detail

inline Configuration configuration_from_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      std::string cell = line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const std::size_t a = cell.find_first_not_of(" \t\r");
      if (a == std::string::npos) throw Error(errc::parse_error, "empty CSV cell");
      const std::size_t b = cell.find_last_not_of(" \t\r");
      cell = cell.substr(a, b - a + 1);
      double value;
      auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size())
        throw Error(errc::parse_error, "cannot parse CSV number '" + cell + "'");
      row.push_back(value);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(errc::parse_error, "ragged CSV rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(errc::parse_error, "empty CSV input");
  const int k = static_cast<int>(rows.size());
  const int cols = static_cast<int>(rows.front().size());
  Eigen::MatrixXd m(k, cols);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return Configuration(cols - 1, k, std::move(m));
}

inline void configuration_to_csv(const Configuration& c, std::ostream& out) {
  for (int i = 0; i < c.k(); ++i) {
    for (int j = 0; j <= c.d(); ++j) {
      if (j) out << ',';
      out << detail::format_double(c.matrix()(i, j));
    }
    out << '\n';
  }
}

enum class ConfigFormat { json, csv };

inline ConfigFormat format_for_path(const std::string& path) {
  const auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return ext == "csv" ? ConfigFormat::csv : ConfigFormat::json;
}

inline Configuration load_configuration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(errc::parse_error, "cannot open '" + path + "'");
  if (format_for_path(path) == ConfigFormat::csv) return configuration_from_csv(in);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::parse_error, std::string("invalid JSON in '") + path + "': " + e.what());
  }
  return configuration_from_json(j);
}

inline void save_configuration(const Configuration& c, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(errc::parse_error, "cannot open '" + path + "' for writing");
  if (format_for_path(path) == ConfigFormat::csv) {
    configuration_to_csv(c, out);
  } else {
    out << configuration_to_json(c).dump(2) << '\n';
  }
  if (!out) throw Error(errc::parse_error, "write failed for '" + path + "'");
}

}  // namespace projshape
