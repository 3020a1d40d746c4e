#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ektau/grid.hpp"

// Deterministic serialization: fixed column order, 17 significant digits,
// fixed row order.  Identical configuration must give byte-identical files.

namespace ektau {

inline std::string num17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline void write_csv(const std::string& path, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parameter_error("cannot open output file: " + path);
  for (size_t i = 0; i < columns.size(); ++i) {
    if (i) out << ',';
    out << columns[i];
  }
  out << '\n';
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << num17(row[i]);
    }
    out << '\n';
  }
}

inline nlohmann::json to_json(const ResidualStats& st) {
  return {{"max", st.max}, {"mean", st.mean}, {"count", st.count}};
}

inline nlohmann::json to_json(const StructureReport& rep) {
  return {{"eq3", to_json(rep.eq3)},     {"eq4", to_json(rep.eq4)},
          {"eq5", to_json(rep.eq5)},     {"eq6", to_json(rep.eq6)},
          {"eq7", to_json(rep.eq7)},     {"eq8", to_json(rep.eq8)},
          {"unit_T", to_json(rep.unit_T)}, {"h_constant", rep.h_constant},
          {"h_variation", rep.h_variation}};
}

inline std::vector<std::vector<double>> structure_rows(const StructureReport& rep) {
  std::vector<std::vector<double>> rows;
  for (const StructureRow& r : rep.rows)
    rows.push_back({r.u, r.v, r.eq3, r.eq4, r.eq5, r.eq6, r.eq7, r.eq8, r.unit_T,
                    r.qar_abs});
  return rows;
}

inline const std::vector<std::string>& structure_columns() {
  static const std::vector<std::string> cols = {
      "u", "v", "eq3", "eq4", "eq5", "eq6", "eq7", "eq8", "unit_T", "qar_abs"};
  return cols;
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parameter_error("cannot open output file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace ektau
