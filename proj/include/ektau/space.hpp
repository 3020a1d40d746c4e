#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ektau {

// Errors are split by cause so the CLI can map them onto exit codes.
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct parameter_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Validation { Standard, Permissive };

// The pair (kappa, tau) selecting the homogeneous geometry.  The family is
// defined only away from kappa = 4 tau^2 (where the space is a space form
// with 6-dimensional isometry group).
struct SpaceParams {
  double kappa = 0;
  double tau = 0;

  SpaceParams() = default;
  SpaceParams(double k, double t, Validation mode = Validation::Standard)
      : kappa(k), tau(t) {
    if (mode == Validation::Standard) {
      if (std::abs(kappa - 4.0 * tau * tau) < 1e-12)
        throw parameter_error("SpaceParams: kappa - 4 tau^2 must be nonzero");
      if (kappa != -1.0 && kappa != 0.0 && kappa != 1.0)
        throw parameter_error("SpaceParams: kappa must be -1, 0 or +1 (use permissive mode otherwise)");
    }
  }

  double kappa4t2() const { return kappa - 4.0 * tau * tau; }
  bool product() const { return tau == 0.0; }
};

enum class ChartKind { CartanEktau, PolarProduct, HyperboloidProduct };

inline ChartKind chart_kind_from_name(const std::string& s) {
  if (s == "cartan") return ChartKind::CartanEktau;
  if (s == "polar") return ChartKind::PolarProduct;
  if (s == "hyperboloid") return ChartKind::HyperboloidProduct;
  throw parameter_error("unknown chart name: " + s);
}

inline std::string chart_name(ChartKind k) {
  switch (k) {
    case ChartKind::CartanEktau: return "cartan";
    case ChartKind::PolarProduct: return "polar";
    default: return "hyperboloid";
  }
}

struct SpaceConfig {
  SpaceParams params;
  ChartKind chart = ChartKind::CartanEktau;
  Validation mode = Validation::Standard;
};

// Plain-text key=value configuration: kappa, tau, chart, validation_mode.
inline SpaceConfig parse_space_config(const std::string& text) {
  double kappa = 0, tau = 0;
  std::string chart = "cartan", mode = "standard";
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key == "kappa") kappa = std::stod(val);
    else if (key == "tau") tau = std::stod(val);
    else if (key == "chart") chart = val;
    else if (key == "validation_mode") mode = val;
    else if (!key.empty()) throw parameter_error("space config: unknown key '" + key + "'");
  }
  SpaceConfig cfg;
  cfg.mode = (mode == "permissive") ? Validation::Permissive : Validation::Standard;
  cfg.params = SpaceParams(kappa, tau, cfg.mode);
  cfg.chart = chart_kind_from_name(chart);
  return cfg;
}

}  // namespace ektau
