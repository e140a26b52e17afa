#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "latfol/builtin_models.hpp"
#include "latfol/errors.hpp"
#include "latfol/model.hpp"

namespace latfol {

/// Scalar or flat array value from a config file.
using ConfigValue = std::variant<double, bool, std::string, std::vector<double>>;

/// Minimal INI-with-types reader: `[section]` headers, `key = value` lines,
/// `#` comments.  Values: numbers, booleans, quoted strings, and flat
/// `[v, v, ...]` number arrays.  Duplicate keys are errors.
using ConfigTable = std::map<std::string, std::map<std::string, ConfigValue>>;

ConfigTable parse_config(const std::string& text);
ConfigTable load_config(const std::string& path);

/// Model declaration: which built-in interaction, with its parameters.
struct ModelConfig {
  std::string kind;  // fk-periodic | fk-quasiperiodic | long-range-pair |
                     // three-body-demo | antiferromagnetic-demo | decoupled-demo
  double epsilon = 0.0;
  std::vector<double> alpha;  // quasi-periodic frequency vector
  int cutoff = 3;             // long-range-pair only

  InteractionSpec build() const;
  /// Medium for hull solving; nullopt for models without one.
  std::optional<TorusPotential> medium() const;
};

struct HullConfig {
  int n_trunc = 32;
  double tol = 1e-12;
  double divisor_floor = 1e-4;
  int max_newton = 20;
  std::vector<double> eps_schedule;  // empty: single stage at model epsilon
};

struct VerifyConfig {
  double beta_min = 0.0;
  double beta_max = 1.0;
  int beta_count = 21;
  int w_max = 15;
  double omega = 0.0;
  double gamma_tol = 1e-8;
  double stationarity_tol = 1e-8;
  double equilibrium_tol = 1e-10;
  double edge_threshold = 1e-9;
  unsigned seed = 0;
  int threads = 1;
  int window_halfwidth = 25;  // foliation window is [-hw, hw]
};

struct RunConfig {
  ModelConfig model;
  HullConfig hull;
  VerifyConfig verify;
  std::string output_dir = "out";

  std::vector<double> beta_grid() const;
};

/// Builds a RunConfig from a parsed table; unknown sections or keys are
/// ParseError, as are out-of-range values.
RunConfig make_run_config(const ConfigTable& table);
RunConfig load_run_config(const std::string& path);

}  // namespace latfol
