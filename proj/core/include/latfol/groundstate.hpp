#pragma once

#include <string>
#include <vector>

#include "latfol/foliation.hpp"
#include "latfol/graph.hpp"
#include "latfol/model.hpp"

namespace latfol {

struct MinimizeParams {
  double stationarity_tol = 1e-9;
  int max_iter = 200;
  double armijo_c = 1e-4;
  int max_backtracks = 60;
};

struct MinimizeResult {
  Perturbation phi_star;
  double gamma_star = 0.0;   // Gamma(phi*; u, window)
  double stationarity = 0.0; // max |E_i(u + phi*)| over the window
  int iterations = 0;
};

/// Finite-window minimization of the windowed energy of u+phi over phi
/// supported in `window` (equivalently maximization of Gamma), from phi = 0,
/// by damped Newton with an Armijo gradient-descent fallback.
MinimizeResult minimize_window(const InteractionSpec& spec,
                               const LatticeConfiguration& u, const SiteSet& window,
                               const MinimizeParams& params = {});

struct OracleResult {
  double gamma_max = 0.0;
  Perturbation argmax;
  long evaluations = 0;
};

/// Exhaustive Gamma evaluation over a product grid on small windows
/// (<= 3 sites).  Ties break toward lexicographically smaller phi.
OracleResult brute_force_oracle(const InteractionSpec& spec,
                                const LatticeConfiguration& u, const SiteSet& window,
                                double lo = -2.0, double hi = 2.0,
                                double step = 1e-2);

struct WindowRecord {
  double beta = 0.0;
  SiteSet window;  // already the connected hull
  double gamma_star = 0.0;
  double stationarity = 0.0;
  int iterations = 0;
  bool pass = false;
};

struct HypothesisReport {
  bool ferromagnetic = false;
  bool transitive = false;
  bool coercive = false;
  bool axioms = false;
  FerromagneticReport ferro_detail;
  int component_count = 0;
  AxiomReport axiom_detail;
  bool all_pass = false;
  std::string failed;  // name of the first failed hypothesis, if any
};

struct VerifyParams {
  int w_max = 15;
  double gamma_tol = 1e-8;
  double stationarity_tol = 1e-8;
  double edge_threshold = 1e-9;
  unsigned seed = 0;  // probe-configuration randomness
  int probe_count = 3;
  int threads = 1;
};

struct VerifyReport {
  HypothesisReport hypotheses;
  std::vector<WindowRecord> records;  // beta-major, window-size-minor order
  bool pass = false;
  long violations = 0;
};

/// Contiguous 1-D windows of sizes 1..w_max centered at the origin.
std::vector<SiteSet> default_window_schedule(int w_max);

/// Certifies the ground-state property of the family: checks the theorem's
/// hypotheses, then minimizes over every (beta, connected-hull window) pair.
/// Hypothesis failures leave `records` empty; the conclusion is not tested.
VerifyReport verify_theorem(const InteractionSpec& spec, const FoliationFamily& fam,
                            const std::vector<SiteSet>& window_schedule,
                            const VerifyParams& params = {});

struct HypothesisFailure : Error {
  std::string hypothesis;
  explicit HypothesisFailure(const std::string& name, const std::string& what)
      : Error(what), hypothesis(name) {}
};

}  // namespace latfol
