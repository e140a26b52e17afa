#pragma once

#include <functional>
#include <string>
#include <vector>

#include "latfol/hull.hpp"
#include "latfol/model.hpp"

namespace latfol {

/// A beta-parameterized family of configurations, continuous in beta, from
/// which foliation members are sampled.
struct FoliationGenerator {
  /// u_i(beta); must be continuous and (for strict families) increasing in beta.
  std::function<double(const Site&, double)> value;
  /// Sampled member over [n_min, n_max]; default wraps `value`.
  std::function<LatticeConfiguration(double, int, int)> member;
  bool from_hull = false;
  double hull_sup = 0.0;      // sup |h| bound when from_hull
  double ordering_margin_hint = 1.0;
  std::string description;
};

/// The exact family u_i^beta = i*omega + beta.
FoliationGenerator linear_generator(double omega);

/// Family of hull translates u_i^beta = i*omega + beta + h(i*omega*alpha + beta*alpha).
FoliationGenerator hull_generator(const HullFunction& h);

struct AxiomCheck {
  bool pass = false;
  std::string detail;
};

struct AxiomReport {
  AxiomCheck a1;         // members are equilibria on the window
  AxiomCheck a2;         // ordered in beta
  AxiomCheck a2_strict;  // strictly ordered; margin recorded
  AxiomCheck a3;         // divergence at the tails
  AxiomCheck a4;         // every value reached (IVT witness bracketing)
  double ordering_margin = 0.0;  // min gap between consecutive members
  bool all_pass = false;
};

struct FoliationFamily {
  std::vector<double> beta_grid;
  SiteSet window;
  std::vector<LatticeConfiguration> members;   // one per beta
  std::vector<double> max_residuals;           // per member, over the window
  FoliationGenerator generator;
  AxiomReport axioms;
};

struct FoliationParams {
  double equilibrium_tol = 1e-10;
  double beta_tail = 1e3;        // extra samples at +-beta_tail for A3
  double a3_threshold = 100.0;
  std::vector<double> a4_targets = {-1.5, -0.5, 0.0, 0.7, 1.3};
  double a4_value_tol = 1e-9;
  double a4_bracket_tol = 1e-10;
};

/// Samples the members and checks A1 at build time; throws FoliationError
/// naming the worst site if any member fails the equilibrium tolerance.
FoliationFamily build_foliation(const InteractionSpec& spec,
                                const FoliationGenerator& gen,
                                const std::vector<double>& beta_grid,
                                const SiteSet& window,
                                const FoliationParams& params = {});

/// (A2)/(A2)'/(A3)/(A4) on the sampled family, using the generator's
/// continuity in beta for the IVT certification of (A4).
AxiomReport check_axioms(const InteractionSpec& spec, const FoliationFamily& fam,
                         const FoliationParams& params = {});

/// "beta,max_residual,ordering_margin" rows, one per member.
std::string foliation_report_csv(const FoliationFamily& fam);

struct FoliationError : Error {
  using Error::Error;
};

}  // namespace latfol
