#pragma once

#include <string>

#include "latfol/graph.hpp"
#include "latfol/model.hpp"

namespace latfol {

/// A touching pair: an equilibrium u* on `window` and a single-signed
/// perturbation eta with eta = 0 at `contact_site`, where the residuals of
/// u* and u*+eta agree.
struct ContactScenario {
  LatticeConfiguration base;  // u*
  Perturbation eta;
  Site contact_site;
  SiteSet window;  // sites where the equilibrium equations hold
  int sign = 0;    // +1, -1, or 0 for eta identically zero (set by validate)
  double scenario_tol = 1e-9;
  double contact_tol = 1e-8;
};

/// Checks the scenario invariants (definite sign, residual agreement at the
/// contact site) and records the sign.  Throws ContractViolation otherwise.
void validate_scenario(const InteractionSpec& spec, ContactScenario& sc);

/// A certified-zero assertion failed: eta does not vanish where the
/// comparison argument says it must.
struct ContactCounterexample : Error {
  Site site;
  double eta_value = 0.0;
  ContactCounterexample(const std::string& what, const Site& s, double v)
      : Error(what), site(s), eta_value(v) {}
};

/// The contact set is not reachable from the touching site; message names
/// the unreached component.
struct PropagationStall : Error {
  using Error::Error;
};

/// |LHS - RHS| of the residual-difference identity
///   E_i(u*+eta) - E_i(u*) = sum_j eta_j int_0^1 H_ij(u* + t eta) dt
/// with the integral evaluated by Gauss-Legendre quadrature.
double hilbert_identity_check(const InteractionSpec& spec,
                              const LatticeConfiguration& u_star,
                              const Perturbation& eta, const Site& site,
                              int quadrature_n = 16);

/// One comparison step: given eta = 0 at the contact site and residual
/// agreement there, every graph-neighbor of the contact site must also carry
/// eta = 0.  Returns the certified-zero set {i*} + neighbors.
SiteSet contact_check(const InteractionSpec& spec, const ContactScenario& sc,
                      const InteractionGraph& g);
SiteSet contact_check(const InteractionSpec& spec, const ContactScenario& sc);

/// Iterated contact_check through the connected contact set: both u* and
/// u*+eta must be equilibria on sc.window.  Certifies eta = 0 on the window
/// and its distance-1 frontier.  Throws PropagationStall when part of the
/// window cannot be reached from the touching site.
SiteSet contact_propagation(const InteractionSpec& spec, const ContactScenario& sc,
                            const InteractionGraph& g);
SiteSet contact_propagation(const InteractionSpec& spec, const ContactScenario& sc);

}  // namespace latfol
