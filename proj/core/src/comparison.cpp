#include "latfol/comparison.hpp"

#include <cmath>
#include <deque>
#include <sstream>

#include "latfol/quadrature.hpp"

namespace latfol {

void validate_scenario(const InteractionSpec& spec, ContactScenario& sc) {
  if (sc.window.empty())
    throw ContractViolation("contact scenario: empty window");
  bool has_pos = false, has_neg = false;
  for (const auto& [s, v] : sc.eta) {
    if (v > 0.0) has_pos = true;
    if (v < 0.0) has_neg = true;
  }
  if (has_pos && has_neg)
    throw ContractViolation("contact scenario: eta changes sign");
  sc.sign = has_pos ? 1 : has_neg ? -1 : 0;

  double r0 = residual(spec, sc.base, sc.contact_site);
  double r1 = residual(spec, sc.base.overlay(sc.eta), sc.contact_site);
  if (std::abs(r1 - r0) > sc.scenario_tol) {
    std::ostringstream os;
    os << "contact scenario: residual mismatch at " << sc.contact_site.str()
       << ": " << r0 << " vs " << r1;
    throw ContractViolation(os.str());
  }
}

double hilbert_identity_check(const InteractionSpec& spec,
                              const LatticeConfiguration& u_star,
                              const Perturbation& eta, const Site& site,
                              int quadrature_n) {
  double lhs = residual(spec, u_star.overlay(eta), site) -
               residual(spec, u_star, site);
  Quadrature q = gauss_legendre_01(quadrature_n);
  double rhs = 0.0;
  for (const auto& [j, eta_j] : eta) {
    if (eta_j == 0.0) continue;
    double integral = 0.0;
    for (int n = 0; n < quadrature_n; ++n) {
      Perturbation scaled;
      for (const auto& [s, v] : eta) scaled[s] = q.nodes[n] * v;
      integral += q.weights[n] *
                  hessian_entry(spec, u_star.overlay(scaled), site, j);
    }
    rhs += eta_j * integral;
  }
  return std::abs(lhs - rhs);
}

namespace {

double eta_at(const Perturbation& eta, const Site& s) {
  auto it = eta.find(s);
  return it == eta.end() ? 0.0 : it->second;
}

void certify_zero(const Perturbation& eta, const Site& s, double tol,
                  const char* where) {
  double v = eta_at(eta, s);
  if (std::abs(v) > tol) {
    std::ostringstream os;
    os << where << ": eta = " << v << " at " << s.str()
       << " exceeds contact_tol " << tol;
    throw ContactCounterexample(os.str(), s, v);
  }
}

InteractionGraph scenario_graph(const InteractionSpec& spec,
                                const ContactScenario& sc) {
  // Widen by the interaction range so window-boundary sites keep their
  // outward neighbors: the certified set must exceed the window itself.
  SiteSet domain;
  int rb = spec.range_bound;
  for (const Site& s : sc.window)
    for (int dx = -rb; dx <= rb; ++dx)
      for (int dy = spec.dim > 1 ? -rb : 0; dy <= (spec.dim > 1 ? rb : 0); ++dy)
        for (int dz = spec.dim > 2 ? -rb : 0; dz <= (spec.dim > 2 ? rb : 0); ++dz)
          domain.insert(s + Site(dx, dy, dz));
  domain.insert(sc.contact_site);
  return build_graph(spec, {sc.base, sc.base.overlay(sc.eta)}, domain);
}

}  // namespace

SiteSet contact_check(const InteractionSpec& spec, const ContactScenario& sc,
                      const InteractionGraph& g) {
  ContactScenario checked = sc;
  validate_scenario(spec, checked);
  certify_zero(sc.eta, sc.contact_site, sc.contact_tol, "contact_check");
  SiteSet zero{sc.contact_site};
  for (const Site& j : g.neighbors(sc.contact_site)) {
    certify_zero(sc.eta, j, sc.contact_tol, "contact_check");
    zero.insert(j);
  }
  return zero;
}

SiteSet contact_check(const InteractionSpec& spec, const ContactScenario& sc) {
  return contact_check(spec, sc, scenario_graph(spec, sc));
}

SiteSet contact_propagation(const InteractionSpec& spec, const ContactScenario& sc,
                            const InteractionGraph& g) {
  ContactScenario checked = sc;
  validate_scenario(spec, checked);

  // Both configurations must satisfy the equilibrium equations on the window.
  LatticeConfiguration shifted = sc.base.overlay(sc.eta);
  for (const Site& s : sc.window) {
    double r0 = residual(spec, sc.base, s);
    double r1 = residual(spec, shifted, s);
    if (std::abs(r0) > sc.scenario_tol || std::abs(r1) > sc.scenario_tol) {
      std::ostringstream os;
      os << "contact_propagation: residual " << std::max(std::abs(r0), std::abs(r1))
         << " at window site " << s.str();
      throw ContractViolation(os.str());
    }
  }

  certify_zero(sc.eta, sc.contact_site, sc.contact_tol, "contact_propagation");
  SiteSet zero{sc.contact_site};
  SiteSet visited;  // window sites whose neighbors were certified
  std::deque<Site> queue;
  // The touching site seeds propagation; comparison steps run only at window
  // sites, where the equilibrium equations hold on both sides.
  if (sc.window.count(sc.contact_site)) {
    queue.push_back(sc.contact_site);
    visited.insert(sc.contact_site);
  } else {
    for (const Site& j : g.neighbors(sc.contact_site))
      if (sc.window.count(j) && !visited.count(j)) {
        certify_zero(sc.eta, j, sc.contact_tol, "contact_propagation");
        zero.insert(j);
        queue.push_back(j);
        visited.insert(j);
      }
  }
  while (!queue.empty()) {
    Site i = queue.front();
    queue.pop_front();
    for (const Site& j : g.neighbors(i)) {
      certify_zero(sc.eta, j, sc.contact_tol, "contact_propagation");
      zero.insert(j);
      if (sc.window.count(j) && !visited.count(j)) {
        queue.push_back(j);
        visited.insert(j);
      }
    }
  }

  SiteSet unreached;
  for (const Site& s : sc.window)
    if (!visited.count(s)) unreached.insert(s);
  if (!unreached.empty()) {
    std::ostringstream os;
    os << "contact_propagation: stalled; unreached window component {";
    bool first = true;
    for (const Site& s : unreached) {
      if (!first) os << ", ";
      os << s.str();
      first = false;
    }
    os << "}";
    throw PropagationStall(os.str());
  }
  return zero;
}

SiteSet contact_propagation(const InteractionSpec& spec, const ContactScenario& sc) {
  return contact_propagation(spec, sc, scenario_graph(spec, sc));
}

}  // namespace latfol
