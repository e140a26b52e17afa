#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "latfol/errors.hpp"
#include "latfol/site.hpp"

namespace latfol {

/// Finitely supported overlay phi; sites not present carry value 0.
using Perturbation = std::map<Site, double>;

SiteSet support(const Perturbation& phi);

/// Trigonometric polynomial V on a torus T^d evaluated either at a point of
/// the torus or along the winding line x -> x*alpha.  d == 1 describes a
/// plain periodic medium; d >= 2 a quasi-periodic one.
struct TorusPotential {
  int d = 1;
  std::vector<double> alpha;  // length d
  // Fourier modes (k, coefficient); hermitian so that V is real-valued.
  std::vector<std::pair<std::vector<int>, std::complex<double>>> coeffs;

  bool empty() const { return coeffs.empty(); }

  double value(std::span<const double> theta) const;
  /// (alpha . grad) V at theta, and its second directional derivative.
  double dir_deriv(std::span<const double> theta) const;
  double dir_deriv2(std::span<const double> theta) const;

  /// Same three evaluations restricted to the winding line theta = x*alpha.
  double value_line(double x) const;
  double dir_deriv_line(double x) const;
  double dir_deriv2_line(double x) const;

  /// min over stored nonzero k of |k.alpha| (nonresonance diagnostic).
  double min_nonresonance() const;

  void validate() const;  // hermitian symmetry, shapes

  TorusPotential scaled(double factor) const;
};

/// One local energy term H_B.  `cell` lists the absolute sites of B in a
/// fixed order; the callbacks receive the configuration values in that order.
struct InteractionTerm {
  std::vector<Site> cell;
  int range = 0;  // Chebyshev diameter bound of the cell
  std::function<double(std::span<const double>)> energy;
  std::function<double(std::span<const double>, std::size_t)> grad;
  std::function<double(std::span<const double>, std::size_t, std::size_t)> hess;
  std::string label;
};

/// An interaction: a translation rule producing the terms anchored at each
/// base site.  Every term belongs to exactly one base, so enumerating bases
/// enumerates terms without duplication.
struct InteractionSpec {
  std::string name;
  int dim = 1;
  int range_bound = 2;  // every term has range < range_bound
  bool translation_invariant = true;
  std::optional<TorusPotential> medium;
  std::function<std::vector<InteractionTerm>(const Site&)> terms_at;
};

/// Background plus a finitely supported overlay.
class LatticeConfiguration {
 public:
  LatticeConfiguration() = default;
  explicit LatticeConfiguration(std::function<double(const Site&)> bg,
                                Perturbation phi = {})
      : background_(std::move(bg)), perturbation_(std::move(phi)) {}

  double value(const Site& s) const {
    double v = background_(s);
    if (auto it = perturbation_.find(s); it != perturbation_.end()) v += it->second;
    return v;
  }

  const Perturbation& perturbation() const { return perturbation_; }

  /// Configuration equal to *this plus an extra overlay.
  LatticeConfiguration overlay(const Perturbation& phi) const;

  static LatticeConfiguration linear(double omega, double beta = 0.0);
  static LatticeConfiguration constant(double c);

 private:
  std::function<double(const Site&)> background_ = [](const Site&) { return 0.0; };
  Perturbation perturbation_;
};

/// Terms B with B intersecting `window`, in lexicographic base-site order.
/// Bases are scanned over the window's bounding box widened by range_bound.
std::vector<InteractionTerm> enumerate_terms(const InteractionSpec& spec,
                                             const SiteSet& window);

double term_value(const InteractionTerm& t, const LatticeConfiguration& u);

/// Windowed energy: sum of H_B(u) over terms meeting the window.
double window_energy(const InteractionSpec& spec, const LatticeConfiguration& u,
                     const SiteSet& window);

/// Gamma(phi; u, anchor) = sum over B meeting anchor of H_B(u) - H_B(u+phi).
/// The anchor is widened internally to contain supp(phi).
double relative_energy(const InteractionSpec& spec, const LatticeConfiguration& u,
                       const Perturbation& phi, const SiteSet& anchor);

/// Equilibrium residual E_i(u) = sum over B containing i of d H_B / d u_i.
double residual(const InteractionSpec& spec, const LatticeConfiguration& u,
                const Site& i);

/// Sum over B containing both p and q of the mixed second partial.  The pair
/// is canonicalized so that hessian_entry(p,q) and (q,p) share a code path.
double hessian_entry(const InteractionSpec& spec, const LatticeConfiguration& u,
                     const Site& p, const Site& q);

struct FerromagneticReport {
  bool is_ferromagnetic = false;
  Site worst_p, worst_q;
  double worst_entry = 0.0;  // largest off-diagonal mixed partial seen
  long samples = 0;          // (term, pair, probe) triples inspected
};

/// Samples every off-diagonal per-term mixed partial over the window at each
/// probe configuration; passes iff all are <= tol (default 1e-12).
FerromagneticReport ferromagnetic_check(const InteractionSpec& spec,
                                        const std::vector<LatticeConfiguration>& probes,
                                        const SiteSet& window, double tol = 1e-12);

struct CoercivityReport {
  std::vector<double> t_values;
  std::vector<double> energies;  // relative energy of the single-site ray
  bool pass = false;
};

/// Relative energy along the ray u+phi+delta_site*t for each t; passes iff
/// the values increase monotonically along both tails away from t smallest
/// in magnitude and exceed `growth_threshold` at the extremes.
CoercivityReport coercivity_probe(const InteractionSpec& spec,
                                  const LatticeConfiguration& u,
                                  const Perturbation& phi, const Site& site,
                                  std::vector<double> t_values,
                                  double growth_threshold = 100.0);

struct TailSum {
  int L = 0;
  double grad_sum = 0.0;  // sum over diam(B) >= L of sum_p |d H_B / d u_p|
  double hess_sum = 0.0;  // second-derivative analogue
};

/// Tail sums over terms of diameter >= L meeting supp(phi), per L.  Exactly
/// zero once L >= range_bound for finite-range interactions.
std::vector<TailSum> summability_probe(const InteractionSpec& spec,
                                       const LatticeConfiguration& u,
                                       const Perturbation& phi,
                                       const std::vector<int>& L_values);

/// Structural checks on a spec at sample configurations: nonempty duplicate
/// free cells, range < range_bound, symmetric hessians, finite values.
void validate_spec(const InteractionSpec& spec,
                   const std::vector<LatticeConfiguration>& probes,
                   const SiteSet& window, double sym_rel_tol = 1e-12);

}  // namespace latfol
