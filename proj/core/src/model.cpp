#include "latfol/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace latfol {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

std::string Site::str() const {
  std::ostringstream os;
  os << '(' << x[0] << ',' << x[1] << ',' << x[2] << ')';
  return os.str();
}

std::string to_string(const SiteSet& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const Site& i : s) {
    if (!first) os << ' ';
    os << i.str();
    first = false;
  }
  os << '}';
  return os.str();
}

SiteSet support(const Perturbation& phi) {
  SiteSet s;
  for (const auto& [site, v] : phi)
    if (v != 0.0) s.insert(site);
  return s;
}

// ---------------------------------------------------------------------------
// TorusPotential

double TorusPotential::value(std::span<const double> theta) const {
  double acc = 0.0;
  for (const auto& [k, c] : coeffs) {
    double phase = 0.0;
    for (int j = 0; j < d; ++j) phase += k[j] * theta[j];
    acc += c.real() * std::cos(kTwoPi * phase) - c.imag() * std::sin(kTwoPi * phase);
  }
  return acc;
}

double TorusPotential::dir_deriv(std::span<const double> theta) const {
  double acc = 0.0;
  for (const auto& [k, c] : coeffs) {
    double phase = 0.0, ka = 0.0;
    for (int j = 0; j < d; ++j) {
      phase += k[j] * theta[j];
      ka += k[j] * alpha[j];
    }
    // Re[ c * 2*pi*i*(k.alpha) * e^{2*pi*i*phase} ]
    double w = kTwoPi * ka;
    acc += -w * (c.real() * std::sin(kTwoPi * phase) + c.imag() * std::cos(kTwoPi * phase));
  }
  return acc;
}

double TorusPotential::dir_deriv2(std::span<const double> theta) const {
  double acc = 0.0;
  for (const auto& [k, c] : coeffs) {
    double phase = 0.0, ka = 0.0;
    for (int j = 0; j < d; ++j) {
      phase += k[j] * theta[j];
      ka += k[j] * alpha[j];
    }
    double w = kTwoPi * ka;
    acc += -w * w *
           (c.real() * std::cos(kTwoPi * phase) - c.imag() * std::sin(kTwoPi * phase));
  }
  return acc;
}

double TorusPotential::value_line(double x) const {
  double acc = 0.0;
  for (const auto& [k, c] : coeffs) {
    double ka = 0.0;
    for (int j = 0; j < d; ++j) ka += k[j] * alpha[j];
    double phase = kTwoPi * ka * x;
    acc += c.real() * std::cos(phase) - c.imag() * std::sin(phase);
  }
  return acc;
}

double TorusPotential::dir_deriv_line(double x) const {
  double acc = 0.0;
  for (const auto& [k, c] : coeffs) {
    double ka = 0.0;
    for (int j = 0; j < d; ++j) ka += k[j] * alpha[j];
    double w = kTwoPi * ka;
    acc += -w * (c.real() * std::sin(w * x) + c.imag() * std::cos(w * x));
  }
  return acc;
}

double TorusPotential::dir_deriv2_line(double x) const {
  double acc = 0.0;
  for (const auto& [k, c] : coeffs) {
    double ka = 0.0;
    for (int j = 0; j < d; ++j) ka += k[j] * alpha[j];
    double w = kTwoPi * ka;
    acc += -w * w * (c.real() * std::cos(w * x) - c.imag() * std::sin(w * x));
  }
  return acc;
}

double TorusPotential::min_nonresonance() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [k, c] : coeffs) {
    double ka = 0.0;
    bool zero = true;
    for (int j = 0; j < d; ++j) {
      ka += k[j] * alpha[j];
      if (k[j] != 0) zero = false;
    }
    if (!zero) m = std::min(m, std::abs(ka));
  }
  return m;
}

void TorusPotential::validate() const {
  if (static_cast<int>(alpha.size()) != d)
    throw ContractViolation("potential: alpha length != d");
  for (const auto& [k, c] : coeffs) {
    if (static_cast<int>(k.size()) != d)
      throw ContractViolation("potential: mode vector length != d");
    std::vector<int> neg(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) neg[j] = -k[j];
    auto it = std::find_if(coeffs.begin(), coeffs.end(),
                           [&](const auto& kc) { return kc.first == neg; });
    if (it == coeffs.end() || std::abs(it->second.real() - c.real()) > 1e-12 ||
        std::abs(it->second.imag() + c.imag()) > 1e-12)
      throw ContractViolation("potential: coefficients not hermitian, V would be complex");
  }
}

TorusPotential TorusPotential::scaled(double factor) const {
  TorusPotential v = *this;
  for (auto& [k, c] : v.coeffs) c *= factor;
  return v;
}

// ---------------------------------------------------------------------------
// LatticeConfiguration

LatticeConfiguration LatticeConfiguration::overlay(const Perturbation& phi) const {
  Perturbation merged = perturbation_;
  for (const auto& [s, v] : phi) merged[s] += v;
  return LatticeConfiguration(background_, std::move(merged));
}

LatticeConfiguration LatticeConfiguration::linear(double omega, double beta) {
  return LatticeConfiguration(
      [omega, beta](const Site& s) { return omega * s.x[0] + beta; });
}

LatticeConfiguration LatticeConfiguration::constant(double c) {
  return LatticeConfiguration([c](const Site&) { return c; });
}

// ---------------------------------------------------------------------------
// Term enumeration

namespace {

struct Box {
  int lo[3] = {0, 0, 0};
  int hi[3] = {0, 0, 0};
};

Box bounding_box(const SiteSet& window, int dim, int widen) {
  Box b;
  bool first = true;
  for (const Site& s : window) {
    for (int k = 0; k < dim; ++k) {
      if (first || s.x[k] < b.lo[k]) b.lo[k] = s.x[k];
      if (first || s.x[k] > b.hi[k]) b.hi[k] = s.x[k];
    }
    first = false;
  }
  for (int k = 0; k < dim; ++k) {
    b.lo[k] -= widen;
    b.hi[k] += widen;
  }
  return b;
}

bool intersects(const std::vector<Site>& cell, const SiteSet& window) {
  for (const Site& s : cell)
    if (window.count(s)) return true;
  return false;
}

template <typename Fn>
void for_each_base(const InteractionSpec& spec, const SiteSet& window, Fn&& fn) {
  if (window.empty()) return;
  Box b = bounding_box(window, spec.dim, spec.range_bound);
  Site s;
  // Lexicographic scan for reproducible summation order.
  for (int i0 = b.lo[0]; i0 <= b.hi[0]; ++i0) {
    s.x[0] = i0;
    if (spec.dim < 2) {
      fn(s);
      continue;
    }
    for (int i1 = b.lo[1]; i1 <= b.hi[1]; ++i1) {
      s.x[1] = i1;
      if (spec.dim < 3) {
        fn(s);
        continue;
      }
      for (int i2 = b.lo[2]; i2 <= b.hi[2]; ++i2) {
        s.x[2] = i2;
        fn(s);
      }
    }
  }
}

std::vector<double> gather(const InteractionTerm& t, const LatticeConfiguration& u) {
  std::vector<double> v(t.cell.size());
  for (std::size_t j = 0; j < t.cell.size(); ++j) v[j] = u.value(t.cell[j]);
  return v;
}

}  // namespace

std::vector<InteractionTerm> enumerate_terms(const InteractionSpec& spec,
                                             const SiteSet& window) {
  std::vector<InteractionTerm> out;
  for_each_base(spec, window, [&](const Site& base) {
    for (auto& t : spec.terms_at(base))
      if (intersects(t.cell, window)) out.push_back(std::move(t));
  });
  return out;
}

double term_value(const InteractionTerm& t, const LatticeConfiguration& u) {
  return t.energy(gather(t, u));
}

double window_energy(const InteractionSpec& spec, const LatticeConfiguration& u,
                     const SiteSet& window) {
  double acc = 0.0;
  for (const auto& t : enumerate_terms(spec, window)) {
    double e = t.energy(gather(t, u));
    if (!std::isfinite(e))
      throw EvaluationError("non-finite energy in term '" + t.label + "' at cell " +
                            (t.cell.empty() ? std::string("{}") : t.cell[0].str()));
    acc += e;
  }
  return acc;
}

double relative_energy(const InteractionSpec& spec, const LatticeConfiguration& u,
                       const Perturbation& phi, const SiteSet& anchor) {
  SiteSet widened = anchor;
  for (const Site& s : support(phi)) widened.insert(s);
  if (widened.empty()) return 0.0;
  LatticeConfiguration shifted = u.overlay(phi);
  double acc = 0.0;
  for (const auto& t : enumerate_terms(spec, widened)) {
    double a = t.energy(gather(t, u));
    double b = t.energy(gather(t, shifted));
    if (!std::isfinite(a) || !std::isfinite(b))
      throw EvaluationError("non-finite energy in term '" + t.label + "'");
    acc += a - b;
  }
  return acc;
}

double residual(const InteractionSpec& spec, const LatticeConfiguration& u,
                const Site& i) {
  double acc = 0.0;
  for_each_base(spec, {i}, [&](const Site& base) {
    for (const auto& t : spec.terms_at(base)) {
      for (std::size_t j = 0; j < t.cell.size(); ++j) {
        if (t.cell[j] == i) {
          acc += t.grad(gather(t, u), j);
          break;
        }
      }
    }
  });
  return acc;
}

double hessian_entry(const InteractionSpec& spec, const LatticeConfiguration& u,
                     const Site& p, const Site& q) {
  // Canonical order: the (p,q) and (q,p) calls run the identical sum.
  const Site& a = std::min(p, q);
  const Site& b = std::max(p, q);
  if (a != b && a.cheb(b) >= spec.range_bound) return 0.0;
  double acc = 0.0;
  for_each_base(spec, {a}, [&](const Site& base) {
    for (const auto& t : spec.terms_at(base)) {
      std::size_t ia = t.cell.size(), ib = t.cell.size();
      for (std::size_t j = 0; j < t.cell.size(); ++j) {
        if (t.cell[j] == a) ia = j;
        if (t.cell[j] == b) ib = j;
      }
      if (ia < t.cell.size() && ib < t.cell.size())
        acc += t.hess(gather(t, u), ia, ib);
    }
  });
  return acc;
}

FerromagneticReport ferromagnetic_check(const InteractionSpec& spec,
                                        const std::vector<LatticeConfiguration>& probes,
                                        const SiteSet& window, double tol) {
  if (probes.empty()) throw ContractViolation("ferromagnetic_check: empty probe set");
  FerromagneticReport rep;
  rep.is_ferromagnetic = true;
  rep.worst_entry = -std::numeric_limits<double>::infinity();
  auto terms = enumerate_terms(spec, window);
  for (const auto& u : probes) {
    for (const auto& t : terms) {
      std::vector<double> v = gather(t, u);
      for (std::size_t p = 0; p < t.cell.size(); ++p) {
        for (std::size_t q = p + 1; q < t.cell.size(); ++q) {
          double h = t.hess(v, p, q);
          ++rep.samples;
          if (h > rep.worst_entry) {
            rep.worst_entry = h;
            rep.worst_p = t.cell[p];
            rep.worst_q = t.cell[q];
          }
          if (h > tol) rep.is_ferromagnetic = false;
        }
      }
    }
  }
  return rep;
}

CoercivityReport coercivity_probe(const InteractionSpec& spec,
                                  const LatticeConfiguration& u,
                                  const Perturbation& phi, const Site& site,
                                  std::vector<double> t_values,
                                  double growth_threshold) {
  CoercivityReport rep;
  std::sort(t_values.begin(), t_values.end());
  SiteSet supp = support(phi);
  supp.insert(site);
  LatticeConfiguration base = u.overlay(phi);
  auto terms = enumerate_terms(spec, supp);
  for (double t : t_values) {
    Perturbation ray{{site, t}};
    LatticeConfiguration moved = base.overlay(ray);
    double acc = 0.0;
    for (const auto& term : terms)
      acc += term.energy(gather(term, moved)) - term.energy(gather(term, base));
    rep.t_values.push_back(t);
    rep.energies.push_back(acc);
  }
  // Pass: monotone growth along both tails, extremes beyond the threshold.
  rep.pass = true;
  for (std::size_t j = 0; j + 1 < rep.t_values.size(); ++j) {
    if (rep.t_values[j + 1] <= 0.0 && rep.energies[j] <= rep.energies[j + 1])
      rep.pass = false;
    if (rep.t_values[j] >= 0.0 && rep.energies[j + 1] <= rep.energies[j])
      rep.pass = false;
  }
  if (rep.energies.empty() || rep.energies.front() < growth_threshold ||
      rep.energies.back() < growth_threshold)
    rep.pass = false;
  return rep;
}

std::vector<TailSum> summability_probe(const InteractionSpec& spec,
                                       const LatticeConfiguration& u,
                                       const Perturbation& phi,
                                       const std::vector<int>& L_values) {
  SiteSet supp = support(phi);
  std::vector<TailSum> out;
  LatticeConfiguration cfg = u.overlay(phi);
  auto terms = supp.empty() ? std::vector<InteractionTerm>{}
                            : enumerate_terms(spec, supp);
  for (int L : L_values) {
    TailSum ts;
    ts.L = L;
    for (const auto& t : terms) {
      int diam = 0;
      for (const Site& a : t.cell)
        for (const Site& b : t.cell) diam = std::max(diam, a.cheb(b));
      if (diam < L) continue;
      std::vector<double> v = gather(t, cfg);
      for (std::size_t p = 0; p < t.cell.size(); ++p) {
        ts.grad_sum += std::abs(t.grad(v, p));
        for (std::size_t q = 0; q < t.cell.size(); ++q)
          ts.hess_sum += std::abs(t.hess(v, p, q));
      }
    }
    out.push_back(ts);
  }
  return out;
}

void validate_spec(const InteractionSpec& spec,
                   const std::vector<LatticeConfiguration>& probes,
                   const SiteSet& window, double sym_rel_tol) {
  for (const auto& t : enumerate_terms(spec, window)) {
    if (t.cell.empty())
      throw ContractViolation("term '" + t.label + "' has an empty cell");
    SiteSet uniq(t.cell.begin(), t.cell.end());
    if (uniq.size() != t.cell.size())
      throw ContractViolation("term '" + t.label + "' has duplicate cell sites");
    int diam = 0;
    for (const Site& a : t.cell)
      for (const Site& b : t.cell) diam = std::max(diam, a.cheb(b));
    if (diam != t.range || t.range >= spec.range_bound)
      throw ContractViolation("term '" + t.label + "' violates the range bound");
    for (const auto& u : probes) {
      std::vector<double> v(t.cell.size());
      for (std::size_t j = 0; j < t.cell.size(); ++j) v[j] = u.value(t.cell[j]);
      if (!std::isfinite(t.energy(v)))
        throw EvaluationError("term '" + t.label + "' is non-finite at a probe");
      for (std::size_t p = 0; p < t.cell.size(); ++p) {
        if (!std::isfinite(t.grad(v, p)))
          throw EvaluationError("term '" + t.label + "' has a non-finite gradient");
        for (std::size_t q = p; q < t.cell.size(); ++q) {
          double hpq = t.hess(v, p, q), hqp = t.hess(v, q, p);
          double scale = std::max({1.0, std::abs(hpq), std::abs(hqp)});
          if (std::abs(hpq - hqp) > sym_rel_tol * scale)
            throw ContractViolation("term '" + t.label + "' has an asymmetric hessian");
        }
      }
    }
  }
}

}  // namespace latfol
