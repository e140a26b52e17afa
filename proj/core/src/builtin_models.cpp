#include "latfol/builtin_models.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace latfol {

namespace {

InteractionTerm bond_term(const Site& a, const Site& b) {
  InteractionTerm t;
  t.cell = {a, b};
  t.range = a.cheb(b);
  t.label = "bond";
  t.energy = [](std::span<const double> v) {
    double d = v[0] - v[1];
    return 0.5 * d * d;
  };
  t.grad = [](std::span<const double> v, std::size_t p) {
    double d = v[0] - v[1];
    return p == 0 ? d : -d;
  };
  t.hess = [](std::span<const double>, std::size_t p, std::size_t q) {
    return p == q ? 1.0 : -1.0;
  };
  return t;
}

// On-site medium term -V(u_i * alpha); Eq-style sign with the potential
// subtracted from the elastic energy.
InteractionTerm medium_term(const Site& i, std::shared_ptr<const TorusPotential> v) {
  InteractionTerm t;
  t.cell = {i};
  t.range = 0;
  t.label = "medium";
  t.energy = [v](std::span<const double> u) { return -v->value_line(u[0]); };
  t.grad = [v](std::span<const double> u, std::size_t) {
    return -v->dir_deriv_line(u[0]);
  };
  t.hess = [v](std::span<const double> u, std::size_t, std::size_t) {
    return -v->dir_deriv2_line(u[0]);
  };
  return t;
}

}  // namespace

InteractionSpec fk_model(std::optional<TorusPotential> medium) {
  InteractionSpec spec;
  spec.name = medium ? (medium->d >= 2 ? "fk-quasiperiodic" : "fk-periodic")
                     : "fk-free";
  spec.dim = 1;
  spec.range_bound = 2;
  spec.medium = medium;
  auto shared = medium ? std::make_shared<const TorusPotential>(*medium) : nullptr;
  spec.terms_at = [shared](const Site& base) {
    std::vector<InteractionTerm> out;
    out.push_back(bond_term(base, base + Site(1)));
    if (shared && !shared->empty()) out.push_back(medium_term(base, shared));
    return out;
  };
  return spec;
}

TorusPotential demo_quasiperiodic_potential(double eps) {
  // (eps/(2 pi)^2) (cos 2 pi s1 + cos 2 pi s2): curvature along the winding is
  // O(eps), so eps=0.01 sits well inside the convergence region of the hull
  // equation for alpha=(1,sqrt 2).
  double a = eps / (4.0 * std::numbers::pi * std::numbers::pi) / 2.0;
  TorusPotential v;
  v.d = 2;
  v.alpha = {1.0, std::sqrt(2.0)};
  v.coeffs = {
      {{1, 0}, {a, 0.0}},
      {{-1, 0}, {a, 0.0}},
      {{0, 1}, {a, 0.0}},
      {{0, -1}, {a, 0.0}},
  };
  return v;
}

TorusPotential cosine_potential(double eps) {
  TorusPotential v;
  v.d = 1;
  v.alpha = {1.0};
  v.coeffs = {{{1}, {eps / 2, 0.0}}, {{-1}, {eps / 2, 0.0}}};
  return v;
}

InteractionSpec long_range_pair_model(int cutoff) {
  InteractionSpec spec;
  spec.name = "long-range-pair";
  spec.dim = 1;
  spec.range_bound = cutoff + 1;
  spec.terms_at = [cutoff](const Site& base) {
    std::vector<InteractionTerm> out;
    for (int r = 1; r <= cutoff; ++r) {
      double a = std::pow(2.0, -r);
      InteractionTerm t;
      t.cell = {base, base + Site(r)};
      t.range = r;
      t.label = "pair-r" + std::to_string(r);
      t.energy = [a](std::span<const double> v) {
        double d = v[0] - v[1];
        return 0.5 * a * d * d;
      };
      t.grad = [a](std::span<const double> v, std::size_t p) {
        double d = v[0] - v[1];
        return p == 0 ? a * d : -a * d;
      };
      t.hess = [a](std::span<const double>, std::size_t p, std::size_t q) {
        return p == q ? a : -a;
      };
      out.push_back(std::move(t));
    }
    return out;
  };
  return spec;
}

InteractionSpec three_body_demo_model() {
  InteractionSpec spec;
  spec.name = "three-body-demo";
  spec.dim = 1;
  spec.range_bound = 3;
  spec.terms_at = [](const Site& base) {
    InteractionTerm t;
    t.cell = {base, base + Site(1), base + Site(2)};
    t.range = 2;
    t.label = "triple";
    t.energy = [](std::span<const double> v) {
      double d = v[0] - 2.0 * v[1] + v[2];
      return 0.5 * d * d;
    };
    t.grad = [](std::span<const double> v, std::size_t p) {
      double d = v[0] - 2.0 * v[1] + v[2];
      static const double c[3] = {1.0, -2.0, 1.0};
      return c[p] * d;
    };
    t.hess = [](std::span<const double>, std::size_t p, std::size_t q) {
      static const double c[3] = {1.0, -2.0, 1.0};
      return c[p] * c[q];
    };
    return std::vector<InteractionTerm>{std::move(t)};
  };
  return spec;
}

InteractionSpec antiferromagnetic_demo_model() {
  InteractionSpec spec;
  spec.name = "antiferromagnetic-demo";
  spec.dim = 1;
  spec.range_bound = 2;
  spec.terms_at = [](const Site& base) {
    InteractionTerm t;
    t.cell = {base, base + Site(1)};
    t.range = 1;
    t.label = "antibond";
    t.energy = [](std::span<const double> v) {
      double s = v[0] + v[1];
      return 0.5 * s * s;
    };
    t.grad = [](std::span<const double> v, std::size_t) { return v[0] + v[1]; };
    t.hess = [](std::span<const double>, std::size_t, std::size_t) { return 1.0; };
    return std::vector<InteractionTerm>{std::move(t)};
  };
  return spec;
}

InteractionSpec decoupled_demo_model() {
  InteractionSpec spec;
  spec.name = "decoupled-demo";
  spec.dim = 1;
  spec.range_bound = 1;
  spec.terms_at = [](const Site& base) {
    InteractionTerm t;
    t.cell = {base};
    t.range = 0;
    t.label = "onsite";
    t.energy = [](std::span<const double> v) { return 0.5 * v[0] * v[0]; };
    t.grad = [](std::span<const double> v, std::size_t) { return v[0]; };
    t.hess = [](std::span<const double>, std::size_t, std::size_t) { return 1.0; };
    return std::vector<InteractionTerm>{std::move(t)};
  };
  return spec;
}

}  // namespace latfol
