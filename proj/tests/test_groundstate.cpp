#include <cmath>

#include "doctest.h"
#include "latfol/builtin_models.hpp"
#include "latfol/groundstate.hpp"

using namespace latfol;

namespace {

SiteSet interval(int lo, int hi) {
  SiteSet w;
  for (int i = lo; i <= hi; ++i) w.insert(Site(i));
  return w;
}

}  // namespace

TEST_CASE("a ground state admits no profitable window perturbation") {
  InteractionSpec spec = fk_model();
  LatticeConfiguration u = LatticeConfiguration::linear(0.3);
  for (int w : {1, 3, 7}) {
    MinimizeResult res = minimize_window(spec, u, interval(0, w - 1));
    CHECK(res.gamma_star <= 1e-14);
    CHECK(res.gamma_star >= 0.0);  // phi = 0 is always admissible
    CHECK(res.stationarity < 1e-9);
  }
}

TEST_CASE("a displaced site relaxes with the exact analytic gain") {
  InteractionSpec spec = fk_model();
  double omega = 0.618;
  LatticeConfiguration u =
      LatticeConfiguration::linear(omega).overlay({{Site(0), 0.3}});
  // Windowed energy in the site-0 coordinate t: (t)^2 + const, so moving
  // t = 0.3 back to 0 gains exactly 0.09.
  MinimizeResult res = minimize_window(spec, u, interval(0, 0));
  CHECK(res.gamma_star == doctest::Approx(0.09).epsilon(1e-10));
  CHECK(res.phi_star.at(Site(0)) == doctest::Approx(-0.3).epsilon(1e-8));
}

TEST_CASE("decoupled quadratic wells relax to the origin") {
  InteractionSpec spec = decoupled_demo_model();
  LatticeConfiguration u = LatticeConfiguration::constant(0.4);
  MinimizeResult res = minimize_window(spec, u, interval(0, 0));
  CHECK(res.gamma_star == doctest::Approx(0.5 * 0.4 * 0.4).epsilon(1e-10));
  CHECK(res.phi_star.at(Site(0)) == doctest::Approx(-0.4).epsilon(1e-8));
}

TEST_CASE("minimizer and exhaustive oracle agree on small windows") {
  std::vector<std::pair<InteractionSpec, LatticeConfiguration>> cases;
  cases.emplace_back(fk_model(), LatticeConfiguration::linear(0.3));
  cases.emplace_back(fk_model(),
                     LatticeConfiguration::linear(0.618).overlay({{Site(0), 0.21}}));
  for (auto& [spec, u] : cases) {
    for (auto& w : {interval(0, 0), interval(0, 1), interval(-1, 1)}) {
      MinimizeResult res = minimize_window(spec, u, w);
      OracleResult oracle = brute_force_oracle(spec, u, w);
      CHECK(std::abs(res.gamma_star - oracle.gamma_max) < 1e-3);
    }
  }
}

TEST_CASE("the exhaustive oracle rejects windows beyond three sites") {
  CHECK_THROWS_AS(brute_force_oracle(fk_model(),
                                     LatticeConfiguration::linear(0.3),
                                     interval(0, 3)),
                  ContractViolation);
}

TEST_CASE("an unstable equilibrium is caught as a positive energy gain") {
  // u = 0.5 is an equilibrium on the potential crest; relaxing any single
  // site lowers the energy, so Gamma is strictly positive.  The local
  // minimizer starts at the stationary point phi = 0 and stays there; the
  // exhaustive oracle is the detector for this failure mode.
  InteractionSpec spec = fk_model(cosine_potential(0.2));
  LatticeConfiguration u = LatticeConfiguration::constant(0.5);
  OracleResult oracle = brute_force_oracle(spec, u, interval(0, 0));
  CHECK(oracle.gamma_max > 0.1);
  CHECK(oracle.argmax.at(Site(0)) != 0.0);
}

TEST_CASE("the default window schedule is contiguous and centered") {
  auto schedule = default_window_schedule(6);
  REQUIRE(schedule.size() == 6);
  for (int s = 1; s <= 6; ++s) {
    const SiteSet& w = schedule[s - 1];
    CHECK(static_cast<int>(w.size()) == s);
    int lo = w.begin()->x[0];
    CHECK(lo == -(s - 1) / 2);
    int expect = lo;
    for (const Site& site : w) CHECK(site.x[0] == expect++);
  }
}

TEST_CASE("the free chain passes the full theorem verification") {
  InteractionSpec spec = fk_model();
  FoliationParams fparams;
  fparams.equilibrium_tol = 0.0;
  std::vector<double> grid;
  for (int j = 0; j <= 4; ++j) grid.push_back(j / 4.0);
  FoliationFamily fam = build_foliation(spec, linear_generator(0.3), grid,
                                        interval(-15, 15), fparams);
  fam.axioms = check_axioms(spec, fam, fparams);
  VerifyParams params;
  params.w_max = 5;
  VerifyReport rep = verify_theorem(spec, fam, default_window_schedule(5), params);
  CHECK(rep.hypotheses.all_pass);
  CHECK(rep.pass);
  CHECK(rep.violations == 0);
  CHECK(rep.records.size() == 25);
  for (const auto& r : rep.records) {
    CHECK(r.pass);
    CHECK(r.gamma_star <= 1e-12);
  }
}

TEST_CASE("the antiferromagnetic chain fails at the hypothesis stage") {
  InteractionSpec spec = antiferromagnetic_demo_model();
  FoliationParams fparams;
  fparams.equilibrium_tol = 10.0;  // const members are off-equilibrium; the
                                   // run must die at ferromagnetism, not A1
  FoliationGenerator gen;
  gen.value = [](const Site&, double beta) { return beta; };  // u = const
  FoliationFamily fam =
      build_foliation(spec, gen, {0.0, 0.5, 1.0}, interval(-5, 5), fparams);
  fam.axioms = check_axioms(spec, fam, fparams);
  VerifyReport rep = verify_theorem(spec, fam, default_window_schedule(3), {});
  CHECK_FALSE(rep.hypotheses.all_pass);
  CHECK_FALSE(rep.hypotheses.ferromagnetic);
  CHECK(rep.hypotheses.failed == "ferromagnetic");
  CHECK(rep.records.empty());
  CHECK_FALSE(rep.pass);
}

TEST_CASE("a disconnected interaction fails transitivity") {
  InteractionSpec spec = decoupled_demo_model();
  FoliationParams fparams;
  // u = beta is off-equilibrium except at beta = 0; slacken A1 so the run
  // reaches the transitivity check.
  fparams.equilibrium_tol = 10.0;
  FoliationGenerator gen;
  gen.value = [](const Site&, double beta) { return beta; };
  FoliationFamily fam =
      build_foliation(spec, gen, {0.0, 0.5, 1.0}, interval(-3, 3), fparams);
  fam.axioms = check_axioms(spec, fam, fparams);
  VerifyReport rep = verify_theorem(spec, fam, default_window_schedule(3), {});
  CHECK_FALSE(rep.hypotheses.all_pass);
  CHECK_FALSE(rep.hypotheses.transitive);
  CHECK(rep.records.empty());
}
