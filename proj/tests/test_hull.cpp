#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "doctest.h"
#include "latfol/builtin_models.hpp"
#include "latfol/errors.hpp"
#include "latfol/hull.hpp"

using namespace latfol;

namespace {

constexpr double kOmega = 0.6180339887498949;  // (sqrt 5 - 1) / 2

const HullSolveResult& demo_solve() {
  static HullSolveResult res =
      solve_hull(demo_quasiperiodic_potential(0.01), kOmega, {});
  return res;
}

}  // namespace

TEST_CASE("zero potential yields the zero hull immediately") {
  TorusPotential v;
  v.d = 2;
  v.alpha = {1.0, std::sqrt(2.0)};
  HullSolveResult res = solve_hull(v, 0.3, {});
  CHECK(res.h.sup_bound() == 0.0);
  CHECK(res.final_stage_iters == 0);
  CHECK(hull_residual_max(res.h, v, 65) == 0.0);
}

TEST_CASE("demo hull converges quadratically below tolerance") {
  const HullSolveResult& res = demo_solve();
  const TorusPotential v = demo_quasiperiodic_potential(0.01);
  double r = hull_residual_max(res.h, v, res.h.side());
  CHECK(r < 1e-12);
  // No aliasing masking: the residual stays small on a 4x finer grid.
  CHECK(hull_residual_max(res.h, v, 4 * res.h.side()) < 1e-11);
  CHECK(res.final_stage_iters <= 8);
  CHECK(res.quadratic_C > 0.0);
  CHECK(res.h.sup_bound() < 0.01);  // ||h|| = O(eps)
  CHECK(res.h.sup_bound() > 1e-4);
}

TEST_CASE("demo hull is strictly monotone along the winding") {
  double margin = monotonicity_margin(demo_solve().h, 129);
  CHECK(margin > 0.0);
  CHECK(margin <= 1.0);
  CHECK(margin > 0.9);  // 1 - O(eps) at eps = 0.01
}

TEST_CASE("translates keep the residual within twice the tolerance") {
  const TorusPotential v = demo_quasiperiodic_potential(0.01);
  for (double beta : {0.1, 0.7, 2.3}) {
    HullFunction hb = translate(demo_solve().h, beta);
    CHECK(hull_residual_max(hb, v, hb.side()) < 2e-12);
  }
}

TEST_CASE("translate is a pointwise torus shift plus an offset") {
  const HullFunction& h = demo_solve().h;
  double beta = 0.37;
  HullFunction hb = translate(h, beta);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  for (int rep = 0; rep < 20; ++rep) {
    double sigma[2] = {dist(rng), dist(rng)};
    double shifted[2] = {sigma[0] + beta * h.alpha[0],
                         sigma[1] + beta * h.alpha[1]};
    CHECK(hb.value(sigma) ==
          doctest::Approx(h.value(shifted) + beta).epsilon(1e-12));
  }
}

TEST_CASE("sampled configurations follow the hull parameterization") {
  const HullFunction& h = demo_solve().h;
  double beta = 0.21;
  LatticeConfiguration u = sample_config(h, kOmega, beta, -30, 30);
  for (int n : {-30, -7, 0, 13, 30, 55}) {  // 55 exercises the fallback path
    double arg[2] = {(n * kOmega + beta) * h.alpha[0],
                     (n * kOmega + beta) * h.alpha[1]};
    double expected = n * kOmega + beta + h.eval(arg);
    CHECK(u.value(Site(n)) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("hull files round-trip exactly") {
  const HullFunction& h = demo_solve().h;
  std::string path = "test_hull_roundtrip.txt";
  save_hull(h, path);
  HullFunction back = load_hull(path);
  std::remove(path.c_str());
  CHECK(back.d == h.d);
  CHECK(back.n_trunc == h.n_trunc);
  CHECK(back.omega == h.omega);
  CHECK(back.offset == h.offset);
  CHECK(back.alpha == h.alpha);
  REQUIRE(back.coeffs.size() == h.coeffs.size());
  for (std::size_t i = 0; i < h.coeffs.size(); ++i)
    CHECK(back.coeffs[i] == h.coeffs[i]);
}

TEST_CASE("rationally dependent frequencies raise a resonance error") {
  TorusPotential v;
  v.d = 2;
  v.alpha = {1.0, 1.0};
  v.coeffs = {{{1, 0}, {1e-3, 0.0}}, {{-1, 0}, {1e-3, 0.0}}};
  CHECK_THROWS_AS(solve_hull(v, kOmega, {}), ResonanceError);
}

TEST_CASE("the one-dimensional periodic medium solves as a circle hull") {
  TorusPotential v = cosine_potential(0.01);
  HullSolveResult res = solve_hull(v, kOmega, {});
  CHECK(hull_residual_max(res.h, v, res.h.side()) < 1e-12);
  CHECK(res.h.sup_bound() > 0.0);
  CHECK(monotonicity_margin(res.h, 257) > 0.0);
}

TEST_CASE("residual grid honors spectral shifts on an explicit example") {
  // h(s) = sin(2 pi s) on d=1 with V = 0: residual is
  // (2 cos(2 pi omega) - 2) sin(2 pi s), evaluable in closed form.
  HullFunction h = HullFunction::zero({1.0}, 0.25, 4);
  int k1[1] = {1};
  int km[1] = {-1};
  h.at(k1) = {0.0, -0.5};
  h.at(km) = {0.0, 0.5};
  TorusPotential v;
  v.d = 1;
  v.alpha = {1.0};
  std::vector<double> r = hull_residual(h, v, 9);
  double lam = 2.0 * std::cos(2.0 * std::numbers::pi * 0.25) - 2.0;
  for (int j = 0; j < 9; ++j) {
    double s = static_cast<double>(j) / 9.0;
    CHECK(r[j] == doctest::Approx(lam * std::sin(2.0 * std::numbers::pi * s))
                      .epsilon(1e-12));
  }
}
