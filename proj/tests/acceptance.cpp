// Acceptance suite: one line per criterion, nonzero exit iff any fail.
// argv[1] is the path to the command-line driver (for the CLI criteria).

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "latfol/builtin_models.hpp"
#include "latfol/comparison.hpp"
#include "latfol/foliation.hpp"
#include "latfol/groundstate.hpp"
#include "latfol/hull.hpp"

using namespace latfol;
namespace fs = std::filesystem;

namespace {

constexpr double kOmega = 0.6180339887498949;

int g_failures = 0;

void report(int n, const std::string& label, bool pass, const std::string& detail) {
  std::cout << "criterion " << n << " (" << label << "): "
            << (pass ? "PASS" : "FAIL");
  if (!detail.empty()) std::cout << " - " << detail;
  std::cout << "\n" << std::flush;
  if (!pass) ++g_failures;
}

SiteSet interval(int lo, int hi) {
  SiteSet w;
  for (int i = lo; i <= hi; ++i) w.insert(Site(i));
  return w;
}

std::vector<double> uniform_grid(double lo, double hi, int count) {
  std::vector<double> g;
  for (int j = 0; j < count; ++j) g.push_back(lo + (hi - lo) * j / (count - 1));
  return g;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

Perturbation random_overlay(std::mt19937& rng, int lo, int hi, double amp) {
  std::uniform_real_distribution<double> dist(-amp, amp);
  Perturbation phi;
  for (int i = lo; i <= hi; ++i) phi[Site(i)] = dist(rng);
  return phi;
}

std::vector<InteractionSpec> all_models() {
  std::vector<InteractionSpec> out;
  out.push_back(fk_model());
  out.push_back(fk_model(cosine_potential(0.1)));
  out.push_back(fk_model(demo_quasiperiodic_potential(0.01)));
  out.push_back(long_range_pair_model(3));
  out.push_back(three_body_demo_model());
  out.push_back(antiferromagnetic_demo_model());
  out.push_back(decoupled_demo_model());
  return out;
}

const HullSolveResult& demo_solved() {
  static HullSolveResult res =
      solve_hull(demo_quasiperiodic_potential(0.01), kOmega, {});
  return res;
}

int run_cli(const std::string& cli, const std::string& args) {
  std::string cmd = cli + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// --- criteria -------------------------------------------------------------

void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::ostringstream detail;
  double worst = 0.0;
  for (double omega : {0.0, 0.3, kOmega}) {
    InteractionSpec spec = fk_model();
    FoliationParams fparams;
    fparams.equilibrium_tol = 0.0;
    FoliationFamily fam =
        build_foliation(spec, linear_generator(omega), uniform_grid(0, 1, 5),
                        interval(-25, 25), fparams);
    fam.axioms = check_axioms(spec, fam, fparams);
    VerifyParams params;
    params.w_max = 15;
    VerifyReport rep =
        verify_theorem(spec, fam, default_window_schedule(15), params);
    if (!rep.pass || !rep.hypotheses.all_pass) pass = false;
    for (const auto& r : rep.records) {
      worst = std::max(worst, std::abs(r.gamma_star));
      if (std::abs(r.gamma_star) > 1e-12) pass = false;
    }
  }
  double dt = seconds_since(t0);
  if (dt >= 10.0) pass = false;
  detail << "max |gamma*| " << worst << ", " << dt << " s";
  report(1, "zero-potential exactness", pass, detail.str());
}

void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  const HullSolveResult& res = demo_solved();
  double dt = seconds_since(t0);
  TorusPotential v = demo_quasiperiodic_potential(0.01);
  double r = hull_residual_max(res.h, v, res.h.side());
  bool quad = res.quadratic_C > 0.0;
  // Replay the final-stage ratios against the reported constant.
  std::vector<double> stage;
  for (const auto& rec : res.log)
    if (rec.eps == res.log.back().eps) stage.push_back(rec.residual);
  for (std::size_t j = 0; j + 1 < stage.size(); ++j)
    if (stage[j + 1] > 1e-15 &&
        stage[j + 1] > 1.01 * res.quadratic_C * stage[j] * stage[j])
      quad = false;
  bool pass = r < 1e-12 && res.final_stage_iters <= 8 && quad && dt < 60.0 &&
              res.h.n_trunc == 32;
  std::ostringstream detail;
  detail << "residual " << r << ", " << res.final_stage_iters
         << " Newton steps, quadratic C " << res.quadratic_C << ", " << dt
         << " s";
  report(2, "hull solver convergence", pass, detail.str());
}

void criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  InteractionSpec spec = fk_model(demo_quasiperiodic_potential(0.01));
  FoliationGenerator gen = hull_generator(demo_solved().h);
  FoliationFamily fam = build_foliation(spec, gen, uniform_grid(0, 1, 21),
                                        interval(-50, 50), {});
  fam.axioms = check_axioms(spec, fam, {});
  VerifyParams params;  // w_max 15, tolerances 1e-8, single thread
  VerifyReport rep =
      verify_theorem(spec, fam, default_window_schedule(15), params);
  double worst_gamma = 0.0, worst_stat = 0.0;
  for (const auto& r : rep.records) {
    worst_gamma = std::max(worst_gamma, r.gamma_star);
    worst_stat = std::max(worst_stat, r.stationarity);
  }
  double dt = seconds_since(t0);
  bool pass = rep.pass && rep.hypotheses.all_pass &&
              rep.records.size() == 21 * 15 && worst_gamma <= 1e-8 &&
              worst_stat < 1e-8 && dt < 600.0;
  std::ostringstream detail;
  detail << rep.records.size() << " records, worst gamma* " << worst_gamma
         << ", worst stationarity " << worst_stat << ", " << dt << " s";
  report(3, "main-theorem verification", pass, detail.str());
}

void criterion4() {
  bool pass = true;
  double worst = 0.0;
  std::vector<std::pair<InteractionSpec, LatticeConfiguration>> cases;
  cases.emplace_back(fk_model(), LatticeConfiguration::linear(0.3));
  cases.emplace_back(fk_model(demo_quasiperiodic_potential(0.01)),
                     sample_config(demo_solved().h, kOmega, 0.37, -10, 10));
  std::vector<SiteSet> windows{interval(0, 0),   interval(2, 2),
                               interval(0, 1),   interval(-1, 0),
                               interval(-1, 1),  interval(1, 3)};
  for (auto& [spec, u] : cases)
    for (const auto& w : windows) {
      MinimizeResult res = minimize_window(spec, u, w);
      OracleResult oracle = brute_force_oracle(spec, u, w, -2.0, 2.0, 1e-2);
      double gap = std::abs(res.gamma_star - oracle.gamma_max);
      worst = std::max(worst, gap);
      if (gap >= 1e-3) pass = false;
    }
  std::ostringstream detail;
  detail << "worst |minimizer - oracle| " << worst << " over "
         << 2 * windows.size() << " windows";
  report(4, "oracle equivalence", pass, detail.str());
}

void criterion5() {
  std::mt19937 rng(41);
  bool pass = true;
  double worst1 = 0.0, worst2 = 0.0;
  double h = 1e-6, h2 = 1e-5;
  for (const auto& spec : all_models()) {
    for (int rep = 0; rep < 100; ++rep) {
      LatticeConfiguration u = LatticeConfiguration(
          [](const Site& s) { return 0.1 * s.x[0]; },
          random_overlay(rng, -5, 5, 1.0));
      Site i(static_cast<int>(rng() % 5) - 2);
      SiteSet cover =
          interval(i.x[0] - spec.range_bound, i.x[0] + spec.range_bound);
      auto bump = [&](double t) {
        return window_energy(spec, u.overlay({{i, t}}), cover);
      };
      double fd = (bump(h) - bump(-h)) / (2 * h);
      double e1 = std::abs(residual(spec, u, i) - fd);
      worst1 = std::max(worst1, e1);
      if (e1 >= 1e-6) pass = false;

      Site q(i.x[0] + static_cast<int>(rng() % 3) - 1);
      auto res_i = [&](double t) {
        return residual(spec, u.overlay({{q, t}}), i);
      };
      double fd2 = (res_i(h2) - res_i(-h2)) / (2 * h2);
      double e2 = std::abs(hessian_entry(spec, u, i, q) - fd2);
      worst2 = std::max(worst2, e2);
      if (e2 >= 1e-5) pass = false;
    }
  }
  std::ostringstream detail;
  detail << "worst residual-vs-FD " << worst1 << ", worst hessian-vs-FD "
         << worst2 << " over " << all_models().size() << " models x 100 configs";
  report(5, "derivative consistency", pass, detail.str());
}

void criterion6() {
  std::mt19937 rng(43);
  bool pass = true;
  double worst_free = 0.0, worst = 0.0;
  InteractionSpec free_chain = fk_model();
  for (int rep = 0; rep < 50; ++rep) {
    LatticeConfiguration u =
        LatticeConfiguration::linear(0.3).overlay(random_overlay(rng, -3, 3, 0.5));
    Perturbation eta = random_overlay(rng, -2, 2, 0.5);
    Site site(static_cast<int>(rng() % 5) - 2);
    double err = hilbert_identity_check(free_chain, u, eta, site, 16);
    worst_free = std::max(worst_free, err);
    if (err >= 1e-14) pass = false;
  }
  for (const auto& spec : all_models()) {
    for (int rep = 0; rep < 50; ++rep) {
      LatticeConfiguration u = LatticeConfiguration::linear(0.618).overlay(
          random_overlay(rng, -3, 3, 0.5));
      Perturbation eta = random_overlay(rng, -2, 2, 0.5);
      Site site(static_cast<int>(rng() % 3) - 1);
      double err = hilbert_identity_check(spec, u, eta, site, 16);
      worst = std::max(worst, err);
      if (err >= 1e-10) pass = false;
    }
  }
  std::ostringstream detail;
  detail << "worst discrepancy " << worst << " (zero-potential " << worst_free
         << ")";
  report(6, "residual-difference identity", pass, detail.str());
}

void criterion7() {
  bool pass = true;
  int done = 0;
  std::ostringstream detail;
  try {
    struct Case {
      InteractionSpec spec;
      LatticeConfiguration base;
      int pad;  // gap between the window edge and the far mass
    };
    std::vector<Case> cases;
    cases.push_back({fk_model(), LatticeConfiguration::linear(0.3), 2});
    cases.push_back({fk_model(cosine_potential(0.0)),
                     LatticeConfiguration::linear(0.0), 2});
    cases.push_back({fk_model(demo_quasiperiodic_potential(0.01)),
                     sample_config(demo_solved().h, kOmega, 0.11, -30, 30), 2});
    cases.push_back({long_range_pair_model(3),
                     LatticeConfiguration::linear(0.618), 7});
    cases.push_back({three_body_demo_model(),
                     LatticeConfiguration::linear(0.25), 3});
    int scenario = 0;
    for (const auto& c : cases) {
      for (int variant = 0; variant < 4 && scenario < 20; ++variant, ++scenario) {
        int lo = -3 - variant, hi = 3 + (variant % 2);
        double sgn = (variant % 2) ? -1.0 : 1.0;
        ContactScenario sc;
        sc.base = c.base;
        int far = hi + c.pad + 2;
        sc.eta = {{Site(far), sgn * 0.2}, {Site(far + 1), sgn * 0.4}};
        sc.contact_site = Site(lo + variant);
        sc.window = interval(lo, hi);
        validate_scenario(c.spec, sc);
        SiteSet certified = contact_propagation(c.spec, sc);
        // Must cover the window and strictly more.
        for (const Site& s : sc.window)
          if (!certified.count(s)) pass = false;
        if (certified.size() <= sc.window.size()) pass = false;
        for (const Site& s : certified)
          if (sc.eta.count(s)) pass = false;
        ++done;
      }
    }
  } catch (const std::exception& e) {
    pass = false;
    detail << e.what() << "; ";
  }
  detail << done << " scenarios certified, 0 counterexamples";
  report(7, "contact propagation", pass && done == 20, detail.str());
}

void criterion8(const std::string& cli, const fs::path& dir) {
  bool pass = true;
  std::ostringstream detail;

  fs::path cfg = dir / "antiferro.cfg";
  fs::path out = dir / "antiferro_out";
  {
    std::ofstream os(cfg);
    os << "[model]\nkind = \"antiferromagnetic-demo\"\n"
       << "[verify]\nomega = 0.0\nbeta_count = 3\nbeta_max = 0.25\n"
       << "equilibrium_tol = 10.0\nw_max = 4\nwindow_halfwidth = 6\n"
       << "[output]\ndir = \"" << out.string() << "\"\n";
  }
  int code = run_cli(cli, "verify -c " + cfg.string());
  if (code != 2) pass = false;
  detail << "antiferromagnetic verify exit " << code << " (want 2)";

  // Unstable equilibrium on the potential crest: the exhaustive search finds
  // a strictly profitable perturbation.
  InteractionSpec spec = fk_model(cosine_potential(0.2));
  LatticeConfiguration u = LatticeConfiguration::constant(0.5);
  OracleResult oracle = brute_force_oracle(spec, u, interval(0, 0));
  if (!(oracle.gamma_max > 0.0)) pass = false;
  detail << "; crest oracle Gamma " << oracle.gamma_max << " (want > 0)";
  report(8, "negative controls", pass, detail.str());
}

void criterion9(const std::string& cli, const fs::path& dir) {
  fs::path cfg = dir / "determinism.cfg";
  fs::path out1 = dir / "det_t1";
  fs::path out8 = dir / "det_t8";
  {
    std::ofstream os(cfg);
    os << "[model]\nkind = \"fk-periodic\"\nepsilon = 0.01\n"
       << "[verify]\nomega = 0.6180339887498949\nbeta_count = 21\n"
       << "w_max = 10\nwindow_halfwidth = 15\n";
  }
  int c1 = run_cli(cli, "verify -c " + cfg.string() + " -o " + out1.string() +
                            " -t 1");
  int c8 = run_cli(cli, "verify -c " + cfg.string() + " -o " + out8.string() +
                            " -t 8");
  bool pass = c1 == 0 && c8 == 0;
  std::ostringstream detail;
  detail << "exits " << c1 << "/" << c8;
  for (const char* name : {"verify.csv", "foliation.csv"}) {
    std::string a = slurp(out1 / name), b = slurp(out8 / name);
    if (a.empty() || a != b) {
      pass = false;
      detail << "; " << name << " differs";
    }
  }
  if (pass) detail << ", CSVs byte-identical across 1 and 8 threads";
  report(9, "thread-count determinism", pass, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  fs::path dir = fs::temp_directory_path() / "latfol_acceptance";
  fs::create_directories(dir);

  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  if (cli.empty()) {
    report(8, "negative controls", false, "CLI path argument missing");
    report(9, "thread-count determinism", false, "CLI path argument missing");
  } else {
    criterion8(cli, dir);
    criterion9(cli, dir);
  }
  std::cout << (g_failures == 0 ? "all criteria passed"
                                : std::to_string(g_failures) + " criteria failed")
            << "\n";
  return g_failures == 0 ? 0 : 1;
}
