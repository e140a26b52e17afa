#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "latfol/builtin_models.hpp"
#include "latfol/comparison.hpp"
#include "latfol/config.hpp"
#include "latfol/foliation.hpp"
#include "latfol/groundstate.hpp"
#include "latfol/hull.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit-status contract: 0 pass, 1 conclusion failure, 2 hypothesis failure,
// 3 usage / IO / solver error.
constexpr int kExitPass = 0;
constexpr int kExitConclusion = 1;
constexpr int kExitHypothesis = 2;
constexpr int kExitError = 3;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw latfol::Error("cannot write '" + path.string() + "'");
  f << content;
}

void write_error_json(const fs::path& dir, const std::string& kind,
                      const std::string& message) {
  json j{{"error", kind}, {"message", message}};
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!ec) write_file(dir / "error.json", j.dump(2) + "\n");
  std::cerr << "error (" << kind << "): " << message << "\n";
}

latfol::SiteSet centered_window(int halfwidth) {
  latfol::SiteSet w;
  for (int n = -halfwidth; n <= halfwidth; ++n) w.insert(latfol::Site(n));
  return w;
}

latfol::HullSolveParams hull_params(const latfol::RunConfig& cfg) {
  latfol::HullSolveParams p;
  p.n_trunc = cfg.hull.n_trunc;
  p.tol = cfg.hull.tol;
  p.max_iter = cfg.hull.max_newton;
  p.divisor_floor = cfg.hull.divisor_floor;
  if (!cfg.hull.eps_schedule.empty() && cfg.model.epsilon != 0.0) {
    p.epsilon_schedule.clear();
    for (double e : cfg.hull.eps_schedule)
      p.epsilon_schedule.push_back(e / cfg.model.epsilon);
  }
  return p;
}

int cmd_solve_hull(const latfol::RunConfig& cfg) {
  auto medium = cfg.model.medium();
  if (!medium) {
    write_error_json(cfg.output_dir, "usage",
                     "solve-hull requires a model with an on-site medium");
    return kExitError;
  }
  latfol::HullSolveResult res;
  try {
    res = latfol::solve_hull(*medium, cfg.verify.omega, hull_params(cfg));
  } catch (const latfol::ResonanceError& e) {
    write_error_json(cfg.output_dir, "resonance", e.what());
    return kExitError;
  } catch (const latfol::ConvergenceError& e) {
    write_error_json(cfg.output_dir, "convergence", e.what());
    return kExitError;
  }
  fs::create_directories(cfg.output_dir);
  latfol::save_hull(res.h, (fs::path(cfg.output_dir) / "hull.txt").string());
  std::ostringstream csv;
  csv << "eps,iter,residual\n";
  for (const auto& rec : res.log)
    csv << g17(rec.eps) << ',' << rec.iter << ',' << g17(rec.residual) << '\n';
  write_file(fs::path(cfg.output_dir) / "hull_convergence.csv", csv.str());
  std::cout << "hull solved: final residual "
            << g17(res.log.empty() ? 0.0 : res.log.back().residual)
            << ", quadratic constant " << g17(res.quadratic_C) << "\n";
  return kExitPass;
}

latfol::FoliationGenerator make_generator(const latfol::RunConfig& cfg,
                                          bool allow_solve) {
  auto medium = cfg.model.medium();
  if (!medium || medium->empty())
    return latfol::linear_generator(cfg.verify.omega);
  fs::path hull_path = fs::path(cfg.output_dir) / "hull.txt";
  if (fs::exists(hull_path))
    return latfol::hull_generator(latfol::load_hull(hull_path.string()));
  if (!allow_solve)
    throw latfol::Error("missing input '" + hull_path.string() +
                        "' (run solve-hull first)");
  auto res = latfol::solve_hull(*medium, cfg.verify.omega, hull_params(cfg));
  fs::create_directories(cfg.output_dir);
  latfol::save_hull(res.h, hull_path.string());
  return latfol::hull_generator(res.h);
}

std::string verify_csv(const latfol::VerifyReport& rep) {
  std::ostringstream csv;
  csv << "beta,window_lo,window_hi,window_size,gamma_star,stationarity,iterations,verdict\n";
  for (const auto& rec : rep.records) {
    csv << g17(rec.beta) << ',' << rec.window.begin()->x[0] << ','
        << rec.window.rbegin()->x[0] << ',' << rec.window.size() << ','
        << g17(rec.gamma_star) << ',' << g17(rec.stationarity) << ','
        << rec.iterations << ',' << (rec.pass ? "pass" : "fail") << '\n';
  }
  return csv.str();
}

json hypothesis_json(const latfol::HypothesisReport& h) {
  return json{{"ferromagnetic", h.ferromagnetic},
              {"transitive", h.transitive},
              {"coercive", h.coercive},
              {"axioms", h.axioms},
              {"component_count", h.component_count},
              {"worst_mixed_partial", h.ferro_detail.worst_entry},
              {"ordering_margin", h.axiom_detail.ordering_margin},
              {"all_pass", h.all_pass},
              {"failed", h.failed}};
}

int cmd_verify(const latfol::RunConfig& cfg) {
  latfol::InteractionSpec spec = cfg.model.build();
  latfol::SiteSet window = centered_window(cfg.verify.window_halfwidth);
  latfol::FoliationParams fp;
  fp.equilibrium_tol = cfg.verify.equilibrium_tol;

  latfol::FoliationGenerator gen;
  try {
    gen = make_generator(cfg, /*allow_solve=*/true);
  } catch (const latfol::ResonanceError& e) {
    write_error_json(cfg.output_dir, "resonance", e.what());
    return kExitError;
  } catch (const latfol::ConvergenceError& e) {
    write_error_json(cfg.output_dir, "convergence", e.what());
    return kExitError;
  }

  latfol::FoliationFamily fam;
  try {
    fam = latfol::build_foliation(spec, gen, cfg.beta_grid(), window, fp);
  } catch (const latfol::FoliationError& e) {
    fs::create_directories(cfg.output_dir);
    json summary{{"pass", false},
                 {"hypotheses", {{"all_pass", false}, {"failed", "equilibrium (A1)"}}},
                 {"detail", e.what()}};
    write_file(fs::path(cfg.output_dir) / "verify_summary.json",
               summary.dump(2) + "\n");
    std::cerr << "hypothesis failure: equilibrium (A1): " << e.what() << "\n";
    return kExitHypothesis;
  }

  latfol::VerifyParams vp;
  vp.w_max = cfg.verify.w_max;
  vp.gamma_tol = cfg.verify.gamma_tol;
  vp.stationarity_tol = cfg.verify.stationarity_tol;
  vp.edge_threshold = cfg.verify.edge_threshold;
  vp.seed = cfg.verify.seed;
  vp.threads = cfg.verify.threads;

  latfol::VerifyReport rep = latfol::verify_theorem(
      spec, fam, latfol::default_window_schedule(vp.w_max), vp);

  fs::create_directories(cfg.output_dir);
  write_file(fs::path(cfg.output_dir) / "verify.csv", verify_csv(rep));
  write_file(fs::path(cfg.output_dir) / "foliation.csv",
             latfol::foliation_report_csv(fam));

  double worst_gamma = 0.0;
  const latfol::WindowRecord* worst = nullptr;
  for (const auto& rec : rep.records)
    if (!worst || rec.gamma_star > worst_gamma) {
      worst_gamma = rec.gamma_star;
      worst = &rec;
    }
  json summary{{"pass", rep.pass},
               {"violations", rep.violations},
               {"records", rep.records.size()},
               {"hypotheses", hypothesis_json(rep.hypotheses)}};
  if (worst)
    summary["worst"] = {{"beta", worst->beta},
                        {"window_size", worst->window.size()},
                        {"gamma_star", worst->gamma_star}};
  write_file(fs::path(cfg.output_dir) / "verify_summary.json",
             summary.dump(2) + "\n");

  if (!rep.hypotheses.all_pass) {
    std::cerr << "hypothesis failure: " << rep.hypotheses.failed << " failed\n";
    return kExitHypothesis;
  }
  if (!rep.pass) {
    std::cerr << "conclusion failure: " << rep.violations
              << " window records failed; worst gamma_star " << g17(worst_gamma)
              << "\n";
    return kExitConclusion;
  }
  std::cout << "verified: " << rep.records.size()
            << " (beta, window) records, worst gamma_star " << g17(worst_gamma)
            << "\n";
  return kExitPass;
}

int cmd_report(const latfol::RunConfig& cfg) {
  fs::path dir(cfg.output_dir);
  fs::path verify_path = dir / "verify.csv";
  fs::path foliation_path = dir / "foliation.csv";
  for (const fs::path& p : {verify_path, foliation_path})
    if (!fs::exists(p))
      throw latfol::Error("missing input '" + p.string() + "' (run verify first)");

  // Gamma vs window size: max gamma_star over beta per window size.
  std::ifstream vf(verify_path);
  std::string line;
  std::getline(vf, line);  // header
  std::map<int, double> gamma_by_size;
  while (std::getline(vf, line)) {
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() < 8) continue;
    int size = std::stoi(fields[3]);
    double gamma = std::stod(fields[4]);
    auto [it, fresh] = gamma_by_size.emplace(size, gamma);
    if (!fresh) it->second = std::max(it->second, gamma);
  }
  std::ostringstream gcsv;
  gcsv << "window_size,max_gamma_star\n";
  for (const auto& [size, gamma] : gamma_by_size)
    gcsv << size << ',' << g17(gamma) << '\n';
  write_file(dir / "report_gamma_vs_window.csv", gcsv.str());

  // Ordering margins come straight from the foliation report.
  std::ifstream ff(foliation_path);
  std::ostringstream mcsv;
  mcsv << "beta,ordering_margin\n";
  std::getline(ff, line);
  while (std::getline(ff, line)) {
    auto first = line.find(',');
    auto last = line.rfind(',');
    if (first == std::string::npos || last == first) continue;
    mcsv << line.substr(0, first) << ',' << line.substr(last + 1) << '\n';
  }
  write_file(dir / "report_margin.csv", mcsv.str());

  // 1-D section of the hull function, when one was solved.
  fs::path hull_path = dir / "hull.txt";
  if (fs::exists(hull_path)) {
    latfol::HullFunction h = latfol::load_hull(hull_path.string());
    std::ostringstream hcsv;
    hcsv << "x,h\n";
    const int samples = 512;
    std::vector<double> sigma(h.d);
    for (int j = 0; j <= samples; ++j) {
      double x = static_cast<double>(j) / samples;
      for (int a = 0; a < h.d; ++a) sigma[a] = x * h.alpha[a];
      hcsv << g17(x) << ',' << g17(h.value(sigma)) << '\n';
    }
    write_file(dir / "report_hull_section.csv", hcsv.str());
  }
  std::cout << "report written to " << dir.string() << "\n";
  return kExitPass;
}

int cmd_check_model(const latfol::RunConfig& cfg) {
  latfol::InteractionSpec spec = cfg.model.build();
  latfol::SiteSet window = centered_window(8);
  std::vector<latfol::LatticeConfiguration> probes{
      latfol::LatticeConfiguration::linear(cfg.verify.omega),
      latfol::LatticeConfiguration::constant(0.3),
      latfol::LatticeConfiguration::linear(cfg.verify.omega, 0.5)};
  latfol::validate_spec(spec, probes, window);
  latfol::FerromagneticReport ferro =
      latfol::ferromagnetic_check(spec, probes, window);
  latfol::InteractionGraph g =
      latfol::build_graph(spec, probes, window, cfg.verify.edge_threshold);
  json j{{"name", spec.name},
         {"range_bound", spec.range_bound},
         {"ferromagnetic", ferro.is_ferromagnetic},
         {"worst_mixed_partial", ferro.worst_entry},
         {"transitive", latfol::is_transitive(g)},
         {"components", latfol::component_count(g)}};
  std::cout << j.dump(2) << "\n";
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium foliations and ground-state certification for "
               "finite-range lattice models"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir_override;
  int threads_override = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "run configuration file")
        ->required();
    sub->add_option("-o,--output-dir", output_dir_override,
                    "override [output] dir");
    sub->add_option("-t,--threads", threads_override, "override [verify] threads");
  };

  CLI::App* solve = app.add_subcommand("solve-hull", "solve the hull equation");
  CLI::App* verify = app.add_subcommand("verify", "certify the ground-state property");
  CLI::App* report = app.add_subcommand("report", "emit plot-data CSVs");
  CLI::App* check = app.add_subcommand("check-model", "structural model checks");
  for (CLI::App* sub : {solve, verify, report, check}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    latfol::RunConfig cfg = latfol::load_run_config(config_path);
    if (!output_dir_override.empty()) cfg.output_dir = output_dir_override;
    if (threads_override > 0) cfg.verify.threads = threads_override;
    if (solve->parsed()) return cmd_solve_hull(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    if (report->parsed()) return cmd_report(cfg);
    if (check->parsed()) return cmd_check_model(cfg);
    return kExitError;
  } catch (const latfol::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
