#include "latfol/groundstate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "latfol/parallel.hpp"

namespace latfol {

namespace {

// Windowed objective: the terms meeting the window, with per-term maps from
// cell position to window variable.
struct WindowObjective {
  std::vector<Site> sites;  // sorted window sites (the phi variables)
  struct TermEntry {
    InteractionTerm term;
    std::vector<double> base;  // u restricted to the cell
    std::vector<int> var;      // window variable per cell slot, -1 if outside
  };
  std::vector<TermEntry> entries;

  WindowObjective(const InteractionSpec& spec, const LatticeConfiguration& u,
                  const SiteSet& window)
      : sites(window.begin(), window.end()) {
    for (auto& t : enumerate_terms(spec, window)) {
      TermEntry e;
      e.base.resize(t.cell.size());
      e.var.resize(t.cell.size());
      for (std::size_t j = 0; j < t.cell.size(); ++j) {
        e.base[j] = u.value(t.cell[j]);
        auto it = std::lower_bound(sites.begin(), sites.end(), t.cell[j]);
        e.var[j] = (it != sites.end() && *it == t.cell[j])
                       ? static_cast<int>(it - sites.begin())
                       : -1;
      }
      e.term = std::move(t);
      entries.push_back(std::move(e));
    }
  }

  double value(const Eigen::VectorXd& x) const {
    double acc = 0.0;
    std::vector<double> v;
    for (const auto& e : entries) {
      gather(e, x, v);
      acc += e.term.energy(v);
    }
    return acc;
  }

  void grad(const Eigen::VectorXd& x, Eigen::VectorXd& g) const {
    g.setZero(static_cast<Eigen::Index>(sites.size()));
    std::vector<double> v;
    for (const auto& e : entries) {
      gather(e, x, v);
      for (std::size_t j = 0; j < e.var.size(); ++j)
        if (e.var[j] >= 0) g[e.var[j]] += e.term.grad(v, j);
    }
  }

  void hessian(const Eigen::VectorXd& x, Eigen::MatrixXd& H) const {
    const auto n = static_cast<Eigen::Index>(sites.size());
    H.setZero(n, n);
    std::vector<double> v;
    for (const auto& e : entries) {
      gather(e, x, v);
      for (std::size_t j = 0; j < e.var.size(); ++j) {
        if (e.var[j] < 0) continue;
        for (std::size_t l = 0; l < e.var.size(); ++l) {
          if (e.var[l] < 0) continue;
          H(e.var[j], e.var[l]) += e.term.hess(v, j, l);
        }
      }
    }
  }

 private:
  static void gather(const TermEntry& e, const Eigen::VectorXd& x,
                     std::vector<double>& v) {
    v.resize(e.base.size());
    for (std::size_t j = 0; j < e.base.size(); ++j)
      v[j] = e.base[j] + (e.var[j] >= 0 ? x[e.var[j]] : 0.0);
  }
};

}  // namespace

MinimizeResult minimize_window(const InteractionSpec& spec,
                               const LatticeConfiguration& u, const SiteSet& window,
                               const MinimizeParams& params) {
  if (window.empty()) throw ContractViolation("minimize_window: empty window");
  WindowObjective obj(spec, u, window);
  const auto n = static_cast<Eigen::Index>(obj.sites.size());
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  const double f0 = obj.value(x);
  double f = f0;
  Eigen::VectorXd g(n);
  Eigen::MatrixXd H(n, n);
  int iter = 0;
  std::vector<double> trajectory;
  for (; iter < params.max_iter; ++iter) {
    obj.grad(x, g);
    double gn = g.lpNorm<Eigen::Infinity>();
    trajectory.push_back(gn);
    if (gn < params.stationarity_tol) break;

    obj.hessian(x, H);
    Eigen::VectorXd dir = -g;  // fallback: steepest descent
    Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
    if (ldlt.info() == Eigen::Success) {
      Eigen::VectorXd newton = ldlt.solve(-g);
      if (newton.allFinite() && newton.dot(g) < 0.0) dir = newton;
    }
    // Armijo backtracking.
    double t = 1.0;
    double slope = g.dot(dir);
    bool moved = false;
    for (int bt = 0; bt < params.max_backtracks; ++bt, t *= 0.5) {
      double ft = obj.value(x + t * dir);
      if (ft <= f + params.armijo_c * t * slope) {
        x += t * dir;
        f = ft;
        moved = true;
        break;
      }
    }
    if (!moved) {
      std::ostringstream os;
      os << "minimize_window: line search stalled at |grad| = " << gn
         << "; trajectory:";
      for (double v : trajectory) os << ' ' << v;
      throw ConvergenceError(os.str());
    }
  }
  obj.grad(x, g);
  double gn = g.lpNorm<Eigen::Infinity>();
  if (gn >= params.stationarity_tol) {
    std::ostringstream os;
    os << "minimize_window: no convergence in " << params.max_iter
       << " iterations; |grad| trajectory:";
    for (double v : trajectory) os << ' ' << v;
    throw ConvergenceError(os.str());
  }

  MinimizeResult res;
  for (Eigen::Index j = 0; j < n; ++j)
    if (x[j] != 0.0) res.phi_star[obj.sites[j]] = x[j];
  res.gamma_star = f0 - f;  // Gamma(phi*; u, window)
  res.stationarity = gn;
  res.iterations = iter;
  return res;
}

OracleResult brute_force_oracle(const InteractionSpec& spec,
                                const LatticeConfiguration& u, const SiteSet& window,
                                double lo, double hi, double step) {
  if (window.empty() || window.size() > 3)
    throw ContractViolation("brute_force_oracle: window must have 1..3 sites");
  WindowObjective obj(spec, u, window);
  const int n = static_cast<int>(obj.sites.size());
  const int M = static_cast<int>(std::llround((hi - lo) / step)) + 1;
  std::vector<double> values(M);
  for (int j = 0; j < M; ++j) values[j] = lo + j * step;

  // Gamma decomposes over terms; tabulate the one- and two-variable term
  // groups so the grid scan is table lookups.  Terms touching 3+ variables
  // are evaluated directly.
  std::vector<std::vector<double>> tab1(n, std::vector<double>(M, 0.0));
  std::map<std::pair<int, int>, std::vector<double>> tab2;
  std::vector<const WindowObjective::TermEntry*> direct;
  std::vector<double> v;
  for (const auto& e : obj.entries) {
    std::vector<int> touched;
    for (int var : e.var)
      if (var >= 0) touched.push_back(var);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    double base_energy;
    {
      v = e.base;
      base_energy = e.term.energy(v);
    }
    if (touched.empty()) continue;  // cancels in Gamma
    if (touched.size() == 1) {
      int a = touched[0];
      for (int j = 0; j < M; ++j) {
        v = e.base;
        for (std::size_t l = 0; l < e.var.size(); ++l)
          if (e.var[l] == a) v[l] += values[j];
        tab1[a][j] += base_energy - e.term.energy(v);
      }
    } else if (touched.size() == 2) {
      auto key = std::make_pair(touched[0], touched[1]);
      auto& t2 = tab2[key];
      if (t2.empty()) t2.assign(static_cast<std::size_t>(M) * M, 0.0);
      for (int ja = 0; ja < M; ++ja) {
        for (int jb = 0; jb < M; ++jb) {
          v = e.base;
          for (std::size_t l = 0; l < e.var.size(); ++l) {
            if (e.var[l] == key.first) v[l] += values[ja];
            if (e.var[l] == key.second) v[l] += values[jb];
          }
          t2[static_cast<std::size_t>(ja) * M + jb] +=
              base_energy - e.term.energy(v);
        }
      }
    } else {
      direct.push_back(&e);
    }
  }

  OracleResult res;
  res.gamma_max = -std::numeric_limits<double>::infinity();
  std::vector<int> best(n, 0), idx(n, 0);
  Eigen::VectorXd x(n);
  const long total = static_cast<long>(std::pow(static_cast<double>(M), n));
  for (long it = 0; it < total; ++it) {
    double gamma = 0.0;
    for (int a = 0; a < n; ++a) gamma += tab1[a][idx[a]];
    for (const auto& [key, t2] : tab2)
      gamma += t2[static_cast<std::size_t>(idx[key.first]) * M + idx[key.second]];
    if (!direct.empty()) {
      for (int a = 0; a < n; ++a) x[a] = values[idx[a]];
      for (const auto* e : direct) {
        v = e->base;
        double base_energy;
        {
          base_energy = e->term.energy(v);
          for (std::size_t l = 0; l < e->var.size(); ++l)
            if (e->var[l] >= 0) v[l] += x[e->var[l]];
        }
        gamma += base_energy - e->term.energy(v);
      }
    }
    ++res.evaluations;
    if (gamma > res.gamma_max) {  // strict: ties keep the earlier (smaller) phi
      res.gamma_max = gamma;
      best = idx;
    }
    // lexicographic odometer, last variable fastest
    for (int a = n - 1; a >= 0; --a) {
      if (++idx[a] < M) break;
      idx[a] = 0;
    }
  }
  for (int a = 0; a < n; ++a)
    if (values[best[a]] != 0.0) res.argmax[obj.sites[a]] = values[best[a]];
  return res;
}

std::vector<SiteSet> default_window_schedule(int w_max) {
  std::vector<SiteSet> out;
  for (int s = 1; s <= w_max; ++s) {
    SiteSet w;
    int lo = -(s - 1) / 2;
    for (int j = 0; j < s; ++j) w.insert(Site(lo + j));
    out.push_back(std::move(w));
  }
  return out;
}

VerifyReport verify_theorem(const InteractionSpec& spec, const FoliationFamily& fam,
                            const std::vector<SiteSet>& window_schedule,
                            const VerifyParams& params) {
  VerifyReport rep;
  auto& hyp = rep.hypotheses;

  // Probe configurations: a few members plus seeded random overlays.
  std::vector<LatticeConfiguration> probes;
  std::mt19937 rng(params.seed);
  std::uniform_real_distribution<double> amp(-0.5, 0.5);
  std::vector<Site> window_vec(fam.window.begin(), fam.window.end());
  std::uniform_int_distribution<std::size_t> pick(0, window_vec.size() - 1);
  for (int p = 0; p < params.probe_count && !fam.members.empty(); ++p) {
    std::size_t mi = p * (fam.members.size() - 1) /
                     std::max(1, params.probe_count - 1);
    mi = std::min(mi, fam.members.size() - 1);
    Perturbation phi;
    if (p > 0)
      for (int j = 0; j < 5; ++j) phi[window_vec[pick(rng)]] = amp(rng);
    probes.push_back(fam.members[mi].overlay(phi));
  }

  hyp.ferro_detail = ferromagnetic_check(spec, probes, fam.window);
  hyp.ferromagnetic = hyp.ferro_detail.is_ferromagnetic;

  InteractionGraph graph = build_graph(spec, probes, fam.window, params.edge_threshold);
  hyp.component_count = component_count(graph);
  hyp.transitive = is_transitive(graph);

  {
    Site center = window_vec[window_vec.size() / 2];
    Perturbation phi{{center, 0.1}};
    CoercivityReport c = coercivity_probe(
        spec, fam.members[fam.members.size() / 2], phi, center,
        {-1000.0, -100.0, -10.0, 0.0, 10.0, 100.0, 1000.0});
    hyp.coercive = c.pass;
  }

  hyp.axiom_detail = check_axioms(spec, fam);
  hyp.axioms = hyp.axiom_detail.all_pass;

  hyp.all_pass = hyp.ferromagnetic && hyp.transitive && hyp.coercive && hyp.axioms;
  if (!hyp.all_pass) {
    hyp.failed = !hyp.ferromagnetic ? "ferromagnetic"
                 : !hyp.transitive  ? "transitive"
                 : !hyp.coercive    ? "coercive"
                                    : "axioms";
    rep.pass = false;
    return rep;
  }

  // Windows are replaced by their connected hulls before minimization.
  std::vector<SiteSet> hulls;
  for (const auto& w : window_schedule) hulls.push_back(connected_hull(graph, w));

  const std::size_t nb = fam.beta_grid.size();
  const std::size_t nw = hulls.size();
  rep.records.assign(nb * nw, WindowRecord{});
  MinimizeParams mp;
  mp.stationarity_tol = std::min(1e-9, 0.1 * params.stationarity_tol);
  parallel_for(nb * nw, params.threads, [&](std::size_t task) {
    std::size_t bi = task / nw, wi = task % nw;
    WindowRecord& rec = rep.records[task];
    rec.beta = fam.beta_grid[bi];
    rec.window = hulls[wi];
    MinimizeResult mr = minimize_window(spec, fam.members[bi], hulls[wi], mp);
    rec.gamma_star = mr.gamma_star;
    rec.stationarity = mr.stationarity;
    rec.iterations = mr.iterations;
    rec.pass = mr.gamma_star <= params.gamma_tol &&
               mr.stationarity < params.stationarity_tol;
  });

  rep.violations = 0;
  for (const auto& rec : rep.records)
    if (!rec.pass) ++rep.violations;
  rep.pass = rep.violations == 0;
  return rep;
}

}  // namespace latfol
