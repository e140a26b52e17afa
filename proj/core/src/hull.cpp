#include "latfol/hull.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

namespace latfol {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// --- naive separable DFT ---------------------------------------------------

// In-place DFT along one axis of a d-dimensional cube with side m, row-major.
// sign = -1 forward, +1 inverse; no normalization.
void dft_axis(std::vector<std::complex<double>>& data, int d, int m, int axis,
              int sign) {
  const std::size_t n = data.size();
  const std::size_t stride = ipow(m, d - 1 - axis);
  std::vector<std::complex<double>> table(m);
  for (int j = 0; j < m; ++j)
    table[j] = std::polar(1.0, sign * kTwoPi * j / m);
  std::vector<std::complex<double>> line(m), out(m);
  for (std::size_t base = 0; base < n; ++base) {
    if ((base / stride) % m != 0) continue;
    for (int j = 0; j < m; ++j) line[j] = data[base + j * stride];
    for (int k = 0; k < m; ++k) {
      std::complex<double> acc = 0.0;
      std::size_t idx = 0;
      for (int j = 0; j < m; ++j) {
        acc += line[j] * table[idx];
        idx += k;
        if (idx >= static_cast<std::size_t>(m)) idx -= m;
      }
      out[k] = acc;
    }
    for (int k = 0; k < m; ++k) data[base + k * stride] = out[k];
  }
}

// Modes |k_j| <= N of a real grid function on the m^d grid (m >= 2N+1).
std::vector<std::complex<double>> grid_to_cube(const std::vector<double>& grid,
                                               int d, int m, int N) {
  std::vector<std::complex<double>> work(grid.begin(), grid.end());
  for (int a = 0; a < d; ++a) dft_axis(work, d, m, a, -1);
  const double scale = 1.0 / static_cast<double>(work.size());
  const int side = 2 * N + 1;
  std::vector<std::complex<double>> cube(ipow(side, d));
  std::vector<int> k(d, -N);
  for (std::size_t f = 0; f < cube.size(); ++f) {
    std::size_t bin = 0;
    std::size_t rem = f;
    for (int a = d - 1; a >= 0; --a) {
      k[a] = static_cast<int>(rem % side) - N;
      rem /= side;
    }
    for (int a = 0; a < d; ++a) bin = bin * m + ((k[a] % m) + m) % m;
    cube[f] = work[bin] * scale;
  }
  return cube;
}

// Real grid values on the m^d grid of the trig polynomial with the given
// mode cube (m >= 2N+1).
std::vector<double> cube_to_grid(const std::vector<std::complex<double>>& cube,
                                 int d, int N, int m) {
  const int side = 2 * N + 1;
  std::vector<std::complex<double>> work(ipow(m, d), 0.0);
  for (std::size_t f = 0; f < cube.size(); ++f) {
    std::size_t rem = f;
    std::size_t bin = 0;
    std::vector<int> k(d);
    for (int a = d - 1; a >= 0; --a) {
      k[a] = static_cast<int>(rem % side) - N;
      rem /= side;
    }
    for (int a = 0; a < d; ++a) bin = bin * m + ((k[a] % m) + m) % m;
    work[bin] += cube[f];
  }
  for (int a = 0; a < d; ++a) dft_axis(work, d, m, a, +1);
  std::vector<double> out(work.size());
  for (std::size_t i = 0; i < work.size(); ++i) out[i] = work[i].real();
  return out;
}

}  // namespace

// --- HullFunction ----------------------------------------------------------

std::size_t HullFunction::mode_count() const { return ipow(side(), d); }

std::complex<double>& HullFunction::at(std::span<const int> k) {
  std::size_t f = 0;
  for (int a = 0; a < d; ++a) f = f * side() + (k[a] + n_trunc);
  return coeffs[f];
}

const std::complex<double>& HullFunction::at(std::span<const int> k) const {
  return const_cast<HullFunction*>(this)->at(k);
}

std::vector<int> HullFunction::mode_of(std::size_t flat) const {
  std::vector<int> k(d);
  for (int a = d - 1; a >= 0; --a) {
    k[a] = static_cast<int>(flat % side()) - n_trunc;
    flat /= side();
  }
  return k;
}

double HullFunction::mode_dot_alpha(std::size_t flat) const {
  double ka = 0.0;
  for (int a = d - 1; a >= 0; --a) {
    ka += (static_cast<int>(flat % side()) - n_trunc) * alpha[a];
    flat /= side();
  }
  return ka;
}

double HullFunction::eval(std::span<const double> sigma) const {
  const int M = side();
  // Per-axis twiddles e^{2 pi i k sigma_a}, k = -N..N.
  std::vector<std::complex<double>> tab(static_cast<std::size_t>(d) * M);
  for (int a = 0; a < d; ++a) {
    std::complex<double> w = std::polar(1.0, kTwoPi * sigma[a]);
    std::complex<double> cur = std::polar(1.0, -kTwoPi * n_trunc * sigma[a]);
    for (int j = 0; j < M; ++j) {
      tab[a * M + j] = cur;
      cur *= w;
    }
  }
  std::complex<double> acc = 0.0;
  for (std::size_t f = 0; f < coeffs.size(); ++f) {
    if (coeffs[f] == 0.0) continue;
    std::complex<double> ph = 1.0;
    std::size_t rem = f;
    for (int a = d - 1; a >= 0; --a) {
      ph *= tab[a * M + rem % M];
      rem /= M;
    }
    acc += coeffs[f] * ph;
  }
  return acc.real();
}

double HullFunction::value(std::span<const double> sigma) const {
  return offset + eval(sigma);
}

double HullFunction::sup_bound() const {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::abs(c);
  return s;
}

HullFunction HullFunction::zero(std::vector<double> alpha, double omega, int n_trunc) {
  HullFunction h;
  h.d = static_cast<int>(alpha.size());
  h.alpha = std::move(alpha);
  h.omega = omega;
  h.n_trunc = n_trunc;
  h.coeffs.assign(h.mode_count(), 0.0);
  return h;
}

// --- residual --------------------------------------------------------------

namespace {

// Discrete Laplacian in the shifted variable, diagonal in Fourier space:
// multiply mode k by 2 cos(2 pi (k.alpha) omega) - 2.
std::vector<std::complex<double>> lap_coeffs(const HullFunction& h) {
  std::vector<std::complex<double>> out(h.coeffs.size());
  for (std::size_t f = 0; f < out.size(); ++f) {
    double kaw = h.mode_dot_alpha(f) * h.omega;
    out[f] = h.coeffs[f] * (2.0 * std::cos(kTwoPi * kaw) - 2.0);
  }
  return out;
}

std::vector<double> residual_grid(const HullFunction& h, const TorusPotential& V,
                                  int m, std::vector<double>* h_grid_out = nullptr) {
  std::vector<double> lap = cube_to_grid(lap_coeffs(h), h.d, h.n_trunc, m);
  std::vector<double> hg = cube_to_grid(h.coeffs, h.d, h.n_trunc, m);
  std::vector<double> theta(h.d);
  std::vector<double> r(lap.size());
  for (std::size_t f = 0; f < r.size(); ++f) {
    std::size_t rem = f;
    // sigma coordinates from the flattened row-major index
    for (int a = h.d - 1; a >= 0; --a) {
      theta[a] = static_cast<double>(rem % m) / m;
      rem /= m;
    }
    double hv = h.offset + hg[f];
    for (int a = 0; a < h.d; ++a) theta[a] += h.alpha[a] * hv;
    r[f] = lap[f] + V.dir_deriv(theta);
  }
  if (h_grid_out) *h_grid_out = std::move(hg);
  return r;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<double> hull_residual(const HullFunction& h, const TorusPotential& V,
                                  int grid_m) {
  if (grid_m < h.side())
    throw ContractViolation("hull_residual: grid resolution below 2*n_trunc+1");
  return residual_grid(h, V, grid_m);
}

double hull_residual_max(const HullFunction& h, const TorusPotential& V, int grid_m) {
  return max_abs(hull_residual(h, V, grid_m));
}

// --- linearized solve ------------------------------------------------------

namespace {

// Real parameterization of the hermitian mode cube: one (re, im) pair per
// representative mode (k lexicographically positive); k = 0 stays pinned.
// The Newton system is the Galerkin linearization
//   lambda_k delta_k + sum_q chat_{k-q} delta_q = -rhat_k,   |k| <= N,
// with chat the unaliased Fourier coefficients of the multiplication part
// (computed on a fine grid), so near-resonant modes are reached only through
// genuine long convolution paths, not grid wrap-around.
struct ModeSpace {
  int d, N, side;
  std::size_t n;
  std::vector<std::size_t> reps;          // flats with lex-positive mode
  std::vector<double> lambda;             // lap symbol per flat
  int chat_N;                             // chat covers |k| <= chat_N = 2N
  std::vector<std::complex<double>> chat; // side (2*chat_N+1)^d

  explicit ModeSpace(const HullFunction& h)
      : d(h.d), N(h.n_trunc), side(h.side()), n(h.mode_count()), chat_N(2 * N) {
    lambda.resize(n);
    std::vector<int> k(d);
    for (std::size_t f = 0; f < n; ++f) {
      std::size_t rem = f;
      bool positive = false, decided = false;
      double ka = 0.0;
      for (int a = d - 1; a >= 0; --a) {
        k[a] = static_cast<int>(rem % side) - N;
        rem /= side;
        ka += k[a] * h.alpha[a];
      }
      lambda[f] = 2.0 * std::cos(kTwoPi * ka * h.omega) - 2.0;
      for (int a = 0; a < d && !decided; ++a)
        if (k[a] != 0) {
          positive = k[a] > 0;
          decided = true;
        }
      if (decided && positive) reps.push_back(f);
    }
  }

  std::vector<int> mode_of(std::size_t f) const {
    std::vector<int> k(d);
    for (int a = d - 1; a >= 0; --a) {
      k[a] = static_cast<int>(f % side) - N;
      f /= side;
    }
    return k;
  }

  std::size_t conj_flat(std::size_t f) const {
    std::size_t g = 0;
    auto k = mode_of(f);
    for (int a = 0; a < d; ++a) g = g * side + (-k[a] + N);
    return g;
  }

  std::complex<double> chat_at(const std::vector<int>& k) const {
    const int S = 2 * chat_N + 1;
    std::size_t f = 0;
    for (int a = 0; a < d; ++a) {
      if (std::abs(k[a]) > chat_N) return 0.0;
      f = f * S + (k[a] + chat_N);
    }
    return chat[f];
  }

  // Hermitian cube from the real dof vector.
  std::vector<std::complex<double>> modes(const Eigen::VectorXd& x) const {
    std::vector<std::complex<double>> z(n, 0.0);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      std::complex<double> v(x[2 * i], x[2 * i + 1]);
      z[reps[i]] = v;
      z[conj_flat(reps[i])] = std::conj(v);
    }
    return z;
  }

  Eigen::VectorXd dof(const std::vector<std::complex<double>>& z) const {
    Eigen::VectorXd x(2 * reps.size());
    for (std::size_t i = 0; i < reps.size(); ++i) {
      x[2 * i] = z[reps[i]].real();
      x[2 * i + 1] = z[reps[i]].imag();
    }
    return x;
  }

  // Dense real Galerkin Jacobian over the dof basis.
  Eigen::MatrixXd dense_matrix() const {
    const std::size_t R = reps.size();
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2 * R, 2 * R);
    for (std::size_t i = 0; i < R; ++i) {
      auto kp = mode_of(reps[i]);
      std::vector<int> diff(d), sum(d);
      for (std::size_t j = 0; j < R; ++j) {
        auto kq = mode_of(reps[j]);
        for (int a = 0; a < d; ++a) {
          diff[a] = kp[a] - kq[a];
          sum[a] = kp[a] + kq[a];
        }
        // row p gets chat_{p-q} z_q + chat_{p+q} conj(z_q)
        std::complex<double> c1 = chat_at(diff);
        std::complex<double> c2 = chat_at(sum);
        J(2 * i, 2 * j) += c1.real() + c2.real();
        J(2 * i, 2 * j + 1) += -c1.imag() + c2.imag();
        J(2 * i + 1, 2 * j) += c1.imag() + c2.imag();
        J(2 * i + 1, 2 * j + 1) += c1.real() - c2.real();
      }
      J(2 * i, 2 * i) += lambda[reps[i]];
      J(2 * i + 1, 2 * i + 1) += lambda[reps[i]];
    }
    return J;
  }
};

// Matrix-free form of the same operator for grids past the dense cutoff.
struct ModeOperator {
  const ModeSpace* space;
  const std::vector<double>* c_fine;  // multiplication part on the fine grid
  int m_fine;
  double cbar = 0.0;
  double precond_floor = 1e-8;

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const {
    auto z = space->modes(x);
    std::vector<double> g = cube_to_grid(z, space->d, space->N, m_fine);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] *= (*c_fine)[i];
    auto conv = grid_to_cube(g, space->d, m_fine, space->N);
    for (std::size_t f = 0; f < z.size(); ++f)
      conv[f] += space->lambda[f] * z[f];
    return space->dof(conv);
  }

  Eigen::VectorXd precondition(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y(x.size());
    for (std::size_t i = 0; i < space->reps.size(); ++i) {
      double denom = space->lambda[space->reps[i]] + cbar;
      if (std::abs(denom) < precond_floor)
        denom = denom < 0.0 ? -precond_floor : precond_floor;
      y[2 * i] = x[2 * i] / denom;
      y[2 * i + 1] = x[2 * i + 1] / denom;
    }
    return y;
  }
};

// Left-preconditioned GMRES with modified Gram-Schmidt.
Eigen::VectorXd gmres(const ModeOperator& op, const Eigen::VectorXd& b,
                      double rel_tol, int max_iter) {
  const Eigen::Index n = b.size();
  Eigen::VectorXd pb = op.precondition(b);
  double beta = pb.norm();
  if (beta == 0.0) return Eigen::VectorXd::Zero(n);
  max_iter = std::min<int>(max_iter, static_cast<int>(n));
  std::vector<Eigen::VectorXd> V;
  V.push_back(pb / beta);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(max_iter + 1, max_iter);
  std::vector<double> cs(max_iter), sn(max_iter);
  Eigen::VectorXd g = Eigen::VectorXd::Zero(max_iter + 1);
  g[0] = beta;
  int k = 0;
  for (; k < max_iter; ++k) {
    Eigen::VectorXd w = op.precondition(op.apply(V[k]));
    for (int j = 0; j <= k; ++j) {
      H(j, k) = w.dot(V[j]);
      w -= H(j, k) * V[j];
    }
    H(k + 1, k) = w.norm();
    const double hsub = H(k + 1, k);
    if (hsub > 1e-300) V.push_back(w / hsub);
    // Givens rotations to keep H upper triangular.
    for (int j = 0; j < k; ++j) {
      double t = cs[j] * H(j, k) + sn[j] * H(j + 1, k);
      H(j + 1, k) = -sn[j] * H(j, k) + cs[j] * H(j + 1, k);
      H(j, k) = t;
    }
    double denom = std::hypot(H(k, k), H(k + 1, k));
    cs[k] = H(k, k) / denom;
    sn[k] = H(k + 1, k) / denom;
    H(k, k) = denom;
    H(k + 1, k) = 0.0;
    g[k + 1] = -sn[k] * g[k];
    g[k] = cs[k] * g[k];
    if (std::abs(g[k + 1]) <= rel_tol * beta || hsub <= 1e-300) {
      ++k;
      break;
    }
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(k);
  for (int i = k - 1; i >= 0; --i) {
    double s = g[i];
    for (int j = i + 1; j < k; ++j) s -= H(i, j) * y[j];
    y[i] = s / H(i, i);
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < k; ++i) x += y[i] * V[i];
  return x;
}

}  // namespace

// --- solver ----------------------------------------------------------------

namespace {

struct StageResult {
  bool converged = false;
  int iters = 0;
};

StageResult newton_stage(HullFunction& h, const TorusPotential& Vs,
                         const HullSolveParams& p, double eps_label,
                         std::vector<HullIterRecord>& log) {
  // Fine grid for dealiased evaluation of the composition terms.
  const int m_fine = 2 * h.side() + 1;
  const std::size_t n = h.mode_count();
  const std::size_t n_fine = ipow(m_fine, h.d);
  ModeSpace space(h);

  for (int iter = 0; iter <= p.max_iter; ++iter) {
    std::vector<double> hg;
    std::vector<double> r = residual_grid(h, Vs, m_fine, &hg);
    double rn = max_abs(r);
    log.push_back({eps_label, iter, rn});
    if (rn < p.tol) return {true, iter};
    if (iter == p.max_iter) break;

    // Multiplication part of the linearization: second directional
    // derivative of V at the composed argument, on the fine grid.
    std::vector<double> c(n_fine);
    std::vector<double> theta(h.d);
    for (std::size_t f = 0; f < n_fine; ++f) {
      std::size_t rem = f;
      for (int a = h.d - 1; a >= 0; --a) {
        theta[a] = static_cast<double>(rem % m_fine) / m_fine;
        rem /= m_fine;
      }
      double hv = h.offset + hg[f];
      for (int a = 0; a < h.d; ++a) theta[a] += h.alpha[a] * hv;
      c[f] = Vs.dir_deriv2(theta);
    }
    space.chat = grid_to_cube(c, h.d, m_fine, space.chat_N);
    auto rhat = grid_to_cube(r, h.d, m_fine, h.n_trunc);
    for (auto& v : rhat) v = -v;
    Eigen::VectorXd b = space.dof(rhat);

    Eigen::VectorXd x;
    if (n <= static_cast<std::size_t>(p.dense_cutoff)) {
      x = space.dense_matrix().partialPivLu().solve(b);
    } else {
      ModeOperator op;
      op.space = &space;
      op.c_fine = &c;
      op.m_fine = m_fine;
      double cbar = 0.0;
      for (double v : c) cbar += v;
      op.cbar = cbar / static_cast<double>(n_fine);
      x = gmres(op, b, p.linear_tol, p.max_krylov);
    }
    auto delta = space.modes(x);  // k = 0 stays zero

    // Damped update: halve the step while the residual does not decrease.
    bool accepted = false;
    for (double step = 1.0; step > 0.1; step *= 0.5) {
      HullFunction trial = h;
      for (std::size_t f = 0; f < n; ++f) trial.coeffs[f] += step * delta[f];
      double rt = max_abs(residual_grid(trial, Vs, m_fine));
      if (rt < rn) {
        h = std::move(trial);
        accepted = true;
        break;
      }
    }
    if (!accepted) return {false, iter};
  }
  return {false, p.max_iter};
}

}  // namespace

HullSolveResult solve_hull(const TorusPotential& V, double omega,
                           const HullSolveParams& params) {
  V.validate();
  HullSolveResult res;
  res.h = HullFunction::zero(V.alpha, omega, params.n_trunc);

  double r0 = hull_residual_max(res.h, V, 2 * res.h.side() + 1);
  res.log.push_back({0.0, 0, r0});
  if (r0 < params.tol) return res;  // e.g. V identically zero

  // Small-divisor diagnostic over the retained modes.
  {
    double worst = std::numeric_limits<double>::infinity();
    long worst_norm = std::numeric_limits<long>::max();
    std::vector<int> worst_k;
    for (std::size_t f = 0; f < res.h.mode_count(); ++f) {
      auto k = res.h.mode_of(f);
      if (std::all_of(k.begin(), k.end(), [](int v) { return v == 0; })) continue;
      double kaw = res.h.mode_dot_alpha(f) * omega;
      double dist = std::abs(kaw - std::round(kaw));
      long norm = 0;
      for (int v : k) norm += std::abs(v);
      // Prefer the lowest-order offender so resonances are reported at their
      // generating mode, not at a multiple near the truncation boundary.
      bool offends = dist < params.divisor_floor;
      bool recorded = worst < params.divisor_floor;
      bool better = offends ? (!recorded || norm < worst_norm) : (!recorded && dist < worst);
      if (better) {
        worst = dist;
        worst_norm = norm;
        worst_k = k;
      }
    }
    if (worst < params.divisor_floor) {
      std::ostringstream os;
      os << "resonance: mode (";
      for (std::size_t j = 0; j < worst_k.size(); ++j)
        os << (j ? "," : "") << worst_k[j];
      os << ") has |k.alpha*omega - round| = " << worst << " < divisor_floor "
         << params.divisor_floor;
      throw ResonanceError(os.str());
    }
  }

  std::vector<double> schedule = params.epsilon_schedule;
  std::sort(schedule.begin(), schedule.end());
  if (schedule.empty()) schedule = {1.0};
  double reached = 0.0;
  std::size_t i = 0;
  int stages = 0;
  double last_eps = schedule.back();
  while (i < schedule.size()) {
    if (++stages > 64)
      throw ConvergenceError("solve_hull: continuation exceeded 64 stages");
    double f = schedule[i];
    HullFunction saved = res.h;
    StageResult st = newton_stage(res.h, V.scaled(f), params, f, res.log);
    if (st.converged) {
      reached = f;
      ++i;
      if (f == last_eps) res.final_stage_iters = st.iters;
      continue;
    }
    res.h = std::move(saved);  // roll back the failed stage
    if (f - reached < 1e-3) {
      std::ostringstream os;
      os << "solve_hull: Newton failed at amplitude fraction " << f
         << "; residual history:";
      for (const auto& rec : res.log) os << ' ' << rec.residual;
      throw ConvergenceError(os.str());
    }
    schedule.insert(schedule.begin() + i, 0.5 * (reached + f));
  }

  // Quadratic-convergence constant over the final stage.
  {
    std::vector<double> rs;
    for (const auto& rec : res.log)
      if (rec.eps == last_eps) rs.push_back(rec.residual);
    double C = 0.0;
    std::size_t first = rs.size() > 4 ? rs.size() - 4 : 0;
    for (std::size_t j = first; j + 1 < rs.size(); ++j) {
      if (rs[j + 1] <= 1e-15 || rs[j] <= 0.0) continue;
      C = std::max(C, rs[j + 1] / (rs[j] * rs[j]));
    }
    res.quadratic_C = C;
  }
  return res;
}

// --- translates and sampling ----------------------------------------------

HullFunction translate(const HullFunction& h, double beta) {
  HullFunction out = h;
  for (std::size_t f = 0; f < out.coeffs.size(); ++f) {
    double ka = h.mode_dot_alpha(f);
    out.coeffs[f] *= std::polar(1.0, kTwoPi * ka * beta);
  }
  out.at(std::vector<int>(h.d, 0)) = 0.0;
  out.offset = h.offset + beta;
  return out;
}

LatticeConfiguration sample_config(const HullFunction& h, double omega, double beta,
                                   int n_min, int n_max) {
  auto hb = std::make_shared<HullFunction>(translate(h, beta));
  const int halo = 8;
  const int lo = n_min - halo, hi = n_max + halo;
  auto table = std::make_shared<std::vector<double>>();
  std::vector<double> sigma(h.d);
  for (int n = lo; n <= hi; ++n) {
    for (int a = 0; a < h.d; ++a) sigma[a] = n * omega * h.alpha[a];
    table->push_back(n * omega + hb->value(sigma));
  }
  return LatticeConfiguration([hb, table, lo, hi, omega](const Site& s) {
    int n = s.x[0];
    if (n >= lo && n <= hi) return (*table)[n - lo];
    std::vector<double> sg(hb->d);
    for (int a = 0; a < hb->d; ++a) sg[a] = n * omega * hb->alpha[a];
    return n * omega + hb->value(sg);
  });
}

double monotonicity_margin(const HullFunction& h, int grid_m) {
  std::vector<std::complex<double>> dcoeffs(h.coeffs.size());
  for (std::size_t f = 0; f < dcoeffs.size(); ++f) {
    double ka = h.mode_dot_alpha(f);
    dcoeffs[f] = h.coeffs[f] * std::complex<double>(0.0, kTwoPi * ka);
  }
  std::vector<double> grid = cube_to_grid(dcoeffs, h.d, h.n_trunc, grid_m);
  double margin = std::numeric_limits<double>::infinity();
  for (double v : grid) margin = std::min(margin, 1.0 + v);
  return margin;
}

// --- save / load -----------------------------------------------------------

namespace {
std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

void save_hull(const HullFunction& h, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw Error("save_hull: cannot open " + path);
  os << "latfol-hull 1\n";
  os << "d " << h.d << '\n';
  os << "omega " << g17(h.omega) << '\n';
  os << "n_trunc " << h.n_trunc << '\n';
  os << "offset " << g17(h.offset) << '\n';
  os << "alpha";
  for (double a : h.alpha) os << ' ' << g17(a);
  os << '\n';
  std::size_t count = 0;
  for (const auto& c : h.coeffs)
    if (c != 0.0) ++count;
  os << "coeffs " << count << '\n';
  for (std::size_t f = 0; f < h.coeffs.size(); ++f) {
    if (h.coeffs[f] == 0.0) continue;
    for (int k : h.mode_of(f)) os << k << ' ';
    os << g17(h.coeffs[f].real()) << ' ' << g17(h.coeffs[f].imag()) << '\n';
  }
  if (!os) throw Error("save_hull: write failed for " + path);
}

HullFunction load_hull(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("load_hull: cannot open " + path);
  std::string magic;
  int version = 0;
  is >> magic >> version;
  if (magic != "latfol-hull" || version != 1)
    throw ParseError("load_hull: not a latfol hull file: " + path);
  std::string key;
  HullFunction h;
  std::size_t count = 0;
  is >> key >> h.d;
  if (key != "d") throw ParseError("load_hull: expected 'd'");
  is >> key >> h.omega;
  if (key != "omega") throw ParseError("load_hull: expected 'omega'");
  is >> key >> h.n_trunc;
  if (key != "n_trunc") throw ParseError("load_hull: expected 'n_trunc'");
  is >> key >> h.offset;
  if (key != "offset") throw ParseError("load_hull: expected 'offset'");
  is >> key;
  if (key != "alpha") throw ParseError("load_hull: expected 'alpha'");
  h.alpha.resize(h.d);
  for (int a = 0; a < h.d; ++a) is >> h.alpha[a];
  is >> key >> count;
  if (key != "coeffs") throw ParseError("load_hull: expected 'coeffs'");
  h.coeffs.assign(ipow(h.side(), h.d), 0.0);
  std::vector<int> k(h.d);
  for (std::size_t j = 0; j < count; ++j) {
    double re = 0, im = 0;
    for (int a = 0; a < h.d; ++a) is >> k[a];
    is >> re >> im;
    h.at(k) = {re, im};
  }
  if (!is) throw ParseError("load_hull: truncated file " + path);
  return h;
}

}  // namespace latfol
