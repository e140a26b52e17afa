#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "latfol/model.hpp"

namespace latfol {

/// Truncated Fourier representation of a hull function h: T^d -> R with
/// frequency alpha and rotation number omega.  The k=0 coefficient is pinned
/// to zero; translates carry their average in `offset` instead.
struct HullFunction {
  int d = 2;
  std::vector<double> alpha;
  double omega = 0.0;
  int n_trunc = 0;
  double offset = 0.0;
  // Dense cube of modes k in [-n_trunc, n_trunc]^d, row-major, axis index
  // k + n_trunc.
  std::vector<std::complex<double>> coeffs;

  int side() const { return 2 * n_trunc + 1; }
  std::size_t mode_count() const;

  std::complex<double>& at(std::span<const int> k);
  const std::complex<double>& at(std::span<const int> k) const;

  /// Mode vector of the flattened index.
  std::vector<int> mode_of(std::size_t flat) const;

  /// k . alpha for the flattened index.
  double mode_dot_alpha(std::size_t flat) const;

  /// Trigonometric evaluation of h(sigma), offset not included.
  double eval(std::span<const double> sigma) const;
  /// h(sigma) + offset.
  double value(std::span<const double> sigma) const;

  /// sum of |coefficients|: an upper bound for sup |h - offset|.
  double sup_bound() const;

  static HullFunction zero(std::vector<double> alpha, double omega, int n_trunc);
};

/// Grid of the hull equation residual
///   h(s+w*a) + h(s-w*a) - 2 h(s) + dV_a(s + a*h(s))
/// on the uniform m^d grid.  Shifts act spectrally; the composition term is
/// evaluated pointwise.  Requires m >= 2*n_trunc+1.
std::vector<double> hull_residual(const HullFunction& h, const TorusPotential& V,
                                  int grid_m);
double hull_residual_max(const HullFunction& h, const TorusPotential& V, int grid_m);

struct HullSolveParams {
  int n_trunc = 32;
  double tol = 1e-12;
  int max_iter = 30;
  double divisor_floor = 1e-6;       // lower bound on dist(k.alpha*omega, Z)
  std::vector<double> epsilon_schedule = {1.0};  // fractions of the potential
  double linear_tol = 1e-14;         // relative Krylov tolerance
  int max_krylov = 500;
  int dense_cutoff = 5000;           // direct solve up to this many grid points
};

struct HullIterRecord {
  double eps;
  int iter;
  double residual;
};

struct HullSolveResult {
  HullFunction h;
  std::vector<HullIterRecord> log;
  int final_stage_iters = 0;
  /// max of r_{k+1} / r_k^2 over the final continuation stage (quadratic
  /// convergence constant; ratios at the round-off floor are skipped).
  double quadratic_C = 0.0;
};

/// Newton iteration on the hull equation in Fourier space with the constant
/// mode projected out, with continuation in the potential amplitude.
HullSolveResult solve_hull(const TorusPotential& V, double omega,
                           const HullSolveParams& params = {});

/// h_beta(s) = h(s + beta*alpha) + beta, as phase-shifted coefficients plus
/// the recorded additive offset.
HullFunction translate(const HullFunction& h, double beta);

/// Configuration u_n = n*omega + beta + h(n*omega*alpha + beta*alpha).
/// Values over [n_min, n_max] (plus a halo) are precomputed; sites outside
/// fall back to direct evaluation.
LatticeConfiguration sample_config(const HullFunction& h, double omega, double beta,
                                   int n_min, int n_max);

/// min over the grid of 1 + (alpha . grad h)(sigma); positive means the
/// sampled foliation is strictly ordered.
double monotonicity_margin(const HullFunction& h, int grid_m);

void save_hull(const HullFunction& h, const std::string& path);
HullFunction load_hull(const std::string& path);

}  // namespace latfol
