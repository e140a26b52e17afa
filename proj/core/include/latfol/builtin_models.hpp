#pragma once

#include "latfol/model.hpp"

namespace latfol {

/// Classic 1-D chain: sum of 1/2 (u_i - u_{i+1})^2 - V(u_i * alpha).
/// A d=1 potential gives the periodic model, d>=2 the quasi-periodic one,
/// no potential the free chain.
InteractionSpec fk_model(std::optional<TorusPotential> medium = std::nullopt);

/// Demo quasi-periodic potential
/// V(theta) = eps/(2 pi)^2 * (cos 2*pi*theta_1 + cos 2*pi*theta_2)
/// with alpha = (1, sqrt 2); the curvature along the winding is O(eps).
TorusPotential demo_quasiperiodic_potential(double eps);

/// 1-D periodic potential V(x) = eps * cos(2*pi*x).
TorusPotential cosine_potential(double eps);

/// Pair couplings 1/2 * a_r * (u_i - u_{i+r})^2 for r = 1..cutoff with
/// a_r = 2^-r; mixed partials are -2^-r.
InteractionSpec long_range_pair_model(int cutoff);

/// One genuinely 3-body term per site: 1/2 (u_i - 2 u_{i+1} + u_{i+2})^2.
InteractionSpec three_body_demo_model();

/// Antiferromagnetic chain 1/2 (u_i + u_{i+1})^2; mixed partials are +1.
InteractionSpec antiferromagnetic_demo_model();

/// No couplings at all: on-site 1/2 u_i^2 only.
InteractionSpec decoupled_demo_model();

}  // namespace latfol
