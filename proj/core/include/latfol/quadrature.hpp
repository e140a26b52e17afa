#pragma once

#include <cstddef>
#include <vector>

namespace latfol {

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with n nodes on [-1, 1].
Quadrature gauss_legendre(int n);

/// Same rule mapped to [0, 1].
Quadrature gauss_legendre_01(int n);

}  // namespace latfol
