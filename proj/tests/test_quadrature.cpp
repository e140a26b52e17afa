#include <cmath>

#include "doctest.h"
#include "latfol/quadrature.hpp"

using namespace latfol;

namespace {

double integrate(const Quadrature& q, double (*f)(double)) {
  double acc = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i)
    acc += q.weights[i] * f(q.nodes[i]);
  return acc;
}

}  // namespace

TEST_CASE("weights sum to the interval length") {
  for (int n : {1, 2, 5, 16, 32}) {
    double s = 0.0;
    for (double w : gauss_legendre(n).weights) s += w;
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    s = 0.0;
    for (double w : gauss_legendre_01(n).weights) s += w;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("n nodes integrate monomials through degree 2n-1 exactly") {
  for (int n : {2, 4, 8, 16}) {
    Quadrature q = gauss_legendre_01(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double acc = 0.0;
      for (std::size_t i = 0; i < q.nodes.size(); ++i)
        acc += q.weights[i] * std::pow(q.nodes[i], k);
      CHECK(acc == doctest::Approx(1.0 / (k + 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("16 nodes integrate smooth non-polynomials to near machine precision") {
  Quadrature q = gauss_legendre_01(16);
  CHECK(integrate(q, +[](double x) { return std::exp(x); }) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  CHECK(integrate(q, +[](double x) { return std::cos(x); }) ==
        doctest::Approx(std::sin(1.0)).epsilon(1e-14));
}

TEST_CASE("nodes are sorted and interior") {
  Quadrature q = gauss_legendre_01(12);
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    CHECK(q.nodes[i] > 0.0);
    CHECK(q.nodes[i] < 1.0);
    if (i) CHECK(q.nodes[i] > q.nodes[i - 1]);
  }
}
