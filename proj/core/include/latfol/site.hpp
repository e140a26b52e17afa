#pragma once

#include <array>
#include <compare>
#include <cstdlib>
#include <set>
#include <string>

namespace latfol {

/// Lattice site in up to three dimensions. Unused coordinates stay zero,
/// so sites of models with dim < 3 compare and hash consistently.
struct Site {
  std::array<int, 3> x{0, 0, 0};

  constexpr Site() = default;
  constexpr explicit Site(int a) : x{a, 0, 0} {}
  constexpr Site(int a, int b) : x{a, b, 0} {}
  constexpr Site(int a, int b, int c) : x{a, b, c} {}

  auto operator<=>(const Site&) const = default;

  constexpr Site operator+(const Site& o) const {
    return {x[0] + o.x[0], x[1] + o.x[1], x[2] + o.x[2]};
  }
  constexpr Site operator-(const Site& o) const {
    return {x[0] - o.x[0], x[1] - o.x[1], x[2] - o.x[2]};
  }

  /// Chebyshev distance, the diameter metric used for interaction ranges.
  int cheb(const Site& o) const {
    int m = 0;
    for (int k = 0; k < 3; ++k) m = std::max(m, std::abs(x[k] - o.x[k]));
    return m;
  }

  std::string str() const;
};

using SiteSet = std::set<Site>;

std::string to_string(const SiteSet& s);

}  // namespace latfol
