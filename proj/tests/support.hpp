#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "holoframe/fields.hpp"
#include "holoframe/grid.hpp"

namespace holo::test {

/// Scalar field with f(z) at interior and boundary nodes, zero outside.
inline ScalarField sample(const GridPtr& g, const std::function<cplx(cplx)>& f) {
  ScalarField s(g, 1);
  for (int k = 0; k < g->size(); ++k)
    if (g->kind(k) != NodeKind::Exterior) s[k] = f(g->z(k));
  return s;
}

/// Matrix field M f(z) at interior and boundary nodes.
inline MatrixField sample(const GridPtr& g, const Mat& m, const std::function<cplx(cplx)>& f) {
  MatrixField s(g, static_cast<int>(m.rows()));
  for (int k = 0; k < g->size(); ++k)
    if (g->kind(k) != NodeKind::Exterior) s.at(k) = f(g->z(k)) * m;
  return s;
}

/// Max over `nodes` of the Frobenius distance between two fields.
inline double max_diff(const MatrixField& a, const MatrixField& b, std::span<const int> nodes) {
  double d = 0.0;
  for (int k : nodes) d = std::max(d, (a.at(k) - b.at(k)).norm());
  return d;
}

inline double max_diff(const MatrixField& a, const MatrixField& b) {
  return max_diff(a, b, a.grid().interior_nodes());
}

/// Least-squares slope of log e against log h.
inline double fitted_order(std::span<const double> h, std::span<const double> e) {
  const std::size_t n = h.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(h[i]), y = std::log(e[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace holo::test
