#pragma once

#include <limits>
#include <span>
#include <vector>

#include "holoframe/fields.hpp"

namespace holo {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Decreasing rearrangement of |f| over a node set: values[k] is the k-th
/// largest magnitude and areas[k] = (k + 1) h^2.
struct RearrangementProfile {
  std::vector<double> values;
  std::vector<double> areas;
};

RearrangementProfile rearrangement(const MatrixField& f, std::span<const int> nodes);

/// Discrete L^{p,q} quasi-norm of the pointwise Frobenius norm of f.
///
/// For q < inf the layer-cake integral of (t^{1/p} f*(t))^q dt/t is taken
/// exactly for the piecewise constant profile, so L^{p,p} is L^p and an
/// indicator of area A has L^{p,q} norm (p/q)^{1/q} A^{1/p}. For q = inf,
/// each run of equal values is charged at the midpoint of its area range.
/// Throws EmptyMask for an empty node set.
double lorentz_norm(const MatrixField& f, double p, double q, std::span<const int> nodes);
double lorentz_norm(const MatrixField& f, double p, double q);

struct HardyEstimate {
  double value = 0.0;
  /// Mollifier radius with the largest integrated response; 0 when f = 0.
  double dominant_scale = 0.0;
};

/// Local Hardy norm via the truncated maximal function
///   M f(x) = max(|f(x)|, sup_t |phi_t * f|(x)),  t = 2^-k / 4 >= 2h,
/// with phi(r) = (1 - r^2)^2 on the unit ball, renormalised to unit discrete
/// mass at each scale. f is extended by zero outside the interior.
HardyEstimate hardy_h1_norm(const MatrixField& f);

}  // namespace holo
