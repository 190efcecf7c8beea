#pragma once

#include <cstdint>

#include "holoframe/fields.hpp"

namespace holo {

struct BandLimitedOptions {
  int modes = 8;
  int max_wavenumber = 3;
  /// Multiply by (1 - r^2/R^2)^4 inside radius R; no cutoff when R <= 0.
  double bump_radius = 0.0;
};

/// Real field: sum of `modes` plane waves cos(pi/2 (kx x + ky y) + phase)
/// with seed-derived integer wavenumbers, amplitudes and phases.
ScalarField random_scalar(const GridPtr& grid, std::uint64_t seed, const BandLimitedOptions& opts = {});

/// Entrywise band-limited matrix field projected onto u(m).
MatrixField random_skew_hermitian(const GridPtr& grid, int m, std::uint64_t seed,
                                  const BandLimitedOptions& opts = {});

/// Entrywise band-limited complex matrix field without symmetrization.
MatrixField random_matrix(const GridPtr& grid, int m, std::uint64_t seed, const BandLimitedOptions& opts = {});

/// u(m)-valued 1-form with both components drawn independently.
MatrixOneForm random_connection(const GridPtr& grid, int m, std::uint64_t seed,
                                const BandLimitedOptions& opts = {});

/// Rescale so that the L^2 norm equals `target` (no-op on the zero form).
void normalize_l2(MatrixOneForm& w, double target);
void normalize_l2(MatrixField& f, double target);

}  // namespace holo
