#pragma once

#include <memory>

#include "holoframe/fields.hpp"

namespace holo {

enum class CauchyKernel {
  /// Exact integral of -1/(pi (w - z)) over each source cell; the cell
  /// centred on the target integrates to zero.
  CellIntegrated,
  /// Lattice fundamental solution of the central-difference dbar, so that
  /// dbar(T f) = f holds to round-off at every node with central stencils.
  Lattice,
};

/// (Tf)(z) = -(1/pi) \int_D f(w) / (w - z) dA(w), so that dT/dzbar f = f.
///
/// The discrete convolution runs through an FFT on a torus of side 2n that
/// holds the grid without wrap-around. With the lattice kernel the four
/// zero modes of the periodic difference operator (constants and the three
/// checkerboards) are compensated explicitly. Results live on interior
/// nodes. Holds FFTW plans, so one instance must not be shared across
/// threads.
class CauchyTransform {
 public:
  explicit CauchyTransform(GridPtr grid, CauchyKernel kernel = CauchyKernel::CellIntegrated);
  ~CauchyTransform();
  CauchyTransform(const CauchyTransform&) = delete;
  CauchyTransform& operator=(const CauchyTransform&) = delete;

  MatrixField apply(const MatrixField& f) const;
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  CauchyKernel kernel() const noexcept { return kernel_; }

 private:
  struct Plan;
  GridPtr grid_;
  CauchyKernel kernel_;
  std::unique_ptr<Plan> plan_;
};

/// Cell-integrated transform.
MatrixField cauchy_pompeiu(const MatrixField& f);

/// (1/pi) \int over the axis-aligned rectangle [x1,x2]x[y1,y2] of dA / w.
cplx cauchy_cell_integral(double x1, double x2, double y1, double y2);

}  // namespace holo
