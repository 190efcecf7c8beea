#pragma once

#include "holoframe/fields.hpp"

namespace holo {

// Conventions used throughout: *dx = dy, *dy = -dx, *(dx^dy) = 1, and the
// codifferential on 1-forms is the cell-area adjoint of d, which equals
// -(d/dx cx + d/dy cy) wherever the central stencil applies.

/// d/dx and d/dy through the grid stencils; nonzero on interior nodes only.
MatrixField partial_x(const MatrixField& f);
MatrixField partial_y(const MatrixField& f);
/// Transposes of the stencil matrices (unweighted).
MatrixField partial_x_transpose(const MatrixField& f);
MatrixField partial_y_transpose(const MatrixField& f);

VectorField partial_x(const VectorField& f);
VectorField partial_y(const VectorField& f);

MatrixOneForm exterior_d(const MatrixField& f);
/// d on 1-forms: (d/dx cy - d/dy cx) dx^dy.
MatrixTwoForm exterior_d(const MatrixOneForm& w);

MatrixField codifferential(const MatrixOneForm& w);

/// Coexact 1-form of a 2-form potential b dx^dy, taken as *db. With this
/// choice d(*db) is the Laplacian of b, so d w = Delta b for w = da + *db.
MatrixOneForm coexact(const MatrixField& b);

MatrixOneForm hodge_star(const MatrixOneForm& w);
MatrixField hodge_star2(const MatrixTwoForm& t);

/// Pointwise cx1 cy2 - cy1 cx2.
MatrixTwoForm wedge(const MatrixOneForm& a, const MatrixOneForm& b);

/// dzbar coefficient (cx + i cy) / 2.
MatrixField zbar_part(const MatrixOneForm& w);
/// dz coefficient (cx - i cy) / 2.
MatrixField z_part(const MatrixOneForm& w);

/// d/dzbar = (d/dx + i d/dy) / 2 and d/dz = (d/dx - i d/dy) / 2.
MatrixField dbar(const MatrixField& f);
MatrixField dz(const MatrixField& f);
VectorField dbar(const VectorField& f);
VectorField dz(const VectorField& f);

/// F = dw + [w, w], with [w, w](dx, dy) = [cx, cy].
MatrixTwoForm curvature(const MatrixOneForm& w);

/// The unique u(m)-valued form with the same dzbar part as `w`.
MatrixOneForm skew_hermitian_lift(const MatrixOneForm& w);

}  // namespace holo
