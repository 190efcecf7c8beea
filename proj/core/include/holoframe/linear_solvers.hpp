#pragma once

#include <functional>
#include <vector>

#include "holoframe/fields.hpp"
#include "holoframe/linalg.hpp"

namespace holo {

/// Dirichlet data: writes `block` values for the boundary point z (|z| = 1).
using DirichletTrace = std::function<void(cplx z, cplx* out)>;

// Both operators act blockwise on flat vectors of grid.size() * block
// entries and leave non-interior entries zero.
//
// Dirichlet: shift u - Delta_h u, where Delta_h is the symmetric ghost-point
// Laplacian of Grid::links with g = 0.
//
// Neumann: shift u - L u with L the 5-point graph Laplacian restricted to
// links between interior nodes.
void apply_dirichlet(const Grid& g, int block, double shift, const std::vector<cplx>& in,
                     std::vector<cplx>& out);
void apply_neumann(const Grid& g, int block, double shift, const std::vector<cplx>& in,
                   std::vector<cplx>& out);

std::vector<double> dirichlet_inverse_diagonal(const Grid& g, int block, double shift);
std::vector<double> neumann_inverse_diagonal(const Grid& g, int block, double shift);

/// Right-hand side contribution of nonzero Dirichlet data through the
/// boundary links of every interior node.
void add_dirichlet_data(const Grid& g, int block, const DirichletTrace& trace,
                        std::vector<cplx>& rhs);

enum class SolveMethod {
  /// Sparse Cholesky factor, computed once per grid and cached.
  Direct,
  /// Jacobi-preconditioned conjugate gradients.
  ConjugateGradient,
};

struct SolveOptions {
  SolveMethod method = SolveMethod::Direct;
  double rel_tol = 1e-10;    // conjugate gradients only
  int max_iterations = 0;    // conjugate gradients only; 0 selects 20 n
};

enum class BoundaryKind { Dirichlet, Neumann };

/// Solves the Dirichlet operator, or the Neumann operator with a 1e-10
/// shift, against every block column of `rhs`. Non-interior entries of the
/// result are zero.
void direct_solve(const GridPtr& g, BoundaryKind kind, int block, const std::vector<cplx>& rhs,
                  std::vector<cplx>& out);

}  // namespace holo
