#pragma once

#include "holoframe/exterior.hpp"
#include "holoframe/fields.hpp"
#include "holoframe/linear_solvers.hpp"

namespace holo {

/// Delta_h u = d2u/dx2 + d2u/dy2 with zero Dirichlet data (ghost-point
/// treatment at circle crossings). Sign: Delta_h (x^2 + y^2) = 4.
MatrixField laplacian_dirichlet(const MatrixField& u);
/// Graph Laplacian over links between interior nodes (natural Neumann).
MatrixField laplacian_neumann(const MatrixField& u);

/// Solves Delta_h phi = rhs with phi = 0 (or `trace`) on the unit circle.
/// With SolveMethod::ConjugateGradient, throws NonConvergence when CG misses the
/// tolerance within the cap.
MatrixField poisson_dirichlet(const MatrixField& rhs, const SolveOptions& opts = {});
MatrixField poisson_dirichlet(const MatrixField& rhs, const DirichletTrace& trace,
                              const SolveOptions& opts = {});

struct NeumannOptions {
  SolveOptions solve{};
  bool auto_project = false;
  /// Allowed |mean(rhs)| relative to the rms of rhs.
  double tol_mean = 1e-8;
};

/// Mean-zero solution of laplacian_neumann(a) = rhs. A right-hand side
/// with nonzero mean raises CompatibilityViolation unless auto_project is
/// set, in which case the mean is removed first.
MatrixField poisson_neumann(const MatrixField& rhs, const NeumannOptions& opts = {});

/// Least-squares potential: minimises sum over interior links of
/// |(a_j - a_i)/h - v_ij|^2 where v_ij is the link component of w averaged
/// over both ends. Mean zero.
MatrixField exact_potential(const MatrixOneForm& w, const SolveOptions& opts = {});

struct HodgeDecomposition {
  MatrixField a;
  MatrixField b;
  MatrixOneForm residual;  // w - da - *db
  double l2 = 0.0;         // ||w||_2
  double l21 = 0.0;        // L^{2,1} norm of |grad b|
  double eps_dagger = 0.0; // l2 + l21

  MatrixOneForm exact_part() const { return exterior_d(a); }
  MatrixOneForm coexact_part() const { return coexact(b); }
};

/// w = da + *db + residual with b = 0 on the circle: b solves
/// Delta b = dw, then a is the least-squares potential of w - *db.
HodgeDecomposition hodge_decompose(const MatrixOneForm& w, const SolveOptions& opts = {});

struct NormReport {
  double sup = 0.0;          // ||phi||_inf
  double grad_l2 = 0.0;      // ||grad phi||_2
  double grad_l21 = 0.0;     // ||grad phi||_{2,1}
  double grad_l2inf = 0.0;   // ||grad phi||_{2,inf}
  double input_product = 0.0;  // ||grad a||_2 ||grad b||_2
  double ratio = 0.0;          // sup / input_product; NaN when degenerate
  bool degenerate = false;
};

struct WenteSolution {
  ScalarField phi;
  NormReport report;
};

/// Delta phi = *(da ^ db), phi = 0 on the circle. When grad a or grad b
/// vanishes the solution is still returned, with `report.degenerate` set;
/// callers that need the ratio use wente_ratio, which throws DegenerateInput.
WenteSolution wente_solve(const ScalarField& a, const ScalarField& b,
                          const SolveOptions& opts = {});
double wente_ratio(const WenteSolution& s);

struct DaggerVerdict {
  bool satisfied = false;
  double eps_dagger = 0.0;
  double l2 = 0.0;
  double l21 = 0.0;
};

DaggerVerdict check_condition_dagger(const MatrixOneForm& w, double eps,
                                     const SolveOptions& opts = {});
DaggerVerdict dagger_verdict(const HodgeDecomposition& hd, double eps);

}  // namespace holo
