#pragma once

#include <vector>

#include "holoframe/cauchy.hpp"
#include "holoframe/elliptic.hpp"
#include "holoframe/fields.hpp"

namespace holo {

enum class FrameKind { Unitary, Invertible };

/// m x m matrix per node; identity outside the interior is implied.
struct GaugeFrame {
  MatrixField values;
  FrameKind kind = FrameKind::Invertible;

  static GaugeFrame identity(const GridPtr& g, int m, FrameKind kind = FrameKind::Unitary) {
    return {MatrixField::identity(g, m), kind};
  }
  /// Largest node condition number.
  double condition() const;
  /// Largest node distance max_i |sigma_i - 1| to U(m).
  double max_dist_unitary() const;
  /// Largest node ||P^* P - I||_F.
  double max_unitarity_defect() const;
};

/// w_P = P^{-1} dP + P^{-1} w P. Throws SingularFrame at the first node with
/// condition number above 1e6.
MatrixOneForm transform_connection(const GaugeFrame& p, const MatrixOneForm& w);

/// E(P) = sum over axis links between interior nodes of
/// h^2 |(P_b - P_a)/h + w_ab (P_a + P_b)/2|^2, w_ab the link average of the
/// matching component of w.
double coulomb_energy(const MatrixField& p, const MatrixOneForm& w);

struct CoulombOptions {
  int max_iterations = 500;
  /// Stop once ||d^* w_P|| <= tol ||w||, d^* the link divergence dual to E.
  double tol = 1e-4;
  double armijo = 1e-4;
  double shrink = 0.5;
  double initial_step = 1.0;
  double min_step = 1e-14;
  /// Regularisation of the link Laplacian in the direction solve.
  double shift = 1e-9;
};

struct CoulombResult {
  GaugeFrame p;
  MatrixField eta;  // Delta eta = d pi(w_P), eta = 0 on the circle, pi onto u(m)
  std::vector<double> energy_history;
  std::vector<double> residual_history;
  double residual = 0.0;  // ||d^* w_P||_2, equal to |grad E| / (2 h^2) per node
  int iterations = 0;
};

/// Minimises E over unitary frames with exponential retraction and Armijo
/// backtracking. Search directions solve (L + shift) xi = -d^* w_P with L the
/// link Laplacian. Throws Stalled when the line search fails or the
/// iteration cap is reached before the residual tolerance is met.
CoulombResult coulomb_gauge(const MatrixOneForm& w, const CoulombOptions& opts = {});

/// Projection of each node matrix onto u(m).
MatrixOneForm unitary_part(const MatrixOneForm& w);

struct HolomorphicGaugeOptions {
  double tol_fp = 1e-6;
  int max_iterations = 200;
  double margin_layers = 8.0;
  CauchyKernel kernel = CauchyKernel::Lattice;
};

struct HolomorphicGaugeResult {
  GaugeFrame q;
  std::vector<double> gaps;  // L^inf distance between successive iterates
  double rate = 0.0;         // largest ratio of successive gaps
  double residual = 0.0;     // ||dbar Q + a Q||_{L^2(U)}
  double residual_full = 0.0;  // same over every interior node
  double alpha_norm = 0.0;     // ||a||_2
  int iterations = 0;
};

/// Fixed point Q <- Id + T(-a Q) for the dzbar coefficient a. Stops when
/// successive iterates differ by at most tol_fp in L^inf; throws
/// NoContraction when a gap grows (from the third iterate on) or the
/// iteration cap is reached.
HolomorphicGaugeResult holomorphic_gauge(const MatrixField& alpha01,
                                         const HolomorphicGaugeOptions& opts = {});
/// Same, reusing a prepared transform.
HolomorphicGaugeResult holomorphic_gauge(const MatrixField& alpha01, const CauchyTransform& t,
                                         const HolomorphicGaugeOptions& opts);

/// ||dbar S + w^{0,1} S||_2 over `nodes`.
double holomorphic_residual(const MatrixField& s, const MatrixField& w01, std::span<const int> nodes);

enum class AlphaRoute {
  /// (w_P)^{0,1} from *d eta, eta from the Wente-type solve, plus the
  /// transformed coexact part of the decomposition.
  Wente,
  /// (w_P)^{0,1} of the transformed connection itself.
  Direct,
};

struct FrameOptions {
  double eps = 2.0;
  AlphaRoute route = AlphaRoute::Direct;
  CoulombOptions coulomb{};
  /// The lattice kernel inverts the central dbar exactly but decouples its
  /// four sublattices, which leaves grid-scale content in Q and hence in S.
  HolomorphicGaugeOptions fixed_point{.kernel = CauchyKernel::CellIntegrated};
  SolveOptions solve{};
};

struct FrameReport {
  double eps_dagger = 0.0;
  double l2 = 0.0;
  double l21 = 0.0;
  double residual = 0.0;           // ||dbar S + w^{0,1} S||_{L^2(U)}
  double relative_residual = 0.0;  // residual / ||w||_2
  double dist_unitary = 0.0;       // max over nodes of dist(S, U(m))
  double grad_s = 0.0;             // ||grad S||_{L^2(U)}
  double c_report = 0.0;           // grad_s / ||w||_2
  double alpha_l21 = 0.0;          // L^{2,1} norm of the (0,1) connection fed to the fixed point
  double route_gap = 0.0;          // ||alpha_Wente - alpha_Direct||_{L^2(U)} / ||alpha_Direct||_{L^2(U)}
  int coulomb_iterations = 0;
  int fixed_point_iterations = 0;
  double coulomb_residual = 0.0;
};

struct FrameResult {
  GaugeFrame s;
  GaugeFrame p;
  GaugeFrame q;
  MatrixField eta;      // Wente-type potential, computed on both routes
  MatrixField alpha01;  // the (0,1) connection of the selected route
  FrameReport report;
};

/// Hodge decomposition, Coulomb frame P of the exact part, the (0,1) part
/// of the transformed connection, fixed point Q and S = P Q. Throws
/// ConditionDaggerViolated when eps_dagger > eps.
FrameResult build_holomorphic_frame(const MatrixOneForm& w, const FrameOptions& opts = {});

struct RegularityOptions {
  FrameOptions frame{};
  /// Largest admissible ||dbar a + w^{0,1} a||_{L^2(U)} / ||a||_{L^2(U)}.
  double tol_input = 5e-2;
};

struct RegularityReport {
  double input_residual = 0.0;  // relative
  double dbar_h = 0.0;          // ||dbar h||_{L^2(U)} / ||a||_{L^2(U)}
  double alpha_sup = 0.0;       // ||a||_{L^inf(U)}
  double alpha_grad = 0.0;      // ||grad a||_{L^2(U)}
  double alpha_l2sq = 0.0;      // ||a||^2_2
  double hardy = 0.0;           // h^1 estimate of |a|^2
  double hardy_ratio = 0.0;     // hardy / alpha_l2sq
  FrameReport frame;
};

struct RegularityResult {
  VectorOneForm10 h;
  RegularityReport report;
};

/// h = S^{-1} a for a dz with dbar a + w^{0,1} a = 0. Throws
/// ConditionDaggerViolated or InputNotClosed.
RegularityResult dbar_regularity_solve(const VectorOneForm10& a, const MatrixOneForm& w,
                                       const RegularityOptions& opts = {});

}  // namespace holo
