#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "holoframe/fields.hpp"

namespace holo {

/// Target of a map: the round sphere of given radius in R^m, or R^m itself.
struct Target {
  enum class Kind { Sphere, Euclidean };
  Kind kind = Kind::Sphere;
  double radius = 1.0;

  static Target sphere(double r = 1.0) { return {Kind::Sphere, r}; }
  static Target euclidean() { return {Kind::Euclidean, 1.0}; }
  void project(double* p, int m) const;
};

/// R^m-valued map, one vector per node (interior nodes meaningful).
class MapField {
 public:
  MapField() = default;
  MapField(GridPtr grid, int m, Target target = Target::sphere());

  /// Samples `f(z, out)` at interior nodes.
  static MapField sample(GridPtr grid, int m, Target target, const std::function<void(cplx, double*)>& f);

  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const Grid& grid() const noexcept { return *grid_; }
  int m() const noexcept { return m_; }
  const Target& target() const noexcept { return target_; }

  double* at(int k) { return data_.data() + static_cast<std::size_t>(k) * m_; }
  const double* at(int k) const { return data_.data() + static_cast<std::size_t>(k) * m_; }
  std::vector<double>& raw() noexcept { return data_; }
  const std::vector<double>& raw() const noexcept { return data_; }

  /// Largest | |u| - r | over interior nodes (0 for Euclidean targets).
  double target_defect() const;
  /// Throws NotOnTarget when target_defect() exceeds tol.
  void require_on_target(double tol = 1e-8) const;

  /// Component i as a real scalar field.
  ScalarField component(int i) const;

 private:
  GridPtr grid_;
  int m_ = 0;
  Target target_;
  std::vector<double> data_;
};

/// Boundary trace: writes the m values at a point of the unit circle.
using MapTrace = std::function<void(cplx z, double* out)>;

/// Inverse stereographic projection onto the unit sphere in R^3, z -> (2x, 2y, 1 - |z|^2) / (1 + |z|^2)
/// evaluated at scale * z.
void inverse_stereographic(cplx z, double* out, double scale = 1.0);

/// Trace of inverse_stereographic at the given scale.
MapTrace stereographic_trace(double scale = 1.0);

/// base + amplitude * p, projected onto the target, where each component of p
/// is a seeded trigonometric polynomial of degree <= 4 in the angle with unit
/// sup bound.
MapTrace perturbed_trace(MapTrace base, int m, Target target, std::uint64_t seed, double amplitude);

/// Discrete Dirichlet energy of the 5-point scheme: 1/2 sum over interior
/// links of |u_j - u_k|^2 plus the boundary links closed by `trace`.
double dirichlet_energy(const MapField& u, const MapTrace& trace);

/// Continuum-style energy 1/2 sum h^2 |D u|^2 with the derivative stencils.
double dirichlet_energy(const MapField& u);

struct RelaxOptions {
  bool semi_implicit = true;
  /// Explicit step as a multiple of h^2.
  double dt = 0.2;
  /// Semi-implicit step as a multiple of h.
  double implicit_dt = 2.0;
  int max_steps = 200000;
  /// Stop once the tangential discrete Laplacian has L^2 norm <= tol.
  double tol = 1e-5;
  double min_dt_fraction = 1e-6;
};

struct RelaxResult {
  MapField u;
  double energy = 0.0;
  std::vector<double> energy_history;
  std::vector<double> tension_history;
  double tension_residual = 0.0;
  int steps = 0;
  int rejected = 0;
};

/// Projected gradient flow u <- Pi(u + dt (Delta u + |grad u|^2 u / r^2)) of
/// the discrete Dirichlet energy with Dirichlet data. The semi-implicit
/// variant treats Delta implicitly. Steps that would increase the energy are
/// rejected and retried with half the step. Throws NotOnTarget for initial or
/// boundary data off the sphere and Stalled when the step underflows.
RelaxResult harmonic_relax(const MapField& u0, const MapTrace& boundary, const RelaxOptions& opts = {});

struct TensionField {
  std::vector<double> full;        // tau per node, m values
  std::vector<double> tangential;  // tau minus its normal component
  double l2 = 0.0;
  double tangential_l2 = 0.0;
};

/// tau^i = -Delta u^i - A^i_jk grad u^k . grad u^j, with A(p)(X, Y) = <X, Y> p / r^2
/// for sphere targets and A = 0 for Euclidean ones. Derivatives from the
/// node stencils.
TensionField tension(const MapField& u);

/// w^i_j = (A^i_jk - A^j_ik) du^k = (u^i du^j - u^j du^i) / r^2 for sphere
/// targets, real antisymmetric.
MatrixOneForm riviere_connection(const MapField& u);

struct ConnectionResiduals {
  double d_omega = 0.0;     // ||d(du) + w ^ du||_{L^1}
  double dstar_omega = 0.0; // ||d^*(du) - *(w ^ *du)||_{L^1}
  double dbar_omega = 0.0;  // ||dbar(du/dz) + w^zbar du/dz||_{L^1}
  double grad_sq = 0.0;     // ||grad u||_{L^2}^2
};

/// Residuals of the covariant equations d_w du = 0, d^*_w du = 0 and
/// dbar_w (du) = 0 over `nodes` (interior nodes when empty).
ConnectionResiduals connection_residuals(const MapField& u, const MatrixOneForm& w,
                                         std::span<const int> nodes = {});

/// du/dz as a (1,0)-form.
VectorOneForm10 partial_z(const MapField& u);

struct HopfDifferential {
  ScalarField phi;
  double residual = 0.0;        // ||dbar phi||_{L^1}, interior nodes
  double residual_margin = 0.0; // same on nodes at least 4h inside
};

/// phi = (u_z, u_z) with the complex bilinear pairing.
HopfDifferential hopf_differential(const MapField& u);

struct ImmersionData {
  MapField u;
  std::vector<double> H;  // m values per node
  double tol_conf = 1e-2;
};

struct PmcReport {
  double r1 = 0.0;  // ||d w_H - 2 |H|^2 du ^ du||_2 / ||grad u||^2
  double r2 = 0.0;  // ||d^* w_H||_2 / ||grad u||^2
  double r3 = 0.0;  // ||dbar_{w_H} du||_2 / ||grad u||^2
  double tau_defect = 0.0;    // ||tau(u) - H |grad u|^2||_2 / ||grad u||^2
  double conformality = 0.0;  // max node defect relative to rho^2
  double grad_sq = 0.0;
  MatrixOneForm omega_h;
};

/// w_H^i_j = H^i du^j - H^j du^i and the parallel-mean-curvature identities.
/// Throws ConformalityViolated when the node conformality defect exceeds
/// tol_conf rho^2.
PmcReport pmc_diagnostics(const ImmersionData& data);

}  // namespace holo
