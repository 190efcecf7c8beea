#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace holo {

using cplx = std::complex<double>;

enum class NodeKind : std::uint8_t { Exterior = 0, Interior = 1, Boundary = 2 };

/// At most three taps of a first-derivative stencil.
struct Stencil {
  std::array<int, 3> node{};
  std::array<double, 3> weight{};
  int taps = 0;
};

/// Axis-aligned link from an interior node k towards one of its four
/// neighbours as seen by the Dirichlet Laplacian. Either the neighbour is
/// interior, or the link is closed by boundary data:
///
///   (u_ghost - u_k) / h^2 = (sum_p data_weight[p] g(point[p]) - weight u_k) / h^2.
///
/// When the neighbour lies outside the disc the ghost value extrapolates
/// linearly from the axis crossing at fraction theta (weight = 1/theta).
/// When it lies inside the disc but outside the interior band, the crossing
/// along the axis can be far away; the ghost value then follows the normal
/// profile u_ghost = g(p_j) + (u_k - g(p_k)) d_j / d_k, with d the distance
/// to the circle and p the radial projections.
struct DirichletLink {
  int neighbor = -1;
  double weight = 0.0;
  std::array<cplx, 2> point{};
  std::array<double, 2> data_weight{};

  /// Effective boundary value: the ghost relation reads weight (g_eff - u_k).
  template <class G>
  auto effective_data(G&& g) const {
    auto v = data_weight[0] * g(point[0]);
    if (data_weight[1] != 0.0) v += data_weight[1] * g(point[1]);
    return v / weight;
  }
};

/// Uniform n x n grid on [-1,1]^2 masked to the unit disc.
///
/// Node (i, j) sits at x = -1 + i h, y = -1 + j h and has flat index j n + i.
/// A node is interior iff |z| < 1 - h/2; a non-interior node with an interior
/// 4-neighbour is a boundary node; all others are exterior. Fields are
/// meaningful on interior nodes; boundary nodes carry Dirichlet data.
///
/// Derivative stencils only touch interior nodes: central where both axis
/// neighbours are interior, one-sided second order otherwise.
class Grid {
 public:
  explicit Grid(int n);

  static std::shared_ptr<const Grid> make(int n) { return std::make_shared<const Grid>(n); }

  int n() const noexcept { return n_; }
  double h() const noexcept { return h_; }
  double cell_area() const noexcept { return h_ * h_; }
  int size() const noexcept { return n_ * n_; }

  int index(int i, int j) const noexcept { return j * n_ + i; }
  int col(int k) const noexcept { return k % n_; }
  int row(int k) const noexcept { return k / n_; }
  double x(int k) const noexcept { return -1.0 + h_ * col(k); }
  double y(int k) const noexcept { return -1.0 + h_ * row(k); }
  cplx z(int k) const noexcept { return {x(k), y(k)}; }
  double radius(int k) const noexcept { return std::abs(z(k)); }

  NodeKind kind(int k) const noexcept { return mask_[k]; }
  bool interior(int k) const noexcept { return mask_[k] == NodeKind::Interior; }
  bool in_grid(int i, int j) const noexcept { return i >= 0 && j >= 0 && i < n_ && j < n_; }

  std::span<const int> interior_nodes() const noexcept { return interior_; }
  std::span<const int> boundary_nodes() const noexcept { return boundary_; }
  /// Total cell area of interior nodes; approximates pi.
  double measure() const noexcept { return static_cast<double>(interior_.size()) * cell_area(); }

  /// Derivative stencils; valid for interior nodes, empty otherwise.
  const Stencil& dx(int k) const noexcept { return dx_[k]; }
  const Stencil& dy(int k) const noexcept { return dy_[k]; }

  /// Links of interior node k in the order +x, -x, +y, -y.
  const std::array<DirichletLink, 4>& links(int k) const noexcept { return links_[k]; }

  /// Interior nodes with |z| <= r_max (and > r_min).
  std::vector<int> region(double r_max, double r_min = -1.0) const;
  /// Interior nodes at least `layers * h` away from the unit circle.
  std::vector<int> margin(double layers) const { return region(1.0 - layers * h_); }

  bool operator==(const Grid& other) const noexcept { return n_ == other.n_; }

 private:
  int n_;
  double h_;
  std::vector<NodeKind> mask_;
  std::vector<int> interior_;
  std::vector<int> boundary_;
  std::vector<Stencil> dx_;
  std::vector<Stencil> dy_;
  std::vector<std::array<DirichletLink, 4>> links_;
};

using GridPtr = std::shared_ptr<const Grid>;

}  // namespace holo
