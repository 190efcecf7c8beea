#include "holoframe/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace holo {

namespace {

Stencil axis_stencil(const Grid& g, int i, int j, int di, int dj) {
  auto inside = [&](int a, int b) { return g.in_grid(a, b) && g.interior(g.index(a, b)); };
  const double h = g.h();
  const int k = g.index(i, j);
  const bool fwd = inside(i + di, j + dj);
  const bool bwd = inside(i - di, j - dj);
  Stencil s;
  if (fwd && bwd) {
    s.node = {g.index(i - di, j - dj), g.index(i + di, j + dj), k};
    s.weight = {-0.5 / h, 0.5 / h, 0.0};
    s.taps = 2;
  } else if (fwd) {
    if (inside(i + 2 * di, j + 2 * dj)) {
      s.node = {k, g.index(i + di, j + dj), g.index(i + 2 * di, j + 2 * dj)};
      s.weight = {-1.5 / h, 2.0 / h, -0.5 / h};
      s.taps = 3;
    } else {
      s.node = {k, g.index(i + di, j + dj), k};
      s.weight = {-1.0 / h, 1.0 / h, 0.0};
      s.taps = 2;
    }
  } else if (bwd) {
    if (inside(i - 2 * di, j - 2 * dj)) {
      s.node = {k, g.index(i - di, j - dj), g.index(i - 2 * di, j - 2 * dj)};
      s.weight = {1.5 / h, -2.0 / h, 0.5 / h};
      s.taps = 3;
    } else {
      s.node = {k, g.index(i - di, j - dj), k};
      s.weight = {1.0 / h, -1.0 / h, 0.0};
      s.taps = 2;
    }
  }
  return s;
}

}  // namespace

Grid::Grid(int n) : n_(n), h_(0.0) {
  if (n < 5) throw std::invalid_argument("Grid: need at least 5 nodes per axis");
  h_ = 2.0 / (n - 1);
  const int total = n * n;
  mask_.assign(total, NodeKind::Exterior);
  const double r_in = 1.0 - 0.5 * h_;
  for (int k = 0; k < total; ++k)
    if (radius(k) < r_in) mask_[k] = NodeKind::Interior;

  for (int k = 0; k < total; ++k) {
    if (mask_[k] != NodeKind::Exterior) continue;
    const int i = col(k), j = row(k);
    const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      const int a = i + di[d], b = j + dj[d];
      if (in_grid(a, b) && mask_[index(a, b)] == NodeKind::Interior) {
        mask_[k] = NodeKind::Boundary;
        break;
      }
    }
  }
  for (int k = 0; k < total; ++k) {
    if (mask_[k] == NodeKind::Interior) interior_.push_back(k);
    if (mask_[k] == NodeKind::Boundary) boundary_.push_back(k);
  }

  dx_.assign(total, Stencil{});
  dy_.assign(total, Stencil{});
  links_.assign(total, {});
  for (int k : interior_) {
    const int i = col(k), j = row(k);
    dx_[k] = axis_stencil(*this, i, j, 1, 0);
    dy_[k] = axis_stencil(*this, i, j, 0, 1);

    const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
    for (int d = 0; d < 4; ++d) {
      DirichletLink link;
      const int a = i + di[d], b = j + dj[d];
      if (in_grid(a, b) && interior(index(a, b))) {
        link.neighbor = index(a, b);
      } else if (in_grid(a, b) && std::abs(z(index(a, b))) < 1.0) {
        const double dk = 1.0 - radius(k);
        const double dn = 1.0 - radius(index(a, b));
        const double ratio = dn / dk;
        link.weight = 1.0 - ratio;
        link.point = {z(index(a, b)) / radius(index(a, b)), z(k) / radius(k)};
        link.data_weight = {1.0, -ratio};
      } else {
        // distance s > 0 along the axis to |p + s e| = 1
        const double px = x(k), py = y(k);
        const double ex = di[d], ey = dj[d];
        const double pe = px * ex + py * ey;
        const double s = -pe + std::sqrt(pe * pe - (px * px + py * py - 1.0));
        const double theta = s / h_;
        link.weight = 1.0 / theta;
        link.point = {cplx(px + s * ex, py + s * ey), cplx{}};
        link.data_weight = {1.0 / theta, 0.0};
      }
      links_[k][d] = link;
    }
  }
}

std::vector<int> Grid::region(double r_max, double r_min) const {
  std::vector<int> out;
  for (int k : interior_) {
    const double r = radius(k);
    if (r <= r_max && r > r_min) out.push_back(k);
  }
  return out;
}

}  // namespace holo
