#include "holoframe/linear_solvers.hpp"

#include <Eigen/SparseCholesky>
#include <memory>
#include <mutex>

#include "holoframe/errors.hpp"

namespace holo {

void apply_dirichlet(const Grid& g, int block, double shift, const std::vector<cplx>& in,
                     std::vector<cplx>& out) {
  out.assign(in.size(), cplx{});
  const double ih2 = 1.0 / g.cell_area();
  for (int k : g.interior_nodes()) {
    const std::size_t base = static_cast<std::size_t>(k) * block;
    for (const auto& link : g.links(k)) {
      if (link.neighbor >= 0) {
        const std::size_t nb = static_cast<std::size_t>(link.neighbor) * block;
        for (int e = 0; e < block; ++e) out[base + e] += ih2 * (in[base + e] - in[nb + e]);
      } else {
        const double w = ih2 * link.weight;
        for (int e = 0; e < block; ++e) out[base + e] += w * in[base + e];
      }
    }
    if (shift != 0.0)
      for (int e = 0; e < block; ++e) out[base + e] += shift * in[base + e];
  }
}

void apply_neumann(const Grid& g, int block, double shift, const std::vector<cplx>& in,
                   std::vector<cplx>& out) {
  out.assign(in.size(), cplx{});
  const double ih2 = 1.0 / g.cell_area();
  for (int k : g.interior_nodes()) {
    const std::size_t base = static_cast<std::size_t>(k) * block;
    for (const auto& link : g.links(k)) {
      if (link.neighbor < 0) continue;
      const std::size_t nb = static_cast<std::size_t>(link.neighbor) * block;
      for (int e = 0; e < block; ++e) out[base + e] += ih2 * (in[base + e] - in[nb + e]);
    }
    if (shift != 0.0)
      for (int e = 0; e < block; ++e) out[base + e] += shift * in[base + e];
  }
}

namespace {

template <bool Dirichlet>
std::vector<double> inverse_diagonal(const Grid& g, int block, double shift) {
  std::vector<double> d(static_cast<std::size_t>(g.size()) * block, 0.0);
  const double ih2 = 1.0 / g.cell_area();
  for (int k : g.interior_nodes()) {
    double diag = shift;
    for (const auto& link : g.links(k)) {
      if (link.neighbor >= 0)
        diag += ih2;
      else if (Dirichlet)
        diag += ih2 * link.weight;
    }
    const double inv = diag > 0.0 ? 1.0 / diag : 0.0;
    for (int e = 0; e < block; ++e) d[static_cast<std::size_t>(k) * block + e] = inv;
  }
  return d;
}

}  // namespace

std::vector<double> dirichlet_inverse_diagonal(const Grid& g, int block, double shift) {
  return inverse_diagonal<true>(g, block, shift);
}

std::vector<double> neumann_inverse_diagonal(const Grid& g, int block, double shift) {
  return inverse_diagonal<false>(g, block, shift);
}

void add_dirichlet_data(const Grid& g, int block, const DirichletTrace& trace,
                        std::vector<cplx>& rhs) {
  std::vector<cplx> value(block);
  const double ih2 = 1.0 / g.cell_area();
  for (int k : g.interior_nodes()) {
    for (const auto& link : g.links(k)) {
      if (link.neighbor >= 0) continue;
      for (int p = 0; p < 2; ++p) {
        if (link.data_weight[p] == 0.0) continue;
        trace(link.point[p], value.data());
        const double w = ih2 * link.data_weight[p];
        for (int e = 0; e < block; ++e) rhs[static_cast<std::size_t>(k) * block + e] += w * value[e];
      }
    }
  }
}

namespace {

class Factor {
 public:
  Factor(const Grid& g, BoundaryKind kind) : slot_(g.size(), -1) {
    const auto nodes = g.interior_nodes();
    nodes_.assign(nodes.begin(), nodes.end());
    for (std::size_t i = 0; i < nodes_.size(); ++i) slot_[nodes_[i]] = static_cast<int>(i);
    const int n = static_cast<int>(nodes_.size());
    const double ih2 = 1.0 / g.cell_area();
    std::vector<Eigen::Triplet<double>> trip;
    for (int k : nodes_) {
      const int a = slot_[k];
      if (kind == BoundaryKind::Neumann) trip.emplace_back(a, a, 1e-10);
      for (const auto& link : g.links(k)) {
        if (link.neighbor >= 0) {
          trip.emplace_back(a, a, ih2);
          trip.emplace_back(a, slot_[link.neighbor], -ih2);
        } else if (kind == BoundaryKind::Dirichlet) {
          trip.emplace_back(a, a, ih2 * link.weight);
        }
      }
    }
    Eigen::SparseMatrix<double> m(n, n);
    m.setFromTriplets(trip.begin(), trip.end());
    solver_.compute(m);
    if (solver_.info() != Eigen::Success) throw NonConvergence(0, 1.0);
  }

  void solve(int block, const std::vector<cplx>& rhs, std::vector<cplx>& out) const {
    const int n = static_cast<int>(nodes_.size());
    Eigen::MatrixXd b(n, 2 * block);
    for (int i = 0; i < n; ++i)
      for (int e = 0; e < block; ++e) {
        const cplx v = rhs[static_cast<std::size_t>(nodes_[i]) * block + e];
        b(i, 2 * e) = v.real();
        b(i, 2 * e + 1) = v.imag();
      }
    const Eigen::MatrixXd x = solver_.solve(b);
    out.assign(rhs.size(), cplx{});
    for (int i = 0; i < n; ++i)
      for (int e = 0; e < block; ++e)
        out[static_cast<std::size_t>(nodes_[i]) * block + e] = cplx(x(i, 2 * e), x(i, 2 * e + 1));
  }

 private:
  std::vector<int> slot_;
  std::vector<int> nodes_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
};

struct CacheEntry {
  std::weak_ptr<const Grid> grid;
  BoundaryKind kind;
  std::shared_ptr<const Factor> factor;
};

std::shared_ptr<const Factor> cached_factor(const GridPtr& g, BoundaryKind kind) {
  static std::mutex mutex;
  static std::vector<CacheEntry> cache;
  std::lock_guard<std::mutex> lock(mutex);
  std::erase_if(cache, [](const CacheEntry& e) { return e.grid.expired(); });
  for (const auto& e : cache)
    if (e.kind == kind && e.grid.lock() == g) return e.factor;
  auto f = std::make_shared<const Factor>(*g, kind);
  cache.push_back({g, kind, f});
  return f;
}

}  // namespace

void direct_solve(const GridPtr& g, BoundaryKind kind, int block, const std::vector<cplx>& rhs,
                  std::vector<cplx>& out) {
  cached_factor(g, kind)->solve(block, rhs, out);
}

}  // namespace holo
