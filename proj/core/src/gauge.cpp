#include "holoframe/gauge.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <vector>

#include "holoframe/exterior.hpp"
#include "holoframe/linalg.hpp"
#include "holoframe/lorentz.hpp"

namespace holo {

double GaugeFrame::condition() const {
  double worst = 1.0;
  for (int k : values.grid().interior_nodes()) worst = std::max(worst, condition_number(values.at(k)));
  return worst;
}

double GaugeFrame::max_dist_unitary() const {
  double worst = 0.0;
  for (int k : values.grid().interior_nodes()) worst = std::max(worst, dist_unitary(values.at(k)));
  return worst;
}

double GaugeFrame::max_unitarity_defect() const {
  double worst = 0.0;
  const int m = values.m();
  for (int k : values.grid().interior_nodes()) {
    const Mat p = values.at(k);
    worst = std::max(worst, (p.adjoint() * p - Mat::Identity(m, m)).norm());
  }
  return worst;
}

MatrixOneForm transform_connection(const GaugeFrame& p, const MatrixOneForm& w) {
  if (p.values.m() != w.m()) throw DimensionMismatch("frame and connection differ in fiber dimension");
  const MatrixField inv = inverse(p.values);
  MatrixOneForm lifted = exterior_d(p.values) + multiply(w, p.values);
  return multiply(inv, lifted);
}

namespace {

MatrixField skew(const MatrixField& a) {
  MatrixField out(a.grid_ptr(), a.m());
  for (int k : a.grid().interior_nodes()) out.at(k) = skew_part(a.at(k));
  return out;
}

double pairing(const MatrixField& a, const MatrixField& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.raw().size(); ++i)
    s += a.raw()[i].real() * b.raw()[i].real() + a.raw()[i].imag() * b.raw()[i].imag();
  return s;
}

MatrixField retract(const MatrixField& p, const MatrixField& xi, double t) {
  MatrixField out = p;
  for (int k : p.grid().interior_nodes()) out.at(k) = p.at(k) * expm_skew_hermitian(t * Mat(xi.at(k)));
  return out;
}

// Axis links between interior nodes: tail, head, and 0 for x or 1 for y.
struct Link {
  int tail;
  int head;
  int axis;
};

std::vector<Link> interior_links(const Grid& g) {
  std::vector<Link> links;
  for (int k : g.interior_nodes()) {
    const int i = g.col(k), j = g.row(k);
    if (i + 1 < g.n() && g.interior(g.index(i + 1, j))) links.push_back({k, g.index(i + 1, j), 0});
    if (j + 1 < g.n() && g.interior(g.index(i, j + 1))) links.push_back({k, g.index(i, j + 1), 1});
  }
  return links;
}

// Link covariant difference (P_b - P_a)/h + w_ab (P_a + P_b)/2 with the
// connection averaged over the link.
class LinkEnergy {
 public:
  LinkEnergy(const MatrixOneForm& w) : w_(w), links_(interior_links(w.grid())), h_(w.grid().h()) {}

  Mat covariant(const MatrixField& p, const Link& l) const {
    const Mat wl = 0.5 * (Mat(component(l.axis).at(l.tail)) + Mat(component(l.axis).at(l.head)));
    const Mat pa = p.at(l.tail), pb = p.at(l.head);
    return (pb - pa) / h_ + 0.5 * wl * (pa + pb);
  }

  double energy(const MatrixField& p) const {
    long double e = 0.0L;
    for (const Link& l : links_) e += covariant(p, l).squaredNorm();
    return static_cast<double>(e) * h_ * h_;
  }

  // skew(P^* grad E), the gradient in the left-trivialised tangent space.
  MatrixField gradient(const MatrixField& p) const {
    MatrixField euclid(p.grid_ptr(), p.m());
    const double h2 = h_ * h_;
    for (const Link& l : links_) {
      const Mat g = covariant(p, l);
      const Mat wl = 0.5 * (Mat(component(l.axis).at(l.tail)) + Mat(component(l.axis).at(l.head)));
      const Mat shared = 0.5 * wl.adjoint() * g;
      euclid.at(l.tail) += 2.0 * h2 * (shared - g / h_);
      euclid.at(l.head) += 2.0 * h2 * (shared + g / h_);
    }
    return skew(multiply(adjoint(p), euclid));
  }

  const std::vector<Link>& links() const noexcept { return links_; }

 private:
  const MatrixField& component(int axis) const { return axis == 0 ? w_.cx : w_.cy; }

  const MatrixOneForm& w_;
  std::vector<Link> links_;
  double h_;
};

// Sparse Cholesky factor of the link Laplacian plus shift on interior nodes.
class LinkLaplacian {
 public:
  LinkLaplacian(const Grid& g, const std::vector<Link>& links, double shift)
      : slot_(g.size(), -1), nodes_(g.interior_nodes()) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) slot_[nodes_[i]] = static_cast<int>(i);
    const int n = static_cast<int>(nodes_.size());
    const double w = 1.0 / g.cell_area();
    std::vector<Eigen::Triplet<double>> trip;
    for (int i = 0; i < n; ++i) trip.emplace_back(i, i, shift);
    for (const Link& l : links) {
      const int a = slot_[l.tail], b = slot_[l.head];
      trip.emplace_back(a, a, w);
      trip.emplace_back(b, b, w);
      trip.emplace_back(a, b, -w);
      trip.emplace_back(b, a, -w);
    }
    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(trip.begin(), trip.end());
    solver_.compute(a);
    if (solver_.info() != Eigen::Success) throw NonConvergence(0, 1.0);
  }

  MatrixField solve(const MatrixField& rhs) const {
    const int m = rhs.m();
    const int n = static_cast<int>(nodes_.size());
    MatrixField out(rhs.grid_ptr(), m);
    Eigen::MatrixXd b(n, 2 * m * m);
    for (int i = 0; i < n; ++i) {
      const auto v = rhs.at(nodes_[i]);
      for (int e = 0; e < m * m; ++e) {
        b(i, 2 * e) = v.data()[e].real();
        b(i, 2 * e + 1) = v.data()[e].imag();
      }
    }
    const Eigen::MatrixXd x = solver_.solve(b);
    for (int i = 0; i < n; ++i) {
      auto v = out.at(nodes_[i]);
      for (int e = 0; e < m * m; ++e) v.data()[e] = cplx(x(i, 2 * e), x(i, 2 * e + 1));
    }
    return out;
  }

 private:
  std::vector<int> slot_;
  std::span<const int> nodes_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver_;
};

}  // namespace

MatrixOneForm unitary_part(const MatrixOneForm& w) {
  MatrixOneForm out = MatrixOneForm::zeros(w.grid_ptr(), w.m());
  for (int k : w.grid().interior_nodes()) {
    out.cx.at(k) = skew_part(w.cx.at(k));
    out.cy.at(k) = skew_part(w.cy.at(k));
  }
  return out;
}

double coulomb_energy(const MatrixField& p, const MatrixOneForm& w) { return LinkEnergy(w).energy(p); }

CoulombResult coulomb_gauge(const MatrixOneForm& w, const CoulombOptions& opts) {
  const GridPtr& gp = w.grid_ptr();
  const Grid& grid = *gp;
  const int m = w.m();
  const double wnorm = l2_norm(w);
  const double h2 = grid.cell_area();

  CoulombResult res;
  res.p = GaugeFrame::identity(gp, m);
  MatrixField& p = res.p.values;

  const LinkEnergy link(w);
  double energy = link.energy(p);
  MatrixField grad = link.gradient(p);
  // The gradient is 2 h^2 d^* w_P node by node.
  auto residual_of = [&](const MatrixField& gr) { return l2_norm(gr) / (2.0 * h2); };
  double residual = residual_of(grad);
  res.energy_history.push_back(energy);
  res.residual_history.push_back(residual);

  if (residual > opts.tol * wnorm) {
    const LinkLaplacian laplacian(grid, link.links(), opts.shift);
    int it = 0;
    while (residual > opts.tol * wnorm && it < opts.max_iterations) {
      const MatrixField xi = skew(laplacian.solve(cplx(-1.0 / (2.0 * h2)) * grad));
      const double slope = pairing(grad, xi);
      if (!(slope < 0.0)) break;

      double t = opts.initial_step;
      bool accepted = false;
      while (t >= opts.min_step) {
        MatrixField trial = retract(p, xi, t);
        const double et = link.energy(trial);
        if (et <= energy + opts.armijo * t * slope) {
          p = std::move(trial);
          energy = et;
          accepted = true;
          break;
        }
        t *= opts.shrink;
      }
      if (!accepted) break;
      ++it;
      grad = link.gradient(p);
      residual = residual_of(grad);
      res.energy_history.push_back(energy);
      res.residual_history.push_back(residual);
    }
    res.iterations = it;
    if (residual > opts.tol * wnorm) throw Stalled(energy, residual);
  }
  res.residual = residual;

  const MatrixOneForm wp = unitary_part(transform_connection(res.p, w));
  res.eta = poisson_dirichlet(exterior_d(wp).c);
  return res;
}

double holomorphic_residual(const MatrixField& s, const MatrixField& w01, std::span<const int> nodes) {
  return l2_norm(dbar(s) + multiply(w01, s), nodes);
}

HolomorphicGaugeResult holomorphic_gauge(const MatrixField& alpha01, const HolomorphicGaugeOptions& opts) {
  CauchyTransform t(alpha01.grid_ptr(), opts.kernel);
  return holomorphic_gauge(alpha01, t, opts);
}

HolomorphicGaugeResult holomorphic_gauge(const MatrixField& alpha01, const CauchyTransform& t,
                                         const HolomorphicGaugeOptions& opts) {
  const GridPtr& gp = alpha01.grid_ptr();
  const int m = alpha01.m();
  const MatrixField id = MatrixField::identity(gp, m);
  HolomorphicGaugeResult res;
  res.alpha_norm = l2_norm(alpha01);
  MatrixField q = id;
  const auto nodes = gp->interior_nodes();
  for (int k = 1; k <= opts.max_iterations; ++k) {
    MatrixField next = id - t.apply(multiply(alpha01, q));
    double gap = 0.0;
    for (int node : nodes) gap = std::max(gap, (next.at(node) - q.at(node)).norm());
    res.gaps.push_back(gap);
    q = std::move(next);
    res.iterations = k;
    if (k >= 2) {
      const double prev = res.gaps[k - 2];
      const double ratio = prev > 0.0 ? gap / prev : 0.0;
      res.rate = std::max(res.rate, ratio);
      if (k >= 3 && ratio > 1.0) throw NoContraction(k, ratio);
    }
    if (gap <= opts.tol_fp) {
      res.q = {std::move(q), FrameKind::Invertible};
      const auto margin = gp->margin(opts.margin_layers);
      res.residual = holomorphic_residual(res.q.values, alpha01, margin);
      res.residual_full = holomorphic_residual(res.q.values, alpha01, nodes);
      return res;
    }
  }
  throw NoContraction(opts.max_iterations, res.rate);
}

FrameResult build_holomorphic_frame(const MatrixOneForm& w, const FrameOptions& opts) {
  const GridPtr& gp = w.grid_ptr();
  const int m = w.m();
  FrameResult out;
  FrameReport& rep = out.report;

  const HodgeDecomposition hd = hodge_decompose(w, opts.solve);
  rep.eps_dagger = hd.eps_dagger;
  rep.l2 = hd.l2;
  rep.l21 = hd.l21;
  if (hd.eps_dagger > opts.eps)
    throw ConditionDaggerViolated("eps_dagger " + std::to_string(hd.eps_dagger) + " exceeds " +
                                  std::to_string(opts.eps));

  if (hd.l2 == 0.0) {
    out.p = GaugeFrame::identity(gp, m);
    out.q = GaugeFrame::identity(gp, m, FrameKind::Invertible);
    out.s = GaugeFrame::identity(gp, m, FrameKind::Invertible);
    out.eta = MatrixField(gp, m);
    out.alpha01 = MatrixField(gp, m);
    return out;
  }

  const MatrixOneForm da = hd.exact_part();
  const MatrixOneForm star_db = hd.coexact_part();
  CoulombResult cg = coulomb_gauge(da, opts.coulomb);
  rep.coulomb_iterations = cg.iterations;
  rep.coulomb_residual = cg.residual;
  out.p = cg.p;
  const MatrixField& p = out.p.values;
  const MatrixField pstar = adjoint(p);

  // Delta eta = dP^* ^ dP + d(P^* da P)
  MatrixField rhs = wedge(exterior_d(pstar), exterior_d(p)).c;
  rhs += exterior_d(multiply(pstar, multiply(da, p))).c;
  out.eta = poisson_dirichlet(rhs, opts.solve);
  MatrixField wente = zbar_part(coexact(out.eta)) + multiply(pstar, multiply(zbar_part(star_db), p));
  MatrixField direct = zbar_part(transform_connection(out.p, w));
  const auto margin = gp->margin(opts.fixed_point.margin_layers);
  const double direct_norm = l2_norm(direct, margin);
  rep.route_gap = direct_norm > 0.0 ? l2_norm(wente - direct, margin) / direct_norm : 0.0;
  out.alpha01 = opts.route == AlphaRoute::Wente ? std::move(wente) : std::move(direct);
  rep.alpha_l21 = lorentz_norm(out.alpha01, 2.0, 1.0);

  HolomorphicGaugeResult fp = holomorphic_gauge(out.alpha01, opts.fixed_point);
  rep.fixed_point_iterations = fp.iterations;
  out.q = fp.q;
  out.s = {multiply(p, out.q.values), FrameKind::Invertible};

  rep.residual = holomorphic_residual(out.s.values, zbar_part(w), margin);
  rep.relative_residual = rep.residual / hd.l2;
  rep.dist_unitary = out.s.max_dist_unitary();
  rep.grad_s = l2_norm(exterior_d(out.s.values), margin);
  rep.c_report = rep.grad_s / hd.l2;
  return out;
}

RegularityResult dbar_regularity_solve(const VectorOneForm10& a, const MatrixOneForm& w,
                                       const RegularityOptions& opts) {
  const GridPtr& gp = w.grid_ptr();
  if (a.c.m() != w.m()) throw DimensionMismatch("form and connection differ in fiber dimension");
  const auto margin = gp->margin(opts.frame.fixed_point.margin_layers);
  RegularityResult out;
  RegularityReport& rep = out.report;

  const double a_margin = l2_norm(a.c, margin);
  const VectorField closed = [&] {
    VectorField r = dbar(a.c);
    const VectorField wa = multiply(zbar_part(w), a.c);
    for (std::size_t i = 0; i < r.raw().size(); ++i) r.raw()[i] += wa.raw()[i];
    return r;
  }();
  rep.input_residual = a_margin > 0.0 ? l2_norm(closed, margin) / a_margin : 0.0;

  const DaggerVerdict verdict = check_condition_dagger(w, opts.frame.eps, opts.frame.solve);
  if (!verdict.satisfied)
    throw ConditionDaggerViolated("eps_dagger " + std::to_string(verdict.eps_dagger) + " exceeds " +
                                  std::to_string(opts.frame.eps));
  if (rep.input_residual > opts.tol_input)
    throw InputNotClosed("relative dbar_w residual " + std::to_string(rep.input_residual) +
                         " exceeds " + std::to_string(opts.tol_input));

  const FrameResult fr = build_holomorphic_frame(w, opts.frame);
  rep.frame = fr.report;
  out.h.c = multiply(inverse(fr.s.values), a.c);
  rep.dbar_h = a_margin > 0.0 ? l2_norm(dbar(out.h.c), margin) / a_margin : 0.0;

  ScalarField mag = pointwise_norm(a.c);
  rep.alpha_sup = 0.0;
  for (int k : margin) rep.alpha_sup = std::max(rep.alpha_sup, mag[k].real());
  const VectorField ax = partial_x(a.c), ay = partial_y(a.c);
  const double gx = l2_norm(ax, margin), gy = l2_norm(ay, margin);
  rep.alpha_grad = std::sqrt(gx * gx + gy * gy);
  const double l2 = l2_norm(a.c, gp->interior_nodes());
  rep.alpha_l2sq = l2 * l2;
  ScalarField sq(gp, 1);
  for (int k : gp->interior_nodes()) sq[k] = mag[k].real() * mag[k].real();
  rep.hardy = hardy_h1_norm(sq).value;
  rep.hardy_ratio = rep.alpha_l2sq > 0.0 ? rep.hardy / rep.alpha_l2sq : 0.0;
  return out;
}

}  // namespace holo
