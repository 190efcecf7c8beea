#include "holoframe/elliptic.hpp"

#include <cmath>
#include <limits>

#include "holoframe/lorentz.hpp"

namespace holo {

namespace {

int iteration_cap(const Grid& g, const SolveOptions& opts) {
  return opts.max_iterations > 0 ? opts.max_iterations : 20 * g.n();
}

MatrixField negated(const MatrixField& f) { return cplx(-1.0) * f; }

void zero_mean(const Grid& g, int block, std::vector<cplx>& v) {
  const double count = static_cast<double>(g.interior_nodes().size());
  for (int e = 0; e < block; ++e) {
    cplx mean = 0.0;
    for (int k : g.interior_nodes()) mean += v[static_cast<std::size_t>(k) * block + e];
    mean /= count;
    for (int k : g.interior_nodes()) v[static_cast<std::size_t>(k) * block + e] -= mean;
  }
}

MatrixField solve_dirichlet_system(const MatrixField& rhs_field, const std::vector<cplx>& rhs,
                                   const SolveOptions& opts) {
  const Grid& g = rhs_field.grid();
  const int block = rhs_field.block();
  const auto inv_diag = dirichlet_inverse_diagonal(g, block, 0.0);
  MatrixField out(rhs_field.grid_ptr(), rhs_field.m());
  if (opts.method == SolveMethod::Direct) {
    direct_solve(rhs_field.grid_ptr(), BoundaryKind::Dirichlet, block, rhs, out.raw());
    return out;
  }
  auto op = [&](const std::vector<cplx>& in, std::vector<cplx>& o) { apply_dirichlet(g, block, 0.0, in, o); };
  const CgResult r = conjugate_gradient(op, inv_diag, rhs, out.raw(), opts.rel_tol, iteration_cap(g, opts));
  if (!r.converged) throw NonConvergence(r.iterations, r.relative_residual);
  return out;
}

MatrixField solve_neumann_system(const MatrixField& like, std::vector<cplx> rhs,
                                 const SolveOptions& opts) {
  const Grid& g = like.grid();
  const int block = like.block();
  zero_mean(g, block, rhs);
  const auto inv_diag = neumann_inverse_diagonal(g, block, 0.0);
  MatrixField out(like.grid_ptr(), like.m());
  if (opts.method == SolveMethod::Direct) {
    direct_solve(like.grid_ptr(), BoundaryKind::Neumann, block, rhs, out.raw());
    zero_mean(g, block, out.raw());
    return out;
  }
  auto op = [&](const std::vector<cplx>& in, std::vector<cplx>& o) { apply_neumann(g, block, 0.0, in, o); };
  const CgResult r = conjugate_gradient(op, inv_diag, rhs, out.raw(), opts.rel_tol, iteration_cap(g, opts));
  if (!r.converged) throw NonConvergence(r.iterations, r.relative_residual);
  zero_mean(g, block, out.raw());
  return out;
}

}  // namespace

MatrixField laplacian_dirichlet(const MatrixField& u) {
  MatrixField out(u.grid_ptr(), u.m());
  apply_dirichlet(u.grid(), u.block(), 0.0, u.raw(), out.raw());
  return negated(out);
}

MatrixField laplacian_neumann(const MatrixField& u) {
  MatrixField out(u.grid_ptr(), u.m());
  apply_neumann(u.grid(), u.block(), 0.0, u.raw(), out.raw());
  return negated(out);
}

MatrixField poisson_dirichlet(const MatrixField& rhs, const SolveOptions& opts) {
  MatrixField b = negated(rhs);
  b.restrict_to_interior();
  return solve_dirichlet_system(rhs, b.raw(), opts);
}

MatrixField poisson_dirichlet(const MatrixField& rhs, const DirichletTrace& trace,
                              const SolveOptions& opts) {
  MatrixField b = negated(rhs);
  b.restrict_to_interior();
  add_dirichlet_data(rhs.grid(), rhs.block(), trace, b.raw());
  return solve_dirichlet_system(rhs, b.raw(), opts);
}

MatrixField poisson_neumann(const MatrixField& rhs, const NeumannOptions& opts) {
  const Grid& g = rhs.grid();
  const int block = rhs.block();
  const double count = static_cast<double>(g.interior_nodes().size());
  double worst = 0.0;
  double rms = 0.0;
  for (int e = 0; e < block; ++e) {
    cplx mean = 0.0;
    for (int k : g.interior_nodes()) {
      const cplx v = rhs.raw()[static_cast<std::size_t>(k) * block + e];
      mean += v;
      rms += std::norm(v);
    }
    worst = std::max(worst, std::abs(mean / count));
  }
  rms = std::sqrt(rms / count);
  if (!opts.auto_project && worst > opts.tol_mean * rms)
    throw CompatibilityViolation("right-hand side mean " + std::to_string(worst) +
                                 " exceeds tolerance; set auto_project to remove it");
  MatrixField b = negated(rhs);
  b.restrict_to_interior();
  return solve_neumann_system(rhs, b.raw(), opts.solve);
}

MatrixField exact_potential(const MatrixOneForm& w, const SolveOptions& opts) {
  const Grid& g = w.grid();
  const int block = w.cx.block();
  const double ih = 1.0 / g.h();
  std::vector<cplx> rhs(static_cast<std::size_t>(g.size()) * block, cplx{});
  for (int k : g.interior_nodes()) {
    const auto& links = g.links(k);
    for (int l = 0; l < 4; ++l) {
      const int j = links[l].neighbor;
      if (j < 0) continue;
      const MatrixField& comp = l < 2 ? w.cx : w.cy;
      const double sign = (l % 2 == 0) ? -1.0 : 1.0;  // +x, +y links enter with a minus
      const std::size_t bk = static_cast<std::size_t>(k) * block;
      const std::size_t bj = static_cast<std::size_t>(j) * block;
      for (int e = 0; e < block; ++e)
        rhs[bk + e] += sign * ih * 0.5 * (comp.raw()[bk + e] + comp.raw()[bj + e]);
    }
  }
  return solve_neumann_system(w.cx, std::move(rhs), opts);
}

HodgeDecomposition hodge_decompose(const MatrixOneForm& w, const SolveOptions& opts) {
  HodgeDecomposition hd;
  hd.b = poisson_dirichlet(exterior_d(w).c, opts);
  MatrixOneForm rest = w - coexact(hd.b);
  hd.a = exact_potential(rest, opts);
  hd.residual = rest - exterior_d(hd.a);
  hd.l2 = l2_norm(w);
  hd.l21 = lorentz_norm(pointwise_norm(exterior_d(hd.b)), 2.0, 1.0);
  hd.eps_dagger = hd.l2 + hd.l21;
  return hd;
}

WenteSolution wente_solve(const ScalarField& a, const ScalarField& b, const SolveOptions& opts) {
  const MatrixOneForm da = exterior_d(a);
  const MatrixOneForm db = exterior_d(b);
  WenteSolution s;
  s.phi = poisson_dirichlet(hodge_star2(wedge(da, db)), opts);
  NormReport& r = s.report;
  const MatrixOneForm dphi = exterior_d(s.phi);
  const ScalarField grad = pointwise_norm(dphi);
  r.sup = max_norm(s.phi, s.phi.grid().interior_nodes());
  r.grad_l2 = l2_norm(dphi);
  r.grad_l21 = lorentz_norm(grad, 2.0, 1.0);
  r.grad_l2inf = lorentz_norm(grad, 2.0, kInf);
  r.input_product = l2_norm(da) * l2_norm(db);
  r.degenerate = !(r.input_product > 0.0);
  r.ratio = r.degenerate ? std::numeric_limits<double>::quiet_NaN() : r.sup / r.input_product;
  return s;
}

double wente_ratio(const WenteSolution& s) {
  if (s.report.degenerate) throw DegenerateInput("grad a or grad b vanishes; Wente ratio undefined");
  return s.report.ratio;
}

DaggerVerdict dagger_verdict(const HodgeDecomposition& hd, double eps) {
  return {hd.eps_dagger <= eps, hd.eps_dagger, hd.l2, hd.l21};
}

DaggerVerdict check_condition_dagger(const MatrixOneForm& w, double eps, const SolveOptions& opts) {
  return dagger_verdict(hodge_decompose(w, opts), eps);
}

}  // namespace holo
