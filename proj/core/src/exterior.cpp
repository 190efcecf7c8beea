#include "holoframe/exterior.hpp"

namespace holo {

namespace {

const cplx kI(0.0, 1.0);

template <class Pick>
void apply(const Grid& g, Pick pick, const cplx* in, cplx* out, int block) {
  for (int k : g.interior_nodes()) {
    const Stencil& s = pick(k);
    cplx* o = out + static_cast<std::size_t>(k) * block;
    for (int t = 0; t < s.taps; ++t) {
      const cplx* src = in + static_cast<std::size_t>(s.node[t]) * block;
      const double w = s.weight[t];
      for (int e = 0; e < block; ++e) o[e] += w * src[e];
    }
  }
}

template <class Pick>
void apply_transpose(const Grid& g, Pick pick, const cplx* in, cplx* out, int block) {
  for (int k : g.interior_nodes()) {
    const Stencil& s = pick(k);
    const cplx* src = in + static_cast<std::size_t>(k) * block;
    for (int t = 0; t < s.taps; ++t) {
      cplx* o = out + static_cast<std::size_t>(s.node[t]) * block;
      const double w = s.weight[t];
      for (int e = 0; e < block; ++e) o[e] += w * src[e];
    }
  }
}

auto pick_x(const Grid& g) {
  return [&g](int k) -> const Stencil& { return g.dx(k); };
}
auto pick_y(const Grid& g) {
  return [&g](int k) -> const Stencil& { return g.dy(k); };
}

}  // namespace

MatrixField partial_x(const MatrixField& f) {
  MatrixField out(f.grid_ptr(), f.m());
  apply(f.grid(), pick_x(f.grid()), f.raw().data(), out.raw().data(), f.block());
  return out;
}

MatrixField partial_y(const MatrixField& f) {
  MatrixField out(f.grid_ptr(), f.m());
  apply(f.grid(), pick_y(f.grid()), f.raw().data(), out.raw().data(), f.block());
  return out;
}

MatrixField partial_x_transpose(const MatrixField& f) {
  MatrixField out(f.grid_ptr(), f.m());
  apply_transpose(f.grid(), pick_x(f.grid()), f.raw().data(), out.raw().data(), f.block());
  return out;
}

MatrixField partial_y_transpose(const MatrixField& f) {
  MatrixField out(f.grid_ptr(), f.m());
  apply_transpose(f.grid(), pick_y(f.grid()), f.raw().data(), out.raw().data(), f.block());
  return out;
}

VectorField partial_x(const VectorField& f) {
  VectorField out(f.grid_ptr(), f.m());
  apply(f.grid(), pick_x(f.grid()), f.raw().data(), out.raw().data(), f.m());
  return out;
}

VectorField partial_y(const VectorField& f) {
  VectorField out(f.grid_ptr(), f.m());
  apply(f.grid(), pick_y(f.grid()), f.raw().data(), out.raw().data(), f.m());
  return out;
}

MatrixOneForm exterior_d(const MatrixField& f) { return {partial_x(f), partial_y(f)}; }

MatrixTwoForm exterior_d(const MatrixOneForm& w) {
  return {partial_x(w.cy) - partial_y(w.cx)};
}

MatrixField codifferential(const MatrixOneForm& w) {
  // <df, w> = sum h^2 (Dx f . cx + Dy f . cy) = sum h^2 f . (Dx^T cx + Dy^T cy)
  return partial_x_transpose(w.cx) + partial_y_transpose(w.cy);
}

MatrixOneForm coexact(const MatrixField& b) { return hodge_star(exterior_d(b)); }

MatrixOneForm hodge_star(const MatrixOneForm& w) { return {-1.0 * w.cy, w.cx}; }

MatrixField hodge_star2(const MatrixTwoForm& t) { return t.c; }

MatrixTwoForm wedge(const MatrixOneForm& a, const MatrixOneForm& b) {
  require_same_shape(a.cx, b.cx);
  MatrixField c(a.grid_ptr(), a.m());
  for (int k : a.grid().interior_nodes())
    c.at(k) = a.cx.at(k) * b.cy.at(k) - a.cy.at(k) * b.cx.at(k);
  return {std::move(c)};
}

MatrixField zbar_part(const MatrixOneForm& w) { return 0.5 * (w.cx + kI * w.cy); }

MatrixField z_part(const MatrixOneForm& w) { return 0.5 * (w.cx - kI * w.cy); }

MatrixField dbar(const MatrixField& f) { return 0.5 * (partial_x(f) + kI * partial_y(f)); }

MatrixField dz(const MatrixField& f) { return 0.5 * (partial_x(f) - kI * partial_y(f)); }

namespace {
VectorField combine(const VectorField& a, const VectorField& b, cplx sb) {
  VectorField out(a.grid_ptr(), a.m());
  for (std::size_t i = 0; i < out.raw().size(); ++i) out.raw()[i] = 0.5 * (a.raw()[i] + sb * b.raw()[i]);
  return out;
}
}  // namespace

VectorField dbar(const VectorField& f) { return combine(partial_x(f), partial_y(f), kI); }

VectorField dz(const VectorField& f) { return combine(partial_x(f), partial_y(f), -kI); }

MatrixTwoForm curvature(const MatrixOneForm& w) {
  MatrixTwoForm f = exterior_d(w);
  for (int k : w.grid().interior_nodes())
    f.c.at(k) += w.cx.at(k) * w.cy.at(k) - w.cy.at(k) * w.cx.at(k);
  return f;
}

MatrixOneForm skew_hermitian_lift(const MatrixOneForm& w) {
  const MatrixField wz = zbar_part(w);
  MatrixOneForm out = MatrixOneForm::zeros(w.grid_ptr(), w.m());
  for (int k : w.grid().interior_nodes()) {
    const Eigen::MatrixXd w1 = wz.at(k).real();
    const Eigen::MatrixXd w2 = wz.at(k).imag();
    const Eigen::MatrixXd a1 = 0.5 * (w1 - w1.transpose()), s1 = 0.5 * (w1 + w1.transpose());
    const Eigen::MatrixXd a2 = 0.5 * (w2 - w2.transpose()), s2 = 0.5 * (w2 + w2.transpose());
    out.cx.at(k) = 2.0 * (a1.cast<cplx>() + kI * s2.cast<cplx>());
    out.cy.at(k) = 2.0 * (a2.cast<cplx>() - kI * s1.cast<cplx>());
  }
  return out;
}

}  // namespace holo
