#include "holoframe/fields.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace holo {

MatrixField::MatrixField(GridPtr grid, int m)
    : grid_(std::move(grid)), m_(m), data_(static_cast<std::size_t>(grid_->size()) * m * m) {}

MatrixField MatrixField::identity(GridPtr grid, int m) {
  MatrixField f(std::move(grid), m);
  for (int k : f.grid().interior_nodes()) f.at(k).setIdentity();
  return f;
}

void require_same_shape(const MatrixField& a, const MatrixField& b) {
  if (a.m() != b.m() || !(a.grid() == b.grid()))
    throw DimensionMismatch("fields differ in grid size or fibre dimension");
}

MatrixField& MatrixField::operator+=(const MatrixField& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

MatrixField& MatrixField::operator-=(const MatrixField& o) {
  require_same_shape(*this, o);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

MatrixField& MatrixField::operator*=(cplx s) {
  for (auto& v : data_) v *= s;
  return *this;
}

void MatrixField::restrict_to_interior() {
  for (int k = 0; k < grid_->size(); ++k)
    if (!grid_->interior(k)) at(k).setZero();
}

MatrixField operator+(MatrixField a, const MatrixField& b) { return a += b; }
MatrixField operator-(MatrixField a, const MatrixField& b) { return a -= b; }
MatrixField operator*(cplx s, MatrixField a) { return a *= s; }

VectorField::VectorField(GridPtr grid, int m)
    : grid_(std::move(grid)), m_(m), data_(static_cast<std::size_t>(grid_->size()) * m) {}

ScalarField pointwise_norm(const MatrixField& f) {
  ScalarField out(f.grid_ptr(), 1);
  for (int k : f.grid().interior_nodes()) out[k] = f.at(k).norm();
  return out;
}

ScalarField pointwise_norm(const MatrixOneForm& w) {
  ScalarField out(w.grid_ptr(), 1);
  for (int k : w.grid().interior_nodes())
    out[k] = std::sqrt(w.cx.at(k).squaredNorm() + w.cy.at(k).squaredNorm());
  return out;
}

ScalarField pointwise_norm(const VectorField& v) {
  ScalarField out(v.grid_ptr(), 1);
  for (int k : v.grid().interior_nodes()) out[k] = v.at(k).norm();
  return out;
}

double l2_norm(const MatrixField& f, std::span<const int> nodes) {
  double s = 0.0;
  for (int k : nodes) s += f.at(k).squaredNorm();
  return std::sqrt(s * f.grid().cell_area());
}

double l2_norm(const MatrixField& f) { return l2_norm(f, f.grid().interior_nodes()); }

double l2_norm(const MatrixOneForm& w, std::span<const int> nodes) {
  double s = 0.0;
  for (int k : nodes) s += w.cx.at(k).squaredNorm() + w.cy.at(k).squaredNorm();
  return std::sqrt(s * w.grid().cell_area());
}

double l2_norm(const MatrixOneForm& w) { return l2_norm(w, w.grid().interior_nodes()); }

double l2_norm(const VectorField& v, std::span<const int> nodes) {
  double s = 0.0;
  for (int k : nodes) s += v.at(k).squaredNorm();
  return std::sqrt(s * v.grid().cell_area());
}

double l1_norm(const MatrixField& f, std::span<const int> nodes) {
  double s = 0.0;
  for (int k : nodes) s += f.at(k).norm();
  return s * f.grid().cell_area();
}

double max_norm(const MatrixField& f, std::span<const int> nodes) {
  double s = 0.0;
  for (int k : nodes) s = std::max(s, f.at(k).norm());
  return s;
}

double inner(const MatrixField& a, const MatrixField& b) {
  require_same_shape(a, b);
  double s = 0.0;
  for (int k : a.grid().interior_nodes()) s += (a.at(k).adjoint() * b.at(k)).trace().real();
  return s * a.grid().cell_area();
}

double inner(const MatrixOneForm& a, const MatrixOneForm& b) {
  return inner(a.cx, b.cx) + inner(a.cy, b.cy);
}

double skew_hermitian_defect(const MatrixField& f) {
  double d = 0.0;
  for (int k : f.grid().interior_nodes())
    d = std::max(d, (f.at(k) + f.at(k).adjoint()).cwiseAbs().maxCoeff());
  return d;
}

double skew_hermitian_defect(const MatrixOneForm& w) {
  return std::max(skew_hermitian_defect(w.cx), skew_hermitian_defect(w.cy));
}

MatrixField multiply(const MatrixField& a, const MatrixField& b) {
  require_same_shape(a, b);
  MatrixField out(a.grid_ptr(), a.m());
  for (int k : a.grid().interior_nodes()) out.at(k).noalias() = a.at(k) * b.at(k);
  return out;
}

MatrixOneForm multiply(const MatrixOneForm& a, const MatrixField& b) {
  return {multiply(a.cx, b), multiply(a.cy, b)};
}

MatrixOneForm multiply(const MatrixField& a, const MatrixOneForm& b) {
  return {multiply(a, b.cx), multiply(a, b.cy)};
}

VectorField multiply(const MatrixField& a, const VectorField& v) {
  if (a.m() != v.m() || a.grid().n() != v.grid().n())
    throw DimensionMismatch("matrix and vector fields differ in shape");
  VectorField out(v.grid_ptr(), v.m());
  for (int k : a.grid().interior_nodes()) out.at(k).noalias() = a.at(k) * v.at(k);
  return out;
}

MatrixField adjoint(const MatrixField& a) {
  MatrixField out(a.grid_ptr(), a.m());
  for (int k : a.grid().interior_nodes()) out.at(k) = a.at(k).adjoint();
  return out;
}

MatrixField inverse(const MatrixField& a, double max_condition) {
  MatrixField out(a.grid_ptr(), a.m());
  for (int k : a.grid().interior_nodes()) {
    Eigen::JacobiSVD<Mat> svd(a.at(k), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double lo = s(s.size() - 1);
    if (!(lo > 0.0) || s(0) / lo > max_condition) throw SingularFrame(k);
    out.at(k) = svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
  }
  return out;
}

}  // namespace holo
