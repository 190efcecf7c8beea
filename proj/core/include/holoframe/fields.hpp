#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "holoframe/errors.hpp"
#include "holoframe/grid.hpp"

namespace holo {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using MatMap = Eigen::Map<Mat>;
using ConstMatMap = Eigen::Map<const Mat>;
using VecMap = Eigen::Map<Vec>;
using ConstVecMap = Eigen::Map<const Vec>;

/// One m x m complex matrix per node (column-major within a node). With
/// m = 1 this is a complex scalar field.
class MatrixField {
 public:
  MatrixField() = default;
  MatrixField(GridPtr grid, int m);

  static MatrixField zeros(GridPtr grid, int m) { return MatrixField(std::move(grid), m); }
  /// Identity on interior nodes; exterior nodes stay zero.
  static MatrixField identity(GridPtr grid, int m);

  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const Grid& grid() const noexcept { return *grid_; }
  int m() const noexcept { return m_; }
  int block() const noexcept { return m_ * m_; }

  MatMap at(int k) { return MatMap(data_.data() + static_cast<std::size_t>(k) * block(), m_, m_); }
  ConstMatMap at(int k) const {
    return ConstMatMap(data_.data() + static_cast<std::size_t>(k) * block(), m_, m_);
  }
  /// Scalar access for m = 1 fields.
  cplx& operator[](int k) { return data_[k]; }
  const cplx& operator[](int k) const { return data_[k]; }

  std::vector<cplx>& raw() noexcept { return data_; }
  const std::vector<cplx>& raw() const noexcept { return data_; }

  MatrixField& operator+=(const MatrixField& o);
  MatrixField& operator-=(const MatrixField& o);
  MatrixField& operator*=(cplx s);

  /// Zero every non-interior node.
  void restrict_to_interior();

 private:
  GridPtr grid_;
  int m_ = 0;
  std::vector<cplx> data_;
};

using ScalarField = MatrixField;

MatrixField operator+(MatrixField a, const MatrixField& b);
MatrixField operator-(MatrixField a, const MatrixField& b);
MatrixField operator*(cplx s, MatrixField a);

/// cx dx + cy dy.
struct MatrixOneForm {
  MatrixField cx;
  MatrixField cy;

  static MatrixOneForm zeros(const GridPtr& g, int m) {
    return {MatrixField::zeros(g, m), MatrixField::zeros(g, m)};
  }
  const Grid& grid() const noexcept { return cx.grid(); }
  const GridPtr& grid_ptr() const noexcept { return cx.grid_ptr(); }
  int m() const noexcept { return cx.m(); }

  MatrixOneForm& operator+=(const MatrixOneForm& o) {
    cx += o.cx;
    cy += o.cy;
    return *this;
  }
  MatrixOneForm& operator-=(const MatrixOneForm& o) {
    cx -= o.cx;
    cy -= o.cy;
    return *this;
  }
  MatrixOneForm& operator*=(cplx s) {
    cx *= s;
    cy *= s;
    return *this;
  }
};

inline MatrixOneForm operator+(MatrixOneForm a, const MatrixOneForm& b) { return a += b; }
inline MatrixOneForm operator-(MatrixOneForm a, const MatrixOneForm& b) { return a -= b; }
inline MatrixOneForm operator*(cplx s, MatrixOneForm a) { return a *= s; }

/// c dx^dy.
struct MatrixTwoForm {
  MatrixField c;
};

/// One C^m vector per node.
class VectorField {
 public:
  VectorField() = default;
  VectorField(GridPtr grid, int m);

  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const Grid& grid() const noexcept { return *grid_; }
  int m() const noexcept { return m_; }

  VecMap at(int k) { return VecMap(data_.data() + static_cast<std::size_t>(k) * m_, m_); }
  ConstVecMap at(int k) const {
    return ConstVecMap(data_.data() + static_cast<std::size_t>(k) * m_, m_);
  }
  std::vector<cplx>& raw() noexcept { return data_; }
  const std::vector<cplx>& raw() const noexcept { return data_; }

 private:
  GridPtr grid_;
  int m_ = 0;
  std::vector<cplx> data_;
};

/// C^m-valued (1,0)-form, stored as the coefficient of dz.
struct VectorOneForm10 {
  VectorField c;
};

// ---- node-wise algebra (interior nodes; other nodes stay zero) ----

MatrixField multiply(const MatrixField& a, const MatrixField& b);
MatrixOneForm multiply(const MatrixOneForm& a, const MatrixField& b);
MatrixOneForm multiply(const MatrixField& a, const MatrixOneForm& b);
VectorField multiply(const MatrixField& a, const VectorField& v);
MatrixField adjoint(const MatrixField& a);
/// Throws SingularFrame at the first node whose condition number exceeds
/// `max_condition`.
MatrixField inverse(const MatrixField& a, double max_condition = 1e6);

// ---- pointwise and integral norms (cell-area weighted, interior nodes) ----

void require_same_shape(const MatrixField& a, const MatrixField& b);

/// Frobenius norm per node as a real scalar field.
ScalarField pointwise_norm(const MatrixField& f);
/// sqrt(|cx|^2 + |cy|^2) per node.
ScalarField pointwise_norm(const MatrixOneForm& w);
ScalarField pointwise_norm(const VectorField& v);

double l2_norm(const MatrixField& f, std::span<const int> nodes);
double l2_norm(const MatrixField& f);
double l2_norm(const MatrixOneForm& w, std::span<const int> nodes);
double l2_norm(const MatrixOneForm& w);
double l2_norm(const VectorField& v, std::span<const int> nodes);
double l1_norm(const MatrixField& f, std::span<const int> nodes);
double max_norm(const MatrixField& f, std::span<const int> nodes);

/// Re sum_k h^2 tr(a_k^* b_k) over interior nodes.
double inner(const MatrixField& a, const MatrixField& b);
double inner(const MatrixOneForm& a, const MatrixOneForm& b);

/// Largest entrywise |M + M^*| over interior nodes of both components.
double skew_hermitian_defect(const MatrixOneForm& w);
double skew_hermitian_defect(const MatrixField& f);

}  // namespace holo
