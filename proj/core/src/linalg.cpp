#include "holoframe/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <limits>

namespace holo {

Mat skew_part(const Mat& a) { return 0.5 * (a - a.adjoint()); }

Mat expm_skew_hermitian(const Mat& xi) {
  const cplx i(0.0, 1.0);
  const Mat herm = 0.5 * ((i * xi) + (i * xi).adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(herm);
  const Eigen::VectorXd lambda = es.eigenvalues();
  Eigen::VectorXcd phase(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) phase(k) = std::exp(-i * lambda(k));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

double dist_unitary(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a);
  return (svd.singularValues().array() - 1.0).abs().maxCoeff();
}

double condition_number(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& s = svd.singularValues();
  const double lo = s(s.size() - 1);
  return lo > 0.0 ? s(0) / lo : std::numeric_limits<double>::infinity();
}

namespace {

double dot_re(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
  return s;
}

}  // namespace

CgResult conjugate_gradient(const LinearOperator& apply, std::span<const double> inv_diag,
                            const std::vector<cplx>& rhs, std::vector<cplx>& x, double rel_tol,
                            int max_iterations) {
  const std::size_t n = rhs.size();
  x.resize(n);
  CgResult res;
  const double bnorm = std::sqrt(dot_re(rhs, rhs));
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), cplx{});
    res.converged = true;
    return res;
  }
  std::vector<cplx> r(n), z(n), p(n), ap(n);
  apply(x, ap);
  for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - ap[i];
  auto precondition = [&] {
    if (inv_diag.empty()) {
      z = r;
    } else {
      for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    }
  };
  precondition();
  p = z;
  double rz = dot_re(r, z);
  double rnorm = std::sqrt(dot_re(r, r));
  for (int it = 0; it < max_iterations; ++it) {
    res.iterations = it;
    res.relative_residual = rnorm / bnorm;
    if (res.relative_residual <= rel_tol) {
      res.converged = true;
      return res;
    }
    apply(p, ap);
    const double pap = dot_re(p, ap);
    if (!(pap > 0.0)) break;
    const double alpha = rz / pap;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    precondition();
    const double rz_new = dot_re(r, z);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rnorm = std::sqrt(dot_re(r, r));
  }
  res.relative_residual = rnorm / bnorm;
  res.converged = res.relative_residual <= rel_tol;
  if (res.iterations < max_iterations && !res.converged) res.iterations = max_iterations;
  return res;
}

}  // namespace holo
