#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "holoframe/fields.hpp"

namespace holo {

/// (A - A^*) / 2.
Mat skew_part(const Mat& a);

/// exp(xi) for skew-Hermitian xi via the eigendecomposition of i xi; the
/// result is unitary to round-off.
Mat expm_skew_hermitian(const Mat& xi);

/// Operator-norm distance to the unitary group: max_i |sigma_i(a) - 1|.
double dist_unitary(const Mat& a);

/// sigma_max / sigma_min (infinity when singular).
double condition_number(const Mat& a);

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool converged = false;
};

using LinearOperator = std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>;

/// Preconditioned conjugate gradients for a Hermitian positive
/// (semi)definite operator. `inv_diag` is the Jacobi preconditioner, one
/// entry per unknown; empty means unpreconditioned. `x` holds the initial
/// guess on entry. Does not throw; callers decide what non-convergence means.
CgResult conjugate_gradient(const LinearOperator& apply, std::span<const double> inv_diag,
                            const std::vector<cplx>& rhs, std::vector<cplx>& x, double rel_tol,
                            int max_iterations);

}  // namespace holo
