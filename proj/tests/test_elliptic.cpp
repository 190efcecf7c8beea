#include <doctest.h>

#include <numbers>

#include "holoframe/counterexample.hpp"
#include "holoframe/elliptic.hpp"
#include "holoframe/errors.hpp"
#include "holoframe/exterior.hpp"
#include "holoframe/random_fields.hpp"
#include "support.hpp"

using namespace holo;
using holo::test::max_diff;
using holo::test::sample;

namespace {

ScalarField interior_sample(const GridPtr& g, const std::function<cplx(cplx)>& f) {
  ScalarField s(g, 1);
  for (int k : g->interior_nodes()) s[k] = f(g->z(k));
  return s;
}

MatrixOneForm smooth_form(const GridPtr& g, std::uint64_t seed) {
  auto w = random_connection(g, 2, seed);
  normalize_l2(w, 1.0);
  return w;
}

}  // namespace

TEST_SUITE("elliptic") {
  TEST_CASE("Dirichlet Poisson closed forms") {
    for (int n : {65, 129}) {
      auto g = Grid::make(n);
      CHECK(l2_norm(poisson_dirichlet(ScalarField(g, 1))) == 0.0);
      const auto one = interior_sample(g, [](cplx) { return cplx(1.0); });
      const auto phi = poisson_dirichlet(one);
      const auto exact = interior_sample(g, [](cplx z) { return cplx((std::norm(z) - 1.0) / 4.0); });
      CHECK(max_diff(phi, exact) <= 0.1 * g->h() * g->h());
      double sup = 0.0;
      for (int k : g->interior_nodes()) sup = std::max(sup, std::abs(phi[k]));
      CHECK(sup == doctest::Approx(0.25).epsilon(1e-3));

      const auto phi4 = poisson_dirichlet(4.0 * one);
      CHECK(max_diff(phi4, 4.0 * exact) <= 0.4 * g->h() * g->h());
    }
  }

  TEST_CASE("conjugate gradients agree with the direct factorisation") {
    auto g = Grid::make(65);
    const auto rhs = random_matrix(g, 2, 3);
    SolveOptions cg{.method = SolveMethod::ConjugateGradient, .rel_tol = 1e-12};
    const auto a = poisson_dirichlet(rhs);
    const auto b = poisson_dirichlet(rhs, cg);
    CHECK(max_diff(a, b) <= 1e-9 * max_norm(a, g->interior_nodes()));

    SolveOptions starved{.method = SolveMethod::ConjugateGradient, .rel_tol = 1e-12, .max_iterations = 2};
    CHECK_THROWS_AS(poisson_dirichlet(rhs, starved), NonConvergence);
  }

  TEST_CASE("Neumann Poisson") {
    auto g = Grid::make(65);
    CHECK(l2_norm(poisson_neumann(ScalarField(g, 1))) == 0.0);

    const auto x = interior_sample(g, [](cplx z) { return cplx(z.real()); });
    const auto a = poisson_neumann(x);
    CHECK(l2_norm(laplacian_neumann(a) - x) <= 1e-8 * l2_norm(x));
    cplx mean = 0.0;
    for (int k : g->interior_nodes()) mean += a[k];
    CHECK(std::abs(mean) <= 1e-10 * g->interior_nodes().size());

    const auto one = interior_sample(g, [](cplx) { return cplx(1.0); });
    CHECK_THROWS_AS(poisson_neumann(one), CompatibilityViolation);
    const auto projected = poisson_neumann(one, NeumannOptions{.auto_project = true});
    CHECK(l2_norm(projected) <= 1e-8);
  }

  TEST_CASE("Hodge decomposition of zero") {
    auto g = Grid::make(65);
    const auto hd = hodge_decompose(MatrixOneForm::zeros(g, 2));
    CHECK(l2_norm(hd.a) == 0.0);
    CHECK(l2_norm(hd.b) == 0.0);
    CHECK(l2_norm(hd.residual) == 0.0);
    CHECK(hd.eps_dagger == 0.0);
  }

  TEST_CASE("closed forms have no coexact part") {
    auto g = Grid::make(65);
    Mat e11 = Mat::Zero(2, 2);
    e11(0, 0) = cplx(0.0, 1.0);
    const auto a0 = sample(g, e11, [](cplx z) { return cplx(z.real()); });
    const auto hd = hodge_decompose(exterior_d(a0));
    CHECK(l2_norm(exterior_d(hd.b)) <= g->h());
    Mat shift = Mat::Zero(2, 2);
    for (int k : g->interior_nodes()) shift += hd.a.at(k) - a0.at(k);
    shift /= static_cast<double>(g->interior_nodes().size());
    double err = 0.0;
    for (int k : g->interior_nodes()) err = std::max(err, (hd.a.at(k) - a0.at(k) - shift).norm());
    CHECK(err <= 1e-8);

    const auto verdict = check_condition_dagger(exterior_d(a0), 2.0);
    CHECK(verdict.l21 <= g->h());
    CHECK(verdict.eps_dagger == doctest::Approx(verdict.l2).epsilon(g->h()));
  }

  TEST_CASE("reconstruction, orthogonality and skew-Hermitian preservation") {
    for (int n : {65, 129}) {
      auto g = Grid::make(n);
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto w = smooth_form(g, seed);
        const auto hd = hodge_decompose(w);
        const double wn = l2_norm(w);
        CHECK(l2_norm(w - hd.exact_part() - hd.coexact_part() - hd.residual) <= 1e-13 * wn);
        CHECK(l2_norm(hd.residual) <= 10 * g->h() * wn);
        CHECK(std::abs(inner(hd.exact_part(), hd.coexact_part())) <= 10 * g->h() * wn * wn);
        CHECK(skew_hermitian_defect(hd.a) <= 1e-10);
        CHECK(skew_hermitian_defect(hd.b) <= 1e-10);
        CHECK(skew_hermitian_defect(hd.residual) <= 1e-10);
        for (int k : g->boundary_nodes()) CHECK(hd.b.at(k).norm() == 0.0);
        CHECK(hd.eps_dagger == doctest::Approx(hd.l2 + hd.l21).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("log log example is coexact") {
    auto g = Grid::make(129);
    const auto f = frehse_fields(g);
    const auto hd = hodge_decompose(f.omega);
    const double wn = l2_norm(f.omega);
    CHECK(l2_norm(hd.exact_part()) <= 1e-2 * wn);
    CHECK(l2_norm(hd.coexact_part() - f.omega) <= 0.1 * wn);
  }

  TEST_CASE("condition dagger") {
    auto g = Grid::make(65);
    const auto zero = check_condition_dagger(MatrixOneForm::zeros(g, 2), 1.0);
    CHECK(zero.satisfied);
    CHECK(zero.eps_dagger == 0.0);

    double last = 0.0;
    for (int n : {65, 129, 257}) {
      const auto v = check_condition_dagger(frehse_fields(Grid::make(n)).omega, 2.0);
      CHECK_FALSE(v.satisfied);
      CHECK(v.eps_dagger > last);
      last = v.eps_dagger;
    }
  }

  TEST_CASE("Wente closed forms") {
    auto g = Grid::make(129);
    const auto x = interior_sample(g, [](cplx z) { return cplx(z.real()); });
    const auto y = interior_sample(g, [](cplx z) { return cplx(z.imag()); });

    const auto same = wente_solve(x, x);
    CHECK(max_norm(same.phi, g->interior_nodes()) <= 1e-12);

    const auto s = wente_solve(x, y);
    CHECK(s.report.ratio == doctest::Approx(1.0 / (4.0 * std::numbers::pi)).epsilon(0.05));
    CHECK(wente_ratio(s) == s.report.ratio);
    const auto exact = interior_sample(g, [](cplx z) { return cplx((std::norm(z) - 1.0) / 4.0); });
    CHECK(max_diff(s.phi, exact) <= 0.02);
    CHECK(std::isfinite(s.report.grad_l21));
    CHECK(s.report.grad_l21 >= s.report.grad_l2);
  }

  TEST_CASE("Wente degenerate input") {
    auto g = Grid::make(65);
    const auto x = interior_sample(g, [](cplx z) { return cplx(z.real()); });
    const auto s = wente_solve(x, ScalarField(g, 1));
    CHECK(s.report.degenerate);
    CHECK(std::isnan(s.report.ratio));
    CHECK(l2_norm(s.phi) == 0.0);
    CHECK_THROWS_AS(wente_ratio(s), DegenerateInput);
  }

  TEST_CASE("Wente seeded ratios stay bounded") {
    auto g = Grid::make(65);
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto s = wente_solve(random_scalar(g, 2 * seed), random_scalar(g, 2 * seed + 1));
      CHECK(s.report.ratio <= 0.20);
    }
  }
}
