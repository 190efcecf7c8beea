#include <doctest.h>

#include <numbers>

#include "holoframe/cauchy.hpp"
#include "holoframe/counterexample.hpp"
#include "holoframe/errors.hpp"
#include "holoframe/exterior.hpp"
#include "holoframe/gauge.hpp"
#include "holoframe/harmonic.hpp"
#include "holoframe/linalg.hpp"
#include "holoframe/lorentz.hpp"
#include "holoframe/random_fields.hpp"
#include "support.hpp"

using namespace holo;
using holo::test::max_diff;
using holo::test::sample;

namespace {

const cplx I{0.0, 1.0};

Mat e11() {
  Mat e = Mat::Zero(2, 2);
  e(0, 0) = I;
  return e;
}

Mat generator() {
  Mat e(2, 2);
  e << cplx(0, 0.3), cplx(0.5, 0.2), cplx(-0.5, 0.2), cplx(0, -0.1);
  return e;
}

GaugeFrame unitary_frame(const GridPtr& g, const Mat& xi, const std::function<double(cplx)>& phase) {
  GaugeFrame p{MatrixField(g, static_cast<int>(xi.rows())), FrameKind::Unitary};
  for (int k = 0; k < g->size(); ++k) p.values.at(k) = expm_skew_hermitian(phase(g->z(k)) * xi);
  return p;
}

MatrixOneForm seeded_connection(const GridPtr& g, std::uint64_t seed, double norm) {
  auto w = random_connection(g, 2, seed);
  normalize_l2(w, norm);
  return w;
}

MatrixField constant_alpha(const GridPtr& g, int m, cplx c) {
  MatrixField a(g, m);
  for (int k : g->interior_nodes()) a.at(k) = c * Mat::Identity(m, m);
  return a;
}

MapField stereographic(const GridPtr& g, double scale) {
  return MapField::sample(g, 3, Target::sphere(), [scale](cplx z, double* o) { inverse_stereographic(z, o, scale); });
}

}  // namespace

TEST_SUITE("gauge") {
  TEST_CASE("transform_connection with trivial and constant frames") {
    auto g = Grid::make(65);
    const auto w = seeded_connection(g, 1, 0.5);
    const auto same = transform_connection(GaugeFrame::identity(g, 2), w);
    CHECK(max_diff(same.cx, w.cx) <= 1e-15);
    CHECK(max_diff(same.cy, w.cy) <= 1e-15);

    const Mat u = expm_skew_hermitian(generator());
    const auto c = transform_connection(unitary_frame(g, generator(), [](cplx) { return 1.0; }), w);
    for (int k : g->interior_nodes()) {
      CHECK((c.cx.at(k) - u.adjoint() * w.cx.at(k) * u).norm() <= 1e-14);
      CHECK((c.cy.at(k) - u.adjoint() * w.cy.at(k) * u).norm() <= 1e-14);
    }
    CHECK(skew_hermitian_defect(c) <= 1e-14);
  }

  TEST_CASE("transform_connection rejects singular frames") {
    auto g = Grid::make(33);
    GaugeFrame p = GaugeFrame::identity(g, 2, FrameKind::Invertible);
    p.values.at(g->interior_nodes()[5]) = Mat::Zero(2, 2);
    CHECK_THROWS_AS(transform_connection(p, seeded_connection(g, 2, 0.5)), SingularFrame);
  }

  TEST_CASE("gauge covariance is second order") {
    double prev = 0.0;
    for (int n : {65, 129}) {
      auto g = Grid::make(n);
      const auto w = seeded_connection(g, 4, 0.5);
      const auto p0 = unitary_frame(g, e11(), [](cplx z) { return z.real(); });
      const auto p1 = unitary_frame(g, generator(), [](cplx z) { return z.imag() + z.real() * z.real(); });
      const GaugeFrame p01{multiply(p0.values, p1.values), FrameKind::Unitary};
      const auto a = transform_connection(p01, w);
      const auto b = transform_connection(p1, transform_connection(p0, w));
      const double defect = l2_norm(a - b);
      // C = 1.5 frozen from n=65
      CHECK(defect <= 1.5 * g->h() * g->h());
      if (prev > 0.0) CHECK(prev / defect >= 3.5);
      prev = defect;
    }
  }

  TEST_CASE("energy identity") {
    auto g = Grid::make(65);
    const auto w = seeded_connection(g, 4, 0.5);
    const auto gen = unitary_frame(g, generator(), [](cplx z) { return z.imag() + z.real() * z.real(); });
    const Mat u = expm_skew_hermitian(e11() + 0.4 * generator());
    const GaugeFrame ug{multiply(sample(g, u, [](cplx) { return cplx(1.0); }), gen.values), FrameKind::Unitary};
    MatrixOneForm wu{MatrixField(g, 2), MatrixField(g, 2)};
    for (int k = 0; k < g->size(); ++k) {
      wu.cx.at(k) = u.adjoint() * w.cx.at(k) * u;
      wu.cy.at(k) = u.adjoint() * w.cy.at(k) * u;
    }
    const double e = coulomb_energy(ug.values, w);
    CHECK(e == doctest::Approx(coulomb_energy(gen.values, wu)).epsilon(1e-12));

    // against the nodal norm of w_P the link energy differs at first order
    double prev = 0.0;
    for (int n : {65, 129}) {
      auto gn = Grid::make(n);
      const auto wn = seeded_connection(gn, 4, 0.5);
      const auto p = unitary_frame(gn, generator(), [](cplx z) { return z.imag() + z.real() * z.real(); });
      const double nodal = std::pow(l2_norm(transform_connection(p, wn)), 2);
      const double gap = std::abs(coulomb_energy(p.values, wn) - nodal) / nodal;
      CHECK(gap <= 3.0 * gn->h());
      if (prev > 0.0) CHECK(prev / gap >= 1.8);
      prev = gap;
    }
  }

  TEST_CASE("Coulomb gauge of zero") {
    auto g = Grid::make(65);
    const auto r = coulomb_gauge(MatrixOneForm::zeros(g, 2));
    CHECK(max_diff(r.p.values, MatrixField::identity(g, 2)) == 0.0);
    CHECK(l2_norm(r.eta) == 0.0);
    CHECK(r.energy_history.back() == 0.0);
  }

  TEST_CASE("Coulomb gauge of a flat connection") {
    auto g = Grid::make(65);
    const auto p0 = unitary_frame(g, e11(), [](cplx z) { return z.real(); });
    const auto dp = exterior_d(p0.values);
    const MatrixOneForm flat{(-1.0) * multiply(dp.cx, adjoint(p0.values)),
                             (-1.0) * multiply(dp.cy, adjoint(p0.values))};
    const auto r = coulomb_gauge(flat);
    CHECK(r.energy_history.back() <= 1e-6 * std::pow(l2_norm(flat), 2));
  }

  TEST_CASE("Coulomb gauge of seeded connections") {
    for (int n : {65, 129}) {
      auto g = Grid::make(n);
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto w = seeded_connection(g, seed, 0.5);
        const double wn = l2_norm(w);
        const auto r = coulomb_gauge(w);
        CHECK(r.residual <= 1e-4 * wn);
        for (std::size_t i = 1; i < r.energy_history.size(); ++i)
          CHECK(r.energy_history[i] <= r.energy_history[i - 1]);
        CHECK(r.energy_history.back() <= wn * wn);
        CHECK(r.p.max_unitarity_defect() <= 1e-8);
        CHECK(l2_norm(exterior_d(r.p.values)) <= 2 * wn * (1 + 10 * g->h()));
        CHECK(skew_hermitian_defect(r.eta) <= 1e-10);
      }
    }
  }

  TEST_CASE("Coulomb gauge stalls when starved of iterations") {
    auto g = Grid::make(65);
    CoulombOptions o;
    o.max_iterations = 1;
    o.tol = 1e-12;
    CHECK_THROWS_AS(coulomb_gauge(seeded_connection(g, 1, 0.5), o), Stalled);
  }

  TEST_CASE("Cauchy transform inverts dbar") {
    for (int n : {65, 129}) {
      auto g = Grid::make(n);
      const auto margin = g->margin(4);
      for (auto kernel : {CauchyKernel::Lattice, CauchyKernel::CellIntegrated}) {
        CauchyTransform t(g, kernel);
        const double tol_cp = kernel == CauchyKernel::Lattice ? 1e-12 : 3e-5;
        CHECK(l2_norm(t.apply(ScalarField(g, 1))) == 0.0);
        ScalarField one(g, 1), z(g, 1);
        for (int k : g->interior_nodes()) {
          one[k] = 1.0;
          z[k] = g->z(k);
        }
        const auto u = t.apply(one);
        CHECK(l2_norm(dbar(u) - one, margin) <= tol_cp * l2_norm(one));
        ScalarField hol = u;
        for (int k = 0; k < g->size(); ++k) hol[k] -= std::conj(g->z(k));
        CHECK(l2_norm(dbar(hol), margin) <= tol_cp * l2_norm(one));
        CHECK(l2_norm(dbar(t.apply(z)) - z, margin) <= tol_cp * l2_norm(z));

        const auto a = random_matrix(g, 2, 1), b = random_matrix(g, 2, 2);
        CHECK(l2_norm(t.apply(2.0 * a - b) - (2.0 * t.apply(a) - t.apply(b))) <= 1e-12 * l2_norm(t.apply(a)));
      }
    }
  }

  TEST_CASE("holomorphic gauge of zero") {
    auto g = Grid::make(65);
    const auto r = holomorphic_gauge(MatrixField(g, 2));
    CHECK(max_diff(r.q.values, MatrixField::identity(g, 2)) == 0.0);
  }

  TEST_CASE("holomorphic gauge of a constant connection") {
    auto g = Grid::make(129);
    const auto alpha = constant_alpha(g, 2, 0.1);
    const auto r = holomorphic_gauge(alpha);
    CHECK(r.residual <= 1e-5 * r.alpha_norm);
    CHECK(r.q.max_dist_unitary() <= 1.0 / 3.0);
    CHECK(r.rate <= 0.9);
    // exp(0.1 zbar) Q is holomorphic
    MatrixField e(g, 2);
    for (int k = 0; k < g->size(); ++k) e.at(k) = std::exp(0.1 * std::conj(g->z(k))) * r.q.values.at(k);
    const auto u = g->margin(8);
    CHECK(l2_norm(dbar(e), u) <= 1e-4 * l2_norm(e, u));
  }

  TEST_CASE("holomorphic gauge of small seeded connections") {
    auto g = Grid::make(129);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      auto a = random_matrix(g, 2, seed, BandLimitedOptions{.bump_radius = 0.8});
      a *= 0.1 / lorentz_norm(a, 2, 1);
      const auto r = holomorphic_gauge(a);
      CHECK(r.residual <= 1e-5 * r.alpha_norm);
      CHECK(r.q.max_dist_unitary() <= 1.0 / 3.0);
      CHECK(r.rate <= 0.9);
      for (std::size_t i = 1; i < r.gaps.size(); ++i) CHECK(r.gaps[i] <= 0.9 * r.gaps[i - 1]);
    }
  }

  TEST_CASE("holomorphic gauge fails to contract for large connections") {
    auto g = Grid::make(65);
    const double c = 10.0 / (2.0 * std::sqrt(std::numbers::pi));
    CHECK_THROWS_AS(holomorphic_gauge(constant_alpha(g, 1, c)), NoContraction);
    CHECK_THROWS_AS(holomorphic_gauge(constant_alpha(g, 2, 3.0)), NoContraction);
  }

  TEST_CASE("frame of zero is the identity") {
    auto g = Grid::make(65);
    const auto f = build_holomorphic_frame(MatrixOneForm::zeros(g, 2));
    CHECK(max_diff(f.s.values, MatrixField::identity(g, 2)) <= 1e-15);
    CHECK(f.report.residual == 0.0);
  }

  TEST_CASE("frame of a harmonic-map connection") {
    auto g = Grid::make(129);
    const auto w = riviere_connection(stereographic(g, 0.1));
    for (auto route : {AlphaRoute::Direct, AlphaRoute::Wente}) {
      FrameOptions fo;
      fo.route = route;
      const auto f = build_holomorphic_frame(w, fo);
      const auto& r = f.report;
      CHECK(r.dist_unitary <= 1.0 / 3.0);
      CHECK(f.p.max_unitarity_defect() <= 1e-8);
      CHECK(f.q.max_dist_unitary() <= 1.0 / 3.0);
      CHECK(max_diff(f.s.values, multiply(f.p.values, f.q.values)) <= 1e-12);
      CHECK(std::isfinite(r.c_report));
      CHECK(r.route_gap <= 0.05);
      CHECK(r.relative_residual <= (route == AlphaRoute::Direct ? 1e-5 : 1e-3));
    }
  }

  TEST_CASE("frame construction rejects the log log example") {
    auto g = Grid::make(65);
    CHECK_THROWS_AS(build_holomorphic_frame(frehse_fields(g).omega), ConditionDaggerViolated);
  }

  TEST_CASE("regularity with a trivial connection") {
    auto g = Grid::make(65);
    VectorOneForm10 a{VectorField(g, 2)};
    for (int k : g->interior_nodes()) a.c.at(k)(0) = 1.0;
    const auto r = dbar_regularity_solve(a, MatrixOneForm::zeros(g, 2));
    double err = 0.0;
    for (int k : g->interior_nodes()) err = std::max(err, (r.h.c.at(k) - a.c.at(k)).norm());
    CHECK(err <= 1e-14);
    CHECK(r.report.dbar_h <= 1e-14);
  }

  TEST_CASE("regularity of a harmonic map") {
    for (int n : {65, 129}) {
      auto g = Grid::make(n);
      const auto u = stereographic(g, 0.1);
      const auto r = dbar_regularity_solve(partial_z(u), riviere_connection(u));
      CHECK(r.report.input_residual <= 1e-4);
      CHECK(r.report.dbar_h <= 1e-4);
      CHECK(r.report.hardy_ratio >= 1.0 - 1e-12);
      CHECK(r.report.hardy_ratio <= 1.5);
    }
  }

  TEST_CASE("regularity rejects open inputs and the log log pair") {
    auto g = Grid::make(65);
    const auto u = stereographic(g, 0.1);
    VectorOneForm10 noise{VectorField(g, 3)};
    for (int k : g->interior_nodes()) noise.c.at(k)(0) = std::sin(7.0 * g->x(k)) * std::cos(5.0 * g->y(k));
    CHECK_THROWS_AS(dbar_regularity_solve(noise, riviere_connection(u)), InputNotClosed);

    const auto f = frehse_fields(g);
    CHECK_THROWS_AS(dbar_regularity_solve(f.alpha, f.omega), ConditionDaggerViolated);
  }
}
