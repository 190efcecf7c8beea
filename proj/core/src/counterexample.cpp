#include "holoframe/counterexample.hpp"

#include <cmath>
#include <numbers>

#include "holoframe/exterior.hpp"
#include "holoframe/gauge.hpp"
#include "holoframe/lorentz.hpp"

namespace holo {

FrehseFields frehse_fields(const GridPtr& g) {
  FrehseFields f{{VectorField(g, 2)},
                 MatrixOneForm::zeros(g, 2),
                 ScalarField(g, 1),
                 MatrixOneForm::zeros(g, 1),
                 -1};
  const cplx minus_i(0.0, -1.0);
  for (int k : g->interior_nodes()) {
    const cplx z = g->z(k);
    const double r = std::abs(z);
    if (r < 0.5 * g->h()) {
      f.origin_node = k;
      continue;
    }
    const double log_e_r = 1.0 - std::log(r);
    const cplx a = 1.0 / (z * log_e_r);
    f.alpha.c.at(k)(0) = a;
    f.alpha.c.at(k)(1) = minus_i * a;

    // *du = (y dx - x dy) / (r^2 log(e/r))
    const double c = 1.0 / (r * r * log_e_r);
    const double sx = c * z.imag(), sy = -c * z.real();
    f.star_du.cx[k] = sx;
    f.star_du.cy[k] = sy;
    auto wx = f.omega.cx.at(k), wy = f.omega.cy.at(k);
    wx(0, 1) = sx;
    wx(1, 0) = -sx;
    wy(0, 1) = sy;
    wy(1, 0) = -sy;
    f.u[k] = std::log(log_e_r);
  }
  return f;
}

double frehse_identification_defect(const FrehseFields& f) {
  const Grid& g = f.u.grid();
  Mat j(2, 2);
  j << 0.0, 1.0, -1.0, 0.0;
  double worst = 0.0;
  for (int k : g.interior_nodes()) {
    if (k == f.origin_node) continue;
    worst = std::max(worst, (Mat(f.omega.cx.at(k)) - f.star_du.cx[k] * j).cwiseAbs().maxCoeff());
    worst = std::max(worst, (Mat(f.omega.cy.at(k)) - f.star_du.cy[k] * j).cwiseAbs().maxCoeff());
  }
  return worst;
}

namespace {

SharpnessRow scan_row(int n, const SharpnessOptions& opts) {
  const GridPtr g = Grid::make(n);
  const FrehseFields f = frehse_fields(g);
  SharpnessRow row;
  row.n = n;
  row.h = g->h();
  row.exclusion_radius = opts.exclusion_layers * g->h();

  for (int k : g->interior_nodes())
    if (k != f.origin_node) row.sup_alpha = std::max(row.sup_alpha, f.alpha.c.at(k).norm());

  const auto annulus = g->region(2.0, opts.residual_radius - 1e-12);
  const MatrixField w01 = zbar_part(f.omega);
  const VectorField coupling = multiply(w01, f.alpha.c);
  VectorField res = dbar(f.alpha.c);
  for (std::size_t i = 0; i < res.raw().size(); ++i) res.raw()[i] += coupling.raw()[i];
  const double scale = l2_norm(coupling, annulus);
  row.residual = scale > 0.0 ? l2_norm(res, annulus) / scale : 0.0;

  const auto outside = g->region(2.0, row.exclusion_radius - 1e-12);
  const ScalarField mag = pointwise_norm(f.star_du);
  row.l21 = lorentz_norm(mag, 2.0, 1.0, outside);
  row.l2_15 = lorentz_norm(mag, 2.0, 1.5, outside);
  row.l22 = lorentz_norm(mag, 2.0, 2.0, outside);

  row.frame_outcome = "skipped";
  if (opts.attempt_frame) {
    try {
      build_holomorphic_frame(f.omega, opts.frame);
      row.frame_outcome = "none";
    } catch (const Error& e) {
      row.frame_outcome = e.name();
    }
  }
  return row;
}

}  // namespace

SharpnessReport sharpness_scan(const std::vector<int>& resolutions, const SharpnessOptions& opts) {
  if (resolutions.size() < 3) throw ConfigError("sharpness scan needs at least three resolutions");
  for (std::size_t i = 0; i < resolutions.size(); ++i) {
    if (resolutions[i] % 2 == 0) throw ConfigError("resolution " + std::to_string(resolutions[i]) + " is even");
    if (i > 0 && resolutions[i] <= resolutions[i - 1]) throw ConfigError("resolutions must increase");
  }
  SharpnessReport report;
  report.options = opts;
  for (int n : resolutions) report.rows.push_back(scan_row(n, opts));
  return report;
}

}  // namespace holo
