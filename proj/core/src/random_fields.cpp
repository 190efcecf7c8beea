#include "holoframe/random_fields.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "holoframe/linalg.hpp"

namespace holo {

namespace {

struct Mode {
  int kx, ky;
  double amplitude, phase;
};

std::vector<Mode> draw_modes(std::mt19937_64& rng, const BandLimitedOptions& opts) {
  std::uniform_int_distribution<int> wave(-opts.max_wavenumber, opts.max_wavenumber);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Mode> modes(static_cast<std::size_t>(std::max(opts.modes, 1)));
  for (auto& md : modes) {
    md.kx = wave(rng);
    md.ky = wave(rng);
    md.amplitude = unit(rng);
    md.phase = angle(rng);
  }
  return modes;
}

double cutoff(cplx z, double radius) {
  if (radius <= 0.0) return 1.0;
  const double s = std::norm(z) / (radius * radius);
  if (s >= 1.0) return 0.0;
  const double t = 1.0 - s;
  return t * t * t * t;
}

double evaluate(const std::vector<Mode>& modes, cplx z) {
  const double w = 0.5 * std::numbers::pi;
  double v = 0.0;
  for (const auto& md : modes) v += md.amplitude * std::cos(w * (md.kx * z.real() + md.ky * z.imag()) + md.phase);
  return v;
}

void fill_entry(MatrixField& f, int r, int c, cplx unit, std::mt19937_64& rng, const BandLimitedOptions& opts) {
  const auto modes = draw_modes(rng, opts);
  const Grid& g = f.grid();
  for (int k : g.interior_nodes()) f.at(k)(r, c) += unit * (evaluate(modes, g.z(k)) * cutoff(g.z(k), opts.bump_radius));
}

MatrixField raw_matrix(const GridPtr& grid, int m, std::mt19937_64& rng, const BandLimitedOptions& opts) {
  MatrixField f(grid, m);
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < m; ++r) {
      fill_entry(f, r, c, cplx(1.0, 0.0), rng, opts);
      fill_entry(f, r, c, cplx(0.0, 1.0), rng, opts);
    }
  return f;
}

void project_skew(MatrixField& f) {
  for (int k : f.grid().interior_nodes()) f.at(k) = skew_part(f.at(k));
}

}  // namespace

ScalarField random_scalar(const GridPtr& grid, std::uint64_t seed, const BandLimitedOptions& opts) {
  std::mt19937_64 rng(seed);
  ScalarField f(grid, 1);
  fill_entry(f, 0, 0, cplx(1.0, 0.0), rng, opts);
  return f;
}

MatrixField random_skew_hermitian(const GridPtr& grid, int m, std::uint64_t seed, const BandLimitedOptions& opts) {
  std::mt19937_64 rng(seed);
  MatrixField f = raw_matrix(grid, m, rng, opts);
  project_skew(f);
  return f;
}

MatrixField random_matrix(const GridPtr& grid, int m, std::uint64_t seed, const BandLimitedOptions& opts) {
  std::mt19937_64 rng(seed);
  return raw_matrix(grid, m, rng, opts);
}

MatrixOneForm random_connection(const GridPtr& grid, int m, std::uint64_t seed, const BandLimitedOptions& opts) {
  std::mt19937_64 rng(seed);
  MatrixOneForm w{raw_matrix(grid, m, rng, opts), raw_matrix(grid, m, rng, opts)};
  project_skew(w.cx);
  project_skew(w.cy);
  return w;
}

void normalize_l2(MatrixOneForm& w, double target) {
  const double n = l2_norm(w);
  if (n > 0.0) w *= cplx(target / n);
}

void normalize_l2(MatrixField& f, double target) {
  const double n = l2_norm(f);
  if (n > 0.0) f *= cplx(target / n);
}

}  // namespace holo
