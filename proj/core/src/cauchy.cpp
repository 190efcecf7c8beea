#include "holoframe/cauchy.hpp"

#include <fftw3.h>

#include <array>
#include <cmath>
#include <numbers>

#include "holoframe/exterior.hpp"

namespace holo {

namespace {

// Mixed antiderivative of x / (x^2 + y^2).
double antiderivative(double x, double y) {
  const double r2 = x * x + y * y;
  double v = -2.0 * y;
  if (r2 > 0.0) v += y * std::log(r2);
  if (x != 0.0) v += 2.0 * x * std::atan(y / x);
  return 0.5 * v;
}

double corner_sum(double x1, double x2, double y1, double y2) {
  return antiderivative(x2, y2) - antiderivative(x1, y2) - antiderivative(x2, y1) +
         antiderivative(x1, y1);
}

// Fraction of the square cell of side h centred at z that lies in the unit disc.
double disc_fraction(cplx z, double h) {
  const double r = std::abs(z);
  const double reach = 0.5 * std::numbers::sqrt2 * h;
  if (r + reach <= 1.0) return 1.0;
  if (r - reach >= 1.0) return 0.0;
  constexpr int kSub = 32;
  int inside = 0;
  for (int b = 0; b < kSub; ++b)
    for (int a = 0; a < kSub; ++a) {
      const double x = z.real() + h * ((a + 0.5) / kSub - 0.5);
      const double y = z.imag() + h * ((b + 0.5) / kSub - 0.5);
      inside += x * x + y * y < 1.0;
    }
  return static_cast<double>(inside) / (kSub * kSub);
}

}  // namespace

cplx cauchy_cell_integral(double x1, double x2, double y1, double y2) {
  // 1/w = (x - i y) / |w|^2
  const double re = corner_sum(x1, x2, y1, y2);
  const double im = corner_sum(y1, y2, x1, x2);
  return cplx(re, -im) / std::numbers::pi;
}

struct CauchyTransform::Plan {
  int n = 0;
  int size = 0;  // padded side, 2n
  fftw_complex* buffer = nullptr;
  fftw_complex* kernel = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  // Source cells cut by the circle: node, disc fraction of its cell, and the
  // interior nodes whose mean supplies the value when the node is not interior.
  struct Source {
    int node;
    double fraction;
    std::vector<int> donors;
  };
  std::vector<Source> sources;

  ~Plan() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    if (buffer) fftw_free(buffer);
    if (kernel) fftw_free(kernel);
  }
};

CauchyTransform::CauchyTransform(GridPtr grid, CauchyKernel kernel)
    : grid_(std::move(grid)), kernel_(kernel), plan_(std::make_unique<Plan>()) {
  Plan& p = *plan_;
  p.n = grid_->n();
  p.size = 2 * p.n;
  const std::size_t total = static_cast<std::size_t>(p.size) * p.size;
  p.buffer = fftw_alloc_complex(total);
  p.kernel = fftw_alloc_complex(total);
  p.forward = fftw_plan_dft_2d(p.size, p.size, p.buffer, p.buffer, FFTW_FORWARD, FFTW_ESTIMATE);
  p.backward = fftw_plan_dft_2d(p.size, p.size, p.buffer, p.buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
  const double h = grid_->h();
  const double scale = 1.0 / static_cast<double>(total);

  if (kernel_ == CauchyKernel::Lattice) {
    // symbol of (D_x + i D_y)/2 on e^{i xi . k}: (i sin xi_1 - sin xi_2) / (2h)
    for (int b = 0; b < p.size; ++b) {
      for (int a = 0; a < p.size; ++a) {
        const double x1 = 2.0 * std::numbers::pi * a / p.size;
        const double x2 = 2.0 * std::numbers::pi * b / p.size;
        const cplx sigma = cplx(-std::sin(x2), std::sin(x1)) / (2.0 * h);
        const bool zero_mode = (a == 0 || 2 * a == p.size) && (b == 0 || 2 * b == p.size);
        const cplx v = zero_mode ? cplx{} : scale / sigma;
        const std::size_t idx = static_cast<std::size_t>(b) * p.size + a;
        p.kernel[idx][0] = v.real();
        p.kernel[idx][1] = v.imag();
      }
    }
    return;
  }

  // T f(z_k) = sum_l f_l K(z_k - z_l) with K(d) = (1/pi) \int_{cell(d)} dA / w,
  // cells weighted by the part inside the disc.
  const Grid& g = *grid_;
  for (int k = 0; k < g.size(); ++k) {
    const double frac = disc_fraction(g.z(k), h);
    if (frac == 0.0) continue;
    if (g.interior(k) && frac == 1.0) continue;
    Plan::Source src{k, frac, {}};
    if (g.interior(k)) {
      src.donors.push_back(k);
    } else {
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          const int i = g.col(k) + di, j = g.row(k) + dj;
          if (i < 0 || j < 0 || i >= p.n || j >= p.n) continue;
          if (g.interior(g.index(i, j))) src.donors.push_back(g.index(i, j));
        }
    }
    if (!src.donors.empty()) p.sources.push_back(std::move(src));
  }
  for (std::size_t e = 0; e < total; ++e) p.buffer[e][0] = p.buffer[e][1] = 0.0;
  for (int dj = -(p.n - 1); dj <= p.n - 1; ++dj) {
    for (int di = -(p.n - 1); di <= p.n - 1; ++di) {
      if (di == 0 && dj == 0) continue;
      const double cx = di * h, cy = dj * h;
      const cplx v = cauchy_cell_integral(cx - 0.5 * h, cx + 0.5 * h, cy - 0.5 * h, cy + 0.5 * h);
      const int a = (di + p.size) % p.size, b = (dj + p.size) % p.size;
      const std::size_t idx = static_cast<std::size_t>(b) * p.size + a;
      p.buffer[idx][0] = v.real();
      p.buffer[idx][1] = v.imag();
    }
  }
  fftw_execute(p.forward);
  for (std::size_t e = 0; e < total; ++e) {
    p.kernel[e][0] = p.buffer[e][0] * scale;
    p.kernel[e][1] = p.buffer[e][1] * scale;
  }
}

CauchyTransform::~CauchyTransform() = default;

MatrixField CauchyTransform::apply(const MatrixField& f) const {
  Plan& p = *plan_;
  const Grid& g = *grid_;
  const int block = f.block();
  const std::size_t total = static_cast<std::size_t>(p.size) * p.size;
  MatrixField out(grid_, f.m());
  for (int e = 0; e < block; ++e) {
    for (std::size_t t = 0; t < total; ++t) p.buffer[t][0] = p.buffer[t][1] = 0.0;
    bool any = false;
    for (int k : g.interior_nodes()) {
      const cplx v = f.raw()[static_cast<std::size_t>(k) * block + e];
      if (v == cplx{}) continue;
      any = true;
      const std::size_t idx = static_cast<std::size_t>(g.row(k)) * p.size + g.col(k);
      p.buffer[idx][0] = v.real();
      p.buffer[idx][1] = v.imag();
    }
    if (!any) continue;
    for (const auto& src : p.sources) {
      cplx v{};
      for (int d : src.donors) v += f.raw()[static_cast<std::size_t>(d) * block + e];
      v *= src.fraction / static_cast<double>(src.donors.size());
      const std::size_t idx = static_cast<std::size_t>(g.row(src.node)) * p.size + g.col(src.node);
      p.buffer[idx][0] = v.real();
      p.buffer[idx][1] = v.imag();
    }
    fftw_execute(p.forward);
    for (std::size_t t = 0; t < total; ++t) {
      const double ar = p.buffer[t][0], ai = p.buffer[t][1];
      const double br = p.kernel[t][0], bi = p.kernel[t][1];
      p.buffer[t][0] = ar * br - ai * bi;
      p.buffer[t][1] = ar * bi + ai * br;
    }
    fftw_execute(p.backward);
    // Zero modes of the periodic operator: dbar(T f) = f - sum_s c_s mode_s.
    // Each mode is restored with a closed-form preimage under central dbar:
    // 1 <- zbar, (-1)^i <- -2 (-1)^i x, (-1)^j <- 2i (-1)^j y,
    // (-1)^(i+j) <- -2 (-1)^(i+j) x.
    std::array<cplx, 4> c{};
    if (kernel_ == CauchyKernel::Lattice) {
      for (int k : g.interior_nodes()) {
        const cplx v = f.raw()[static_cast<std::size_t>(k) * block + e];
        const double si = (g.col(k) % 2) ? -1.0 : 1.0, sj = (g.row(k) % 2) ? -1.0 : 1.0;
        c[0] += v;
        c[1] += si * v;
        c[2] += sj * v;
        c[3] += si * sj * v;
      }
      for (cplx& x : c) x /= static_cast<double>(total);
    }
    for (int k : g.interior_nodes()) {
      const std::size_t idx = static_cast<std::size_t>(g.row(k)) * p.size + g.col(k);
      cplx v(p.buffer[idx][0], p.buffer[idx][1]);
      if (kernel_ == CauchyKernel::Lattice) {
        const double si = (g.col(k) % 2) ? -1.0 : 1.0, sj = (g.row(k) % 2) ? -1.0 : 1.0;
        const double x = g.x(k), y = g.y(k);
        v += c[0] * std::conj(g.z(k)) - 2.0 * c[1] * si * x + cplx(0.0, 2.0) * c[2] * sj * y -
             2.0 * c[3] * si * sj * x;
      }
      out.raw()[static_cast<std::size_t>(k) * block + e] = v;
    }
  }
  return out;
}

MatrixField cauchy_pompeiu(const MatrixField& f) { return CauchyTransform(f.grid_ptr()).apply(f); }

}  // namespace holo
