#include "holoframe/harmonic.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "holoframe/exterior.hpp"

namespace holo {

// ---- targets and map fields ----

void Target::project(double* p, int m) const {
  if (kind == Kind::Euclidean) return;
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += p[i] * p[i];
  s = std::sqrt(s);
  if (s == 0.0) throw NotOnTarget("cannot project the origin onto the sphere");
  for (int i = 0; i < m; ++i) p[i] *= radius / s;
}

MapField::MapField(GridPtr grid, int m, Target target)
    : grid_(std::move(grid)), m_(m), target_(target), data_(static_cast<std::size_t>(grid_->size()) * m, 0.0) {}

MapField MapField::sample(GridPtr grid, int m, Target target, const std::function<void(cplx, double*)>& f) {
  MapField u(std::move(grid), m, target);
  for (int k : u.grid().interior_nodes()) f(u.grid().z(k), u.at(k));
  return u;
}

double MapField::target_defect() const {
  if (target_.kind == Target::Kind::Euclidean) return 0.0;
  double worst = 0.0;
  for (int k : grid_->interior_nodes()) {
    double s = 0.0;
    for (int i = 0; i < m_; ++i) s += at(k)[i] * at(k)[i];
    worst = std::max(worst, std::abs(std::sqrt(s) - target_.radius));
  }
  return worst;
}

void MapField::require_on_target(double tol) const {
  const double d = target_defect();
  if (d > tol) throw NotOnTarget("map leaves the sphere by " + std::to_string(d));
}

ScalarField MapField::component(int i) const {
  ScalarField f(grid_, 1);
  for (int k : grid_->interior_nodes()) f[k] = at(k)[i];
  return f;
}

void inverse_stereographic(cplx z, double* out, double scale) {
  const cplx w = scale * z;
  const double r2 = std::norm(w);
  out[0] = 2.0 * w.real() / (1.0 + r2);
  out[1] = 2.0 * w.imag() / (1.0 + r2);
  out[2] = (1.0 - r2) / (1.0 + r2);
}

MapTrace stereographic_trace(double scale) {
  return [scale](cplx z, double* out) { inverse_stereographic(z, out, scale); };
}

MapTrace perturbed_trace(MapTrace base, int m, Target target, std::uint64_t seed, double amplitude) {
  constexpr int kDegree = 4;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> coef(static_cast<std::size_t>(m) * 2 * kDegree);
  for (auto& c : coef) c = unit(rng) / (2.0 * kDegree);
  return [=](cplx z, double* out) {
    base(z, out);
    const double theta = std::arg(z);
    for (int i = 0; i < m; ++i) {
      double p = 0.0;
      for (int f = 0; f < kDegree; ++f) {
        p += coef[(static_cast<std::size_t>(i) * kDegree + f) * 2] * std::cos((f + 1) * theta);
        p += coef[(static_cast<std::size_t>(i) * kDegree + f) * 2 + 1] * std::sin((f + 1) * theta);
      }
      out[i] += amplitude * p;
    }
    target.project(out, m);
  };
}

namespace {

using Real = std::vector<double>;

// Derivative of every component along one axis with the node stencils.
Real derivative(const Grid& g, const Real& u, int m, bool y_axis) {
  Real out(u.size(), 0.0);
  for (int k : g.interior_nodes()) {
    const Stencil& s = y_axis ? g.dy(k) : g.dx(k);
    for (int a = 0; a < s.taps; ++a)
      for (int i = 0; i < m; ++i) out[static_cast<std::size_t>(k) * m + i] += s.weight[a] * u[static_cast<std::size_t>(s.node[a]) * m + i];
  }
  return out;
}

struct Gradient {
  Real ux, uy;
};

Gradient gradient(const MapField& u) {
  return {derivative(u.grid(), u.raw(), u.m(), false), derivative(u.grid(), u.raw(), u.m(), true)};
}

double dot(const double* a, const double* b, int m) {
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += a[i] * b[i];
  return s;
}

double inv_r2(const Target& t) { return t.kind == Target::Kind::Sphere ? 1.0 / (t.radius * t.radius) : 0.0; }

// Effective boundary value of every Dirichlet link, m values per link.
struct BoundaryData {
  std::vector<std::array<int, 2>> links;  // node, link slot
  Real value;
};

BoundaryData boundary_data(const Grid& g, int m, const MapTrace& trace) {
  BoundaryData b;
  Real p0(m), p1(m);
  for (int k : g.interior_nodes()) {
    const auto& ls = g.links(k);
    for (int s = 0; s < 4; ++s) {
      const auto& l = ls[s];
      if (l.neighbor >= 0) continue;
      b.links.push_back({k, s});
      trace(l.point[0], p0.data());
      if (l.data_weight[1] != 0.0) trace(l.point[1], p1.data());
      for (int i = 0; i < m; ++i) {
        double v = l.data_weight[0] * p0[i];
        if (l.data_weight[1] != 0.0) v += l.data_weight[1] * p1[i];
        b.value.push_back(v / l.weight);
      }
    }
  }
  return b;
}

double link_energy(const Grid& g, const Real& u, int m, const BoundaryData& b) {
  long double e = 0.0L;
  for (int k : g.interior_nodes()) {
    const auto& ls = g.links(k);
    for (int s : {0, 2}) {
      const int j = ls[s].neighbor;
      if (j < 0) continue;
      for (int i = 0; i < m; ++i) {
        const double d = u[static_cast<std::size_t>(j) * m + i] - u[static_cast<std::size_t>(k) * m + i];
        e += 0.5 * d * d;
      }
    }
  }
  for (std::size_t l = 0; l < b.links.size(); ++l) {
    const auto [k, s] = b.links[l];
    const double w = g.links(k)[s].weight;
    for (int i = 0; i < m; ++i) {
      const double d = u[static_cast<std::size_t>(k) * m + i] - b.value[l * m + i];
      e += 0.5 * w * d * d;
    }
  }
  return static_cast<double>(e);
}

// h^2 Delta_h u including the boundary data.
Real scaled_laplacian(const Grid& g, const Real& u, int m, const BoundaryData& b) {
  Real out(u.size(), 0.0);
  for (int k : g.interior_nodes()) {
    for (const auto& l : g.links(k)) {
      if (l.neighbor < 0) continue;
      for (int i = 0; i < m; ++i)
        out[static_cast<std::size_t>(k) * m + i] +=
            u[static_cast<std::size_t>(l.neighbor) * m + i] - u[static_cast<std::size_t>(k) * m + i];
    }
  }
  for (std::size_t l = 0; l < b.links.size(); ++l) {
    const auto [k, s] = b.links[l];
    const double w = g.links(k)[s].weight;
    for (int i = 0; i < m; ++i)
      out[static_cast<std::size_t>(k) * m + i] += w * (b.value[l * m + i] - u[static_cast<std::size_t>(k) * m + i]);
  }
  return out;
}

double tangential_norm(const Grid& g, const Real& lap, const Real& u, int m, const Target& t) {
  double s = 0.0;
  const double ih2 = 1.0 / g.cell_area();
  for (int k : g.interior_nodes()) {
    const double* v = lap.data() + static_cast<std::size_t>(k) * m;
    const double* p = u.data() + static_cast<std::size_t>(k) * m;
    const double normal = t.kind == Target::Kind::Sphere ? dot(v, p, m) * inv_r2(t) : 0.0;
    for (int i = 0; i < m; ++i) {
      const double c = (v[i] - normal * p[i]) * ih2;
      s += c * c;
    }
  }
  return std::sqrt(s * g.cell_area());
}

class ImplicitStep {
 public:
  ImplicitStep(const Grid& g, double tau) : slot_(g.size(), -1), nodes_(g.interior_nodes()) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) slot_[nodes_[i]] = static_cast<int>(i);
    const double c = tau / g.cell_area();
    std::vector<Eigen::Triplet<double>> trip;
    for (int k : nodes_) {
      double diag = 1.0;
      for (const auto& l : g.links(k)) {
        if (l.neighbor >= 0) {
          diag += c;
          trip.emplace_back(slot_[k], slot_[l.neighbor], -c);
        } else {
          diag += c * l.weight;
        }
      }
      trip.emplace_back(slot_[k], slot_[k], diag);
    }
    const int n = static_cast<int>(nodes_.size());
    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(trip.begin(), trip.end());
    solver_.compute(a);
  }

  // Solves (I - tau Delta_h) v = rhs for the homogeneous operator.
  void solve(Real& v, int m) const {
    const int n = static_cast<int>(nodes_.size());
    Eigen::MatrixXd b(n, m);
    for (int r = 0; r < n; ++r)
      for (int i = 0; i < m; ++i) b(r, i) = v[static_cast<std::size_t>(nodes_[r]) * m + i];
    const Eigen::MatrixXd x = solver_.solve(b);
    for (int r = 0; r < n; ++r)
      for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(nodes_[r]) * m + i] = x(r, i);
  }

 private:
  std::vector<int> slot_;
  std::span<const int> nodes_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> solver_;
};

void l1_accumulate(double& acc, const Grid& g, double v) { acc += g.cell_area() * v; }

std::vector<int> default_nodes(const Grid& g, std::span<const int> nodes) {
  if (!nodes.empty()) return {nodes.begin(), nodes.end()};
  auto all = g.interior_nodes();
  return {all.begin(), all.end()};
}

}  // namespace

double dirichlet_energy(const MapField& u, const MapTrace& trace) {
  const BoundaryData b = boundary_data(u.grid(), u.m(), trace);
  return link_energy(u.grid(), u.raw(), u.m(), b);
}

double dirichlet_energy(const MapField& u) {
  const Gradient d = gradient(u);
  double e = 0.0;
  for (std::size_t i = 0; i < d.ux.size(); ++i) e += d.ux[i] * d.ux[i] + d.uy[i] * d.uy[i];
  return 0.5 * e * u.grid().cell_area();
}

RelaxResult harmonic_relax(const MapField& u0, const MapTrace& boundary, const RelaxOptions& opts) {
  const Grid& g = u0.grid();
  const int m = u0.m();
  const Target target = u0.target();
  u0.require_on_target();
  const BoundaryData data = boundary_data(g, m, boundary);
  if (target.kind == Target::Kind::Sphere) {
    Real p(m);
    for (const auto& [k, s] : data.links) {
      boundary(g.links(k)[s].point[0], p.data());
      const double defect = std::abs(std::sqrt(dot(p.data(), p.data(), m)) - target.radius);
      if (defect > 1e-8) throw NotOnTarget("boundary trace leaves the sphere by " + std::to_string(defect));
    }
  }

  RelaxResult res;
  res.u = u0;
  Real& u = res.u.raw();
  const double h = g.h();
  const double base_tau = opts.semi_implicit ? opts.implicit_dt * h : opts.dt * h * h;
  double tau = base_tau;
  double energy = link_energy(g, u, m, data);
  Real lap = scaled_laplacian(g, u, m, data);
  double residual = tangential_norm(g, lap, u, m, target);
  res.energy_history.push_back(energy);
  res.tension_history.push_back(residual);

  std::unique_ptr<ImplicitStep> implicit;
  if (opts.semi_implicit) implicit = std::make_unique<ImplicitStep>(g, tau);
  const double ih2 = 1.0 / (h * h);
  const double k2 = inv_r2(target);

  while (residual > opts.tol && res.steps < opts.max_steps) {
    // The normal force uses |grad u|^2 = -<Delta_h u, u> / r^2 so that
    // discrete harmonic maps are exact fixed points.
    Real v = u;
    for (int k : g.interior_nodes()) {
      const std::size_t b = static_cast<std::size_t>(k) * m;
      const double grad2 = -dot(lap.data() + b, u.data() + b, m) * ih2;
      for (int i = 0; i < m; ++i) v[b + i] += tau * grad2 * k2 * u[b + i];
    }
    if (opts.semi_implicit) {
      for (std::size_t l = 0; l < data.links.size(); ++l) {
        const auto [k, s] = data.links[l];
        const double w = g.links(k)[s].weight;
        for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(k) * m + i] += tau * ih2 * w * data.value[l * m + i];
      }
      implicit->solve(v, m);
    } else {
      for (int k : g.interior_nodes())
        for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(k) * m + i] += tau * ih2 * lap[static_cast<std::size_t>(k) * m + i];
    }
    for (int k : g.interior_nodes()) target.project(v.data() + static_cast<std::size_t>(k) * m, m);

    const double trial = link_energy(g, v, m, data);
    if (trial > energy) {
      ++res.rejected;
      tau *= 0.5;
      if (tau < opts.min_dt_fraction * base_tau) throw Stalled(energy, residual);
      if (opts.semi_implicit) implicit = std::make_unique<ImplicitStep>(g, tau);
      continue;
    }
    u.swap(v);
    energy = trial;
    lap = scaled_laplacian(g, u, m, data);
    residual = tangential_norm(g, lap, u, m, target);
    ++res.steps;
    res.energy_history.push_back(energy);
    res.tension_history.push_back(residual);
  }
  res.energy = energy;
  res.tension_residual = residual;
  return res;
}

TensionField tension(const MapField& u) {
  u.require_on_target();
  const Grid& g = u.grid();
  const int m = u.m();
  const Gradient d = gradient(u);
  const Real uxx = derivative(g, d.ux, m, false);
  const Real uyy = derivative(g, d.uy, m, true);
  const double k2 = inv_r2(u.target());
  TensionField t;
  t.full.assign(u.raw().size(), 0.0);
  t.tangential.assign(u.raw().size(), 0.0);
  double s = 0.0, st = 0.0;
  for (int k : g.interior_nodes()) {
    const std::size_t b = static_cast<std::size_t>(k) * m;
    const double* p = u.at(k);
    const double grad2 = dot(d.ux.data() + b, d.ux.data() + b, m) + dot(d.uy.data() + b, d.uy.data() + b, m);
    for (int i = 0; i < m; ++i) t.full[b + i] = -(uxx[b + i] + uyy[b + i]) - grad2 * k2 * p[i];
    const double normal = dot(t.full.data() + b, p, m) * k2;
    for (int i = 0; i < m; ++i) {
      t.tangential[b + i] = t.full[b + i] - normal * p[i];
      s += t.full[b + i] * t.full[b + i];
      st += t.tangential[b + i] * t.tangential[b + i];
    }
  }
  t.l2 = std::sqrt(s * g.cell_area());
  t.tangential_l2 = std::sqrt(st * g.cell_area());
  return t;
}

MatrixOneForm riviere_connection(const MapField& u) {
  u.require_on_target();
  const Grid& g = u.grid();
  const int m = u.m();
  const Gradient d = gradient(u);
  const double k2 = inv_r2(u.target());
  MatrixOneForm w = MatrixOneForm::zeros(u.grid_ptr(), m);
  for (int k : g.interior_nodes()) {
    const std::size_t b = static_cast<std::size_t>(k) * m;
    const double* p = u.at(k);
    auto cx = w.cx.at(k);
    auto cy = w.cy.at(k);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        cx(i, j) = k2 * (p[i] * d.ux[b + j] - p[j] * d.ux[b + i]);
        cy(i, j) = k2 * (p[i] * d.uy[b + j] - p[j] * d.uy[b + i]);
      }
  }
  return w;
}

VectorOneForm10 partial_z(const MapField& u) {
  const Gradient d = gradient(u);
  VectorOneForm10 a{VectorField(u.grid_ptr(), u.m())};
  for (std::size_t i = 0; i < d.ux.size(); ++i) a.c.raw()[i] = 0.5 * cplx(d.ux[i], -d.uy[i]);
  return a;
}

ConnectionResiduals connection_residuals(const MapField& u, const MatrixOneForm& w, std::span<const int> nodes) {
  const Grid& g = u.grid();
  const int m = u.m();
  if (w.m() != m) throw DimensionMismatch("connection and map differ in dimension");
  const Gradient d = gradient(u);
  const Real uxy = derivative(g, d.uy, m, false);
  const Real uyx = derivative(g, d.ux, m, true);
  const Real uxx = derivative(g, d.ux, m, false);
  const Real uyy = derivative(g, d.uy, m, true);
  const VectorOneForm10 uz = partial_z(u);
  const VectorField dbar_uz = dbar(uz.c);
  const MatrixField w01 = zbar_part(w);

  ConnectionResiduals r;
  for (int k : default_nodes(g, nodes)) {
    const std::size_t b = static_cast<std::size_t>(k) * m;
    Eigen::Map<const Eigen::VectorXd> ux(d.ux.data() + b, m), uy(d.uy.data() + b, m);
    const Eigen::MatrixXd wx = w.cx.at(k).real(), wy = w.cy.at(k).real();
    Eigen::VectorXd curl(m), div(m);
    for (int i = 0; i < m; ++i) {
      curl[i] = uxy[b + i] - uyx[b + i];
      div[i] = -(uxx[b + i] + uyy[b + i]);
    }
    const Eigen::VectorXd dw = curl + wx * uy - wy * ux;
    const Eigen::VectorXd ds = div - (wx * ux + wy * uy);
    const Vec db = dbar_uz.at(k) + w01.at(k) * uz.c.at(k);
    l1_accumulate(r.d_omega, g, dw.norm());
    l1_accumulate(r.dstar_omega, g, ds.norm());
    l1_accumulate(r.dbar_omega, g, db.norm());
  }
  for (std::size_t i = 0; i < d.ux.size(); ++i) r.grad_sq += (d.ux[i] * d.ux[i] + d.uy[i] * d.uy[i]) * g.cell_area();
  return r;
}

HopfDifferential hopf_differential(const MapField& u) {
  const Grid& g = u.grid();
  const int m = u.m();
  const VectorOneForm10 uz = partial_z(u);
  HopfDifferential hd;
  hd.phi = ScalarField(u.grid_ptr(), 1);
  for (int k : g.interior_nodes()) hd.phi[k] = uz.c.at(k).transpose() * uz.c.at(k);
  const ScalarField db = dbar(hd.phi);
  hd.residual = l1_norm(db, g.interior_nodes());
  hd.residual_margin = l1_norm(db, g.margin(4));
  (void)m;
  return hd;
}

PmcReport pmc_diagnostics(const ImmersionData& data) {
  const MapField& u = data.u;
  const Grid& g = u.grid();
  const int m = u.m();
  if (data.H.size() != u.raw().size()) throw DimensionMismatch("mean curvature and map differ in size");
  const Gradient d = gradient(u);

  PmcReport rep;
  for (int k : g.interior_nodes()) {
    const std::size_t b = static_cast<std::size_t>(k) * m;
    const double xx = dot(d.ux.data() + b, d.ux.data() + b, m);
    const double yy = dot(d.uy.data() + b, d.uy.data() + b, m);
    const double xy = dot(d.ux.data() + b, d.uy.data() + b, m);
    const double rho2 = 0.5 * (xx + yy);
    if (rho2 <= 0.0) continue;
    rep.conformality = std::max(rep.conformality, std::max(std::abs(xx - yy), std::abs(xy)) / rho2);
  }
  if (rep.conformality > data.tol_conf)
    throw ConformalityViolated("conformality defect " + std::to_string(rep.conformality) + " exceeds " +
                               std::to_string(data.tol_conf));

  rep.omega_h = MatrixOneForm::zeros(u.grid_ptr(), m);
  MatrixField target(u.grid_ptr(), m);
  for (int k : g.interior_nodes()) {
    const std::size_t b = static_cast<std::size_t>(k) * m;
    const double* hv = data.H.data() + b;
    const double h2 = dot(hv, hv, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        rep.omega_h.cx.at(k)(i, j) = hv[i] * d.ux[b + j] - hv[j] * d.ux[b + i];
        rep.omega_h.cy.at(k)(i, j) = hv[i] * d.uy[b + j] - hv[j] * d.uy[b + i];
        target.at(k)(i, j) = 2.0 * h2 * (d.ux[b + i] * d.uy[b + j] - d.uy[b + i] * d.ux[b + j]);
      }
  }
  for (std::size_t i = 0; i < d.ux.size(); ++i) rep.grad_sq += (d.ux[i] * d.ux[i] + d.uy[i] * d.uy[i]) * g.cell_area();
  if (rep.grad_sq == 0.0) return rep;

  const MatrixField curl = exterior_d(rep.omega_h).c - target;
  const MatrixField div = -1.0 * (partial_x(rep.omega_h.cx) + partial_y(rep.omega_h.cy));
  rep.r1 = l2_norm(curl) / rep.grad_sq;
  rep.r2 = l2_norm(div) / rep.grad_sq;

  const VectorOneForm10 uz = partial_z(u);
  const VectorField dbar_uz = dbar(uz.c);
  const MatrixField w01 = zbar_part(rep.omega_h);
  const Real uxx = derivative(g, d.ux, m, false);
  const Real uyy = derivative(g, d.uy, m, true);
  double s3 = 0.0, st = 0.0;
  for (int k : g.interior_nodes()) {
    const std::size_t b = static_cast<std::size_t>(k) * m;
    s3 += (dbar_uz.at(k) + w01.at(k) * uz.c.at(k)).squaredNorm();
    const double grad2 = dot(d.ux.data() + b, d.ux.data() + b, m) + dot(d.uy.data() + b, d.uy.data() + b, m);
    for (int i = 0; i < m; ++i) {
      const double c = -(uxx[b + i] + uyy[b + i]) - data.H[b + i] * grad2;
      st += c * c;
    }
  }
  rep.r3 = std::sqrt(s3 * g.cell_area()) / rep.grad_sq;
  rep.tau_defect = std::sqrt(st * g.cell_area()) / rep.grad_sq;
  return rep;
}

}  // namespace holo
