#include "holoframe/lorentz.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

namespace holo {

RearrangementProfile rearrangement(const MatrixField& f, std::span<const int> nodes) {
  RearrangementProfile prof;
  prof.values.reserve(nodes.size());
  for (int k : nodes) prof.values.push_back(f.at(k).norm());
  std::sort(prof.values.begin(), prof.values.end(), std::greater<>());
  const double a = f.grid().cell_area();
  prof.areas.resize(prof.values.size());
  for (std::size_t k = 0; k < prof.values.size(); ++k) prof.areas[k] = a * static_cast<double>(k + 1);
  return prof;
}

double lorentz_norm(const MatrixField& f, double p, double q, std::span<const int> nodes) {
  if (nodes.empty()) throw EmptyMask("Lorentz norm over an empty node set");
  const RearrangementProfile prof = rearrangement(f, nodes);
  const double a = f.grid().cell_area();
  const auto& v = prof.values;
  if (std::isinf(q)) {
    double best = 0.0;
    std::size_t start = 0;
    while (start < v.size()) {
      std::size_t end = start;
      while (end < v.size() && v[end] == v[start]) ++end;
      const double t = a * (static_cast<double>(start) + 0.5 * static_cast<double>(end - start));
      best = std::max(best, std::pow(t, 1.0 / p) * v[start]);
      start = end;
    }
    return best;
  }
  const double e = q / p;
  double sum = 0.0;
  double prev = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0.0) break;
    const double cur = std::pow(prof.areas[k], e);
    sum += std::pow(v[k], q) * (cur - prev);
    prev = cur;
  }
  return std::pow((p / q) * sum, 1.0 / q);
}

double lorentz_norm(const MatrixField& f, double p, double q) {
  return lorentz_norm(f, p, q, f.grid().interior_nodes());
}

HardyEstimate hardy_h1_norm(const MatrixField& f) {
  const Grid& g = f.grid();
  const int n = g.n();
  const double h = g.h();
  // Scalar fields are mollified as complex values; matrix fields through
  // their pointwise norm.
  std::vector<cplx> val(g.size(), cplx{});
  for (int k : g.interior_nodes()) val[k] = f.m() == 1 ? f[k] : cplx(f.at(k).norm());

  std::vector<double> maximal(g.size(), 0.0);
  for (int k : g.interior_nodes()) maximal[k] = std::abs(val[k]);

  HardyEstimate out;
  double best_response = 0.0;
  for (double t = 0.25; t >= 2.0 * h; t *= 0.5) {
    const int reach = static_cast<int>(std::floor(t / h));
    std::vector<std::array<int, 2>> offs;
    std::vector<double> w;
    double mass = 0.0;
    for (int dj = -reach; dj <= reach; ++dj) {
      for (int di = -reach; di <= reach; ++di) {
        const double r2 = (di * di + dj * dj) * h * h / (t * t);
        if (r2 >= 1.0) continue;
        const double phi = (1.0 - r2) * (1.0 - r2);
        offs.push_back({di, dj});
        w.push_back(phi);
        mass += phi;
      }
    }
    for (double& x : w) x /= mass;

    double response = 0.0;
    for (int k : g.interior_nodes()) {
      const int i = g.col(k), j = g.row(k);
      cplx s = 0.0;
      for (std::size_t o = 0; o < offs.size(); ++o) {
        const int ii = i + offs[o][0], jj = j + offs[o][1];
        if (ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
        s += w[o] * val[g.index(ii, jj)];
      }
      const double a = std::abs(s);
      maximal[k] = std::max(maximal[k], a);
      response += a;
    }
    if (response > best_response) {
      best_response = response;
      out.dominant_scale = t;
    }
  }
  double total = 0.0;
  for (int k : g.interior_nodes()) total += maximal[k];
  out.value = total * g.cell_area();
  return out;
}

}  // namespace holo
