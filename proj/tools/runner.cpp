#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>

#include "artifacts.hpp"
#include "holoframe/counterexample.hpp"
#include "holoframe/elliptic.hpp"
#include "holoframe/errors.hpp"
#include "holoframe/exterior.hpp"
#include "holoframe/gauge.hpp"
#include "holoframe/gfld.hpp"
#include "holoframe/harmonic.hpp"
#include "holoframe/lorentz.hpp"
#include "holoframe/random_fields.hpp"
#include "holoframe/version.hpp"
#include "run_config.hpp"

namespace holo::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Context {
  const RunConfig& cfg;
  Artifacts& art;
  Json tolerances = Json::object();
  Json resolved = Json::object();
};

SolveOptions solve_options(Context& c) {
  SolveOptions s;
  if (c.cfg.solver == "cg") {
    s.method = SolveMethod::ConjugateGradient;
    s.rel_tol = c.cfg.tol.cg;
    c.tolerances["tol_cg"] = s.rel_tol;
    c.tolerances["cg_max_iterations"] = 20 * c.cfg.n;
  }
  return s;
}

CoulombOptions coulomb_options(Context& c) {
  CoulombOptions o;
  o.tol = c.cfg.tol.gauge;
  c.tolerances["tol_gauge"] = o.tol;
  c.tolerances["coulomb_armijo"] = o.armijo;
  c.tolerances["coulomb_min_step"] = o.min_step;
  c.tolerances["coulomb_shift"] = o.shift;
  c.tolerances["coulomb_max_iterations"] = o.max_iterations;
  return o;
}

FrameOptions frame_options(Context& c) {
  FrameOptions fo;
  fo.eps = c.cfg.eps;
  fo.route = c.cfg.route == "wente" ? AlphaRoute::Wente : AlphaRoute::Direct;
  fo.coulomb = coulomb_options(c);
  fo.fixed_point.tol_fp = c.cfg.tol.fp;
  fo.fixed_point.kernel = c.cfg.kernel == "lattice" ? CauchyKernel::Lattice : CauchyKernel::CellIntegrated;
  fo.solve = solve_options(c);
  c.tolerances["eps"] = fo.eps;
  c.tolerances["tol_fp"] = fo.fixed_point.tol_fp;
  c.tolerances["fixed_point_max_iterations"] = fo.fixed_point.max_iterations;
  c.tolerances["margin_layers"] = fo.fixed_point.margin_layers;
  return fo;
}

MapField stereographic_map(Context& c, const GridPtr& g) {
  const double scale = resolved_scale(c.cfg);
  c.resolved["scale"] = scale;
  return MapField::sample(g, 3, Target::sphere(),
                          [scale](cplx z, double* o) { inverse_stereographic(z, o, scale); });
}

MatrixOneForm make_connection(Context& c, const GridPtr& g) {
  const auto& cfg = c.cfg;
  MatrixOneForm w;
  if (cfg.omega == "zero") {
    w = MatrixOneForm::zeros(g, cfg.m);
  } else if (cfg.omega == "random") {
    w = random_connection(g, cfg.m, cfg.seed);
    normalize_l2(w, cfg.amplitude);
  } else if (cfg.omega == "harmonic") {
    w = riviere_connection(stereographic_map(c, g));
  } else {
    w = frehse_fields(g).omega;
  }
  c.resolved["m"] = w.m();
  return w;
}

VectorField as_vector_field(const MapField& u) {
  VectorField v(u.grid_ptr(), u.m());
  for (int k = 0; k < u.grid().size(); ++k)
    for (int i = 0; i < u.m(); ++i) v.at(k)[i] = u.at(k)[i];
  return v;
}

void cmd_hodge(Context& c) {
  auto g = Grid::make(c.cfg.n);
  const auto w = make_connection(c, g);
  const auto hd = hodge_decompose(w, solve_options(c));
  const auto exact = hd.exact_part();
  const auto coexact = hd.coexact_part();
  c.tolerances["eps"] = c.cfg.eps;

  Table t({"component", "norm", "value"});
  t.add({"omega", "l2", hd.l2});
  t.add({"exact", "l2", l2_norm(exact)});
  t.add({"coexact", "l2", l2_norm(coexact)});
  t.add({"b", "grad_l21", hd.l21});
  t.add({"residual", "l2", l2_norm(hd.residual)});
  t.add({"exact_coexact", "inner", inner(exact, coexact)});
  t.add({"omega", "eps_dagger", hd.eps_dagger});
  t.add({"omega", "dagger_satisfied", hd.eps_dagger <= c.cfg.eps ? 1 : 0});
  c.art.write("hodge.csv", t);
  c.art.dump("omega", w);
  c.art.dump("a", hd.a);
  c.art.dump("b", hd.b);
  c.art.dump("residual", hd.residual);
}

void cmd_wente(Context& c) {
  auto g = Grid::make(c.cfg.n);
  const auto solve = solve_options(c);
  Table ratios({"ratio", "n", "seed", "value"});
  Table norms({"case", "n", "seed", "sup", "grad_l2", "grad_l21", "grad_l2inf", "input_product", "ratio",
               "degenerate"});
  std::optional<ScalarField> first;

  auto record = [&](const std::string& name, std::uint64_t seed, const ScalarField& a, const ScalarField& b) {
    const auto s = wente_solve(a, b, solve);
    const auto& r = s.report;
    ratios.add({name, c.cfg.n, seed, r.ratio});
    norms.add({name, c.cfg.n, seed, r.sup, r.grad_l2, r.grad_l21, r.grad_l2inf, r.input_product, r.ratio,
               r.degenerate ? 1 : 0});
    if (!first) first = s.phi;
  };

  if (c.cfg.wente_case == "analytic") {
    ScalarField a(g, 1), b(g, 1);
    for (int k : g->interior_nodes()) {
      a[k] = g->x(k);
      b[k] = g->y(k);
    }
    record("analytic", 0, a, b);
  } else {
    c.resolved["samples"] = c.cfg.samples;
    for (int i = 0; i < c.cfg.samples; ++i) {
      const std::uint64_t seed = c.cfg.seed + static_cast<std::uint64_t>(i);
      record("seeded", seed, random_scalar(g, 2 * seed), random_scalar(g, 2 * seed + 1));
    }
  }
  c.art.write("wente.csv", ratios);
  c.art.write("wente_norms.csv", norms);
  c.art.dump("phi", *first);
}

void cmd_norms(Context& c) {
  const auto rec = read_gfld(c.cfg.input);
  auto g = Grid::make(rec.n);
  const auto f = magnitude(rec, g);
  c.resolved["n"] = rec.n;
  c.resolved["kind"] = rec.kind;

  Table t({"norm", "p", "q", "value"});
  double sup = 0.0;
  for (int k : g->interior_nodes()) sup = std::max(sup, std::abs(f[k]));
  t.add({"sup", kInf, kInf, sup});
  for (double q : {1.0, 1.5, 2.0, kInf}) t.add({"lorentz", 2.0, q, lorentz_norm(f, 2.0, q)});
  const auto hardy = hardy_h1_norm(f);
  t.add({"hardy_h1", 1.0, 1.0, hardy.value});
  t.add({"hardy_h1_scale", 1.0, 1.0, hardy.dominant_scale});
  c.art.write("norms.csv", t);
}

void cmd_coulomb(Context& c) {
  auto g = Grid::make(c.cfg.n);
  const auto w = make_connection(c, g);
  const auto r = coulomb_gauge(w, coulomb_options(c));
  const double wn = l2_norm(w);

  Table log({"iter", "energy", "residual"});
  bool monotone = true;
  for (std::size_t i = 0; i < r.energy_history.size(); ++i) {
    log.add({static_cast<int>(i), r.energy_history[i], r.residual_history[i]});
    if (i > 0 && r.energy_history[i] > r.energy_history[i - 1]) monotone = false;
  }
  const double grad_p = l2_norm(exterior_d(r.p.values));

  Table summary({"quantity", "value"});
  summary.add({"iterations", r.iterations});
  summary.add({"omega_l2", wn});
  summary.add({"residual", r.residual});
  summary.add({"relative_residual", wn > 0.0 ? r.residual / wn : 0.0});
  summary.add({"energy_monotone", monotone ? 1 : 0});
  summary.add({"grad_p_l2", grad_p});
  summary.add({"grad_p_bound", 2.0 * wn * (1.0 + 10.0 * g->h())});
  summary.add({"unitarity_defect", r.p.max_unitarity_defect()});
  c.art.write("coulomb.csv", log);
  c.art.write("coulomb_summary.csv", summary);
  c.art.dump("omega", w);
  c.art.dump("p", r.p.values);
  c.art.dump("eta", r.eta);
  c.art.dump("omega_p", transform_connection(r.p, w));
}

void cmd_frame(Context& c) {
  auto g = Grid::make(c.cfg.n);
  const auto w = make_connection(c, g);
  const auto f = build_holomorphic_frame(w, frame_options(c));
  const auto& r = f.report;

  Table t({"residual", "relative_residual", "dist_unitary", "grad_s", "c_report", "eps_dagger", "l2", "l21",
           "alpha_l21", "route_gap", "coulomb_iterations", "coulomb_residual", "fixed_point_iterations"});
  t.add({r.residual, r.relative_residual, r.dist_unitary, r.grad_s, r.c_report, r.eps_dagger, r.l2, r.l21,
         r.alpha_l21, r.route_gap, r.coulomb_iterations, r.coulomb_residual, r.fixed_point_iterations});
  c.art.write("frame.csv", t);
  c.art.dump("omega", w);
  c.art.dump("s", f.s.values);
  c.art.dump("s_minus_id", f.s.values - MatrixField::identity(g, w.m()));
  c.art.dump("p", f.p.values);
  c.art.dump("q", f.q.values);
  c.art.dump("eta", f.eta);
  c.art.dump("alpha01", f.alpha01);
}

void cmd_regularity(Context& c) {
  auto g = Grid::make(c.cfg.n);
  const auto u = stereographic_map(c, g);
  const auto w = riviere_connection(u);
  RegularityOptions ro;
  ro.frame = frame_options(c);
  ro.tol_input = c.cfg.tol.input;
  c.tolerances["tol_input"] = ro.tol_input;
  const auto r = dbar_regularity_solve(partial_z(u), w, ro);
  const auto& rep = r.report;

  Table t({"input_residual", "dbar_h", "alpha_sup", "alpha_grad", "alpha_l2sq", "hardy", "hardy_ratio",
           "frame_residual", "frame_dist_unitary"});
  t.add({rep.input_residual, rep.dbar_h, rep.alpha_sup, rep.alpha_grad, rep.alpha_l2sq, rep.hardy,
         rep.hardy_ratio, rep.frame.residual, rep.frame.dist_unitary});
  c.art.write("regularity.csv", t);
  c.art.dump("h", r.h.c);
  c.art.dump("omega", w);
}

void cmd_harmonic(Context& c) {
  auto g = Grid::make(c.cfg.n);
  const double scale = resolved_scale(c.cfg);
  c.resolved["scale"] = scale;
  MapTrace trace = stereographic_trace(scale);
  if (c.cfg.boundary == "perturbed") {
    trace = perturbed_trace(trace, 3, Target::sphere(), c.cfg.seed, c.cfg.perturbation);
    c.resolved["perturbation"] = c.cfg.perturbation;
  }
  const auto u0 = MapField::sample(g, 3, Target::sphere(), [](cplx z, double* o) {
    o[0] = z.real();
    o[1] = z.imag();
    o[2] = 0.5 * (1.0 - std::norm(z));
    Target::sphere().project(o, 3);
  });
  RelaxOptions ro;
  ro.tol = c.cfg.tol.relax;
  ro.max_steps = c.cfg.max_steps;
  c.tolerances["tol_relax"] = ro.tol;
  c.tolerances["relax_max_steps"] = ro.max_steps;
  c.tolerances["relax_implicit_dt"] = ro.implicit_dt;
  c.tolerances["relax_min_dt_fraction"] = ro.min_dt_fraction;
  const auto r = harmonic_relax(u0, trace, ro);
  const auto hopf = hopf_differential(r.u);

  Table log({"step", "energy", "tension_residual"});
  for (std::size_t i = 0; i < r.energy_history.size(); ++i)
    log.add({static_cast<int>(i), r.energy_history[i], r.tension_history[i]});

  Table summary({"quantity", "value"});
  summary.add({"energy", r.energy});
  summary.add({"energy_over_2pi", r.energy / (2.0 * std::numbers::pi)});
  summary.add({"tension_residual", r.tension_residual});
  summary.add({"steps", r.steps});
  summary.add({"rejected", r.rejected});
  summary.add({"hopf_dbar_l1", hopf.residual});
  summary.add({"hopf_dbar_l1_margin", hopf.residual_margin});
  summary.add({"target_defect", r.u.target_defect()});
  c.art.write("energy.csv", log);
  c.art.write("hopf.csv", summary);
  c.art.dump("u", as_vector_field(r.u));
  c.art.dump("omega", riviere_connection(r.u));
  c.art.dump("phi", hopf.phi);
}

void cmd_pmc(Context& c) {
  auto g = Grid::make(c.cfg.n);
  auto u = stereographic_map(c, g);
  std::vector<double> H = u.raw();
  if (c.cfg.sign == "minus")
    for (double& x : H) x = -x;
  ImmersionData data{std::move(u), std::move(H), c.cfg.tol.conf};
  c.tolerances["tol_conf"] = data.tol_conf;
  const auto r = pmc_diagnostics(data);

  Table t({"sign", "r1", "r2", "r3", "tau_defect", "conformality", "grad_sq"});
  t.add({c.cfg.sign, r.r1, r.r2, r.r3, r.tau_defect, r.conformality, r.grad_sq});
  c.art.write("pmc.csv", t);
  c.art.dump("u", as_vector_field(data.u));
  c.art.dump("omega_h", r.omega_h);
}

void cmd_counterexample(Context& c) {
  SharpnessOptions so;
  so.frame = frame_options(c);
  c.tolerances["exclusion_layers"] = so.exclusion_layers;
  c.tolerances["residual_radius"] = so.residual_radius;
  const auto rep = sharpness_scan(c.cfg.resolutions, so);

  Table t({"n", "h", "sup_alpha", "residual", "l21", "l2_15", "l22", "exclusion_radius", "frame_outcome"});
  for (const auto& r : rep.rows)
    t.add({r.n, r.h, r.sup_alpha, r.residual, r.l21, r.l2_15, r.l22, r.exclusion_radius, r.frame_outcome});
  c.art.write("sharpness.csv", t);

  const auto f = frehse_fields(Grid::make(c.cfg.resolutions.front()));
  c.art.dump("omega", f.omega);
  c.art.dump("alpha", f.alpha.c);
  c.art.dump("u", f.u);
}

const std::map<std::string, std::function<void(Context&)>>& commands() {
  static const std::map<std::string, std::function<void(Context&)>> table{
      {"hodge", cmd_hodge},       {"wente", cmd_wente},     {"norms", cmd_norms},
      {"coulomb", cmd_coulomb},   {"frame", cmd_frame},     {"regularity", cmd_regularity},
      {"harmonic", cmd_harmonic}, {"pmc", cmd_pmc},         {"counterexample", cmd_counterexample},
  };
  return table;
}

Json echo(const RunConfig& cfg) {
  Json j;
  j["subcommand"] = cfg.subcommand;
  j["n"] = cfg.n;
  j["m"] = cfg.m;
  j["seed"] = cfg.seed;
  j["eps"] = cfg.eps;
  j["out"] = cfg.out.generic_string();
  j["tol_gauge"] = cfg.tol.gauge;
  j["tol_fp"] = cfg.tol.fp;
  j["tol_cg"] = cfg.tol.cg;
  j["tol_relax"] = cfg.tol.relax;
  j["tol_conf"] = cfg.tol.conf;
  j["tol_input"] = cfg.tol.input;
  j["omega"] = cfg.omega;
  j["amplitude"] = cfg.amplitude;
  j["scale"] = cfg.scale ? Json(*cfg.scale) : Json(nullptr);
  j["route"] = cfg.route;
  j["kernel"] = cfg.kernel;
  j["solver"] = cfg.solver;
  j["case"] = cfg.wente_case;
  j["samples"] = cfg.samples;
  j["input"] = cfg.input.generic_string();
  j["boundary"] = cfg.boundary;
  j["perturbation"] = cfg.perturbation;
  j["max_steps"] = cfg.max_steps;
  j["sign"] = cfg.sign;
  j["resolutions"] = cfg.resolutions;
  return j;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  std::optional<Artifacts> art;
  try {
    art.emplace(cfg.out);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "ConfigError: cannot create " << cfg.out << ": " << e.what() << '\n';
    return 2;
  }

  Json manifest;
  manifest["config"] = echo(cfg);
  manifest["versions"] = {{"holoframe", library_version()},
                          {"eigen", eigen_version()},
                          {"fftw", fftw_version()}};
  Context c{cfg, *art};
  int status = 0;
  try {
    commands().at(cfg.subcommand)(c);
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    manifest["error"] = {{"name", e.name()}, {"message", e.what()}};
    status = dynamic_cast<const ConfigError*>(&e) ? 2 : 1;
  }
  manifest["resolved"] = c.resolved;
  manifest["tolerances"] = c.tolerances;
  manifest["outputs"] = art->outputs();
  manifest["status"] = status;
  art->write_manifest(manifest);
  return status;
}

}  // namespace holo::cli
