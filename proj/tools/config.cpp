#include <CLI11.hpp>

#include "holoframe/errors.hpp"
#include "holoframe/version.hpp"
#include "run_config.hpp"

namespace holo::cli {

namespace {

constexpr const char* kSubcommands[][2] = {
    {"hodge", "Hodge decomposition w = da + *db of a connection"},
    {"wente", "Wente solve with the analytic pair or seeded random pairs"},
    {"norms", "Lorentz and local Hardy norms of a GFLD field"},
    {"coulomb", "Coulomb gauge of a connection"},
    {"frame", "Holomorphic frame S with dbar S = -w^{0,1} S"},
    {"regularity", "Frame regularity of du/dz for a harmonic map"},
    {"harmonic", "Relax a map into the sphere from its boundary trace"},
    {"pmc", "Parallel mean curvature identities on a sphere patch"},
    {"counterexample", "Sharpness scan of the log log example"},
};

}  // namespace

std::optional<int> parse_command_line(int argc, char** argv, RunConfig& cfg) {
  CLI::App app{"holoframe experiment runner", "holoframe"};
  app.set_version_flag("--version", library_version());
  app.set_config("--config", "", "key = value file; flags on the command line win");
  app.allow_config_extras(false);

  app.add_option("--n", cfg.n, "grid nodes per side, odd and >= 33")->capture_default_str();
  app.add_option("--m", cfg.m, "fiber dimension")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed of the random fields")->capture_default_str();
  app.add_option("--eps", cfg.eps, "threshold of the condition dagger_eps")->capture_default_str();
  app.add_option("--out", cfg.out, "output directory")->capture_default_str();

  app.add_option("--tol-gauge", cfg.tol.gauge, "Coulomb residual relative to ||w||")->capture_default_str();
  app.add_option("--tol-fp", cfg.tol.fp, "fixed-point gap")->capture_default_str();
  app.add_option("--tol-cg", cfg.tol.cg, "conjugate gradient relative residual")->capture_default_str();
  app.add_option("--tol-relax", cfg.tol.relax, "harmonic flow tension")->capture_default_str();
  app.add_option("--tol-conf", cfg.tol.conf, "immersion conformality")->capture_default_str();
  app.add_option("--tol-input", cfg.tol.input, "regularity input residual")->capture_default_str();

  app.add_option("--omega", cfg.omega, "connection source")
      ->check(CLI::IsMember({"zero", "random", "harmonic", "frehse"}))
      ->capture_default_str();
  app.add_option("--amplitude", cfg.amplitude, "L2 norm of the random connection")->capture_default_str();
  app.add_option("--scale", cfg.scale,
                 "scale of the inverse stereographic map (1 for harmonic and pmc, 0.1 otherwise)");
  app.add_option("--route", cfg.route, "(0,1) connection route of the frame")
      ->check(CLI::IsMember({"direct", "wente"}))
      ->capture_default_str();
  app.add_option("--kernel", cfg.kernel, "Cauchy kernel of the fixed point")
      ->check(CLI::IsMember({"cell", "lattice"}))
      ->capture_default_str();
  app.add_option("--solver", cfg.solver, "Poisson solver")
      ->check(CLI::IsMember({"direct", "cg"}))
      ->capture_default_str();
  app.add_option("--case", cfg.wente_case, "Wente input")
      ->check(CLI::IsMember({"analytic", "seeded"}))
      ->capture_default_str();
  app.add_option("--samples", cfg.samples, "number of seeded Wente pairs")->capture_default_str();
  app.add_option("--input", cfg.input, "GFLD file for norms");
  app.add_option("--boundary", cfg.boundary, "boundary trace of the harmonic map")
      ->check(CLI::IsMember({"stereographic", "perturbed"}))
      ->capture_default_str();
  app.add_option("--perturbation", cfg.perturbation, "amplitude of the perturbed trace")
      ->capture_default_str();
  app.add_option("--max-steps", cfg.max_steps, "harmonic flow step cap")->capture_default_str();
  app.add_option("--sign", cfg.sign, "sign of H in the pmc identities")
      ->check(CLI::IsMember({"plus", "minus"}))
      ->capture_default_str();
  app.add_option("--resolutions", cfg.resolutions, "grid sizes of the sharpness scan")
      ->delimiter(',')
      ->capture_default_str();

  for (const auto& [name, help] : kSubcommands) app.add_subcommand(name, help)->fallthrough();
  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return std::nullopt;
}

void validate(const RunConfig& cfg) {
  auto check_n = [](int n, const char* what) {
    if (n < 33 || n % 2 == 0)
      throw ConfigError(std::string(what) + " must be odd and at least 33, got " + std::to_string(n));
  };
  check_n(cfg.n, "--n");
  if (cfg.m < 1) throw ConfigError("--m must be positive");
  if (cfg.eps <= 0.0) throw ConfigError("--eps must be positive");
  if (cfg.samples < 1) throw ConfigError("--samples must be positive");
  if (cfg.max_steps < 1) throw ConfigError("--max-steps must be positive");
  if (cfg.amplitude < 0.0) throw ConfigError("--amplitude must be nonnegative");
  if (cfg.scale && *cfg.scale <= 0.0) throw ConfigError("--scale must be positive");
  for (double t : {cfg.tol.gauge, cfg.tol.fp, cfg.tol.cg, cfg.tol.relax, cfg.tol.conf, cfg.tol.input})
    if (!(t > 0.0)) throw ConfigError("tolerances must be positive");
  if (cfg.subcommand == "counterexample") {
    if (cfg.resolutions.size() < 3) throw ConfigError("--resolutions needs at least three sizes");
    for (int n : cfg.resolutions) check_n(n, "--resolutions");
  }
  if (cfg.subcommand == "norms" && cfg.input.empty()) throw ConfigError("norms needs --input");
}

double resolved_scale(const RunConfig& cfg) {
  if (cfg.scale) return *cfg.scale;
  return cfg.subcommand == "harmonic" || cfg.subcommand == "pmc" ? 1.0 : 0.1;
}

}  // namespace holo::cli
