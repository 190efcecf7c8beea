#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace holo::cli {

struct Tolerances {
  double gauge = 1e-4;   // Coulomb stopping rule, relative to ||w||_2
  double fp = 1e-6;      // fixed-point gap
  double cg = 1e-10;     // conjugate gradients, when selected
  double relax = 1e-5;   // harmonic flow tension
  double conf = 1e-2;    // conformality of immersions
  double input = 5e-2;   // dbar_w a residual accepted by the regularity solve
};

struct RunConfig {
  std::string subcommand;
  int n = 129;
  int m = 2;
  std::uint64_t seed = 1;
  double eps = 2.0;
  Tolerances tol;
  std::filesystem::path out = "holoframe-out";

  std::string omega = "random";  // zero | random | harmonic | frehse
  double amplitude = 0.5;        // ||w||_2 of the random connection
  std::optional<double> scale;   // scale of the inverse stereographic map
  std::string route = "direct";  // direct | wente
  std::string kernel = "cell";   // cell | lattice
  std::string solver = "direct"; // direct | cg

  std::string wente_case = "analytic";  // analytic | seeded
  int samples = 1;

  std::filesystem::path input;  // norms

  std::string boundary = "stereographic";  // stereographic | perturbed
  double perturbation = 0.05;
  int max_steps = 200000;

  std::string sign = "plus";  // plus | minus

  std::vector<int> resolutions{65, 129, 257};
};

/// Parses argv. Returns the exit code to use when parsing ends the run
/// (help, version or a bad command line), nothing otherwise.
std::optional<int> parse_command_line(int argc, char** argv, RunConfig& cfg);

/// Throws ConfigError when the config breaks an invariant.
void validate(const RunConfig& cfg);

/// Scale of the inverse stereographic map used by the subcommand.
double resolved_scale(const RunConfig& cfg);

int run(const RunConfig& cfg);

}  // namespace holo::cli
