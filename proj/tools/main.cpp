#include "run_config.hpp"

int main(int argc, char** argv) {
  holo::cli::RunConfig cfg;
  if (auto code = holo::cli::parse_command_line(argc, argv, cfg)) return *code;
  return holo::cli::run(cfg);
}
