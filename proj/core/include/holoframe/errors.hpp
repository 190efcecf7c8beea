#pragma once

#include <stdexcept>
#include <string>

namespace holo {

/// Base class for every solver-level failure. `name()` is the stable
/// identifier the command line runner prints on the diagnostic stream.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define HOLO_DEFINE_ERROR(Type)                                    \
  class Type : public Error {                                      \
   public:                                                         \
    explicit Type(const std::string& what) : Error(#Type, what) {} \
  };

HOLO_DEFINE_ERROR(DimensionMismatch)
HOLO_DEFINE_ERROR(EmptyMask)
HOLO_DEFINE_ERROR(CompatibilityViolation)
HOLO_DEFINE_ERROR(ConditionDaggerViolated)
HOLO_DEFINE_ERROR(InputNotClosed)
HOLO_DEFINE_ERROR(NotOnTarget)
HOLO_DEFINE_ERROR(ConformalityViolated)
HOLO_DEFINE_ERROR(FormatError)
HOLO_DEFINE_ERROR(DegenerateInput)
HOLO_DEFINE_ERROR(ConfigError)

#undef HOLO_DEFINE_ERROR

class NonConvergence : public Error {
 public:
  NonConvergence(int iterations, double residual)
      : Error("NonConvergence", "CG stopped after " + std::to_string(iterations) +
                                    " iterations, relative residual " +
                                    std::to_string(residual)),
        iterations_(iterations),
        residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class Stalled : public Error {
 public:
  Stalled(double energy, double residual)
      : Error("Stalled", "no decrease possible at energy " + std::to_string(energy) +
                             ", residual " + std::to_string(residual)),
        energy_(energy),
        residual_(residual) {}
  double energy() const noexcept { return energy_; }
  double residual() const noexcept { return residual_; }

 private:
  double energy_;
  double residual_;
};

class SingularFrame : public Error {
 public:
  explicit SingularFrame(int node)
      : Error("SingularFrame", "frame not invertible at node " + std::to_string(node)),
        node_(node) {}
  int node() const noexcept { return node_; }

 private:
  int node_;
};

class NoContraction : public Error {
 public:
  NoContraction(int iteration, double growth)
      : Error("NoContraction", "fixed-point gap grew by factor " + std::to_string(growth) +
                                   " at iteration " + std::to_string(iteration)),
        iteration_(iteration),
        growth_(growth) {}
  int iteration() const noexcept { return iteration_; }
  double growth() const noexcept { return growth_; }

 private:
  int iteration_;
  double growth_;
};

}  // namespace holo
