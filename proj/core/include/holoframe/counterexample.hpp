#pragma once

#include <string>
#include <vector>

#include "holoframe/fields.hpp"
#include "holoframe/gauge.hpp"

namespace holo {

/// Closed-form fields of the sharpness example:
///   alpha = (1, -i) dz / (z log(e/|z|)),
///   w     = J (y dx - x dy) / (r^2 log(e/r)),  J = [[0, 1], [-1, 0]],
///   u     = log log(e/r), with w = *du J.
/// The origin node, where all three are singular, is set to zero.
struct FrehseFields {
  VectorOneForm10 alpha;
  MatrixOneForm omega;
  ScalarField u;
  MatrixOneForm star_du;  // *du from its closed form
  int origin_node = -1;   // -1 when no node sits on z = 0
};

FrehseFields frehse_fields(const GridPtr& g);

/// max over included nodes of |w - *du J|.
double frehse_identification_defect(const FrehseFields& f);

struct SharpnessOptions {
  /// Nodes with |z| < exclusion_layers h are left out of the Lorentz norms.
  double exclusion_layers = 2.0;
  /// The discrete dbar_w alpha residual is measured on residual_radius <= |z|.
  double residual_radius = 0.25;
  /// Also run build_holomorphic_frame on w and record how it fails.
  bool attempt_frame = true;
  FrameOptions frame{};
};

struct SharpnessRow {
  int n = 0;
  double h = 0.0;
  double sup_alpha = 0.0;   // max |alpha| over nodes other than the origin
  double residual = 0.0;    // ||dbar alpha + w^{0,1} alpha|| / ||w^{0,1} alpha|| on the residual annulus
  double l21 = 0.0;         // lorentz(|d^* b|, 2, 1), d^* b = *du
  double l2_15 = 0.0;       // lorentz(|d^* b|, 2, 1.5)
  double l22 = 0.0;         // lorentz(|d^* b|, 2, 2)
  double exclusion_radius = 0.0;
  std::string frame_outcome;  // error name, or "none" when the frame was built
};

struct SharpnessReport {
  std::vector<SharpnessRow> rows;
  SharpnessOptions options;
};

/// Throws ConfigError for fewer than three resolutions or an even n.
SharpnessReport sharpness_scan(const std::vector<int>& resolutions, const SharpnessOptions& opts = {});

}  // namespace holo
