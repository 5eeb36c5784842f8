#pragma once

namespace diqss::keyrate {

enum class Sense { max, min };

const char* to_string(Sense s);

/// Optimizer of the Eve-correlation program. c = cos(theta), s = sin(theta).
struct SolverPoint {
  double s = 0.0;
  double c = 0.0;
  double g = 0.0;
  double h = 0.0;
  double delta = 0.0;
  double objective = 0.0;
};

struct EveBound {
  double e_tilde = 0.0;  // sqrt(objective at the optimum)
  SolverPoint point;
};

/// Optimizes  s^2 g^2 + c^2 h^2 + 2 (2 lambda - 1) s c g h Delta  over
/// theta in [0, pi/2] and g, h, Delta in [-1, 1], subject to
///   c g + s h >= S/2,   (1 - g^2)(1 - h^2) >= g^2 h^2 Delta^2.
/// Deterministic dense grid at `resolution` points per axis, then
/// coordinate-wise golden-section refinement with a shrinking window until
/// the objective is stable to 1e-8. Constraints are enforced with a 1e-9
/// feasibility slack.
///
/// The printed sense of the program is max, which the constraint set makes
/// degenerate (the g = h = 1, Delta = 0 corner is always feasible and
/// attains 1); the min sense supplies the adversarial bound and is what
/// calibration selects.
EveBound eve_correlation_bound(double S, double lambda, Sense sense = Sense::max,
                               int resolution = 64);

}  // namespace diqss::keyrate
