#ifndef SLM_DEGENERATION_HPP
#define SLM_DEGENERATION_HPP

#include "slm/mle.hpp"

#include <string>
#include <vector>

namespace slm {

struct DegenerateSolution {
  /// States forced to zero (anchor excluded), |J| <= d-1.
  std::vector<int> J;
  /// B y = 0, y_anchor = 1, y_J = 0. Empty when the Gram matrix is singular.
  QVector y;
  bool singular_gram = false;
  /// False when y vanishes off J or coincides with another solution.
  bool generic_flag = true;
};

/// Critical points for data e_anchor, one per support J (anchor is 0-based).
std::vector<DegenerateSolution> unit_data_solutions(const SquaredLinearModel& model, int anchor);

/// All supports J subset of [n] minus {anchor}, |J| <= d-1, ordered by size then lexicographically.
std::vector<std::vector<int>> admissible_supports(int n, int d, int anchor);

struct TropicalPoint {
  std::vector<int> J;
  /// z_anchor = 0; z_j = w_j - w_anchor on J, zero elsewhere.
  QVector z;
};

struct TropicalPredictions {
  int anchor = 0;
  std::vector<TropicalPoint> points;
  /// False when unit_data_solutions flags a collision or an unexpected zero.
  bool generic = true;
  std::string warning;
};

/// Anchor = unique argmin of w. Throws AnchorNotUnique otherwise.
int tropical_anchor(const QVector& w);

TropicalPredictions tropical_predictions(const SquaredLinearModel& model, const QVector& w);

struct ValuationEstimate {
  SignVector region;
  /// Least-squares slopes of log|y_j / y_anchor| against log eps.
  Eigen::VectorXd z_hat;
  /// z_hat rounded coordinatewise to {0, w_j - w_anchor}.
  QVector z;
  std::vector<int> J;
  /// max_j |z_hat_j - z_j|.
  double residual = 0;
  /// y(eps) / y_anchor at every grid point.
  std::vector<Eigen::VectorXd> path;
  /// Closest unit-data solution to the last path point, and the max-norm distance.
  int matched_solution = -1;
  double limit_distance = 0;
};

struct ValuationReport {
  int anchor = 0;
  std::vector<double> eps_grid;
  std::vector<ValuationEstimate> estimates;
};

/// Default grid 1e-1, 1e-1.5, 1e-2, 1e-2.5.
std::vector<double> default_eps_grid();

/// Tracks every region's critical point along s(eps) = eps^w in quad precision
/// with warm starts. Throws PathLost when a warm-started solve fails.
ValuationReport estimate_valuations(const SquaredLinearModel& model, const QVector& w,
                                    const std::vector<double>& eps_grid = default_eps_grid());

}  // namespace slm

#endif  // SLM_DEGENERATION_HPP
