#ifndef SLM_MLE_HPP
#define SLM_MLE_HPP

#include "slm/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slm {

struct CriticalPoint {
  SignVector region;
  /// Unit norm, first nonzero coordinate positive.
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd p;
  /// Log-likelihood for the data scaled to unit sum.
  double logL = 0;
  double grad_norm = 0;
  int iterations = 0;
};

struct SolveOptions {
  double tol = 1e-10;
  int max_iter = 200;
  /// Starting point; the region witness when empty.
  std::optional<Eigen::VectorXd> start;
};

/// (n-d+2) x n matrix with rows s, l(x)^2 and B diag(l(x)).
Eigen::MatrixXd likelihood_matrix(const SquaredLinearModel& model, const Eigen::VectorXd& s, const Eigen::VectorXd& x);

/// rows(M) minus the number of singular values above tol * sigma_max.
int rank_defect(const Eigen::MatrixXd& m, double tol);

/// sigma_min / sigma_max of M (zero for rank-deficient M).
double rank_ratio(const Eigen::MatrixXd& m);

/// Throws BoundaryData when some s_i = 0 and InvalidInput for negative or wrong-length data.
void require_positive_data(const SquaredLinearModel& model, const Eigen::VectorXd& s);

/// The critical point of the region. Throws NoConvergenceError with the gradient trace.
CriticalPoint solve_region(const SquaredLinearModel& model, const Eigen::VectorXd& s, const Region& region,
                           const SolveOptions& opts = {});

struct RegionFailure {
  SignVector region;
  std::string message;
  std::vector<double> trace;
};

struct SolveAllResult {
  /// In canonical region order; failed regions are listed in `failures` instead.
  std::vector<CriticalPoint> points;
  std::vector<RegionFailure> failures;
  /// Index into `points` of the largest log-likelihood, -1 if none converged.
  int mle = -1;
};

/// Worker count for internal parallel loops: SLM_THREADS if set, else the core count.
unsigned worker_count();

SolveAllResult solve_all(const SquaredLinearModel& model, const Eigen::VectorXd& s, const SolveOptions& opts = {});
SolveAllResult solve_all(const SquaredLinearModel& model, const Eigen::VectorXd& s, const std::vector<Region>& regions,
                         const SolveOptions& opts = {});

/// Newton in quad precision from a double start. Returns y = A x (computed in
/// quad before rounding) and x; used where coordinates of y span many decades.
struct PreciseSolve {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  double grad_norm = 0;
  int iterations = 0;
  bool converged = false;
};
PreciseSolve solve_region_quad(const SquaredLinearModel& model, const Eigen::VectorXd& s,
                               const SignVector& region, const Eigen::VectorXd& start, double tol, int max_iter);

}  // namespace slm

#endif  // SLM_MLE_HPP
