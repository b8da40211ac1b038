#ifndef SLM_DPP_HPP
#define SLM_DPP_HPP

#include "slm/arrangement.hpp"

#include <Eigen/Dense>

#include <vector>

namespace slm {

/// Linear projection DPP: a k x n parameter matrix whose first k-1 rows are
/// fixed and whose last row is free.
struct DPPModel {
  QMatrix theta_fixed;
  int k = 0;
  int n = 0;

  /// Throws InvalidInput unless 2 <= k < n and theta_fixed is (k-1) x n;
  /// RankDeficient unless theta_fixed has rank k-1.
  DPPModel(QMatrix fixed, int k, int n);
};

struct SubsetDistribution {
  /// k-subsets in lexicographic order.
  std::vector<std::vector<int>> states;
  /// det(Theta_sigma)^2 / det(Theta Theta^T).
  std::vector<double> probs;
  /// |sum_sigma det(Theta_sigma)^2 - det(Theta Theta^T)| / det(Theta Theta^T).
  double normalization_residual = 0;
};

/// Throws RankDeficient when Theta does not have full row rank.
SubsetDistribution dpp_probabilities(const Eigen::MatrixXd& theta);

struct DPPReduction {
  /// Columns moved so the last k-1 carry an invertible block (identity when none moved).
  std::vector<int> column_order;
  /// Fixed rows after reduction: [A' | I] in the reordered columns.
  QMatrix A_prime;
  /// (n-k+1) x n point matrix [I | -A'^T], columns in the original labels.
  QMatrix P;
  /// theta' = theta_map * theta, the n-k+1 reduced parameters.
  QMatrix theta_map;
  /// Hyperplane h of `arrangement` belongs to states[h].
  std::vector<std::vector<int>> states;
  Arrangement arrangement;
};

/// One linear form in theta' per state sigma: det [P_T | theta'] with T the
/// complement of sigma. Throws ReductionFailed when no invertible block exists.
DPPReduction linear_projection_arrangement(const DPPModel& dpp);

/// The same hyperplanes computed as spans of the point subsets P_T (left kernels).
std::vector<QVector> discriminantal_spans(const DPPReduction& red);

/// (n-1)(n^3 - 5n^2 + 14n - 8) / 8 for n >= 4.
long long dpp_ml_degree_l2(int n);

}  // namespace slm

#endif  // SLM_DPP_HPP
