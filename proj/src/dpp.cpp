#include "slm/dpp.hpp"
#include "slm/error.hpp"
#include "slm/exact.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace slm {

DPPModel::DPPModel(QMatrix fixed, int k_, int n_) : theta_fixed(std::move(fixed)), k(k_), n(n_) {
  if (!(k >= 2 && k < n)) throw Error(Errc::InvalidInput, "a linear projection DPP needs 2 <= k < n");
  if (theta_fixed.rows() != k - 1 || theta_fixed.cols() != n)
    throw Error(Errc::InvalidInput, "Theta_fixed must be (k-1) x n");
  if (rank<Rational>(theta_fixed) != k - 1) throw Error(Errc::RankDeficient, "Theta_fixed must have rank k-1");
}

SubsetDistribution dpp_probabilities(const Eigen::MatrixXd& theta) {
  const int k = static_cast<int>(theta.rows());
  const int n = static_cast<int>(theta.cols());
  if (k < 1 || k > n) throw Error(Errc::InvalidInput, "Theta must be k x n with 1 <= k <= n");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(theta);
  if (lu.rank() < k) throw Error(Errc::RankDeficient, "Theta does not have full row rank");

  const double gram = (theta * theta.transpose()).determinant();
  SubsetDistribution out;
  double total = 0;
  for (auto& sigma : k_subsets(n, k)) {
    const double minor = select_cols(theta, sigma).determinant();
    out.probs.push_back(minor * minor / gram);
    total += minor * minor;
    out.states.push_back(std::move(sigma));
  }
  out.normalization_residual = std::abs(total - gram) / gram;
  return out;
}

DPPReduction linear_projection_arrangement(const DPPModel& dpp) {
  const int n = dpp.n;
  const int k = dpp.k;
  const int m = n - k + 1;
  const QMatrix& f = dpp.theta_fixed;

  // Pivot block: the trailing k-1 columns, else the latest independent ones.
  std::vector<int> block;
  for (int j = n - k + 1; j < n; ++j) block.push_back(j);
  if (determinant<Rational>(select_cols(f, block)) == 0) {
    block.clear();
    for (int j = n - 1; j >= 0 && static_cast<int>(block.size()) < k - 1; --j) {
      std::vector<int> trial = block;
      trial.push_back(j);
      if (rank<Rational>(select_cols(f, trial)) == static_cast<Index>(trial.size())) block = trial;
    }
    if (static_cast<int>(block.size()) < k - 1) {
      std::ostringstream msg;
      msg << "no invertible (k-1) x (k-1) block in Theta_fixed:\n" << f;
      throw Error(Errc::ReductionFailed, msg.str());
    }
    std::sort(block.begin(), block.end());
  }
  DPPReduction red;
  for (int j = 0; j < n; ++j)
    if (!std::binary_search(block.begin(), block.end(), j)) red.column_order.push_back(j);
  red.column_order.insert(red.column_order.end(), block.begin(), block.end());

  const QMatrix permuted = select_cols(f, red.column_order);
  const auto inv = inverse<Rational>(QMatrix(permuted.rightCols(k - 1)));
  if (!inv) throw Error(Errc::ReductionFailed, "pivot block became singular");
  red.A_prime = (*inv * permuted).leftCols(m);

  // theta'_j = theta_{c_j} - sum_i theta_{c_{m+i}} A'_{i,j}
  red.theta_map = QMatrix::Zero(m, n);
  red.P = QMatrix::Zero(m, n);
  for (int j = 0; j < m; ++j) {
    red.theta_map(j, red.column_order[static_cast<std::size_t>(j)]) = 1;
    red.P(j, red.column_order[static_cast<std::size_t>(j)]) = 1;
    for (int i = 0; i < k - 1; ++i) {
      const int col = red.column_order[static_cast<std::size_t>(m + i)];
      red.theta_map(j, col) -= red.A_prime(i, j);
      red.P(j, col) = -red.A_prime(i, j);
    }
  }

  red.states = k_subsets(n, k);
  QMatrix forms(static_cast<Index>(red.states.size()), m);
  for (std::size_t h = 0; h < red.states.size(); ++h) {
    const auto& sigma = red.states[h];
    std::vector<int> rest;
    for (int j = 0; j < n; ++j)
      if (!std::binary_search(sigma.begin(), sigma.end(), j)) rest.push_back(j);
    const QMatrix pt = select_cols(red.P, rest);
    // Cofactors of det [P_T | theta'] along the theta' column.
    for (int r = 0; r < m; ++r) {
      QMatrix minor(m - 1, m - 1);
      for (int a = 0, row = 0; a < m; ++a) {
        if (a == r) continue;
        minor.row(row++) = pt.row(a);
      }
      const Rational c = m == 1 ? Rational(1) : determinant<Rational>(minor);
      forms(static_cast<Index>(h), r) = (r + m - 1) % 2 == 0 ? c : Rational(-c);
    }
  }
  red.arrangement = Arrangement(forms);
  return red;
}

std::vector<QVector> discriminantal_spans(const DPPReduction& red) {
  const int n = static_cast<int>(red.P.cols());
  std::vector<QVector> out;
  for (const auto& sigma : red.states) {
    std::vector<int> rest;
    for (int j = 0; j < n; ++j)
      if (!std::binary_search(sigma.begin(), sigma.end(), j)) rest.push_back(j);
    const QMatrix kernel = left_kernel<Rational>(select_cols(red.P, rest));
    if (kernel.rows() != 1) throw Error(Errc::ReductionFailed, "points do not span a hyperplane");
    out.push_back(kernel.row(0).transpose());
  }
  return out;
}

long long dpp_ml_degree_l2(int n) {
  if (n < 4) throw Error(Errc::InvalidInput, "the l = 2 formula needs n >= 4");
  const long long v = static_cast<long long>(n);
  return (v - 1) * (v * v * v - 5 * v * v + 14 * v - 8) / 8;
}

}  // namespace slm
