#ifndef SLM_MODEL_HPP
#define SLM_MODEL_HPP

#include "slm/arrangement.hpp"

#include <Eigen/Dense>

#include <vector>

namespace slm {

/// p_i(x) = l_i(x)^2 / sum_j l_j(x)^2 over an essential arrangement with n > d > 1.
class SquaredLinearModel {
 public:
  /// Throws InvalidInput unless n > d > 1 and RankDeficient unless rank(A) = d.
  explicit SquaredLinearModel(Arrangement arr);

  const Arrangement& arrangement() const noexcept { return arr_; }
  const QMatrix& A() const noexcept { return arr_.matrix(); }
  const QMatrix& B() const noexcept { return b_; }
  const Eigen::MatrixXd& A_double() const noexcept { return a_double_; }
  int n() const noexcept { return arr_.states(); }
  int d() const noexcept { return arr_.params(); }
  /// Number of quadratic monomials in d variables.
  int N() const noexcept { return d() * (d() + 1) / 2; }

 private:
  Arrangement arr_;
  QMatrix b_;
  Eigen::MatrixXd a_double_;
};

/// Unit norm with first nonzero coordinate positive. Throws ZeroPoint for x = 0.
Eigen::VectorXd normalize_parameter(const Eigen::VectorXd& x);

/// Probability vector at x. Throws ZeroPoint for x = 0.
Eigen::VectorXd evaluate(const SquaredLinearModel& model, const Eigen::VectorXd& x);
QVector evaluate(const SquaredLinearModel& model, const QVector& x);

/// sum_i s_i log l_i^2 - (sum s) log q. Returns -infinity when some l_i(x) = 0
/// with s_i > 0; `on_hyperplane` (if given) reports that case.
double log_likelihood(const SquaredLinearModel& model, const Eigen::VectorXd& s, const Eigen::VectorXd& x,
                      bool* on_hyperplane = nullptr);

/// Throws OnHyperplane when some l_i(x) = 0.
Eigen::VectorXd gradient(const SquaredLinearModel& model, const Eigen::VectorXd& s, const Eigen::VectorXd& x);
Eigen::MatrixXd hessian(const SquaredLinearModel& model, const Eigen::VectorXd& s, const Eigen::VectorXd& x);

struct VeroneseGenerators {
  /// Row i: coefficients of l_i^2 in the monomials x1^2, x1x2, ..., xd^2.
  QMatrix L;
  /// Leading N x N block of L.
  QMatrix Lprime;
  /// Rows c with sum_i c_i p_i = 0 on the model (left kernel of L).
  QMatrix linear_forms;
  /// R(a, b) holds the row vector (length N) expressing x_a x_b linearly in p_1..p_N.
  std::vector<std::vector<QVector>> R;
};

/// Throws InvalidInput when n < N and DegenerateLeadingBlockError when L' is singular.
VeroneseGenerators veronese_generators(const SquaredLinearModel& model);

/// Monomial vector (x1^2, x1x2, ..., xd^2).
template <class Scalar>
VectorX<Scalar> quadratic_monomials(const VectorX<Scalar>& x) {
  const Index d = x.size();
  VectorX<Scalar> m(d * (d + 1) / 2);
  Index k = 0;
  for (Index a = 0; a < d; ++a)
    for (Index b = a; b < d; ++b) m(k++) = x(a) * x(b);
  return m;
}

/// Symmetric d x d matrix R(p) evaluated at a probability vector (only p_1..p_N used).
Eigen::MatrixXd evaluate_R(const VeroneseGenerators& gen, const Eigen::VectorXd& p);
QMatrix evaluate_R(const VeroneseGenerators& gen, const QVector& p);

/// Largest relative residual of the linear forms and 2x2 minors of R at p
/// (p scaled to unit sum, linear forms scaled to unit norm).
double generator_residual(const VeroneseGenerators& gen, const Eigen::VectorXd& p);

/// The Steiner quartic in four variables.
template <class Scalar>
Scalar steiner_quartic(const VectorX<Scalar>& p) {
  Scalar quartic(0), pair_sq(0), cubic(0), mixed(0);
  for (Index i = 0; i < 4; ++i) {
    quartic += p(i) * p(i) * p(i) * p(i);
    for (Index j = 0; j < 4; ++j) {
      if (j == i) continue;
      if (j > i) pair_sq += p(i) * p(i) * p(j) * p(j);
      cubic += p(i) * p(i) * p(i) * p(j);
      for (Index k = j + 1; k < 4; ++k)
        if (k != i) mixed += p(i) * p(i) * p(j) * p(k);
    }
  }
  return quartic + Scalar(6) * pair_sq - Scalar(4) * cubic + Scalar(4) * mixed -
         Scalar(40) * p(0) * p(1) * p(2) * p(3);
}

/// Rank of the span of all 2x2 minors of a generic symmetric d x d matrix.
long long minor_space_dimension(int d);

struct SingularSubspace {
  std::vector<int> I;
  std::vector<int> J;
  /// Columns span ker(B A_{I,J}), where A_{I,J} negates the rows in J.
  QMatrix basis;

  int projective_dim() const { return static_cast<int>(basis.cols()) - 1; }
};

/// One subspace per unordered partition I | J of the states with |I|, |J| <= d-1
/// and nontrivial kernel; empty when n > 2d-2.
std::vector<SingularSubspace> singular_subspaces(const SquaredLinearModel& model);

struct NonInjectivityWitness {
  QVector x;
  QVector x_prime;
};

/// Points x on the subspace and x' (not proportional to x) with A x' = A_{I,J} x,
/// so both map to the same probability vector.
NonInjectivityWitness non_injectivity_witness(const SquaredLinearModel& model, const SingularSubspace& sub);

}  // namespace slm

#endif  // SLM_MODEL_HPP
