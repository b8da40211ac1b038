#include "slm/model.hpp"
#include "slm/detail/likelihood.hpp"
#include "slm/error.hpp"
#include "slm/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace slm {

SquaredLinearModel::SquaredLinearModel(Arrangement arr) : arr_(std::move(arr)) {
  if (!(arr_.states() > arr_.params() && arr_.params() > 1))
    throw Error(Errc::InvalidInput, "a model needs n > d > 1 (got n = " + std::to_string(arr_.states()) +
                                        ", d = " + std::to_string(arr_.params()) + ")");
  b_ = kernel_complement(arr_).B;
  a_double_ = cast_rational<double>(arr_.matrix());
}

Eigen::VectorXd normalize_parameter(const Eigen::VectorXd& x) {
  const double norm = x.norm();
  if (norm == 0.0) throw Error(Errc::ZeroPoint, "parameter vector is zero");
  Eigen::VectorXd out = x / norm;
  for (Index i = 0; i < out.size(); ++i) {
    if (out(i) != 0.0) {
      if (out(i) < 0) out = -out;
      break;
    }
  }
  return out;
}

Eigen::VectorXd evaluate(const SquaredLinearModel& model, const Eigen::VectorXd& x) {
  if (x.isZero(0.0)) throw Error(Errc::ZeroPoint, "parameter vector is zero");
  // Rescaling first keeps q away from overflow and underflow.
  const Eigen::VectorXd y = model.A_double() * (x / x.cwiseAbs().maxCoeff());
  const Eigen::VectorXd sq = y.cwiseAbs2();
  return sq / sq.sum();
}

QVector evaluate(const SquaredLinearModel& model, const QVector& x) {
  bool zero = true;
  for (Index i = 0; i < x.size(); ++i) zero = zero && x(i) == 0;
  if (zero) throw Error(Errc::ZeroPoint, "parameter vector is zero");
  const QVector y = model.A() * x;
  QVector sq(y.size());
  for (Index i = 0; i < y.size(); ++i) sq(i) = y(i) * y(i);
  const Rational q = sq.sum();
  return sq / q;
}

double log_likelihood(const SquaredLinearModel& model, const Eigen::VectorXd& s, const Eigen::VectorXd& x,
                      bool* on_hyperplane) {
  if (x.isZero(0.0)) throw Error(Errc::ZeroPoint, "parameter vector is zero");
  const Eigen::VectorXd xs = x / x.cwiseAbs().maxCoeff();
  const detail::LikelihoodKernel<double> f(model.A_double(), s);
  const double v = f.value(xs);
  if (on_hyperplane) *on_hyperplane = v == -std::numeric_limits<double>::infinity();
  return v;
}

namespace {

void require_off_hyperplanes(const SquaredLinearModel& model, const Eigen::VectorXd& x) {
  const Eigen::VectorXd y = model.A_double() * x;
  for (Index i = 0; i < y.size(); ++i)
    if (y(i) == 0.0) throw Error(Errc::OnHyperplane, "l_" + std::to_string(i + 1) + "(x) = 0");
}

}  // namespace

Eigen::VectorXd gradient(const SquaredLinearModel& model, const Eigen::VectorXd& s, const Eigen::VectorXd& x) {
  require_off_hyperplanes(model, x);
  return detail::LikelihoodKernel<double>(model.A_double(), s).gradient(x);
}

Eigen::MatrixXd hessian(const SquaredLinearModel& model, const Eigen::VectorXd& s, const Eigen::VectorXd& x) {
  require_off_hyperplanes(model, x);
  return detail::LikelihoodKernel<double>(model.A_double(), s).hessian(x);
}

namespace {

// Index of x_a x_b (a <= b) in the lexicographic monomial order.
Index monomial_index(Index a, Index b, Index d) {
  if (a > b) std::swap(a, b);
  return a * d - a * (a - 1) / 2 + (b - a);
}

}  // namespace

VeroneseGenerators veronese_generators(const SquaredLinearModel& model) {
  const Index n = model.n();
  const Index d = model.d();
  const Index big_n = model.N();
  if (n < big_n)
    throw Error(Errc::InvalidInput, "Veronese generators need n >= N = " + std::to_string(big_n));

  VeroneseGenerators gen;
  gen.L = QMatrix::Zero(n, big_n);
  for (Index i = 0; i < n; ++i) {
    for (Index a = 0; a < d; ++a) {
      for (Index b = a; b < d; ++b) {
        const Rational c = model.A()(i, a) * model.A()(i, b);
        gen.L(i, monomial_index(a, b, d)) = a == b ? c : Rational(2) * c;
      }
    }
  }
  gen.Lprime = gen.L.topRows(big_n);
  const auto inv = inverse<Rational>(gen.Lprime);
  if (!inv) {
    // Greedy choice of N independent rows, the rest kept in their order.
    std::vector<int> chosen, rest;
    QMatrix picked(0, big_n);
    for (int i = 0; i < n; ++i) {
      QMatrix trial(picked.rows() + 1, big_n);
      if (picked.rows() > 0) trial.topRows(picked.rows()) = picked;
      trial.row(picked.rows()) = gen.L.row(i);
      if (static_cast<Index>(chosen.size()) < big_n && rank<Rational>(trial) == trial.rows()) {
        picked = trial;
        chosen.push_back(i);
      } else {
        rest.push_back(i);
      }
    }
    if (static_cast<Index>(chosen.size()) < big_n)
      throw DegenerateLeadingBlockError("the squares of the linear forms span fewer than N quadrics", {});
    chosen.insert(chosen.end(), rest.begin(), rest.end());
    throw DegenerateLeadingBlockError("leading N x N block of L is singular; reorder rows", chosen);
  }
  gen.linear_forms = left_kernel<Rational>(gen.L);
  gen.R.assign(static_cast<std::size_t>(d), std::vector<QVector>(static_cast<std::size_t>(d)));
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b)
      gen.R[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = inv->row(monomial_index(a, b, d)).transpose();
  return gen;
}

Eigen::MatrixXd evaluate_R(const VeroneseGenerators& gen, const Eigen::VectorXd& p) {
  const Index d = static_cast<Index>(gen.R.size());
  const Index big_n = gen.Lprime.rows();
  Eigen::MatrixXd r(d, d);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b)
      r(a, b) = cast_rational<double>(gen.R[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]).dot(p.head(big_n));
  return r;
}

QMatrix evaluate_R(const VeroneseGenerators& gen, const QVector& p) {
  const Index d = static_cast<Index>(gen.R.size());
  const Index big_n = gen.Lprime.rows();
  QMatrix r(d, d);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) r(a, b) = gen.R[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].dot(p.head(big_n));
  return r;
}

double generator_residual(const VeroneseGenerators& gen, const Eigen::VectorXd& p) {
  const Eigen::VectorXd pn = p / p.sum();
  double worst = 0.0;
  const Eigen::MatrixXd forms = cast_rational<double>(gen.linear_forms);
  for (Index k = 0; k < forms.rows(); ++k)
    worst = std::max(worst, std::abs(forms.row(k).dot(pn)) / forms.row(k).norm());
  const Eigen::MatrixXd r = evaluate_R(gen, pn);
  const double scale = r.cwiseAbs().maxCoeff();
  const Index d = r.rows();
  for (Index a = 0; a < d; ++a)
    for (Index b = a + 1; b < d; ++b)
      for (Index c = 0; c < d; ++c)
        for (Index e = c + 1; e < d; ++e)
          worst = std::max(worst, std::abs(r(a, c) * r(b, e) - r(a, e) * r(b, c)) / (scale * scale));
  return worst;
}

long long minor_space_dimension(int d) {
  if (d < 2) throw Error(Errc::InvalidInput, "minor_space_dimension needs d >= 2");
  const Index big_n = d * (d + 1) / 2;
  // Quadratic monomials in the N entries m_ab, indexed like the entries themselves.
  auto entry = [&](Index a, Index b) { return monomial_index(a, b, d); };
  auto product = [&](Index u, Index v) { return monomial_index(u, v, big_n); };
  const Index width = big_n * (big_n + 1) / 2;
  std::vector<QVector> rows;
  for (Index a = 0; a < d; ++a)
    for (Index b = a + 1; b < d; ++b)
      for (Index c = 0; c < d; ++c)
        for (Index e = c + 1; e < d; ++e) {
          QVector coeff = QVector::Zero(width);
          coeff(product(entry(a, c), entry(b, e))) += 1;
          coeff(product(entry(a, e), entry(b, c))) -= 1;
          rows.push_back(std::move(coeff));
        }
  QMatrix m(static_cast<Index>(rows.size()), width);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
  return static_cast<long long>(rank<Rational>(m));
}

namespace {

QMatrix signed_rows(const QMatrix& a, const std::vector<int>& negated) {
  QMatrix out = a;
  for (int j : negated) out.row(j) = -out.row(j);
  return out;
}

}  // namespace

std::vector<SingularSubspace> singular_subspaces(const SquaredLinearModel& model) {
  const int n = model.n();
  const int d = model.d();
  std::vector<SingularSubspace> out;
  if (n > 2 * d - 2) return out;
  // Unordered partitions: state 0 always goes into I.
  for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
    SingularSubspace sub;
    sub.I.push_back(0);
    for (int i = 1; i < n; ++i) ((mask >> (i - 1)) & 1 ? sub.J : sub.I).push_back(i);
    if (static_cast<int>(sub.I.size()) > d - 1 || static_cast<int>(sub.J.size()) > d - 1) continue;
    sub.basis = nullspace<Rational>(QMatrix(model.B() * signed_rows(model.A(), sub.J)));
    if (sub.basis.cols() > 0) out.push_back(std::move(sub));
  }
  return out;
}

NonInjectivityWitness non_injectivity_witness(const SquaredLinearModel& model, const SingularSubspace& sub) {
  const QMatrix flipped = signed_rows(model.A(), sub.J);
  for (int t = 0; t < 16; ++t) {
    QVector x = QVector::Zero(model.d());
    Rational c(1);
    for (Index k = 0; k < sub.basis.cols(); ++k) {
      x += c * sub.basis.col(k);
      c *= Rational(t + 2);
    }
    const QVector target = flipped * x;
    if (target.isZero()) continue;
    const auto xp = solve_consistent<Rational>(model.A(), target);
    if (!xp) continue;
    QMatrix pair(model.d(), 2);
    pair << x, *xp;
    if (rank<Rational>(pair) == 2) return {x, *xp};
  }
  throw Error(Errc::InvalidInput, "no non-injectivity witness found on this subspace");
}

}  // namespace slm
