#ifndef SLM_TESTS_ORACLES_HPP
#define SLM_TESTS_ORACLES_HPP

// Independent reference computations. None of these call into the library's
// combinatorics or solvers; they only share the scalar types.

#include "slm/scalar.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using slm::Index;
using slm::QMatrix;
using slm::QVector;
using slm::Rational;

/// Determinant by cofactor expansion along the first row.
inline Rational laplace_det(const QMatrix& m) {
  const Index n = m.rows();
  if (n == 0) return Rational(1);
  if (n == 1) return m(0, 0);
  Rational total(0);
  for (Index c = 0; c < n; ++c) {
    if (m(0, c) == 0) continue;
    QMatrix minor(n - 1, n - 1);
    for (Index r = 1; r < n; ++r)
      for (Index k = 0, col = 0; k < n; ++k)
        if (k != c) minor(r - 1, col++) = m(r, k);
    const Rational term = m(0, c) * laplace_det(minor);
    total += (c % 2 == 0) ? term : Rational(-term);
  }
  return total;
}

inline QMatrix pick_cols(const QMatrix& m, const std::vector<int>& cols) {
  QMatrix out(m.rows(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Index>(j)) = m.col(cols[j]);
  return out;
}

inline QMatrix pick_rows(const QMatrix& m, const std::vector<int>& rows) {
  QMatrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

/// All k-subsets of {0..n-1} in lexicographic order, by bitmask filtering.
inline std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != k) continue;
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Characteristic polynomial by the Whitney sum over all subsets of rows,
/// with ranks from a floating full-pivot LU. Leading coefficient first.
inline std::vector<long long> whitney_char_poly(const QMatrix& a) {
  const int n = static_cast<int>(a.rows());
  const int d = static_cast<int>(a.cols());
  const Eigen::MatrixXd ad = slm::cast_rational<double>(a);
  std::vector<long long> coeffs(static_cast<std::size_t>(d + 1), 0);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> rows;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) rows.push_back(i);
    int r = 0;
    if (!rows.empty()) {
      Eigen::MatrixXd sub(static_cast<Index>(rows.size()), d);
      for (std::size_t i = 0; i < rows.size(); ++i) sub.row(static_cast<Index>(i)) = ad.row(rows[i]);
      Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
      lu.setThreshold(1e-9);
      r = static_cast<int>(lu.rank());
    }
    // t^{d-r} sits at position r from the leading term.
    coeffs[static_cast<std::size_t>(r)] += (rows.size() % 2 == 0) ? 1 : -1;
  }
  return coeffs;
}

/// sum_{i<d} binom(n-1, i): regions of a generic arrangement, counted directly.
inline long long generic_region_count(int d, int n) {
  long long total = 0;
  for (int i = 0; i < d; ++i) {
    long long c = 1;
    for (int k = 0; k < i; ++k) c = c * (n - 1 - k) / (k + 1);
    total += c;
  }
  return total;
}

/// Canonical sign strings (first entry +) of A x over random directions x.
inline std::set<std::string> sampled_regions(const Eigen::MatrixXd& a, int samples, std::mt19937& rng) {
  std::normal_distribution<double> g;
  std::set<std::string> out;
  for (int t = 0; t < samples; ++t) {
    Eigen::VectorXd x(a.cols());
    for (Index k = 0; k < x.size(); ++k) x(k) = g(rng);
    Eigen::VectorXd y = a * x;
    if (y(0) < 0) y = -y;
    std::string s;
    for (Index i = 0; i < y.size(); ++i) s += y(i) > 0 ? '+' : '-';
    out.insert(s);
  }
  return out;
}

/// sum s_i log l_i^2 - (sum s) log sum l_j^2, written out directly.
inline double log_likelihood(const Eigen::MatrixXd& a, const Eigen::VectorXd& s, const Eigen::VectorXd& x) {
  const Eigen::VectorXd y = a * x;
  double total = 0;
  for (Index i = 0; i < y.size(); ++i) total += s(i) * std::log(y(i) * y(i));
  return total - s.sum() * std::log(y.squaredNorm());
}

/// Central differences.
inline Eigen::VectorXd fd_gradient(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                   double h) {
  Eigen::VectorXd g(x.size());
  for (Index k = 0; k < x.size(); ++k) {
    Eigen::VectorXd xp = x, xm = x;
    xp(k) += h;
    xm(k) -= h;
    g(k) = (f(xp) - f(xm)) / (2 * h);
  }
  return g;
}

/// For d = 2: maximizer of the log-likelihood over the arc of angles whose
/// canonical sign pattern equals `region`, by scanning `points` angles in [0, pi).
/// Returns the angle, or NaN when no grid point lies in the region.
inline double grid_argmax_angle(const Eigen::MatrixXd& a, const Eigen::VectorXd& s, const std::string& region,
                                int points) {
  double best = -INFINITY, arg = NAN;
  for (int k = 0; k < points; ++k) {
    const double th = std::numbers::pi * (k + 0.5) / points;
    const Eigen::Vector2d x(std::cos(th), std::sin(th));
    Eigen::VectorXd y = a * x;
    if (y(0) < 0) y = -y;
    std::string sig;
    for (Index i = 0; i < y.size(); ++i) sig += y(i) > 0 ? '+' : '-';
    if (sig != region) continue;
    const double v = log_likelihood(a, s, x);
    if (v > best) {
      best = v;
      arg = th;
    }
  }
  return arg;
}

/// Angle of x in [0, pi).
inline double angle_of(const Eigen::VectorXd& x) {
  double th = std::atan2(x(1), x(0));
  if (th < 0) th += std::numbers::pi;
  if (th >= std::numbers::pi) th -= std::numbers::pi;
  return th;
}

/// Distance between two angles modulo pi.
inline double angle_gap(double a, double b) {
  const double d = std::fmod(std::abs(a - b), std::numbers::pi);
  return std::min(d, std::numbers::pi - d);
}

/// Random integer n x d matrix all of whose d x d row minors are nonzero.
inline QMatrix generic_matrix(int n, int d, std::mt19937& rng, int range = 9) {
  std::uniform_int_distribution<int> u(-range, range);
  for (;;) {
    QMatrix a(n, d);
    for (Index i = 0; i < n; ++i)
      for (Index k = 0; k < d; ++k) a(i, k) = u(rng);
    bool ok = true;
    for (const auto& rows : subsets(n, d)) {
      if (laplace_det(pick_rows(a, rows)) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) return a;
  }
}

/// Random strictly positive data vector.
inline Eigen::VectorXd positive_data(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Eigen::VectorXd s(n);
  for (Index i = 0; i < n; ++i) s(i) = u(rng);
  return s;
}

}  // namespace oracle

#endif  // SLM_TESTS_ORACLES_HPP
