#include "slm/lp.hpp"

#include <vector>

namespace slm {

// Standard form: G u - G v - s + a = b (rows sign-flipped so b >= 0),
// u, v, s, a >= 0. Minimise sum(a); feasible iff the optimum is zero.
std::optional<QVector> feasible_point(const QMatrix& G, const QVector& b) {
  const Index m = G.rows();
  const Index d = G.cols();
  if (m == 0) return QVector::Zero(d);

  const Index n_cols = 2 * d + 2 * m;
  const Index rhs = n_cols;
  QMatrix t = QMatrix::Zero(m + 1, n_cols + 1);
  std::vector<Index> basis(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) {
    const Rational sign = b(i) < 0 ? Rational(-1) : Rational(1);
    for (Index j = 0; j < d; ++j) {
      t(i, j) = sign * G(i, j);
      t(i, d + j) = -sign * G(i, j);
    }
    t(i, 2 * d + i) = -sign;
    t(i, 2 * d + m + i) = Rational(1);
    t(i, rhs) = sign * b(i);
    basis[static_cast<std::size_t>(i)] = 2 * d + m + i;
  }
  // Reduced costs of the phase-one objective with the artificial basis.
  for (Index j = 0; j < 2 * d + m; ++j) {
    Rational c(0);
    for (Index i = 0; i < m; ++i) c -= t(i, j);
    t(m, j) = c;
  }
  {
    Rational c(0);
    for (Index i = 0; i < m; ++i) c -= t(i, rhs);
    t(m, rhs) = c;
  }

  while (true) {
    Index enter = -1;
    for (Index j = 0; j < n_cols; ++j) {
      if (t(m, j) < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Index leave = -1;
    Rational best_ratio;
    for (Index i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      const Rational ratio = t(i, rhs) / t(i, enter);
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    // Phase one is bounded below by zero, so a ratio row always exists.
    if (leave < 0) break;

    const Rational pivot = t(leave, enter);
    t.row(leave) /= pivot;
    for (Index i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const Rational factor = t(i, enter);
      if (factor == 0) continue;
      t.row(i) -= factor * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  if (t(m, rhs) != 0) return std::nullopt;

  QVector x = QVector::Zero(d);
  for (Index i = 0; i < m; ++i) {
    const Index var = basis[static_cast<std::size_t>(i)];
    if (var < d) x(var) += t(i, rhs);
    else if (var < 2 * d) x(var - d) -= t(i, rhs);
  }
  return x;
}

}  // namespace slm
