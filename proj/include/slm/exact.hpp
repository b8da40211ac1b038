#ifndef SLM_EXACT_HPP
#define SLM_EXACT_HPP

#include "slm/scalar.hpp"

#include <optional>
#include <vector>

namespace slm {

/// Reduced row echelon form together with its pivot columns.
template <class Scalar>
struct Echelon {
  MatrixX<Scalar> reduced;
  std::vector<Index> pivots;

  Index rank() const { return static_cast<Index>(pivots.size()); }
};

/// Entries with |v| <= tol count as zero. For Rational the default tol = 0 is exact.
template <class Scalar>
bool negligible(const Scalar& v, const Scalar& tol) {
  using std::abs;
  return abs(v) <= tol;
}

template <class Scalar>
Echelon<Scalar> rref(MatrixX<Scalar> m, const Scalar& tol = Scalar(0)) {
  using std::abs;
  Echelon<Scalar> out;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index best = -1;
    Scalar best_abs(0);
    for (Index r = row; r < m.rows(); ++r) {
      if (negligible(m(r, col), tol)) continue;
      if constexpr (is_exact_v<Scalar>) {
        best = r;
        break;
      } else {
        const Scalar a = abs(m(r, col));
        if (best < 0 || a > best_abs) {
          best = r;
          best_abs = a;
        }
      }
    }
    if (best < 0) {
      if constexpr (!is_exact_v<Scalar>) m.block(row, col, m.rows() - row, 1).setZero();
      continue;
    }
    m.row(best).swap(m.row(row));
    const Scalar pivot = m(row, col);
    m.row(row) /= pivot;
    for (Index r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const Scalar factor = m(r, col);
      if (factor == Scalar(0)) continue;
      m.row(r) -= factor * m.row(row);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <class Scalar>
Index rank(const MatrixX<Scalar>& m, const Scalar& tol = Scalar(0)) {
  return rref(m, tol).rank();
}

/// Basis of {v : m v = 0} as columns, read off the reduced echelon form
/// (free variable set to 1, others 0). Deterministic for exact input.
template <class Scalar>
MatrixX<Scalar> nullspace(const MatrixX<Scalar>& m, const Scalar& tol = Scalar(0)) {
  const Echelon<Scalar> e = rref(m, tol);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  MatrixX<Scalar> basis = MatrixX<Scalar>::Zero(m.cols(), m.cols() - e.rank());
  Index k = 0;
  for (Index f = 0; f < m.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    basis(f, k) = Scalar(1);
    for (Index r = 0; r < e.rank(); ++r) basis(e.pivots[static_cast<std::size_t>(r)], k) = -e.reduced(r, f);
    ++k;
  }
  return basis;
}

/// Rows spanning {w : w^T m = 0}.
template <class Scalar>
MatrixX<Scalar> left_kernel(const MatrixX<Scalar>& m, const Scalar& tol = Scalar(0)) {
  return nullspace<Scalar>(m.transpose(), tol).transpose();
}

template <class Scalar>
Scalar determinant(MatrixX<Scalar> m) {
  using std::abs;
  const Index n = m.rows();
  Scalar det(1);
  for (Index col = 0; col < n; ++col) {
    Index best = -1;
    for (Index r = col; r < n; ++r) {
      if (m(r, col) == Scalar(0)) continue;
      if constexpr (is_exact_v<Scalar>) {
        best = r;
        break;
      } else {
        if (best < 0 || abs(m(r, col)) > abs(m(best, col))) best = r;
      }
    }
    if (best < 0) return Scalar(0);
    if (best != col) {
      m.row(best).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Index r = col + 1; r < n; ++r) {
      if (m(r, col) == Scalar(0)) continue;
      const Scalar factor = m(r, col) / m(col, col);
      m.row(r).tail(n - col) -= factor * m.row(col).tail(n - col);
    }
  }
  return det;
}

/// Solves a square system exactly; nullopt when singular.
template <class Scalar>
std::optional<MatrixX<Scalar>> solve_square(const MatrixX<Scalar>& a, const MatrixX<Scalar>& b) {
  MatrixX<Scalar> aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  const Echelon<Scalar> e = rref(aug);
  if (e.rank() < a.rows() || e.pivots.back() >= a.cols()) return std::nullopt;
  return MatrixX<Scalar>(e.reduced.rightCols(b.cols()));
}

template <class Scalar>
std::optional<MatrixX<Scalar>> inverse(const MatrixX<Scalar>& a) {
  return solve_square<Scalar>(a, MatrixX<Scalar>::Identity(a.rows(), a.rows()));
}

/// Some x with a x = b when b lies in the column space, else nullopt.
template <class Scalar>
std::optional<VectorX<Scalar>> solve_consistent(const MatrixX<Scalar>& a, const VectorX<Scalar>& b) {
  MatrixX<Scalar> aug(a.rows(), a.cols() + 1);
  aug << a, b;
  const Echelon<Scalar> e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  VectorX<Scalar> x = VectorX<Scalar>::Zero(a.cols());
  for (Index r = 0; r < e.rank(); ++r) x(e.pivots[static_cast<std::size_t>(r)]) = e.reduced(r, a.cols());
  return x;
}

/// Rows of m indexed by `rows`.
template <class Derived>
MatrixX<typename Derived::Scalar> select_rows(const Eigen::MatrixBase<Derived>& m,
                                              const std::vector<int>& rows) {
  MatrixX<typename Derived::Scalar> out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = m.row(rows[i]);
  return out;
}

template <class Derived>
MatrixX<typename Derived::Scalar> select_cols(const Eigen::MatrixBase<Derived>& m,
                                              const std::vector<int>& cols) {
  MatrixX<typename Derived::Scalar> out(m.rows(), static_cast<Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(static_cast<Index>(j)) = m.col(cols[j]);
  return out;
}

/// All k-subsets of {0, ..., n-1} in lexicographic order.
std::vector<std::vector<int>> k_subsets(int n, int k);

/// Binomial coefficient as a 64-bit integer (callers stay in range).
long long binomial(long long n, long long k);

}  // namespace slm

#endif  // SLM_EXACT_HPP
