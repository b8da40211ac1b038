#include "slm/arrangement.hpp"
#include "slm/error.hpp"
#include "slm/exact.hpp"
#include "slm/lp.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <optional>
#include <set>

namespace slm {

Arrangement::Arrangement(QMatrix a, std::vector<std::string> labels)
    : a_(std::move(a)), labels_(std::move(labels)) {
  if (a_.rows() == 0 || a_.cols() == 0) throw Error(Errc::InvalidInput, "arrangement matrix is empty");
  if (!labels_.empty() && static_cast<Index>(labels_.size()) != a_.rows())
    throw Error(Errc::InvalidInput, "label count does not match the number of rows");
  for (Index i = 0; i < a_.rows(); ++i) {
    bool zero = true;
    for (Index j = 0; j < a_.cols(); ++j) zero = zero && a_(i, j) == 0;
    if (zero) throw Error(Errc::ZeroRow, "row " + std::to_string(i + 1) + " of A is zero");
  }
}

Index Arrangement::rank() const { return slm::rank<Rational>(a_); }

SignVector::SignVector(std::vector<std::int8_t> signs) : signs_(std::move(signs)) {
  for (auto s : signs_)
    if (s != 1 && s != -1) throw Error(Errc::InvalidInput, "sign entries must be +1 or -1");
  if (!signs_.empty() && signs_.front() < 0)
    for (auto& s : signs_) s = static_cast<std::int8_t>(-s);
}

SignVector SignVector::parse(const std::string& text) {
  std::vector<std::int8_t> signs;
  for (char c : text) {
    if (c == '+') signs.push_back(1);
    else if (c == '-') signs.push_back(-1);
    else throw Error(Errc::InvalidInput, "sign vector must use '+' and '-': " + text);
  }
  return SignVector(std::move(signs));
}

std::string SignVector::str() const {
  std::string out;
  out.reserve(signs_.size());
  for (auto s : signs_) out.push_back(s > 0 ? '+' : '-');
  return out;
}

SignVector sign_vector_of(const QVector& y) {
  std::vector<std::int8_t> signs(static_cast<std::size_t>(y.size()));
  for (Index i = 0; i < y.size(); ++i) {
    const int s = y(i).sign();
    if (s == 0) throw Error(Errc::OnHyperplane, "point lies on hyperplane " + std::to_string(i + 1));
    signs[static_cast<std::size_t>(i)] = static_cast<std::int8_t>(s);
  }
  return SignVector(std::move(signs));
}

SignVector sign_vector_of(const Eigen::VectorXd& y) {
  std::vector<std::int8_t> signs(static_cast<std::size_t>(y.size()));
  for (Index i = 0; i < y.size(); ++i) {
    if (y(i) == 0.0) throw Error(Errc::OnHyperplane, "point lies on hyperplane " + std::to_string(i + 1));
    signs[static_cast<std::size_t>(i)] = y(i) > 0 ? 1 : -1;
  }
  return SignVector(std::move(signs));
}

long long CharacteristicPolynomial::operator()(long long t) const {
  long long v = 0;
  for (long long c : coeffs) v = v * t + c;
  return v;
}

void require_essential(const Arrangement& arr) {
  if (!arr.essential())
    throw Error(Errc::RankDeficient, "rank(A) = " + std::to_string(arr.rank()) + " < d = " +
                                         std::to_string(arr.params()));
}

std::vector<std::pair<int, int>> parallel_row_pairs(const QMatrix& a) {
  std::vector<std::pair<int, int>> out;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = i + 1; j < a.rows(); ++j) {
      QMatrix two(2, a.cols());
      two << a.row(i), a.row(j);
      if (rank<Rational>(two) < 2) out.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return out;
}

void require_no_parallel_rows(const Arrangement& arr) {
  const auto pairs = parallel_row_pairs(arr.matrix());
  if (!pairs.empty())
    throw Error(Errc::ParallelRows, "rows " + std::to_string(pairs.front().first + 1) + " and " +
                                        std::to_string(pairs.front().second + 1) + " are parallel");
}

KernelComplement kernel_complement(const Arrangement& arr) {
  require_essential(arr);
  // Kernel of A^T from its reduced echelon form: one row per free column.
  return {left_kernel<Rational>(arr.matrix())};
}

namespace {

// Row-echelon basis grown one row at a time; every stored row has a unit
// pivot and zeros at the pivots of rows stored before it.
class IncrementalEchelon {
 public:
  explicit IncrementalEchelon(Index width) : width_(width) {}

  // Returns true (and stores the reduced row) when v is independent.
  bool push(QVector v) {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Rational& c = v(pivots_[k]);
      if (c != 0) v -= c * rows_[k];
    }
    for (Index j = 0; j < width_; ++j) {
      if (v(j) != 0) {
        v /= Rational(v(j));
        rows_.push_back(std::move(v));
        pivots_.push_back(j);
        return true;
      }
    }
    return false;
  }

  void pop() {
    rows_.pop_back();
    pivots_.pop_back();
  }

  Index rank() const { return static_cast<Index>(rows_.size()); }

 private:
  Index width_;
  std::vector<QVector> rows_;
  std::vector<Index> pivots_;
};

// counts[parity][rank] over all subsets reachable below `i`.
void whitney_walk(const QMatrix& a, Index i, int parity, IncrementalEchelon& basis,
                  std::vector<std::array<long long, 2>>& counts) {
  if (i == a.rows()) {
    counts[static_cast<std::size_t>(basis.rank())][static_cast<std::size_t>(parity)] += 1;
    return;
  }
  whitney_walk(a, i + 1, parity, basis, counts);
  const bool grew = basis.push(a.row(i).transpose());
  whitney_walk(a, i + 1, parity ^ 1, basis, counts);
  if (grew) basis.pop();
}

}  // namespace

CharacteristicPolynomial characteristic_polynomial(const Arrangement& arr) {
  const int n = arr.states();
  const int d = arr.params();
  if (n > 24) throw Error(Errc::BudgetExceeded, "characteristic polynomial limited to n <= 24");
  std::vector<std::array<long long, 2>> counts(static_cast<std::size_t>(d) + 1, {0, 0});
  IncrementalEchelon basis(d);
  whitney_walk(arr.matrix(), 0, 0, basis, counts);
  // chi(t) = sum_S (-1)^|S| t^(d - rank S); coefficient of t^(d-r) sits at index r.
  CharacteristicPolynomial chi;
  chi.coeffs.assign(static_cast<std::size_t>(d) + 1, 0);
  for (int r = 0; r <= d; ++r)
    chi.coeffs[static_cast<std::size_t>(r)] =
        counts[static_cast<std::size_t>(r)][0] - counts[static_cast<std::size_t>(r)][1];
  return chi;
}

long long ml_degree(const Arrangement& arr) {
  require_essential(arr);
  return std::llabs(characteristic_polynomial(arr)(-1)) / 2;
}

long long generic_ml_degree(int d, int n) {
  if (!(n > d && d > 1)) throw Error(Errc::InvalidInput, "generic_ml_degree needs n > d > 1");
  long long by_binomials = 0;
  for (int i = 0; i < d; ++i) by_binomials += binomial(n - 1, i);

  // Coefficient of z^(d-1) in 1 / ((1-z)^(n-d) (1-2z)): start from the series
  // of 1/(1-2z) and divide by (1-z) n-d times (each division is a prefix sum).
  std::vector<long long> series(static_cast<std::size_t>(d));
  long long power = 1;
  for (auto& c : series) {
    c = power;
    power *= 2;
  }
  for (int k = 0; k < n - d; ++k)
    for (std::size_t j = 1; j < series.size(); ++j) series[j] += series[j - 1];
  const long long by_series = series.back();

  if (by_binomials != by_series)
    throw Error(Errc::InvalidInput, "binomial sum and generating function disagree");
  return by_binomials;
}

std::vector<Region> enumerate_regions(const Arrangement& arr) {
  require_essential(arr);
  require_no_parallel_rows(arr);
  const QMatrix& a = arr.matrix();
  const Index n = a.rows();

  struct Cell {
    std::vector<std::int8_t> signs;
    QVector witness;
  };
  // The first hyperplane is oriented positively (canonical representative).
  std::vector<Cell> cells{{{1}, a.row(0).transpose()}};

  auto solve_cell = [&](const std::vector<std::int8_t>& signs) -> std::optional<QVector> {
    const Index m = static_cast<Index>(signs.size());
    QMatrix g(m, a.cols());
    for (Index i = 0; i < m; ++i) g.row(i) = Rational(signs[static_cast<std::size_t>(i)]) * a.row(i);
    return feasible_point(g, QVector::Ones(m));
  };

  for (Index h = 1; h < n; ++h) {
    std::vector<Cell> next;
    next.reserve(cells.size() * 2);
    for (auto& cell : cells) {
      const Rational value = a.row(h).dot(cell.witness);
      for (std::int8_t side : {std::int8_t{1}, std::int8_t{-1}}) {
        auto signs = cell.signs;
        signs.push_back(side);
        if (value.sign() == side) {
          next.push_back({std::move(signs), cell.witness});
        } else if (auto x = solve_cell(signs)) {
          next.push_back({std::move(signs), std::move(*x)});
        }
      }
    }
    cells = std::move(next);
  }

  std::vector<Region> regions;
  regions.reserve(cells.size());
  for (auto& cell : cells) {
    Rational scale(0);
    for (Index j = 0; j < cell.witness.size(); ++j) scale = std::max(scale, Rational(abs(cell.witness(j))));
    regions.push_back({SignVector(std::move(cell.signs)), cell.witness / scale});
  }
  std::sort(regions.begin(), regions.end(),
            [](const Region& x, const Region& y) { return x.sign < y.sign; });
  return regions;
}

namespace {

std::vector<int> closure(const QMatrix& a, const std::vector<int>& subset) {
  const QMatrix rows = select_rows(a, subset);
  const Index r = subset.empty() ? 0 : rank<Rational>(rows);
  std::vector<int> out;
  for (int i = 0; i < a.rows(); ++i) {
    if (std::find(subset.begin(), subset.end(), i) != subset.end()) {
      out.push_back(i);
      continue;
    }
    QMatrix extended(rows.rows() + 1, a.cols());
    if (rows.rows() > 0) extended.topRows(rows.rows()) = rows;
    extended.row(rows.rows()) = a.row(i);
    if (rank<Rational>(extended) == r) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<Flat> flats(const Arrangement& arr, int max_codim) {
  require_essential(arr);
  const QMatrix& a = arr.matrix();
  const int d = arr.params();
  max_codim = std::clamp(max_codim, 0, d);

  std::vector<std::set<std::vector<int>>> levels(static_cast<std::size_t>(max_codim) + 1);
  levels[0].insert(closure(a, {}));
  for (int r = 0; r < max_codim; ++r) {
    for (const auto& f : levels[static_cast<std::size_t>(r)]) {
      for (int e = 0; e < a.rows(); ++e) {
        if (std::find(f.begin(), f.end(), e) != f.end()) continue;
        auto g = f;
        g.push_back(e);
        std::sort(g.begin(), g.end());
        levels[static_cast<std::size_t>(r) + 1].insert(closure(a, g));
      }
    }
  }

  std::vector<Flat> out;
  for (int r = 0; r <= max_codim; ++r) {
    for (const auto& subset : levels[static_cast<std::size_t>(r)]) {
      Flat f;
      f.subset = subset;
      f.rank = r;
      f.basis = subset.empty() ? QMatrix(QMatrix::Identity(d, d)) : nullspace<Rational>(select_rows(a, subset));
      out.push_back(std::move(f));
    }
  }
  return out;
}

SncReport snc_check(const Arrangement& arr) {
  require_essential(arr);
  const QMatrix gram = arr.matrix().transpose() * arr.matrix();
  SncReport report;
  report.transverse = true;
  for (auto& f : flats(arr, arr.params() - 1)) {
    FlatVerdict v;
    const QMatrix restricted = f.basis.transpose() * gram * f.basis;
    v.restricted_det = determinant<Rational>(restricted);
    v.nondegenerate = v.restricted_det != 0;
    report.transverse = report.transverse && v.nondegenerate;
    v.flat = std::move(f);
    report.flats.push_back(std::move(v));
  }
  return report;
}

}  // namespace slm
