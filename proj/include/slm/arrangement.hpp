#ifndef SLM_ARRANGEMENT_HPP
#define SLM_ARRANGEMENT_HPP

#include "slm/scalar.hpp"

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace slm {

/// Central hyperplane arrangement given by the rows of an exact n x d matrix.
/// Row i holds the coefficients of the linear form l_i.
class Arrangement {
 public:
  Arrangement() = default;
  /// Throws InvalidInput on an empty matrix and ZeroRow on a zero row.
  explicit Arrangement(QMatrix a, std::vector<std::string> labels = {});

  const QMatrix& matrix() const noexcept { return a_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  int states() const noexcept { return static_cast<int>(a_.rows()); }
  int params() const noexcept { return static_cast<int>(a_.cols()); }
  Index rank() const;
  bool essential() const { return rank() == a_.cols(); }

 private:
  QMatrix a_;
  std::vector<std::string> labels_;
};

/// (n-d) x n matrix B with B A = 0 and rank n-d.
struct KernelComplement {
  QMatrix B;
};

/// Sign pattern in {+1,-1}^n, canonicalised so the first entry is +1
/// (a region of projective space is a pair of antipodal cones).
class SignVector {
 public:
  SignVector() = default;
  /// Entries must be +1 or -1; the vector is flipped if it starts with -1.
  explicit SignVector(std::vector<std::int8_t> signs);
  /// Parses "+-+..." (the canonical flip is applied).
  static SignVector parse(const std::string& text);

  const std::vector<std::int8_t>& signs() const noexcept { return signs_; }
  int size() const noexcept { return static_cast<int>(signs_.size()); }
  int operator[](int i) const { return signs_[static_cast<std::size_t>(i)]; }
  std::string str() const;

  /// Lexicographic order on the "+/-" string ('+' sorts before '-').
  auto operator<=>(const SignVector& other) const { return str() <=> other.str(); }
  bool operator==(const SignVector& other) const { return signs_ == other.signs_; }

 private:
  std::vector<std::int8_t> signs_;
};

/// Canonical sign vector of y. Throws OnHyperplane when a coordinate is zero.
SignVector sign_vector_of(const QVector& y);
SignVector sign_vector_of(const Eigen::VectorXd& y);

struct Region {
  SignVector sign;
  /// Exact interior point, scaled so max |coordinate| = 1.
  QVector witness;
};

/// Integer polynomial, coefficients from the leading term down to the constant.
struct CharacteristicPolynomial {
  std::vector<long long> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  long long operator()(long long t) const;
};

struct Flat {
  std::vector<int> subset;
  int rank = 0;
  /// Columns span the intersection of the hyperplanes in `subset`.
  QMatrix basis;
};

struct FlatVerdict {
  Flat flat;
  /// Determinant of the quadratic form A^T A restricted to the flat.
  Rational restricted_det;
  bool nondegenerate = false;
};

struct SncReport {
  std::vector<FlatVerdict> flats;
  bool transverse = false;
};

KernelComplement kernel_complement(const Arrangement& arr);

/// Whitney subset-rank expansion; BudgetExceeded when n > 24.
CharacteristicPolynomial characteristic_polynomial(const Arrangement& arr);

/// |chi(-1)| / 2, the number of regions of the projective complement.
long long ml_degree(const Arrangement& arr);

/// Region count of a generic arrangement of n hyperplanes in P^{d-1},
/// computed as a binomial sum and as a power-series coefficient.
long long generic_ml_degree(int d, int n);

/// Regions of the projective complement, sorted by sign vector.
std::vector<Region> enumerate_regions(const Arrangement& arr);

/// Flats of rank <= max_codim, ordered by rank then subset.
std::vector<Flat> flats(const Arrangement& arr, int max_codim);

/// Transversality of the quadric V(x^T A^T A x) to every flat of codimension <= d-1.
SncReport snc_check(const Arrangement& arr);

/// Throws RankDeficient unless rank(A) = d.
void require_essential(const Arrangement& arr);

/// Throws ParallelRows when two rows are proportional.
void require_no_parallel_rows(const Arrangement& arr);

/// Index pairs (i < j) of proportional rows.
std::vector<std::pair<int, int>> parallel_row_pairs(const QMatrix& a);

}  // namespace slm

#endif  // SLM_ARRANGEMENT_HPP
