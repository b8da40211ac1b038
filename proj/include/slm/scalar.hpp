#ifndef SLM_SCALAR_HPP
#define SLM_SCALAR_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace slm {

/// Exact rational scalar. Expression templates are off so the type behaves
/// like a plain value inside Eigen expressions.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = MatrixX<Rational>;
using QVector = VectorX<Rational>;
using Index = Eigen::Index;

template <class Scalar>
inline constexpr bool is_exact_v = std::is_same_v<Scalar, Rational>;

/// Parses "p", "p/q", "-p/q", or a decimal literal such as "0.25" or "1e-3".
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Converts an exact rational to a floating scalar. Numerator and denominator
/// are converted separately so 1/3 is correctly rounded in quad precision.
template <class Scalar>
Scalar rational_to(const Rational& q) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return q;
  } else if constexpr (std::is_same_v<Scalar, double>) {
    return to_double(q);
  } else {
    const Integer num = boost::multiprecision::numerator(q);
    const Integer den = boost::multiprecision::denominator(q);
    const Integer limit = Integer(1) << 53;
    if (abs(num) < limit && den < limit) {
      return Scalar(num.convert_to<double>()) / Scalar(den.convert_to<double>());
    }
    return Scalar(num.str()) / Scalar(den.str());
  }
}

template <class Scalar>
MatrixX<Scalar> cast_rational(const QMatrix& m) {
  MatrixX<Scalar> out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = rational_to<Scalar>(m(i, j));
  return out;
}

template <class Scalar>
VectorX<Scalar> cast_rational(const QVector& v) {
  VectorX<Scalar> out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = rational_to<Scalar>(v(i));
  return out;
}

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational from_double(double v);

/// Lossless for the magnitudes used here (vectors stay well inside double range).
template <class Scalar>
double to_double_scalar(const Scalar& v) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return v;
  } else {
    return v.template convert_to<double>();
  }
}

template <class Scalar>
Eigen::VectorXd to_double_vector(const VectorX<Scalar>& v) {
  Eigen::VectorXd out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = to_double_scalar(v(i));
  return out;
}

inline int sign_of(const Rational& q) { return q.sign(); }

template <class Scalar>
int sign_of(const Scalar& v) {
  return (v > Scalar(0)) - (v < Scalar(0));
}

}  // namespace slm

#endif  // SLM_SCALAR_HPP
