#include "slm/exact.hpp"
#include "slm/error.hpp"

#include <cmath>
#include <numeric>

namespace slm {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// Decimal digits to an integer; leading zeros would otherwise select octal.
Integer from_digits(std::string_view digits) {
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  return Integer{std::string(digits)};
}

Integer parse_integer(std::string_view s) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (!all_digits(digits)) throw Error(Errc::InvalidInput, "not an integer: '" + std::string(s) + "'");
  const Integer v = from_digits(digits);
  return (!s.empty() && s.front() == '-') ? Integer(-v) : v;
}

// Decimal literal with optional fraction and exponent, parsed exactly.
Rational parse_decimal(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  const auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    const Integer e = parse_integer(s.substr(epos + 1));
    exponent = e.convert_to<long>();
    s = s.substr(0, epos);
  }
  std::string digits;
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(s);
  } else {
    digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    exponent -= static_cast<long>(s.size() - dot - 1);
  }
  if (!all_digits(digits)) throw Error(Errc::InvalidInput, "not a number: '" + std::string(s) + "'");
  Rational value{from_digits(digits)};
  const Rational ten(10);
  Rational scale(1);
  for (long i = 0; i < std::labs(exponent); ++i) scale *= ten;
  value = exponent >= 0 ? value * scale : value / scale;
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw Error(Errc::InvalidInput, "empty rational");
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Integer num = parse_integer(text.substr(0, slash));
  const Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw Error(Errc::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& q) {
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return boost::multiprecision::numerator(q).str();
  return q.str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational from_double(double v) {
  if (!std::isfinite(v)) throw Error(Errc::InvalidInput, "non-finite value");
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  // 53 mantissa bits make the scaled value an exact integer.
  const double scaled = std::ldexp(mant, 53);
  Rational out{Integer(static_cast<long long>(scaled))};
  exp -= 53;
  const Rational two(2);
  Rational factor(1);
  for (int i = 0; i < std::abs(exp); ++i) factor *= two;
  return exp >= 0 ? out * factor : out / factor;
}

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::ZeroRow: return "ZeroRow";
    case Errc::RankDeficient: return "RankDeficient";
    case Errc::ParallelRows: return "ParallelRows";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ZeroPoint: return "ZeroPoint";
    case Errc::OnHyperplane: return "OnHyperplane";
    case Errc::DegenerateLeadingBlock: return "DegenerateLeadingBlock";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::BoundaryData: return "BoundaryData";
    case Errc::SingularGram: return "SingularGram";
    case Errc::AnchorNotUnique: return "AnchorNotUnique";
    case Errc::PathLost: return "PathLost";
    case Errc::ZeroCoordinate: return "ZeroCoordinate";
    case Errc::DegenerateMinor: return "DegenerateMinor";
    case Errc::DimensionUnsupported: return "DimensionUnsupported";
    case Errc::ReductionFailed: return "ReductionFailed";
  }
  return "Unknown";
}

bool is_numeric_failure(Errc code) {
  return code == Errc::NoConvergence || code == Errc::PathLost;
}

std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> current(static_cast<std::size_t>(k));
  std::iota(current.begin(), current.end(), 0);
  while (true) {
    out.push_back(current);
    int i = k - 1;
    while (i >= 0 && current[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++current[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

long long binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long out = 1;
  for (long long i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

}  // namespace slm
