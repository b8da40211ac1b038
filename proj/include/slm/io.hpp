#ifndef SLM_IO_HPP
#define SLM_IO_HPP

#include "slm/degeneration.hpp"
#include "slm/dpp.hpp"
#include "slm/geometry.hpp"

#include <json.hpp>

namespace slm {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "slm/1";

/// Accepts integers, decimal numbers (read exactly from their text) and "p/q" strings.
Rational parse_rational_json(const Json& j);
QVector parse_rational_vector(const Json& j);
QMatrix parse_rational_matrix(const Json& j);
Eigen::VectorXd parse_double_vector(const Json& j);

/// {"A": [[...]], "labels": [...]}; throws InvalidInput on malformed input.
Arrangement parse_arrangement(const Json& j);

Json to_json(const Rational& q);
Json to_json(const QVector& v);
Json to_json(const QMatrix& m);
Json to_json(const Eigen::VectorXd& v);
/// 1-based indices.
Json indices_json(const std::vector<int>& idx);

/// Scales a nonzero rational vector to coprime integers, with the first
/// nonzero entry (or the entry at `positive`, when given) positive.
QVector primitive_integer(const QVector& v, int positive = -1);

Json region_json(const Region& r);
Json critical_point_json(const CriticalPoint& cp);
Json polytope_json(const Polytope& p);

}  // namespace slm

#endif  // SLM_IO_HPP
