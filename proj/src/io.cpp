#include "slm/io.hpp"
#include "slm/error.hpp"
#include "slm/exact.hpp"

namespace slm {

Rational parse_rational_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<unsigned long long>())));
  // The serializer prints the shortest round-trip text, so 0.1 reads as 1/10.
  if (j.is_number_float()) return parse_rational(j.dump());
  throw Error(Errc::InvalidInput, "expected a number or a rational string, got " + j.dump());
}

QVector parse_rational_vector(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(Errc::InvalidInput, "expected a nonempty array");
  QVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = parse_rational_json(j[i]);
  return v;
}

QMatrix parse_rational_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(Errc::InvalidInput, "expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw Error(Errc::InvalidInput, "matrix rows must be nonempty arrays");
  QMatrix m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw Error(Errc::InvalidInput, "matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Index>(i), static_cast<Index>(c)) = parse_rational_json(j[i][c]);
  }
  return m;
}

Eigen::VectorXd parse_double_vector(const Json& j) { return cast_rational<double>(parse_rational_vector(j)); }

Arrangement parse_arrangement(const Json& j) {
  if (!j.is_object() || !j.contains("A")) throw Error(Errc::InvalidInput, "input must be an object with field \"A\"");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw Error(Errc::InvalidInput, "\"labels\" must be an array of strings");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw Error(Errc::InvalidInput, "\"labels\" must be an array of strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return Arrangement(parse_rational_matrix(j["A"]), std::move(labels));
}

Json to_json(const Rational& q) { return to_string(q); }

Json to_json(const QVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

Json to_json(const QMatrix& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(to_json(QVector(m.row(i).transpose())));
  return out;
}

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json indices_json(const std::vector<int>& idx) {
  Json out = Json::array();
  for (int i : idx) out.push_back(i + 1);
  return out;
}

QVector primitive_integer(const QVector& v, int positive) {
  Integer lcm(1), gcd(0);
  for (Index i = 0; i < v.size(); ++i) lcm = boost::multiprecision::lcm(lcm, Integer(boost::multiprecision::denominator(v(i))));
  QVector out = v * Rational(lcm);
  for (Index i = 0; i < out.size(); ++i) gcd = boost::multiprecision::gcd(gcd, Integer(boost::multiprecision::numerator(out(i))));
  if (gcd == 0) throw Error(Errc::ZeroPoint, "cannot normalize the zero vector");
  out /= Rational(gcd);
  Index lead = positive;
  if (lead < 0)
    for (lead = 0; lead < out.size() && out(lead) == 0; ++lead) {
    }
  if (lead < out.size() && out(lead) < 0) out = -out;
  return out;
}

Json region_json(const Region& r) {
  return Json{{"sign", r.sign.str()}, {"witness", to_json(r.witness)}};
}

Json critical_point_json(const CriticalPoint& cp) {
  return Json{{"region", cp.region.str()}, {"x", to_json(cp.x)},         {"y", to_json(cp.y)},
              {"p", to_json(cp.p)},        {"logL", cp.logL},            {"grad_norm", cp.grad_norm},
              {"iterations", cp.iterations}};
}

Json polytope_json(const Polytope& p) {
  Json vertices = Json::array();
  for (const auto& v : p.vertices) vertices.push_back(to_json(v));
  Json facets = Json::array();
  for (std::size_t f = 0; f < p.facets.size(); ++f)
    facets.push_back(Json{{"normal", to_json(p.facets[f].normal)},
                          {"offset", to_json(p.facets[f].offset)},
                          {"vertices", indices_json(p.incidence[f])}});
  return Json{{"dim", p.dim}, {"vertices", vertices}, {"facets", facets}, {"f_vector", p.f_vector}};
}

}  // namespace slm
