#include "slm/geometry.hpp"
#include "slm/error.hpp"
#include "slm/exact.hpp"

#include <random>
#include <sstream>

namespace slm {

void require_model_point(const SquaredLinearModel& model, const QVector& y) {
  if (y.size() != model.n()) throw Error(Errc::InvalidInput, "model point has the wrong length");
  if (!(model.B() * y).isZero()) throw Error(Errc::InvalidInput, "model point is not in the kernel of B");
  for (Index i = 0; i < y.size(); ++i)
    if (y(i) == 0) throw Error(Errc::ZeroCoordinate, "y_" + std::to_string(i + 1) + " = 0");
}

QVector model_point(const SquaredLinearModel& model, const QVector& x) {
  if (x.size() != model.d()) throw Error(Errc::InvalidInput, "parameter point has the wrong length");
  return model.A() * x;
}

namespace {

// B Y^{-1}: column j of B divided by y_j.
QMatrix scaled_kernel(const SquaredLinearModel& model, const QVector& y) {
  QMatrix m = model.B();
  for (Index j = 0; j < m.cols(); ++j) m.col(j) /= y(j);
  return m;
}

}  // namespace

Polytope lognormal_polytope(const SquaredLinearModel& model, const QVector& y) {
  require_model_point(model, y);
  const int n = model.n();
  const int m = n - model.d() + 1;
  QMatrix bt(m, n);
  bt.row(0) = QVector::Ones(n).transpose();
  bt.bottomRows(m - 1) = scaled_kernel(model, y);

  // Extreme rays of {z : z^T Bt >= 0}: each is orthogonal to m-1 columns.
  std::vector<QVector> vertices;
  for (const auto& cols : k_subsets(n, m - 1)) {
    const QMatrix kernel = nullspace<Rational>(QMatrix(select_cols(bt, cols).transpose()));
    if (kernel.cols() != 1) continue;
    QVector v = (kernel.col(0).transpose() * bt).transpose();
    bool neg = false, pos = false;
    for (Index i = 0; i < n; ++i) {
      neg = neg || v(i) < 0;
      pos = pos || v(i) > 0;
    }
    if (neg && pos) continue;
    if (neg) v = -v;
    for (Index i = 0; i < n; ++i) v(i) *= y(i) * y(i);
    vertices.push_back(v / v.sum());
  }
  std::vector<Facet> orthant;
  for (int i = 0; i < n; ++i) {
    QVector e = QVector::Zero(n);
    e(i) = 1;
    orthant.push_back({e, Rational(0)});
  }
  return polytope_from_vertices(std::move(vertices), orthant);
}

Polytope dual_polytope(const SquaredLinearModel& model, const QVector& y) {
  require_model_point(model, y);
  const QMatrix m = scaled_kernel(model, y);
  std::vector<QVector> points;
  for (Index j = 0; j < m.cols(); ++j) points.push_back(m.col(j));
  return convex_hull(points);
}

ChamberArrangement chamber_arrangement(const SquaredLinearModel& model) {
  const int n = model.n();
  const int d = model.d();
  ChamberArrangement out;
  for (int i = 0; i < n; ++i) out.hyperplanes.push_back({{i}, model.A().row(i).transpose()});

  // det [y_C; B_C] expanded along its first row, with y = A x.
  for (const auto& subset : k_subsets(n, n - d + 1)) {
    QVector normal = QVector::Zero(d);
    for (std::size_t k = 0; k < subset.size(); ++k) {
      std::vector<int> rest = subset;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      const Rational minor = determinant<Rational>(select_cols(model.B(), rest));
      const Rational sign = k % 2 == 0 ? Rational(1) : Rational(-1);
      normal += sign * minor * model.A().row(subset[k]).transpose();
    }
    if (normal.isZero()) {
      std::ostringstream msg;
      msg << "determinantal form for states {";
      for (std::size_t k = 0; k < subset.size(); ++k) msg << (k ? "," : "") << subset[k] + 1;
      msg << "} vanishes identically";
      throw Error(Errc::DegenerateMinor, msg.str());
    }
    out.hyperplanes.push_back({subset, normal});
  }

  std::vector<QVector> kept;
  std::vector<int> kept_index;
  for (std::size_t h = 0; h < out.hyperplanes.size(); ++h) {
    const QVector& v = out.hyperplanes[h].normal;
    int dup = -1;
    for (std::size_t k = 0; k < kept.size() && dup < 0; ++k) {
      QMatrix two(2, d);
      two << kept[k].transpose(), v.transpose();
      if (rank<Rational>(two) < 2) dup = kept_index[k];
    }
    if (dup >= 0) {
      out.duplicates.emplace_back(static_cast<int>(h), dup);
    } else {
      kept.push_back(v);
      kept_index.push_back(static_cast<int>(h));
    }
  }
  QMatrix a(static_cast<Index>(kept.size()), d);
  for (std::size_t k = 0; k < kept.size(); ++k) a.row(static_cast<Index>(k)) = kept[k].transpose();
  out.deduplicated = Arrangement(a);
  return out;
}

std::string TypeSignature::str() const {
  std::ostringstream out;
  out << "f=(";
  for (std::size_t k = 0; k < f_vector.size(); ++k) out << (k ? "," : "") << f_vector[k];
  out << ") deg=(";
  for (std::size_t k = 0; k < vertex_degrees.size(); ++k) out << (k ? "," : "") << vertex_degrees[k];
  out << ")";
  return out.str();
}

TypeSignature type_signature(const Polytope& p) { return {p.f_vector, vertex_degrees(p)}; }

std::vector<ChamberRegionReport> combinatorial_type_scan(const SquaredLinearModel& model, int samples_per_region,
                                                         unsigned seed) {
  if (model.d() > 3) throw Error(Errc::DimensionUnsupported, "chamber scans are limited to d <= 3");
  if (samples_per_region < 1) throw Error(Errc::InvalidInput, "need at least one sample per region");
  const ChamberArrangement ch = chamber_arrangement(model);
  const QMatrix& h = ch.deduplicated.matrix();
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coord(-50, 50);

  std::vector<ChamberRegionReport> out;
  for (const auto& region : enumerate_regions(ch.deduplicated)) {
    ChamberRegionReport rep;
    rep.region = region.sign;
    std::vector<QVector> xs{region.witness};
    for (int attempt = 0; static_cast<int>(xs.size()) < samples_per_region && attempt < 64; ++attempt) {
      QVector dir(model.d());
      for (Index j = 0; j < dir.size(); ++j) dir(j) = Rational(coord(rng), 100);
      // Shrink the perturbation until the sample stays inside the region.
      Rational t(1, 2);
      for (int k = 0; k < 40; ++k, t /= 2) {
        const QVector x = region.witness + t * dir;
        const QVector hx = h * x;
        bool inside = true;
        for (Index i = 0; i < hx.size() && inside; ++i) inside = hx(i) != 0;
        if (inside && sign_vector_of(hx) == region.sign) {
          xs.push_back(x);
          break;
        }
      }
    }
    for (const auto& x : xs) {
      const TypeSignature sig = type_signature(lognormal_polytope(model, model_point(model, x)));
      rep.constant = rep.constant && (rep.samples.empty() || sig == rep.samples.front().signature);
      rep.samples.push_back({x, sig});
    }
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<SwapCandidate> swap_candidates(const SquaredLinearModel& model, const QVector& y) {
  require_model_point(model, y);
  const int n = model.n();
  const SignVector own = sign_vector_of(y);
  std::vector<SwapCandidate> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      QVector swapped = y;
      std::swap(swapped(i), swapped(j));
      for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
        SwapCandidate c{i, j, std::vector<std::int8_t>(static_cast<std::size_t>(n), 1), swapped};
        for (int k = 1; k < n; ++k) {
          if ((mask >> (k - 1)) & 1) {
            c.sigma[static_cast<std::size_t>(k)] = -1;
            c.image(k) = -c.image(k);
          }
        }
        if (!(model.B() * c.image).isZero()) continue;
        if (sign_vector_of(c.image) == own) continue;
        out.push_back(std::move(c));
      }
    }
  }
  return out;
}

VoronoiScan log_voronoi_scan(const SquaredLinearModel& model, const QVector& y, const Eigen::VectorXd& s0,
                             const Eigen::VectorXd& s1, int steps, double bisect_tol) {
  require_model_point(model, y);
  if (steps < 1) throw Error(Errc::InvalidInput, "scan needs at least one step");
  if (!(bisect_tol > 0)) throw Error(Errc::InvalidInput, "bisection tolerance must be positive");
  require_positive_data(model, s0);
  require_positive_data(model, s1);
  const auto x = solve_consistent<Rational>(model.A(), y);
  const Eigen::VectorXd xd = cast_rational<double>(*x);
  for (const auto* s : {&s0, &s1})
    if (rank_defect(likelihood_matrix(model, *s, xd), 1e-9) < 1)
      throw Error(Errc::InvalidInput, "segment endpoint is not in the log-normal polytope of y");

  const auto regions = enumerate_regions(model.arrangement());
  auto tag = [&](double t) {
    const Eigen::VectorXd s = (1 - t) * s0 + t * s1;
    const SolveAllResult res = solve_all(model, s, regions);
    if (!res.failures.empty()) throw NoConvergenceError(res.failures.front().message, res.failures.front().trace);
    return res.points[static_cast<std::size_t>(res.mle)].region;
  };

  VoronoiScan out;
  for (int k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    out.t.push_back(t);
    out.tags.push_back(tag(t));
  }
  for (int k = 0; k < steps; ++k) {
    const auto& a = out.tags[static_cast<std::size_t>(k)];
    const auto& b = out.tags[static_cast<std::size_t>(k) + 1];
    if (a == b) continue;
    double lo = out.t[static_cast<std::size_t>(k)], hi = out.t[static_cast<std::size_t>(k) + 1];
    while (hi - lo > bisect_tol) {
      const double mid = 0.5 * (lo + hi);
      (tag(mid) == a ? lo : hi) = mid;
    }
    out.switches.push_back({out.t[static_cast<std::size_t>(k)], out.t[static_cast<std::size_t>(k) + 1], 0.5 * (lo + hi), a, b});
  }
  return out;
}

}  // namespace slm
