#ifndef SLM_GEOMETRY_HPP
#define SLM_GEOMETRY_HPP

#include "slm/mle.hpp"
#include "slm/polytope.hpp"

#include <string>
#include <vector>

namespace slm {

/// Throws InvalidInput unless B y = 0 and ZeroCoordinate when some y_i = 0.
void require_model_point(const SquaredLinearModel& model, const QVector& y);

/// Probability distributions in the row span of [y^2; B Y]: the data vectors
/// for which y is a critical point. Vertices are in s-coordinates (unit sum).
Polytope lognormal_polytope(const SquaredLinearModel& model, const QVector& y);

/// Convex hull of the columns of B Y^{-1}.
Polytope dual_polytope(const SquaredLinearModel& model, const QVector& y);

/// y = A x for an exact parameter point.
QVector model_point(const SquaredLinearModel& model, const QVector& x);

struct ChamberHyperplane {
  /// A single state for the original forms, an (n-d+1)-subset for the determinantal ones.
  std::vector<int> subset;
  /// Coefficients of the linear form in x.
  QVector normal;
};

struct ChamberArrangement {
  /// All n + binom(n, d-1) forms, originals first.
  std::vector<ChamberHyperplane> hyperplanes;
  /// Parallel duplicates removed, first occurrence kept.
  Arrangement deduplicated;
  /// (index, index of the earlier parallel form it duplicates).
  std::vector<std::pair<int, int>> duplicates;
};

/// Throws DegenerateMinor when a determinantal form vanishes identically.
ChamberArrangement chamber_arrangement(const SquaredLinearModel& model);

/// f-vector plus the sorted numbers of facets through each vertex.
struct TypeSignature {
  std::vector<long long> f_vector;
  std::vector<int> vertex_degrees;

  bool operator==(const TypeSignature&) const = default;
  std::string str() const;
};

TypeSignature type_signature(const Polytope& p);

struct ChamberSample {
  QVector x;
  TypeSignature signature;
};

struct ChamberRegionReport {
  SignVector region;
  std::vector<ChamberSample> samples;
  bool constant = true;
};

/// Samples each region of the chamber arrangement (d = 2 or 3) and records
/// the log-normal polytope signature at each sample.
std::vector<ChamberRegionReport> combinatorial_type_scan(const SquaredLinearModel& model, int samples_per_region,
                                                         unsigned seed = 1);

struct SwapCandidate {
  int i = 0;
  int j = 0;
  std::vector<std::int8_t> sigma;
  /// sigma * (y with coordinates i and j exchanged).
  QVector image;
};

/// Exchanges y_i, y_j and applies a sign pattern (sigma_1 = +); keeps those
/// landing in ker B with a different sign vector than y.
std::vector<SwapCandidate> swap_candidates(const SquaredLinearModel& model, const QVector& y);

struct RegionSwitch {
  double t_left = 0;
  double t_right = 0;
  /// Bisection estimate of the switch parameter.
  double t = 0;
  SignVector from;
  SignVector to;
};

struct VoronoiScan {
  std::vector<double> t;
  /// Region of the global maximizer at each sample.
  std::vector<SignVector> tags;
  std::vector<RegionSwitch> switches;
};

/// Maximizer region along s(t) = (1-t) s0 + t s1 for t = k / steps, with each
/// switch refined by bisection to `bisect_tol` in t.
VoronoiScan log_voronoi_scan(const SquaredLinearModel& model, const QVector& y, const Eigen::VectorXd& s0,
                             const Eigen::VectorXd& s1, int steps, double bisect_tol = 1e-4);

}  // namespace slm

#endif  // SLM_GEOMETRY_HPP
