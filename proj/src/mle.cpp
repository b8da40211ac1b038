#include "slm/mle.hpp"
#include "slm/detail/likelihood.hpp"
#include "slm/detail/parallel.hpp"
#include "slm/error.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdlib>
#include <thread>
#include <sstream>

namespace slm {

Eigen::MatrixXd likelihood_matrix(const SquaredLinearModel& model, const Eigen::VectorXd& s, const Eigen::VectorXd& x) {
  const int n = model.n();
  const int d = model.d();
  if (s.size() != n || x.size() != d) throw Error(Errc::InvalidInput, "dimension mismatch in likelihood_matrix");
  const Eigen::VectorXd y = model.A_double() * x;
  Eigen::MatrixXd m(n - d + 2, n);
  m.row(0) = s.transpose();
  m.row(1) = y.cwiseAbs2().transpose();
  m.bottomRows(n - d) = cast_rational<double>(model.B()) * y.asDiagonal();
  return m;
}

int rank_defect(const Eigen::MatrixXd& m, double tol) {
  if (!(tol > 0)) throw Error(Errc::InvalidInput, "rank tolerance must be positive");
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  int numeric_rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++numeric_rank;
  return static_cast<int>(m.rows()) - numeric_rank;
}

double rank_ratio(const Eigen::MatrixXd& m) {
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  if (sv.size() < m.rows() || sv(0) == 0.0) return 0.0;
  return sv(sv.size() - 1) / sv(0);
}

void require_positive_data(const SquaredLinearModel& model, const Eigen::VectorXd& s) {
  if (s.size() != model.n())
    throw Error(Errc::InvalidInput, "data vector has length " + std::to_string(s.size()) + ", expected " +
                                        std::to_string(model.n()));
  for (Index i = 0; i < s.size(); ++i) {
    if (!std::isfinite(s(i)) || s(i) < 0) throw Error(Errc::InvalidInput, "data must be finite and nonnegative");
    if (s(i) == 0)
      throw Error(Errc::BoundaryData, "s_" + std::to_string(i + 1) + " = 0; use the degeneration routines");
  }
}

namespace {

CriticalPoint finish(const SquaredLinearModel& model, const Eigen::VectorXd& s_unit, const SignVector& region,
                     const detail::NewtonOutcome<double>& r) {
  CriticalPoint cp;
  cp.region = region;
  cp.x = normalize_parameter(r.x);
  cp.y = model.A_double() * cp.x;
  cp.p = evaluate(model, cp.x);
  cp.logL = 0;
  for (Index i = 0; i < s_unit.size(); ++i) cp.logL += s_unit(i) * std::log(cp.p(i));
  cp.grad_norm = r.grad_norm;
  cp.iterations = r.iterations;
  return cp;
}

}  // namespace

CriticalPoint solve_region(const SquaredLinearModel& model, const Eigen::VectorXd& s, const Region& region,
                           const SolveOptions& opts) {
  require_positive_data(model, s);
  if (region.sign.size() != model.n()) throw Error(Errc::InvalidInput, "region sign vector has the wrong length");
  const Eigen::VectorXd s_unit = s / s.sum();
  const Eigen::VectorXd start = opts.start ? *opts.start : cast_rational<double>(region.witness);
  if (start.size() != model.d()) throw Error(Errc::InvalidInput, "start point has the wrong length");

  const detail::LikelihoodKernel<double> f(model.A_double(), s_unit);
  if (!f.same_signs(start, region.sign.signs()))
    throw Error(Errc::InvalidInput, "start point is not inside region " + region.sign.str());
  const auto r = detail::newton_maximize<double>(f, region.sign.signs(), start, opts.tol, opts.max_iter);
  if (!r.converged) {
    std::ostringstream msg;
    msg << "region " << region.sign.str() << ": gradient norm " << r.grad_norm << " after " << r.iterations
        << " iterations";
    throw NoConvergenceError(msg.str(), r.trace);
  }
  return finish(model, s_unit, region.sign, r);
}

unsigned worker_count() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SLM_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) cap = static_cast<unsigned>(v);
  }
  return cap;
}

SolveAllResult solve_all(const SquaredLinearModel& model, const Eigen::VectorXd& s, const SolveOptions& opts) {
  require_positive_data(model, s);
  return solve_all(model, s, enumerate_regions(model.arrangement()), opts);
}

SolveAllResult solve_all(const SquaredLinearModel& model, const Eigen::VectorXd& s, const std::vector<Region>& regions,
                         const SolveOptions& opts) {
  require_positive_data(model, s);
  SolveOptions per_region = opts;
  per_region.start.reset();

  std::vector<std::optional<CriticalPoint>> solved(regions.size());
  std::vector<std::optional<RegionFailure>> failed(regions.size());
  detail::parallel_for(regions.size(), worker_count(), [&](std::size_t k) {
    try {
      solved[k] = solve_region(model, s, regions[k], per_region);
    } catch (const NoConvergenceError& e) {
      failed[k] = RegionFailure{regions[k].sign, e.what(), e.trace()};
    } catch (const std::exception& e) {
      failed[k] = RegionFailure{regions[k].sign, e.what(), {}};
    }
  });

  SolveAllResult out;
  for (std::size_t k = 0; k < regions.size(); ++k) {
    if (solved[k]) {
      out.points.push_back(std::move(*solved[k]));
      const int idx = static_cast<int>(out.points.size()) - 1;
      if (out.mle < 0 || out.points[static_cast<std::size_t>(idx)].logL > out.points[static_cast<std::size_t>(out.mle)].logL)
        out.mle = idx;
    } else {
      out.failures.push_back(std::move(*failed[k]));
    }
  }
  return out;
}

}  // namespace slm
