#include "slm/degeneration.hpp"
#include "slm/detail/parallel.hpp"
#include "slm/error.hpp"
#include "slm/exact.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace slm {

std::vector<std::vector<int>> admissible_supports(int n, int d, int anchor) {
  std::vector<int> others;
  for (int j = 0; j < n; ++j)
    if (j != anchor) others.push_back(j);
  std::vector<std::vector<int>> out;
  for (int k = 0; k <= std::min(d - 1, n - 1); ++k) {
    for (const auto& pick : k_subsets(static_cast<int>(others.size()), k)) {
      std::vector<int> J;
      for (int p : pick) J.push_back(others[static_cast<std::size_t>(p)]);
      out.push_back(std::move(J));
    }
  }
  return out;
}

std::vector<DegenerateSolution> unit_data_solutions(const SquaredLinearModel& model, int anchor) {
  const int n = model.n();
  if (anchor < 0 || anchor >= n) throw Error(Errc::InvalidInput, "anchor out of range");
  const QMatrix& b = model.B();

  std::vector<DegenerateSolution> out;
  for (auto& J : admissible_supports(n, model.d(), anchor)) {
    DegenerateSolution sol;
    sol.J = J;
    std::vector<int> K;
    for (int k = 0; k < n; ++k)
      if (k != anchor && !std::binary_search(J.begin(), J.end(), k)) K.push_back(k);
    const QMatrix bk = select_cols(b, K);
    const auto gram_inv = inverse<Rational>(QMatrix(bk * bk.transpose()));
    if (!gram_inv) {
      sol.singular_gram = true;
      sol.generic_flag = false;
      out.push_back(std::move(sol));
      continue;
    }
    // y_K = -B_K^T (B_K B_K^T)^{-1} b_anchor, y_anchor = 1, y_J = 0.
    const QVector yk = -(bk.transpose() * (*gram_inv * b.col(anchor)));
    sol.y = QVector::Zero(n);
    sol.y(anchor) = 1;
    for (std::size_t t = 0; t < K.size(); ++t) {
      sol.y(K[t]) = yk(static_cast<Index>(t));
      if (yk(static_cast<Index>(t)) == 0) sol.generic_flag = false;
    }
    out.push_back(std::move(sol));
  }
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (std::size_t c = a + 1; c < out.size(); ++c) {
      if (out[a].singular_gram || out[c].singular_gram) continue;
      if (out[a].y == out[c].y) out[a].generic_flag = out[c].generic_flag = false;
    }
  }
  return out;
}

int tropical_anchor(const QVector& w) {
  if (w.size() == 0) throw Error(Errc::InvalidInput, "empty valuation vector");
  Index best = 0;
  for (Index j = 1; j < w.size(); ++j)
    if (w(j) < w(best)) best = j;
  for (Index j = 0; j < w.size(); ++j)
    if (j != best && w(j) == w(best))
      throw Error(Errc::AnchorNotUnique, "minimum of w attained at states " + std::to_string(best + 1) + " and " +
                                             std::to_string(j + 1));
  return static_cast<int>(best);
}

TropicalPredictions tropical_predictions(const SquaredLinearModel& model, const QVector& w) {
  if (w.size() != model.n()) throw Error(Errc::InvalidInput, "valuation vector has the wrong length");
  TropicalPredictions out;
  out.anchor = tropical_anchor(w);
  for (const auto& sol : unit_data_solutions(model, out.anchor)) {
    out.generic = out.generic && sol.generic_flag;
    TropicalPoint t;
    t.J = sol.J;
    t.z = QVector::Zero(model.n());
    for (int j : sol.J) t.z(j) = w(j) - w(out.anchor);
    out.points.push_back(std::move(t));
  }
  if (!out.generic) out.warning = "model is not generic: unit-data solutions collide or vanish off their support";
  return out;
}

std::vector<double> default_eps_grid() {
  return {1e-1, std::pow(10.0, -1.5), 1e-2, std::pow(10.0, -2.5)};
}

ValuationReport estimate_valuations(const SquaredLinearModel& model, const QVector& w,
                                    const std::vector<double>& eps_grid) {
  if (w.size() != model.n()) throw Error(Errc::InvalidInput, "valuation vector has the wrong length");
  if (eps_grid.size() < 3) throw Error(Errc::InvalidInput, "the eps grid needs at least three points");
  for (std::size_t k = 0; k < eps_grid.size(); ++k) {
    if (!(eps_grid[k] > 0 && eps_grid[k] < 1)) throw Error(Errc::InvalidInput, "eps values must lie in (0, 1)");
    if (k > 0 && !(eps_grid[k] < eps_grid[k - 1])) throw Error(Errc::InvalidInput, "eps grid must be decreasing");
  }
  const int n = model.n();
  ValuationReport report;
  report.anchor = tropical_anchor(w);
  report.eps_grid = eps_grid;
  const int anchor = report.anchor;

  const Eigen::VectorXd wd = cast_rational<double>(w);
  std::vector<Eigen::VectorXd> data;
  for (double eps : eps_grid) {
    Eigen::VectorXd s(n);
    for (int j = 0; j < n; ++j) s(j) = std::pow(eps, wd(j) - wd(anchor));
    data.push_back(s);
  }

  const auto regions = enumerate_regions(model.arrangement());
  const auto limits = unit_data_solutions(model, anchor);
  std::vector<std::optional<ValuationEstimate>> results(regions.size());
  std::vector<std::string> errors(regions.size());

  detail::parallel_for(regions.size(), worker_count(), [&](std::size_t r) {
    try {
      ValuationEstimate est;
      est.region = regions[r].sign;
      Eigen::VectorXd x = cast_rational<double>(regions[r].witness);
      std::vector<Eigen::VectorXd> logs;
      for (std::size_t k = 0; k < eps_grid.size(); ++k) {
        // The first solve starts from the witness and may need many damped steps.
        const auto sol = solve_region_quad(model, data[k], est.region, x, 1e-20, k == 0 ? 1000 : 200);
        if (!sol.converged) {
          errors[r] = "path in region " + est.region.str() + " lost at eps = " + std::to_string(eps_grid[k]);
          return;
        }
        x = sol.x;
        const Eigen::VectorXd y = sol.y / sol.y(anchor);
        est.path.push_back(y);
        logs.push_back(y.cwiseAbs().array().log().matrix());
      }

      // Slope of log|y_j| against log eps by least squares.
      const Index m = static_cast<Index>(eps_grid.size());
      Eigen::VectorXd t(m);
      for (Index k = 0; k < m; ++k) t(k) = std::log(eps_grid[static_cast<std::size_t>(k)]);
      const double tbar = t.mean();
      const double tvar = (t.array() - tbar).square().sum();
      est.z_hat = Eigen::VectorXd::Zero(n);
      est.z = QVector::Zero(n);
      for (int j = 0; j < n; ++j) {
        if (j == anchor) continue;
        double cov = 0, vbar = 0;
        for (Index k = 0; k < m; ++k) vbar += logs[static_cast<std::size_t>(k)](j);
        vbar /= static_cast<double>(m);
        for (Index k = 0; k < m; ++k) cov += (t(k) - tbar) * (logs[static_cast<std::size_t>(k)](j) - vbar);
        est.z_hat(j) = cov / tvar;
        const Rational gap = w(j) - w(anchor);
        const double dz0 = std::abs(est.z_hat(j));
        const double dz1 = std::abs(est.z_hat(j) - to_double(gap));
        if (dz1 < dz0) {
          est.z(j) = gap;
          est.J.push_back(j);
        }
        est.residual = std::max(est.residual, std::min(dz0, dz1));
      }

      const Eigen::VectorXd& last = est.path.back();
      for (std::size_t k = 0; k < limits.size(); ++k) {
        if (limits[k].singular_gram) continue;
        const double dist = (last - cast_rational<double>(limits[k].y)).cwiseAbs().maxCoeff();
        if (est.matched_solution < 0 || dist < est.limit_distance) {
          est.matched_solution = static_cast<int>(k);
          est.limit_distance = dist;
        }
      }
      results[r] = std::move(est);
    } catch (const std::exception& e) {
      errors[r] = e.what();
    }
  });

  for (std::size_t r = 0; r < regions.size(); ++r) {
    if (!results[r]) throw Error(Errc::PathLost, errors[r]);
    report.estimates.push_back(std::move(*results[r]));
  }
  return report;
}

}  // namespace slm
