#include "oracles.hpp"
#include "slm/error.hpp"
#include "slm/exact.hpp"
#include "slm/mle.hpp"

#include <doctest.h>

using namespace slm;

namespace {

SquaredLinearModel make(int n, int d, std::initializer_list<int> entries) {
  QMatrix a(n, d);
  auto it = entries.begin();
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < d; ++k) a(i, k) = *it++;
  return SquaredLinearModel(Arrangement(a));
}

SquaredLinearModel steiner() { return make(4, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1}); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an slm::Error");
  return Errc::InvalidInput;
}

}  // namespace

TEST_SUITE("mle") {
  TEST_CASE("data validation") {
    const auto m = steiner();
    CHECK(code_of([&] { require_positive_data(m, Eigen::Vector4d(1, 0, 1, 1)); }) == Errc::BoundaryData);
    CHECK(code_of([&] { require_positive_data(m, Eigen::Vector4d(1, -1, 1, 1)); }) == Errc::InvalidInput);
    CHECK(code_of([&] { require_positive_data(m, Eigen::Vector3d(1, 1, 1)); }) == Errc::InvalidInput);
    CHECK(code_of([&] { solve_all(m, Eigen::Vector4d(1, 0, 1, 1)); }) == Errc::BoundaryData);
  }

  TEST_CASE("likelihood matrix drops rank exactly at critical points") {
    const auto m = steiner();
    const Eigen::Vector4d s(0.4, 0.3, 0.2, 0.1);
    const auto res = solve_all(m, s);
    REQUIRE(res.points.size() == 7);
    const Eigen::MatrixXd at = likelihood_matrix(m, s, res.points[0].x);
    CHECK(at.rows() == m.n() - m.d() + 2);
    CHECK(at.cols() == m.n());
    CHECK(rank_ratio(at) < 1e-9);
    CHECK(rank_defect(at, 1e-9) == 1);
    const Eigen::MatrixXd off = likelihood_matrix(m, s, Eigen::Vector3d(0.3, 0.5, 0.2));
    CHECK(rank_ratio(off) > 1e-4);
    CHECK(rank_defect(off, 1e-9) == 0);
  }

  TEST_CASE("one critical point per region, each inside its region") {
    std::mt19937 rng(21);
    for (int t = 0; t < 8; ++t) {
      const int d = 2 + t % 3;
      const int n = d + 2 + t % 2;
      const SquaredLinearModel m{Arrangement(oracle::generic_matrix(n, d, rng))};
      const Eigen::VectorXd s = oracle::positive_data(n, rng);
      const auto res = solve_all(m, s);
      CHECK(res.failures.empty());
      CHECK(static_cast<long long>(res.points.size()) == ml_degree(m.arrangement()));
      double best = -INFINITY;
      for (const auto& cp : res.points) {
        CHECK(sign_vector_of(cp.y) == cp.region);
        CHECK(cp.grad_norm <= 1e-8);
        CHECK(std::abs(cp.p.sum() - 1) < 1e-12);
        CHECK(cp.p.minCoeff() > 0);
        CHECK(cp.x.norm() == doctest::Approx(1.0));
        CHECK(cp.logL == doctest::Approx(oracle::log_likelihood(m.A_double(), s / s.sum(), cp.x)).epsilon(1e-12));
        CHECK(rank_ratio(likelihood_matrix(m, s, cp.x)) <= 1e-7);
        best = std::max(best, cp.logL);
      }
      REQUIRE(res.mle >= 0);
      CHECK(res.points[static_cast<std::size_t>(res.mle)].logL == best);
    }
  }

  TEST_CASE("d = 2 solutions agree with a grid-search maximizer") {
    const std::vector<SquaredLinearModel> models = {make(4, 2, {1, 0, 1, 1, 1, 2, 0, 1}),
                                                    make(3, 2, {1, 0, 0, 1, 1, 1}),
                                                    make(5, 2, {1, 0, 1, 3, 2, -1, 0, 1, 1, -4})};
    std::mt19937 rng(4);
    for (const auto& m : models) {
      const Eigen::VectorXd s = oracle::positive_data(m.n(), rng);
      for (const auto& cp : solve_all(m, s).points) {
        const double grid = oracle::grid_argmax_angle(m.A_double(), s, cp.region.str(), 100000);
        CHECK(oracle::angle_gap(grid, oracle::angle_of(cp.x)) <= 1e-4);
      }
    }
  }

  TEST_CASE("solve_region honours an explicit start and reports non-convergence") {
    const auto m = steiner();
    const Eigen::Vector4d s(1, 2, 3, 4);
    const auto regions = enumerate_regions(m.arrangement());
    SolveOptions opts;
    opts.start = cast_rational<double>(regions[2].witness) * 3.0;
    const auto cp = solve_region(m, s, regions[2], opts);
    CHECK(cp.region == regions[2].sign);
    CHECK(cp.grad_norm <= 1e-10);

    SolveOptions tight;
    tight.max_iter = 1;
    tight.tol = 1e-300;
    try {
      solve_region(m, s, regions[0], tight);
      FAIL("expected NoConvergenceError");
    } catch (const NoConvergenceError& e) {
      CHECK(e.code() == Errc::NoConvergence);
      CHECK_FALSE(e.trace().empty());
    }
  }

  TEST_CASE("results do not depend on the thread count") {
    const auto m = make(6, 3, {1, -1, 0, 1, 0, -1, 1, 0, 0, 0, 1, -1, 0, 1, 0, 0, 0, 1});
    const Eigen::VectorXd s = (Eigen::VectorXd(6) << 3, 1, 4, 1, 5, 9).finished();
    setenv("SLM_THREADS", "1", 1);
    const auto one = solve_all(m, s);
    setenv("SLM_THREADS", "4", 1);
    const auto four = solve_all(m, s);
    unsetenv("SLM_THREADS");
    REQUIRE(one.points.size() == four.points.size());
    for (std::size_t i = 0; i < one.points.size(); ++i) {
      CHECK(one.points[i].region == four.points[i].region);
      CHECK(one.points[i].x == four.points[i].x);
    }
    CHECK(one.mle == four.mle);
  }

  TEST_CASE("quad-precision refinement reaches tiny gradients") {
    const auto m = steiner();
    const Eigen::Vector4d s(1, 0.027, 0.0081, 0.00243);
    for (const auto& r : enumerate_regions(m.arrangement())) {
      const auto q = solve_region_quad(m, s, r.sign, cast_rational<double>(r.witness), 1e-20, 500);
      CHECK(q.converged);
      CHECK(q.grad_norm <= 1e-20);
      CHECK(sign_vector_of(q.y) == r.sign);
    }
  }
}
