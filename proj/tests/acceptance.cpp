// Acceptance suite: one PASS/FAIL line per criterion, with its time budget enforced.
// `--expect-fail N` marks criterion N as a known failure; the exit status is zero
// when exactly the expected criteria fail.

#include "oracles.hpp"
#include "slm/degeneration.hpp"
#include "slm/dpp.hpp"
#include "slm/error.hpp"
#include "slm/exact.hpp"
#include "slm/geometry.hpp"
#include "slm/io.hpp"
#include "slm/mle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

using namespace slm;

namespace {

class Checker {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<void(Checker&)> body;
};

SquaredLinearModel make(int n, int d, std::initializer_list<int> entries) {
  QMatrix a(n, d);
  auto it = entries.begin();
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < d; ++k) a(i, k) = *it++;
  return SquaredLinearModel(Arrangement(a));
}

SquaredLinearModel steiner() { return make(4, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1, 1, 1, 1}); }
SquaredLinearModel braid() { return make(6, 3, {1, -1, 0, 1, 0, -1, 1, 0, 0, 0, 1, -1, 0, 1, 0, 0, 0, 1}); }
SquaredLinearModel quadrilateral() { return make(4, 2, {1, 0, 1, 1, 1, 2, 0, 1}); }
SquaredLinearModel circle() { return make(3, 2, {1, 0, 0, 1, 1, 1}); }
SquaredLinearModel six_points() { return make(6, 2, {1, 1, 1, 2, 1, 3, 1, 4, 1, 5, 1, 6}); }

QVector qv(std::initializer_list<Rational> v) {
  QVector out(static_cast<Index>(v.size()));
  Index k = 0;
  for (const auto& x : v) out(k++) = x;
  return out;
}

QVector random_rational(int d, std::mt19937& rng) {
  std::uniform_int_distribution<int> u(-20, 20);
  QVector x(d);
  for (Index k = 0; k < d; ++k) x(k) = Rational(u(rng), 1 + std::abs(u(rng)));
  return x;
}

std::string str(const QVector& v) {
  std::string out = "(";
  for (Index k = 0; k < v.size(); ++k) out += (k ? "," : "") + to_string(v(k));
  return out + ")";
}

// Coefficient of z^{d-1} in 1 / ((1-z)^{n-d} (1-2z)).
long long series_coefficient(int n, int d) {
  std::vector<long long> c(static_cast<std::size_t>(d), 0);
  c[0] = 1;
  for (int f = 0; f < n - d; ++f)
    for (int k = 1; k < d; ++k) c[static_cast<std::size_t>(k)] += c[static_cast<std::size_t>(k - 1)];
  for (int k = 1; k < d; ++k) c[static_cast<std::size_t>(k)] += 2 * c[static_cast<std::size_t>(k - 1)];
  return c[static_cast<std::size_t>(d - 1)];
}

void steiner_degree(Checker& c) {
  const Arrangement arr = steiner().arrangement();
  c.check(characteristic_polynomial(arr).coeffs == std::vector<long long>{1, -4, 6, -3}, "char poly t^3-4t^2+6t-3");
  c.check(ml_degree(arr) == 7, "ml_degree = 7");
  c.check(enumerate_regions(arr).size() == 7, "7 regions");
}

void per_region_solving(Checker& c) {
  const auto m = steiner();
  const auto regions = enumerate_regions(m.arrangement());
  std::mt19937 rng(2024);
  for (int t = 0; t < 20; ++t) {
    const Eigen::VectorXd s = oracle::positive_data(4, rng);
    const auto res = solve_all(m, s, regions);
    c.check(res.points.size() == 7 && res.failures.empty(), "7 critical points for data " + std::to_string(t));
    for (const auto& cp : res.points) {
      c.check(cp.p.minCoeff() > 1e-12, "min p > 1e-12");
      c.check(cp.grad_norm <= 1e-8, "gradient norm <= 1e-8");
      c.check(rank_ratio(likelihood_matrix(m, s, cp.x)) <= 1e-7, "rank condition <= 1e-7");
    }
  }
}

void braid_four(Checker& c) {
  const auto m = braid();
  c.check(characteristic_polynomial(m.arrangement()).coeffs == std::vector<long long>{1, -6, 11, -6},
          "chi = (t-1)(t-2)(t-3)");
  c.check(ml_degree(m.arrangement()) == 12, "ml_degree = 12");
  const auto regions = enumerate_regions(m.arrangement());
  c.check(regions.size() == 12, "12 regions");
  std::mt19937 rng(7);
  for (int t = 0; t < 3; ++t) {
    const auto res = solve_all(m, oracle::positive_data(6, rng), regions);
    c.check(res.points.size() == 12 && res.failures.empty(), "12 critical points");
  }
}

void generic_regions(Checker& c) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> den(1, 5);
  for (auto [d, n] : {std::pair{2, 4}, {3, 5}, {3, 6}, {4, 6}, {4, 7}}) {
    QMatrix a = oracle::generic_matrix(n, d, rng);
    for (Index i = 0; i < n; ++i) a.row(i) /= Rational(den(rng));
    long long sum = 0;
    for (int i = 0; i < d; ++i) sum += binomial(n - 1, i);
    const auto count = static_cast<long long>(enumerate_regions(Arrangement(a)).size());
    const std::string tag = "(d,n)=(" + std::to_string(d) + "," + std::to_string(n) + ")";
    c.check(count == sum, tag + " region count = sum of binomials");
    c.check(count == series_coefficient(n, d), tag + " region count = series coefficient");
  }
}

void degenerate_solutions(Checker& c) {
  const auto sols = unit_data_solutions(steiner(), 0);
  const Rational t(1, 3), h(1, 2);
  const std::vector<QVector> expected = {qv({1, -t, -t, t}), qv({1, 0, -h, h}), qv({1, -h, 0, h}), qv({1, -h, -h, 0}),
                                         qv({1, 0, 0, 1}),   qv({1, 0, -1, 0}), qv({1, -1, 0, 0})};
  c.check(sols.size() == 7, "seven solutions");
  for (std::size_t k = 0; k < std::min(sols.size(), expected.size()); ++k)
    c.check(sols[k].y == expected[k], "solution " + std::to_string(k + 1) + " = " + str(expected[k]));
  if (!sols.empty()) {
    c.check(to_json(primitive_integer(sols[0].y)).dump() == R"(["3","-1","-1","1"])", "(3:-1:-1:1)");
  }
  const auto quad = unit_data_solutions(quadrilateral(), 0);
  c.check(std::any_of(quad.begin(), quad.end(), [](const auto& s) { return !s.generic_flag; }),
          "collision flag on the quadrilateral model");
}

void tropical(Checker& c) {
  const auto m = steiner();
  const QVector w = qv({0, 3, 4, 5});
  const auto pred = tropical_predictions(m, w);
  const std::vector<QVector> expected = {qv({0, 0, 0, 0}), qv({0, 3, 0, 0}), qv({0, 0, 4, 0}), qv({0, 0, 0, 5}),
                                         qv({0, 3, 4, 0}), qv({0, 3, 0, 5}), qv({0, 0, 4, 5})};
  std::vector<QVector> z;
  for (const auto& p : pred.points) z.push_back(p.z);
  c.check(z == expected, "seven predicted valuation vectors");
  const auto limits = unit_data_solutions(m, 0);
  const auto report = estimate_valuations(m, w);
  c.check(report.estimates.size() == 7, "seven tracked paths");
  std::set<std::string> hit;
  for (const auto& e : report.estimates) {
    c.check(std::find(expected.begin(), expected.end(), e.z) != expected.end(), "rounded slopes are a prediction");
    c.check(e.residual <= 0.1, "pre-rounding residual <= 0.1");
    hit.insert(str(e.z));
    const bool matched = e.matched_solution >= 0 && limits[static_cast<std::size_t>(e.matched_solution)].J == e.J;
    c.check(matched && e.limit_distance <= 1e-3, "limit matches the unit-data solution within 1e-3");
  }
  c.check(hit.size() == 7, "every prediction realised once");
}

void lognormal(Checker& c) {
  const auto m = quadrilateral();
  const QVector y = qv({3, 2, 1, -1});
  const Polytope p = lognormal_polytope(m, y);
  c.check(p.dim == 2 && p.f_vector == std::vector<long long>{4, 4}, "2-dimensional quadrilateral");
  bool in_simplex = true, required = true, derived = true;
  const QVector required_plane = qv({1, -1, -3, -2});
  const QVector derived_plane = qv({2, -3, -18, 12});
  for (const auto& v : p.vertices) {
    in_simplex = in_simplex && v.sum() == 1 && v.minCoeff() >= 0;
    required = required && required_plane.dot(v) == 0;
    derived = derived && derived_plane.dot(v) == 0;
  }
  c.check(in_simplex, "vertices in the simplex");
  c.check(derived, "vertices on 2s1-3s2-18s3+12s4 = 0");
  c.check(required, "vertices on s1-s2-3s3-2s4 = 0 (required plane)");

  const auto swaps = swap_candidates(m, y);
  c.check(swaps.size() == 2, "two swap candidates");
  if (swaps.size() == 2) {
    c.check(swaps[0].i == 0 && swaps[0].j == 2 && swaps[0].sigma == std::vector<std::int8_t>{1, 1, 1, -1} &&
                swaps[0].image == qv({1, 2, 3, 1}),
            "(1,3,+++-) -> (1,2,3,1)");
    c.check(swaps[1].i == 1 && swaps[1].j == 3 && swaps[1].sigma == std::vector<std::int8_t>{1, -1, -1, -1} &&
                swaps[1].image == qv({3, 1, -1, -2}),
            "(2,4,+---) -> (3,1,-1,-2)");
  }

  Eigen::Vector4d s0(9, 4, 1, 1), s1(0.075, 0.5, 0.125, 0.3);
  s0 /= 15;
  const int steps = 40;
  const auto scan = log_voronoi_scan(m, y, s0, s1, steps);
  const double exact = (s0(0) - s0(2)) / ((s0(0) - s0(2)) + (s1(2) - s1(0)));
  c.check(scan.switches.size() == 1, "one maximizer switch");
  if (!scan.switches.empty())
    c.check(std::abs(scan.switches[0].t - exact) <= 1.0 / steps, "switch within one step of s1 = s3");
}

bool in_chamber_complement(const ChamberArrangement& ch, const QVector& x) {
  return std::all_of(ch.hyperplanes.begin(), ch.hyperplanes.end(),
                     [&](const ChamberHyperplane& h) { return h.normal.dot(x) != 0; });
}

void duality(Checker& c) {
  std::mt19937 rng(77);
  std::uniform_int_distribution<int> u(-30, 30);
  int done = 0;
  for (int t = 0; done < 50; ++t) {
    const int d = 2 + t % 2;
    const int n = d + 2 + (t / 2) % (7 - d);
    const SquaredLinearModel m{Arrangement(oracle::generic_matrix(n, d, rng))};
    const auto ch = chamber_arrangement(m);
    QVector x(d);
    do {
      for (Index k = 0; k < d; ++k) x(k) = u(rng);
    } while (!in_chamber_complement(ch, x));
    const QVector y = m.A() * x;
    const Polytope p = lognormal_polytope(m, y);
    const Polytope q = dual_polytope(m, y);
    const std::vector<long long> reversed(q.f_vector.rbegin(), q.f_vector.rend());
    const std::string tag = "instance " + std::to_string(done) + " (d,n)=(" + std::to_string(d) + "," +
                            std::to_string(n) + ")";
    c.check(reversed == p.f_vector, tag + ": reversed f-vector");
    c.check(p.dim == n - d && is_simple(p), tag + ": every vertex on n-d facets");
    ++done;
  }
}

void chamber(Checker& c) {
  const auto m = six_points();
  const auto ch = chamber_arrangement(m);
  c.check(ch.hyperplanes.size() == 12 && ch.duplicates.empty(), "12 distinct points");
  const bool has = std::any_of(ch.hyperplanes.begin(), ch.hyperplanes.end(), [](const ChamberHyperplane& h) {
    return h.normal.dot(qv({7, 3})) == 0 && h.normal(0) * -7 == h.normal(1) * 3;
  });
  c.check(has, "form 3x1 - 7x2");
  const auto a = type_signature(lognormal_polytope(m, model_point(m, qv({69, 30}))));
  const auto b = type_signature(lognormal_polytope(m, model_point(m, qv({71, 30}))));
  c.check(!(a == b), "signatures at (69:30) and (71:30) differ");
}

void implicit_generators(Checker& c) {
  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  const auto st = steiner();
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::Vector3d x(g(rng), g(rng), g(rng));
    const Eigen::VectorXd p = evaluate(st, Eigen::VectorXd(x));
    worst = std::max(worst, std::abs(steiner_quartic(p)) / std::pow(p.sum(), 4));
  }
  c.check(worst <= 1e-10, "Steiner quartic relative residual <= 1e-10");

  const auto circ = circle();
  for (int t = 0; t < 50; ++t) {
    const QVector x = random_rational(2, rng);
    if (x.isZero()) continue;
    const QVector p = evaluate(circ, x);
    const Rational mid = p(2) - p(0) - p(1);
    c.check(Rational(4) * p(0) * p(1) == mid * mid, "conic relation exact");
  }

  const auto br = braid();
  const auto gen = veronese_generators(br);
  double minors = 0;
  for (int t = 0; t < 100; ++t) {
    const Eigen::Vector3d x(g(rng), g(rng), g(rng));
    minors = std::max(minors, generator_residual(gen, evaluate(br, Eigen::VectorXd(x))));
  }
  c.check(minors <= 1e-10, "braid 2x2 minors vanish");

  for (int d = 2; d <= 5; ++d)
    c.check(minor_space_dimension(d) == (d + 1) * d * d * (d - 1) / 12, "minor space dimension d=" + std::to_string(d));
  c.check(minor_space_dimension(2) == 1 && minor_space_dimension(3) == 6 && minor_space_dimension(4) == 20 &&
              minor_space_dimension(5) == 50,
          "minor space dimensions 1, 6, 20, 50");
}

void singular_locus(Checker& c) {
  std::mt19937 rng(12);
  const SquaredLinearModel generic{Arrangement(oracle::generic_matrix(6, 4, rng))};
  for (const auto& [m, count, name] : {std::tuple{generic, std::size_t{10}, "generic (4,6)"},
                                       std::tuple{steiner(), std::size_t{3}, "Steiner"}}) {
    const auto subs = singular_subspaces(m);
    c.check(subs.size() == count, std::string(name) + ": " + std::to_string(count) + " subspaces");
    for (const auto& sub : subs) {
      c.check(sub.projective_dim() == 1, std::string(name) + ": projective lines");
      const auto w = non_injectivity_witness(m, sub);
      const Eigen::VectorXd x = cast_rational<double>(w.x), xp = cast_rational<double>(w.x_prime);
      const double dist = (evaluate(m, x) - evaluate(m, xp)).norm();
      const bool distinct = std::abs(std::abs(x.normalized().dot(xp.normalized())) - 1) > 1e-9;
      c.check(dist <= 1e-10 && distinct, std::string(name) + ": witness pair");
    }
  }
}

void dpp(Checker& c) {
  c.check(dpp_ml_degree_l2(6) == 70, "formula gives 70 for n = 6");
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> u(-9, 9);
  for (int n : {4, 5, 6}) {
    // Redraw until the points are in general position (no two lines coincide).
    std::optional<DPPReduction> red;
    while (!red) {
      QMatrix fixed(n - 3, n);
      for (Index i = 0; i < fixed.rows(); ++i)
        for (Index j = 0; j < n; ++j) fixed(i, j) = u(rng);
      if (rank<Rational>(fixed) < n - 3) continue;
      auto r = linear_projection_arrangement(DPPModel(fixed, n - 2, n));
      if (parallel_row_pairs(r.arrangement.matrix()).empty()) red = std::move(r);
    }
    const auto regions = static_cast<long long>(enumerate_regions(red->arrangement).size());
    c.check(red->arrangement.states() == binomial(n, 2), "n=" + std::to_string(n) + ": binom(n,2) lines");
    c.check(regions == dpp_ml_degree_l2(n), "n=" + std::to_string(n) + ": enumerated regions = formula");
  }
  std::normal_distribution<double> g;
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const int k = 1 + t % 4;
    const int n = k + 1 + t % 5;
    Eigen::MatrixXd theta(k, n);
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < n; ++j) theta(i, j) = g(rng);
    worst = std::max(worst, dpp_probabilities(theta).normalization_residual);
  }
  c.check(worst <= 1e-12, "Cauchy-Binet normalization <= 1e-12");
}

void oracle_equivalence(Checker& c) {
  const std::vector<SquaredLinearModel> models = {quadrilateral(), circle(),
                                                  make(5, 2, {1, 0, 1, 3, 2, -1, 0, 1, 1, -4})};
  std::mt19937 rng(4);
  for (const auto& m : models) {
    const Eigen::VectorXd s = oracle::positive_data(m.n(), rng);
    const auto res = solve_all(m, s);
    c.check(res.failures.empty(), "all regions solved");
    for (const auto& cp : res.points) {
      const double grid = oracle::grid_argmax_angle(m.A_double(), s, cp.region.str(), 100000);
      // Angular chart of the projective line.
      const double gap = oracle::angle_gap(grid, oracle::angle_of(cp.x));
      c.check(gap <= 1e-4, "region " + cp.region.str() + " agrees with the grid search");
    }
  }
}

void gradients(Checker& c) {
  std::mt19937 rng(14);
  std::normal_distribution<double> g;
  int done = 0;
  while (done < 100) {
    const int d = 2 + done % 3;
    const int n = d + 1 + done % 4;
    const SquaredLinearModel m{Arrangement(oracle::generic_matrix(n, d, rng))};
    const Eigen::VectorXd s = oracle::positive_data(n, rng);
    Eigen::VectorXd x(d);
    for (Index k = 0; k < d; ++k) x(k) = g(rng);
    const Eigen::VectorXd y = m.A_double() * x;
    if (y.cwiseAbs().minCoeff() < 0.05 * y.norm()) continue;
    const auto f = [&](const Eigen::VectorXd& v) { return oracle::log_likelihood(m.A_double(), s, v); };
    const Eigen::VectorXd fd = oracle::fd_gradient(f, x, 1e-5 * x.norm());
    const Eigen::VectorXd an = gradient(m, s, x);
    c.check((an - fd).norm() <= 1e-6 * std::max(an.norm(), 1e-3), "triple " + std::to_string(done));
    ++done;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance suite"};
  std::vector<int> expected_failures;
  app.add_option("--expect-fail", expected_failures, "Criteria known to fail");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria = {
      {1, "Steiner ML degree", 0.1, steiner_degree},
      {2, "per-region solving on the Steiner model", 2, per_region_solving},
      {3, "braid arrangement c=4", 5, braid_four},
      {4, "generic region counts", 30, generic_regions},
      {5, "degenerate solutions", 0.1, degenerate_solutions},
      {6, "tropical MLE", 30, tropical},
      {7, "log-normal polytopes and log-Voronoi switch", 30, lognormal},
      {8, "polytope duality and simplicity", 60, duality},
      {9, "chamber arrangement", 5, chamber},
      {10, "implicit generators", 5, implicit_generators},
      {11, "singular locus", 5, singular_locus},
      {12, "determinantal point processes", 60, dpp},
      {13, "grid-search oracle equivalence", 30, oracle_equivalence},
      {14, "gradient correctness", 5, gradients},
  };

  std::set<int> failed;
  for (const auto& cr : criteria) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(checker);
    } catch (const std::exception& e) {
      checker.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > cr.budget_seconds) {
      std::ostringstream os;
      os << "time " << secs << " s over budget " << cr.budget_seconds << " s";
      checker.check(false, os.str());
    }
    const bool ok = checker.failures().empty();
    if (!ok) failed.insert(cr.id);
    std::printf("%s %2d  %s  (%.3f s, budget %g s)\n", ok ? "PASS" : "FAIL", cr.id, cr.title.c_str(), secs,
                cr.budget_seconds);
    std::set<std::string> shown;
    for (const auto& f : checker.failures())
      if (shown.insert(f).second) std::printf("        failed: %s\n", f.c_str());
  }

  const std::set<int> expected(expected_failures.begin(), expected_failures.end());
  std::printf("%zu of %zu criteria passed\n", criteria.size() - failed.size(), criteria.size());
  if (failed != expected) {
    for (int id : expected)
      if (!failed.count(id)) std::printf("criterion %d was expected to fail but passed\n", id);
    return 1;
  }
  return 0;
}
