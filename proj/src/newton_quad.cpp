#include "slm/detail/likelihood.hpp"
#include "slm/error.hpp"
#include "slm/mle.hpp"

#include <boost/multiprecision/float128.hpp>

namespace slm {

using Quad = boost::multiprecision::float128;

PreciseSolve solve_region_quad(const SquaredLinearModel& model, const Eigen::VectorXd& s,
                               const SignVector& region, const Eigen::VectorXd& start, double tol, int max_iter) {
  require_positive_data(model, s);
  const MatrixX<Quad> a = cast_rational<Quad>(model.A());
  VectorX<Quad> sq = s.cast<Quad>();
  sq /= sq.sum();
  const detail::LikelihoodKernel<Quad> f(a, sq);
  const VectorX<Quad> x0 = start.cast<Quad>();
  if (!f.same_signs(x0, region.signs()))
    throw Error(Errc::InvalidInput, "start point is not inside region " + region.str());

  const auto r = detail::newton_maximize<Quad>(f, region.signs(), x0, Quad(tol), max_iter);
  PreciseSolve out;
  const VectorX<Quad> x = r.x / r.x.norm();
  out.x = to_double_vector<Quad>(x);
  out.y = to_double_vector<Quad>(VectorX<Quad>(a * x));
  out.grad_norm = r.grad_norm;
  out.iterations = r.iterations;
  out.converged = r.converged;
  return out;
}

}  // namespace slm
