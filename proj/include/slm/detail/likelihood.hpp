#ifndef SLM_DETAIL_LIKELIHOOD_HPP
#define SLM_DETAIL_LIKELIHOOD_HPP

#include "slm/scalar.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace slm::detail {

// Lambda(x) = sum_i s_i log l_i(x)^2 - S log q(x),  q = |A x|^2,  S = sum_i s_i.
template <class S>
class LikelihoodKernel {
 public:
  LikelihoodKernel(const MatrixX<S>& a, const VectorX<S>& s) : a_(a), s_(s), total_(s.sum()) {}

  S value(const VectorX<S>& x) const {
    using std::log;
    const VectorX<S> y = a_ * x;
    S v = -total_ * log(y.squaredNorm());
    for (Index i = 0; i < y.size(); ++i) {
      if (s_(i) == S(0)) continue;
      if (y(i) == S(0)) return -std::numeric_limits<S>::infinity();
      v += s_(i) * log(y(i) * y(i));
    }
    return v;
  }

  VectorX<S> gradient(const VectorX<S>& x) const {
    const VectorX<S> y = a_ * x;
    const S q = y.squaredNorm();
    VectorX<S> w(y.size());
    for (Index i = 0; i < y.size(); ++i) w(i) = S(2) * s_(i) / y(i) - S(2) * total_ * y(i) / q;
    return a_.transpose() * w;
  }

  MatrixX<S> hessian(const VectorX<S>& x) const {
    const VectorX<S> y = a_ * x;
    const S q = y.squaredNorm();
    const VectorX<S> gq = a_.transpose() * y;
    VectorX<S> w(y.size());
    for (Index i = 0; i < y.size(); ++i) w(i) = S(2) * s_(i) / (y(i) * y(i));
    MatrixX<S> h = -(a_.transpose() * w.asDiagonal() * a_);
    h -= (S(2) * total_ / q) * (a_.transpose() * a_);
    h += (S(4) * total_ / (q * q)) * (gq * gq.transpose());
    return h;
  }

  bool same_signs(const VectorX<S>& x, const std::vector<std::int8_t>& signs) const {
    const VectorX<S> y = a_ * x;
    // Antipodal representatives describe the same projective region.
    int orientation = 0;
    for (Index i = 0; i < y.size(); ++i) {
      const int sy = (y(i) > S(0)) - (y(i) < S(0));
      if (sy == 0) return false;
      const int rel = sy * signs[static_cast<std::size_t>(i)];
      if (orientation == 0) orientation = rel;
      else if (rel != orientation) return false;
    }
    return true;
  }

  const MatrixX<S>& matrix() const { return a_; }

 private:
  const MatrixX<S>& a_;
  const VectorX<S>& s_;
  S total_;
};

template <class S>
struct NewtonOutcome {
  VectorX<S> x;
  double grad_norm = 0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

// Gradient norm of the scale-invariant objective at x / |x|.
template <class S>
S unit_gradient_norm(const LikelihoodKernel<S>& f, const VectorX<S>& x) {
  return f.gradient(x).norm() * x.norm();
}

// Safeguarded Newton ascent on the affine chart x_c = const, where c is the
// coordinate of largest magnitude (re-chosen each step). Trial points that
// change any sign of A x are rejected, so iterates stay in the region.
template <class S>
NewtonOutcome<S> newton_maximize(const LikelihoodKernel<S>& f, const std::vector<std::int8_t>& signs,
                                 VectorX<S> x, const S& tol, int max_iter) {
  using std::abs;
  NewtonOutcome<S> out;
  const Index d = x.size();
  S value = f.value(x);
  S best = std::numeric_limits<S>::infinity();
  int stalled = 0;
  for (int it = 0;; ++it) {
    Index c = 0;
    for (Index j = 1; j < d; ++j)
      if (abs(x(j)) > abs(x(c))) c = j;
    x /= abs(x(c));
    value = f.value(x);

    const VectorX<S> g = f.gradient(x);
    const S gnorm = g.norm() * x.norm();
    out.trace.push_back(to_double_scalar(gnorm));
    out.iterations = it;
    if (gnorm <= tol) {
      out.converged = true;
      break;
    }
    if (it >= max_iter || d == 1) break;
    // Stop once rounding noise keeps the gradient from shrinking.
    if (gnorm < best * S(0.9)) {
      best = gnorm;
      stalled = 0;
    } else if (++stalled >= 50) {
      break;
    }

    // Chart coordinates: every index except c.
    std::vector<Index> free;
    for (Index j = 0; j < d; ++j)
      if (j != c) free.push_back(j);
    const Index m = static_cast<Index>(free.size());
    const MatrixX<S> h = f.hessian(x);
    MatrixX<S> neg(m, m);
    VectorX<S> gc(m);
    for (Index a = 0; a < m; ++a) {
      gc(a) = g(free[static_cast<std::size_t>(a)]);
      for (Index b = 0; b < m; ++b) neg(a, b) = -h(free[static_cast<std::size_t>(a)], free[static_cast<std::size_t>(b)]);
    }

    // Shift -H by tau I until it is positive definite.
    S tau(0);
    const S scale = neg.diagonal().cwiseAbs().maxCoeff() + S(1);
    VectorX<S> step;
    for (int attempt = 0; attempt < 80; ++attempt) {
      Eigen::LLT<MatrixX<S>> llt(neg + tau * MatrixX<S>::Identity(m, m));
      if (llt.info() == Eigen::Success) {
        step = llt.solve(gc);
        break;
      }
      tau = tau == S(0) ? scale * S(1e-8) : tau * S(4);
    }
    if (step.size() == 0) break;

    const S slope = gc.dot(step);
    S alpha(1);
    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls) {
      VectorX<S> trial = x;
      for (Index a = 0; a < m; ++a) trial(free[static_cast<std::size_t>(a)]) += alpha * step(a);
      if (f.same_signs(trial, signs)) {
        const S tv = f.value(trial);
        if (tv >= value + S(1e-4) * alpha * slope || unit_gradient_norm(f, trial) < gnorm) {
          x = trial;
          value = tv;
          accepted = true;
          break;
        }
      }
      alpha /= S(2);
    }
    if (!accepted) break;
  }
  out.grad_norm = out.trace.back();
  out.x = std::move(x);
  return out;
}

}  // namespace slm::detail

#endif  // SLM_DETAIL_LIKELIHOOD_HPP
