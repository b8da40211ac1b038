#include "slm/svg.hpp"
#include "slm/error.hpp"
#include "slm/exact.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>

namespace slm {

namespace {

// Affine chart l_1 = 1 with an orthonormal frame of the complement of A_1.
class Chart {
 public:
  explicit Chart(const SquaredLinearModel& model) : a1_(model.A_double().row(0).transpose()) {
    origin_ = a1_ / a1_.squaredNorm();
    const Eigen::MatrixXd kernel = cast_rational<double>(nullspace<Rational>(QMatrix(model.A().topRows(1))));
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(kernel);
    frame_ = qr.householderQ() * Eigen::MatrixXd::Identity(kernel.rows(), kernel.cols());
  }

  std::optional<Eigen::VectorXd> map(const Eigen::VectorXd& x) const {
    const double h = a1_.dot(x);
    if (std::abs(h) < 1e-12 * x.norm()) return std::nullopt;
    return Eigen::VectorXd(frame_.transpose() * (x / h - origin_));
  }

  // The form a restricted to the chart: normal . c = rhs.
  std::pair<Eigen::VectorXd, double> restrict(const Eigen::VectorXd& a) const {
    return {frame_.transpose() * a, -a.dot(origin_)};
  }

  int dim() const { return static_cast<int>(frame_.cols()); }

 private:
  Eigen::VectorXd a1_;
  Eigen::VectorXd origin_;
  Eigen::MatrixXd frame_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string plot_arrangement(const SquaredLinearModel& model, const PlotOverlays& overlays) {
  if (model.d() > 3) throw Error(Errc::DimensionUnsupported, "plots need d = 2 or 3");
  const Chart chart(model);
  const int cd = chart.dim();
  const Eigen::MatrixXd& a = model.A_double();

  std::vector<std::pair<Eigen::VectorXd, double>> forms;
  for (Index i = 1; i < a.rows(); ++i) forms.push_back(chart.restrict(a.row(i).transpose()));
  std::vector<std::pair<Eigen::VectorXd, double>> extra;
  for (const auto& f : overlays.extra_forms) extra.push_back(chart.restrict(cast_rational<double>(f)));

  // Bounding box from everything that has a finite chart position.
  std::vector<Eigen::VectorXd> pts;
  auto add = [&](const Eigen::VectorXd& x) {
    if (auto c = chart.map(x)) pts.push_back(*c);
  };
  for (const auto& x : overlays.critical_points) add(x);
  for (const auto& x : overlays.limits) add(x);
  for (const auto& path : overlays.paths)
    for (const auto& x : path) add(x);
  if (cd == 1) {
    for (const auto& [n, r] : forms)
      if (std::abs(n(0)) > 1e-12) pts.push_back(Eigen::VectorXd::Constant(1, r / n(0)));
  } else {
    for (std::size_t i = 0; i < forms.size(); ++i)
      for (std::size_t j = i + 1; j < forms.size(); ++j) {
        Eigen::Matrix2d m;
        m << forms[i].first.transpose(), forms[j].first.transpose();
        if (std::abs(m.determinant()) < 1e-12) continue;
        pts.push_back(m.inverse() * Eigen::Vector2d(forms[i].second, forms[j].second));
      }
  }
  Eigen::Vector2d lo(-1, -1), hi(1, 1);
  for (const auto& p : pts)
    for (int k = 0; k < cd; ++k) {
      lo(k) = std::min(lo(k), p(k));
      hi(k) = std::max(hi(k), p(k));
    }
  const Eigen::Vector2d pad = 0.15 * (hi - lo);
  lo -= pad;
  hi += pad;

  const double width = 600, height = cd == 1 ? 160 : 600;
  auto px = [&](const Eigen::VectorXd& c) {
    const double u = (c(0) - lo(0)) / (hi(0) - lo(0)) * width;
    const double v = cd == 1 ? height / 2 : height - (c(1) - lo(1)) / (hi(1) - lo(1)) * height;
    return std::make_pair(u, v);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  auto draw_form = [&](const Eigen::VectorXd& n, double r, const std::string& style, const std::string& cls) {
    if (cd == 1) {
      if (std::abs(n(0)) < 1e-12) return;
      const auto [u, v] = px(Eigen::VectorXd::Constant(1, r / n(0)));
      svg << "<line class=\"" << cls << "\" x1=\"" << fmt(u) << "\" y1=\"" << fmt(v - 20) << "\" x2=\"" << fmt(u)
          << "\" y2=\"" << fmt(v + 20) << "\" " << style << "/>\n";
      return;
    }
    // Two far points on n . c = r, left to the viewport to clip.
    const Eigen::Vector2d nn(n(0), n(1));
    if (nn.norm() < 1e-12) return;
    const Eigen::Vector2d base = nn * (r / nn.squaredNorm());
    const Eigen::Vector2d dir(-nn(1) / nn.norm(), nn(0) / nn.norm());
    const double reach = 4 * (hi - lo).norm() + base.norm();
    const auto [u1, v1] = px(Eigen::VectorXd(base - reach * dir));
    const auto [u2, v2] = px(Eigen::VectorXd(base + reach * dir));
    svg << "<line class=\"" << cls << "\" x1=\"" << fmt(u1) << "\" y1=\"" << fmt(v1) << "\" x2=\"" << fmt(u2)
        << "\" y2=\"" << fmt(v2) << "\" " << style << "/>\n";
  };

  if (cd == 1)
    svg << "<line class=\"chart\" x1=\"0\" y1=\"" << height / 2 << "\" x2=\"" << width << "\" y2=\"" << height / 2
        << "\" stroke=\"#999\"/>\n";
  for (const auto& [n, r] : extra) draw_form(n, r, "stroke=\"#888\" stroke-dasharray=\"6 4\"", "chamber");
  for (const auto& [n, r] : forms) draw_form(n, r, "stroke=\"black\" stroke-width=\"2\"", "hyperplane");

  for (const auto& path : overlays.paths) {
    std::ostringstream d;
    for (const auto& x : path) {
      if (auto c = chart.map(x)) {
        const auto [u, v] = px(*c);
        d << (d.tellp() == 0 ? "" : " ") << fmt(u) << ',' << fmt(v);
      }
    }
    svg << "<polyline class=\"path\" points=\"" << d.str() << "\" fill=\"none\" stroke=\"#1f5fbf\"/>\n";
  }
  for (const auto& x : overlays.limits) {
    if (auto c = chart.map(x)) {
      const auto [u, v] = px(*c);
      svg << "<rect class=\"limit\" x=\"" << fmt(u - 4) << "\" y=\"" << fmt(v - 4)
          << "\" width=\"8\" height=\"8\" fill=\"#2a9d3f\"/>\n";
    }
  }
  for (const auto& x : overlays.critical_points) {
    if (auto c = chart.map(x)) {
      const auto [u, v] = px(*c);
      svg << "<circle class=\"critical\" cx=\"" << fmt(u) << "\" cy=\"" << fmt(v) << "\" r=\"4\" fill=\"#c62828\"/>\n";
    }
  }
  if (overlays.region_labels) {
    for (const auto& region : enumerate_regions(model.arrangement())) {
      if (auto c = chart.map(cast_rational<double>(region.witness))) {
        const auto [u, v] = px(*c);
        svg << "<text class=\"region\" x=\"" << fmt(u) << "\" y=\"" << fmt(v)
            << "\" font-size=\"11\" font-family=\"monospace\">" << region.sign.str() << "</text>\n";
      }
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace slm
