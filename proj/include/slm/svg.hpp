#ifndef SLM_SVG_HPP
#define SLM_SVG_HPP

#include "slm/model.hpp"

#include <string>
#include <vector>

namespace slm {

struct PlotOverlays {
  bool region_labels = false;
  std::vector<Eigen::VectorXd> critical_points;
  /// Parameter-space polylines, e.g. critical points tracked along a data path.
  std::vector<std::vector<Eigen::VectorXd>> paths;
  /// End markers (e.g. limits of the paths).
  std::vector<Eigen::VectorXd> limits;
  /// Extra linear forms drawn dashed, e.g. chamber hyperplanes.
  std::vector<QVector> extra_forms;
};

/// Draws the arrangement in the affine chart l_1 = 1 (a line for d = 2, a
/// plane for d = 3). Throws DimensionUnsupported for d > 3.
std::string plot_arrangement(const SquaredLinearModel& model, const PlotOverlays& overlays = {});

}  // namespace slm

#endif  // SLM_SVG_HPP
