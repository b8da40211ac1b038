#include "slm/polytope.hpp"
#include "slm/error.hpp"
#include "slm/exact.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace slm {

namespace {

QMatrix difference_rows(const std::vector<QVector>& points, const std::vector<int>& idx) {
  QMatrix m(static_cast<Index>(idx.size()) - 1, points[static_cast<std::size_t>(idx[0])].size());
  for (std::size_t k = 1; k < idx.size(); ++k)
    m.row(static_cast<Index>(k) - 1) =
        (points[static_cast<std::size_t>(idx[k])] - points[static_cast<std::size_t>(idx[0])]).transpose();
  return m;
}

int affine_dimension_of(const std::vector<QVector>& points, const std::vector<int>& idx) {
  if (idx.empty()) return -1;
  if (idx.size() == 1) return 0;
  return static_cast<int>(rank<Rational>(difference_rows(points, idx)));
}

std::vector<QVector> unique_points(std::vector<QVector> points) {
  std::vector<QVector> out;
  for (auto& p : points) {
    if (std::none_of(out.begin(), out.end(), [&](const QVector& q) { return q == p; })) out.push_back(std::move(p));
  }
  return out;
}

std::vector<int> tight_set(const std::vector<QVector>& vertices, const Facet& f) {
  std::vector<int> out;
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    const Rational slack = f.normal.dot(vertices[v]) - f.offset;
    if (slack < 0) throw Error(Errc::InvalidInput, "a vertex violates an inequality");
    if (slack == 0) out.push_back(static_cast<int>(v));
  }
  return out;
}

}  // namespace

int affine_dimension(const std::vector<QVector>& points) {
  std::vector<int> idx(points.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  return affine_dimension_of(points, idx);
}

std::vector<std::vector<std::vector<int>>> proper_faces(const Polytope& p) {
  std::vector<std::vector<std::vector<int>>> by_dim(static_cast<std::size_t>(std::max(p.dim, 0)));
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  for (const auto& f : p.incidence)
    if (seen.insert(f).second) queue.push_back(f);
  while (!queue.empty()) {
    const auto face = queue.front();
    queue.pop_front();
    for (const auto& f : p.incidence) {
      std::vector<int> meet;
      std::set_intersection(face.begin(), face.end(), f.begin(), f.end(), std::back_inserter(meet));
      if (!meet.empty() && seen.insert(meet).second) queue.push_back(std::move(meet));
    }
  }
  for (const auto& face : seen) {
    const int k = affine_dimension_of(p.vertices, face);
    if (k >= 0 && k < p.dim) by_dim[static_cast<std::size_t>(k)].push_back(face);
  }
  return by_dim;
}

Polytope polytope_from_vertices(std::vector<QVector> vertices, const std::vector<Facet>& inequalities) {
  Polytope p;
  p.vertices = unique_points(std::move(vertices));
  if (p.vertices.empty()) throw Error(Errc::InvalidInput, "polytope has no vertices");
  p.ambient_dim = static_cast<int>(p.vertices.front().size());
  p.dim = affine_dimension(p.vertices);
  std::set<std::vector<int>> used;
  for (const auto& ineq : inequalities) {
    auto tight = tight_set(p.vertices, ineq);
    if (p.dim == 0 || static_cast<int>(tight.size()) == static_cast<int>(p.vertices.size())) continue;
    if (affine_dimension_of(p.vertices, tight) != p.dim - 1) continue;
    if (!used.insert(tight).second) continue;
    p.facets.push_back(ineq);
    p.incidence.push_back(std::move(tight));
  }
  for (const auto& faces : proper_faces(p)) p.f_vector.push_back(static_cast<long long>(faces.size()));
  return p;
}

Polytope convex_hull(const std::vector<QVector>& input) {
  const std::vector<QVector> points = unique_points(input);
  if (points.empty()) throw Error(Errc::InvalidInput, "convex hull of no points");
  const int k = affine_dimension(points);
  if (k == 0) return polytope_from_vertices(points, {});

  std::vector<int> all(points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  // Columns of U span the direction space of the affine hull.
  const QMatrix diffs = difference_rows(points, all);
  const Echelon<Rational> e = rref<Rational>(QMatrix(diffs.transpose()));
  QMatrix u(diffs.cols(), k);
  for (int c = 0; c < k; ++c) u.col(c) = diffs.row(e.pivots[static_cast<std::size_t>(c)]).transpose();

  std::vector<Facet> facets;
  for (const auto& subset : k_subsets(static_cast<int>(points.size()), k)) {
    if (affine_dimension_of(points, subset) != k - 1) continue;
    const QMatrix coeffs = k == 1 ? QMatrix(0, 1) : QMatrix(difference_rows(points, subset) * u);
    const QMatrix kernel = nullspace<Rational>(coeffs);
    if (kernel.cols() != 1) continue;
    QVector normal = u * kernel.col(0);
    Rational offset = normal.dot(points[static_cast<std::size_t>(subset[0])]);
    bool below = false, above = false;
    for (const auto& pt : points) {
      const Rational v = normal.dot(pt) - offset;
      below = below || v < 0;
      above = above || v > 0;
    }
    if (below && above) continue;
    if (below) {
      normal = -normal;
      offset = -offset;
    }
    facets.push_back({normal, offset});
  }

  // A point is a vertex when the facets through it meet only in it.
  std::vector<QVector> vertices;
  for (std::size_t i = 0; i < points.size(); ++i) {
    std::vector<int> meet = all;
    for (const auto& f : facets) {
      if (f.normal.dot(points[i]) != f.offset) continue;
      std::vector<int> tight, next;
      for (int j : all)
        if (f.normal.dot(points[static_cast<std::size_t>(j)]) == f.offset) tight.push_back(j);
      std::set_intersection(meet.begin(), meet.end(), tight.begin(), tight.end(), std::back_inserter(next));
      meet = std::move(next);
    }
    if (meet.size() == 1) vertices.push_back(points[i]);
  }
  return polytope_from_vertices(std::move(vertices), facets);
}

std::vector<int> vertex_degrees(const Polytope& p) {
  std::vector<int> deg(p.vertices.size(), 0);
  for (const auto& f : p.incidence)
    for (int v : f) ++deg[static_cast<std::size_t>(v)];
  std::sort(deg.begin(), deg.end());
  return deg;
}

bool is_simple(const Polytope& p) {
  const auto deg = vertex_degrees(p);
  return std::all_of(deg.begin(), deg.end(), [&](int x) { return x == p.dim; });
}

bool is_simplicial(const Polytope& p) {
  return std::all_of(p.incidence.begin(), p.incidence.end(),
                     [&](const std::vector<int>& f) { return static_cast<int>(f.size()) == p.dim; });
}

}  // namespace slm
