#ifndef SLM_POLYTOPE_HPP
#define SLM_POLYTOPE_HPP

#include "slm/scalar.hpp"

#include <vector>

namespace slm {

/// normal . v >= offset
struct Facet {
  QVector normal;
  Rational offset;
};

/// Exact polytope with paired vertex and facet descriptions.
struct Polytope {
  int ambient_dim = 0;
  int dim = -1;
  std::vector<QVector> vertices;
  std::vector<Facet> facets;
  /// incidence[f] = sorted indices of the vertices on facet f.
  std::vector<std::vector<int>> incidence;
  /// f_0, ..., f_{dim-1}.
  std::vector<long long> f_vector;
};

/// Dimension of the affine hull of the points (-1 for none).
int affine_dimension(const std::vector<QVector>& points);

/// Keeps the inequalities whose tight vertex sets are facets (one per distinct
/// set), then fills in the f-vector from the face lattice.
Polytope polytope_from_vertices(std::vector<QVector> vertices, const std::vector<Facet>& inequalities);

/// Convex hull of finitely many points (brute force over affinely independent subsets).
Polytope convex_hull(const std::vector<QVector>& points);

/// Faces (as sorted vertex-index sets) of every dimension 0..dim-1, grouped by dimension.
std::vector<std::vector<std::vector<int>>> proper_faces(const Polytope& p);

/// Number of facets through each vertex, sorted.
std::vector<int> vertex_degrees(const Polytope& p);

/// Every vertex lies on exactly dim facets.
bool is_simple(const Polytope& p);

/// Every facet has exactly dim vertices.
bool is_simplicial(const Polytope& p);

}  // namespace slm

#endif  // SLM_POLYTOPE_HPP
