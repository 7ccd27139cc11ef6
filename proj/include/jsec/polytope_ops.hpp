#pragma once

#include <vector>

#include "jsec/bodies.hpp"

namespace jsec {

// Combinatorial guards for the brute-force enumeration paths.
constexpr int kMaxFacets = 64;
constexpr int kMaxVertices = 64;
constexpr int kMaxDim = 9;
constexpr int kMaxGenerators = 24;
constexpr double kMergeTol = 1e-9;

/// All vertices of a bounded H-polytope, duplicates merged within 1e-9,
/// sorted lexicographically.
VPolytope vertex_enumerate(const HPolytope& P);

/// Minimal H-representation of the convex hull of a full-dimensional point set.
HPolytope facet_enumerate(const VPolytope& P);

/// K cap F in intrinsic coordinates of F (the affine offset maps to the
/// subspace origin).
HPolytope section(const HPolytope& P, const Subspace& F);

/// Orthogonal projection onto a linear subspace, in intrinsic coordinates;
/// result reduced to its extreme points.
VPolytope project(const VPolytope& P, const Subspace& F);
Zonotope project(const Zonotope& Z, const Subspace& F);

VPolytope polar(const HPolytope& P);
HPolytope polar(const VPolytope& P);

double support(const HPolytope& P, const Eigen::VectorXd& x);
double support(const VPolytope& P, const Eigen::VectorXd& x);
double support(const Zonotope& Z, const Eigen::VectorXd& x);
double support(const Ellipsoid& E, const Eigen::VectorXd& x);

/// Minkowski gauge max_j <a_j, x> / b_j; requires the origin interior.
double gauge(const HPolytope& P, const Eigen::VectorXd& x);

double volume(const HPolytope& P);
double volume(const VPolytope& P);

struct SurfaceMeasure {
  Eigen::MatrixXd normals;  // one row per facet with positive area
  Eigen::VectorXd areas;
  double total = 0.0;
};
SurfaceMeasure surface_measure(const HPolytope& P);

Zonotope projection_body(const HPolytope& P);

/// 2^n sum over n-subsets of |det|; exact zonotope volume.
double zonotope_volume(const Zonotope& Z);

/// Drop points inside the hull of the others (minimal V-representation).
VPolytope reduce_to_extreme(const VPolytope& P);

// ---- lower-level hull machinery (shared with the positions module) ----

struct HullFacet {
  Eigen::VectorXd normal;  // unit outer normal
  double offset;
  std::vector<int> incident;  // indices of points on the facet
};

/// Facets of conv(points) by brute force over affinely independent subsets.
/// Throws DegenerateDim if the points do not affinely span.
std::vector<HullFacet> hull_facets(const Eigen::MatrixXd& pts);

/// Simplices (k+1 point indices each) triangulating conv(points), anchored
/// at the lexicographically smallest point.
std::vector<std::vector<int>> triangulate_hull(const Eigen::MatrixXd& pts);

/// Exact volume of conv(points) in R^k; 0 if not full-dimensional.
double points_volume(const Eigen::MatrixXd& pts);

/// (k-1)-dimensional volume of a simplex list living in R^k (or k-volume of
/// k+1-point simplices); rows of pts are points, each simplex a list of
/// point indices.
double simplices_volume(const Eigen::MatrixXd& pts, const std::vector<std::vector<int>>& tris);

struct BodyIncidence {
  Eigen::MatrixXd vertices;                           // sorted vertex list
  std::vector<std::vector<int>> facet_vertices;       // per H row
  std::vector<std::vector<std::vector<int>>> facet_tris;  // per H row, simplices of n indices
};

/// Vertex list plus per-facet incidence & triangulation of a bounded
/// H-polytope. The triangulation is combinatorial and stays valid under
/// invertible linear maps of the vertex coordinates.
BodyIncidence body_incidence(const HPolytope& P);

}  // namespace jsec
