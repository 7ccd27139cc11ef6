#pragma once

#include <Eigen/Dense>

#include "jsec/errors.hpp"

namespace jsec {

/// Facet representation {x : <a_j, x> <= b_j} with unit normals a_j (rows).
struct HPolytope {
  int dim = 0;
  Eigen::MatrixXd normals;  // m x dim, unit rows
  Eigen::VectorXd offsets;  // m
  bool symmetric = false;
  bool origin_interior = false;

  int facet_count() const { return static_cast<int>(normals.rows()); }
};

/// Vertex representation; rows are points. Minimal (all rows extreme).
struct VPolytope {
  int dim = 0;
  Eigen::MatrixXd vertices;  // N x dim

  int vertex_count() const { return static_cast<int>(vertices.rows()); }
};

/// Affine k-flat p + span(Q) with column-orthonormal Q and Q'p = 0.
struct Subspace {
  int ambient_dim = 0;
  int dim = 0;
  Eigen::MatrixXd basis;   // ambient_dim x dim, orthonormal columns
  Eigen::VectorXd offset;  // ambient_dim, orthogonal to the column span

  bool linear(double tol = 1e-12) const { return offset.norm() <= tol; }
  double distance() const { return offset.norm(); }
};

/// Sum of segments [-g_i, g_i]; rows of `generators` are the g_i.
struct Zonotope {
  int dim = 0;
  Eigen::MatrixXd generators;

  int generator_count() const { return static_cast<int>(generators.rows()); }
};

/// {x : (x - c)' M^{-1} (x - c) <= 1} with M SPD.
struct Ellipsoid {
  Eigen::VectorXd center;
  Eigen::MatrixXd shape;

  int dim() const { return static_cast<int>(center.size()); }
  double volume() const;
};

/// Normalizes rows to unit length (offsets rescaled) and infers tags.
HPolytope make_hpolytope(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

/// Invariant checks; throw Error on violation.
void check_invariants(const HPolytope& P, bool certify_bounded = false);
void check_invariants(const Subspace& F);
void check_invariants(const Ellipsoid& E);

/// True iff the rows of `normals` come in exact antipodal pairs with equal
/// offsets (within tol).
bool antipodal_pairs(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets,
                     double tol = 1e-9);

/// y = map * x + shift applied to a body.
struct AffineMap {
  Eigen::MatrixXd linear;
  Eigen::VectorXd shift;
};
HPolytope apply(const AffineMap& T, const HPolytope& P);
VPolytope apply(const AffineMap& T, const VPolytope& P);

/// Orthonormal basis of the orthogonal complement of a unit vector.
Eigen::MatrixXd orthogonal_complement(const Eigen::VectorXd& u);

}  // namespace jsec
