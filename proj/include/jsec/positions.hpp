#pragma once

#include <functional>
#include <string>
#include <vector>

#include "jsec/bodies.hpp"
#include "jsec/polytope_ops.hpp"

namespace jsec {

/// Contact-point decomposition of the identity: I = sum c_j u_j (x) u_j,
/// sum c_j u_j = 0, sum c_j = n, c_j in (0,1].
struct JohnDecomposition {
  int dim = 0;
  Eigen::MatrixXd contacts;  // m x dim, unit rows
  Eigen::VectorXd weights;   // m
};

/// One-dimension-up rewrite: v_j = sqrt(n/(n+1)) (-u_j, 1/sqrt(n)),
/// delta_j = (n+1) c_j / n; I_{n+1} = sum delta_j v_j (x) v_j and
/// sum delta_j v_j = (0, sqrt(n+1)).
struct LiftedDecomposition {
  int dim = 0;               // n + 1
  Eigen::MatrixXd vectors;   // m x dim, unit rows
  Eigen::VectorXd weights;   // delta_j
};

/// Decomposition pushed to a subspace. For a lifted decomposition and the
/// flat H spanned by {(x, sqrt(n)) : x in F} this holds the w_j, kappa_j,
/// s_j of the identity I_H = sum kappa_j w_j (x) w_j; for a plain
/// decomposition and linear F it holds v_j^0, delta_j^0, t_j.
struct RestrictedDecomposition {
  Subspace subspace;            // the F the restriction was built from
  bool from_lift = false;       // true: H-case (intrinsic dim k+1)
  std::vector<int> index_set;   // source indices with nonvanishing projection
  Eigen::MatrixXd vectors;      // |J| x (k or k+1), unit rows, intrinsic coords
  Eigen::VectorXd weights;      // kappa_j or delta_j^0
  Eigen::VectorXd inv_norms;    // s_j = 1/||P_H v_j|| or t_j = 1/||P_F u_j||
  double d1 = 0.0;              // H-case only: sum delta_j ||P_H v_j|| / sqrt(k+1)
};

struct TraceRecord {
  std::string solver;
  int iteration = 0;
  double objective = 0.0;
  double residual = 0.0;
};
using TraceSink = std::function<void(const TraceRecord&)>;

/// Maximal-volume inscribed ellipsoid {c + Lu : ||u|| <= 1}, log-barrier
/// interior point on (c, L lower-triangular); duality gap <= 1e-10 * m.
Ellipsoid max_inscribed_ellipsoid(const HPolytope& P, const TraceSink& trace = nullptr);

/// Affine image of P whose inscribed ellipsoid is the unit ball at 0,
/// together with the map that was applied (y = T.linear x + T.shift).
std::pair<HPolytope, AffineMap> to_john_position(const HPolytope& P);

/// Minimum-volume enclosing ellipsoid of the vertex set (Khachiyan with
/// away steps on the lifted points).
Ellipsoid min_enclosing_ellipsoid(const VPolytope& P, const TraceSink& trace = nullptr);

/// Facet normals tangent to the inscribed unit ball: {a_j : b_j <= 1 + tol}.
/// Verifies the body is in John position first (NotInJohnPosition).
Eigen::MatrixXd contact_points(const HPolytope& P, double tol = 1e-5);

/// Nonnegative least-squares fit of weights c_j >= 0 solving
/// [u_j(x)u_j flattened; u_j] c = [vec(I); 0]; residual <= 1e-7 required.
JohnDecomposition fit_john_decomposition(const Eigen::MatrixXd& contacts, bool symmetric);

LiftedDecomposition lift_decomposition(const JohnDecomposition& D);

/// F-restriction (F linear): v_j^0 = P_F u_j / ||P_F u_j||, delta_j^0 =
/// c_j ||P_F u_j||^2, t_j = 1 / ||P_F u_j||.
RestrictedDecomposition restrict_decomposition(const JohnDecomposition& D, const Subspace& F);

/// H-restriction for H = span{(x, sqrt(n)) : x in F} (F may be affine):
/// w_j = P_H v_j / ||P_H v_j||, kappa_j = delta_j ||P_H v_j||^2.
RestrictedDecomposition restrict_decomposition(const LiftedDecomposition& L, const Subspace& F);

/// Orthonormal basis of span{(x, sqrt(n)) : x in F} inside R^{n+1}.
Eigen::MatrixXd lifted_flat_basis(const Subspace& F);

struct MinSurfacePosition {
  HPolytope body;
  Eigen::MatrixXd map;  // volume-preserving linear map applied to the input
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> surface_trace;  // boundary area per iteration
  SurfaceMeasure surface;             // facet normals/areas of the output body
  double volume = 0.0;                // volume of the output body
};

/// Iterates T <- M^{-1/2} / det^{1/n} (M the normalized surface-measure
/// second moment) until the surface measure is isotropic to 1e-6.
MinSurfacePosition min_surface_area_position(const HPolytope& P, const TraceSink& trace = nullptr);

/// || I_n - (n / area) sum |F_j| u_j (x) u_j ||_F.
double isotropy_residual(const HPolytope& P);

}  // namespace jsec
