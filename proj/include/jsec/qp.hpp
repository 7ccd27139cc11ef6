#pragma once

#include <Eigen/Dense>

namespace jsec::qp {

/// min 0.5 l'Q l + q'l  s.t. l >= 0, Q symmetric PSD. Lawson-Hanson style
/// active set; KKT tolerance `tol` on the dual feasibility of clamped entries.
Eigen::VectorXd nonneg_qp(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q, double tol = 1e-10,
                          int max_iter = 10000);

/// min ||A l - y||_2 s.t. l >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, double tol = 1e-10);

struct HullProjection {
  Eigen::VectorXd point;    // nearest point of conv(columns of V) to x
  Eigen::VectorXd weights;  // convex weights realizing it
  double distance;
};

/// Wolfe's min-norm-point algorithm: Euclidean projection of x onto the
/// convex hull of the columns of V.
HullProjection project_onto_hull(const Eigen::MatrixXd& V, const Eigen::VectorXd& x,
                                 double tol = 1e-12);

}  // namespace jsec::qp
