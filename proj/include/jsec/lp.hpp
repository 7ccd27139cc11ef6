#pragma once

#include <Eigen/Dense>

namespace jsec::lp {

enum class Status { Optimal, Unbounded, Infeasible };

struct Result {
  Status status;
  Eigen::VectorXd x;
  double value = 0.0;
};

/// maximize c'x subject to A x <= b, x free. Dense two-phase simplex.
Result maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

/// Largest t with A x + t*1 <= b (capped at t <= cap to keep the LP bounded).
/// For unit rows of A, t is the Euclidean margin of x to every facet.
struct InteriorPoint {
  Eigen::VectorXd x;
  double margin;
};
InteriorPoint chebyshev_like_center(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                    double cap = 1e6);

/// True iff the recession cone {d : A d <= 0} is {0}, i.e. the rows of A
/// positively span R^n and {x : Ax <= b} is bounded for any b.
bool positively_spans(const Eigen::MatrixXd& A);

}  // namespace jsec::lp
