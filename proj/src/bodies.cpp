#include "jsec/bodies.hpp"

#include <cmath>

#include "jsec/lp.hpp"

namespace jsec {

double Ellipsoid::volume() const {
  int n = dim();
  double ball = std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
  return ball * std::sqrt(shape.determinant());
}

bool antipodal_pairs(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets, double tol) {
  const int m = static_cast<int>(normals.rows());
  if (m % 2 != 0) return false;
  std::vector<bool> used(m, false);
  for (int i = 0; i < m; ++i) {
    if (used[i]) continue;
    bool found = false;
    for (int j = i + 1; j < m; ++j) {
      if (used[j]) continue;
      if ((normals.row(i) + normals.row(j)).norm() <= tol &&
          std::abs(offsets[i] - offsets[j]) <= tol) {
        used[i] = used[j] = true;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

HPolytope make_hpolytope(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  HPolytope P;
  P.dim = static_cast<int>(A.cols());
  const int m = static_cast<int>(A.rows());
  P.normals.resize(m, P.dim);
  P.offsets.resize(m);
  for (int i = 0; i < m; ++i) {
    double nrm = A.row(i).norm();
    if (nrm < 1e-12) throw Error(ErrorCode::InvalidBody, "zero facet normal");
    P.normals.row(i) = A.row(i) / nrm;
    P.offsets[i] = b[i] / nrm;
  }
  P.origin_interior = (m > 0) && (P.offsets.minCoeff() > 1e-9);
  P.symmetric = antipodal_pairs(P.normals, P.offsets);
  return P;
}

void check_invariants(const HPolytope& P, bool certify_bounded) {
  const int m = P.facet_count();
  if (P.dim < 1 || m == 0) throw Error(ErrorCode::InvalidBody, "empty facet list");
  for (int i = 0; i < m; ++i) {
    if (std::abs(P.normals.row(i).norm() - 1.0) > 1e-12)
      throw Error(ErrorCode::InvalidBody, "non-unit facet normal");
  }
  if (P.origin_interior && P.offsets.minCoeff() <= 0)
    throw Error(ErrorCode::InvalidBody, "origin_interior tag with nonpositive offset");
  if (P.symmetric && !antipodal_pairs(P.normals, P.offsets))
    throw Error(ErrorCode::InvalidBody, "symmetric tag without antipodal facet pairs");
  if (certify_bounded && !lp::positively_spans(P.normals))
    throw Error(ErrorCode::Unbounded, "facet normals do not positively span");
}

void check_invariants(const Subspace& F) {
  if (F.dim < 1 || F.dim > F.ambient_dim) throw Error(ErrorCode::InvalidBody, "subspace dim");
  Eigen::MatrixXd G = F.basis.transpose() * F.basis;
  if ((G - Eigen::MatrixXd::Identity(F.dim, F.dim)).norm() > 1e-12)
    throw Error(ErrorCode::InvalidBody, "basis not orthonormal");
  if (F.offset.size() != F.ambient_dim) throw Error(ErrorCode::InvalidBody, "offset size");
  if ((F.basis.transpose() * F.offset).norm() > 1e-12)
    throw Error(ErrorCode::InvalidBody, "offset not orthogonal to basis");
}

void check_invariants(const Ellipsoid& E) {
  if ((E.shape - E.shape.transpose()).norm() > 1e-12)
    throw Error(ErrorCode::InvalidBody, "shape not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(E.shape);
  if (es.eigenvalues().minCoeff() <= 0)
    throw Error(ErrorCode::InvalidBody, "shape not positive definite");
}

HPolytope apply(const AffineMap& T, const HPolytope& P) {
  // y = Ax + s, so <a, x> <= b becomes <A^{-T} a, y> <= b + <A^{-T} a, s>.
  Eigen::MatrixXd Ait = T.linear.inverse().transpose();
  Eigen::MatrixXd A2 = P.normals * Ait.transpose();
  Eigen::VectorXd b2 = P.offsets + A2 * T.shift;
  return make_hpolytope(A2, b2);
}

VPolytope apply(const AffineMap& T, const VPolytope& P) {
  VPolytope Q;
  Q.dim = static_cast<int>(T.linear.rows());
  Q.vertices = (P.vertices * T.linear.transpose()).rowwise() + T.shift.transpose();
  return Q;
}

Eigen::MatrixXd orthogonal_complement(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);
  M.col(0) = u;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(M);
  Eigen::MatrixXd Q = qr.householderQ();
  // First column of Q is +-u; complement is the rest.
  return Q.rightCols(n - 1);
}

}  // namespace jsec
