#include "jsec/qp.hpp"

#include <limits>
#include <vector>

namespace jsec::qp {

namespace {

// Solve Q_PP z = -q_P on the passive set; min-norm fallback when singular.
Eigen::VectorXd solve_passive(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q,
                              const std::vector<int>& P) {
  const int p = static_cast<int>(P.size());
  Eigen::MatrixXd Qpp(p, p);
  Eigen::VectorXd qp(p);
  for (int i = 0; i < p; ++i) {
    qp[i] = q[P[i]];
    for (int j = 0; j < p; ++j) Qpp(i, j) = Q(P[i], P[j]);
  }
  Eigen::LDLT<Eigen::MatrixXd> ldlt(Qpp);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
    Eigen::VectorXd z = ldlt.solve(-qp);
    if ((Qpp * z + qp).norm() <= 1e-8 * (1.0 + qp.norm())) return z;
  }
  return Qpp.completeOrthogonalDecomposition().solve(-qp);
}

}  // namespace

Eigen::VectorXd nonneg_qp(const Eigen::MatrixXd& Q, const Eigen::VectorXd& q, double tol,
                          int max_iter) {
  const int n = static_cast<int>(q.size());
  Eigen::VectorXd lam = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);
  std::vector<int> P;
  P.reserve(n);
  double scale = std::max(1.0, q.cwiseAbs().maxCoeff());

  for (int iter = 0; iter < max_iter; ++iter) {
    Eigen::VectorXd w = -(Q * lam + q);
    int enter = -1;
    double wmax = tol * scale;
    for (int j = 0; j < n; ++j) {
      if (!passive[j] && w[j] > wmax) {
        wmax = w[j];
        enter = j;
      }
    }
    if (enter < 0) return lam;
    passive[enter] = true;
    P.push_back(enter);

    for (int inner = 0; inner < max_iter; ++inner) {
      Eigen::VectorXd z = solve_passive(Q, q, P);
      bool ok = true;
      for (int i = 0; i < static_cast<int>(P.size()); ++i)
        if (z[i] <= 0) ok = false;
      if (ok) {
        lam.setZero();
        for (int i = 0; i < static_cast<int>(P.size()); ++i) lam[P[i]] = z[i];
        break;
      }
      double alpha = 1.0;
      for (int i = 0; i < static_cast<int>(P.size()); ++i) {
        if (z[i] <= 0) {
          double li = lam[P[i]];
          if (li - z[i] > 0) alpha = std::min(alpha, li / (li - z[i]));
        }
      }
      for (int i = 0; i < static_cast<int>(P.size()); ++i) {
        int j = P[i];
        lam[j] += alpha * (z[i] - lam[j]);
      }
      std::vector<int> keep;
      for (int j : P) {
        if (lam[j] > tol * scale) {
          keep.push_back(j);
        } else {
          lam[j] = 0;
          passive[j] = false;
        }
      }
      P = keep;
      if (P.empty()) break;
    }
  }
  return lam;
}

Eigen::VectorXd nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, double tol) {
  return nonneg_qp(A.transpose() * A, -A.transpose() * y, tol);
}

HullProjection project_onto_hull(const Eigen::MatrixXd& V, const Eigen::VectorXd& x, double tol) {
  const int n = static_cast<int>(V.rows());
  const int m = static_cast<int>(V.cols());
  Eigen::MatrixXd P = V.colwise() - x;
  double scale = std::max(1.0, P.colwise().norm().maxCoeff());
  double eps = tol * scale * scale;

  int start = 0;
  double best = P.col(0).squaredNorm();
  for (int j = 1; j < m; ++j) {
    double s = P.col(j).squaredNorm();
    if (s < best) {
      best = s;
      start = j;
    }
  }
  std::vector<int> S = {start};
  Eigen::VectorXd w = Eigen::VectorXd::Ones(1);  // weights on S
  Eigen::VectorXd y = P.col(start);              // current point

  for (int major = 0; major < 10 * m + 100; ++major) {
    // Optimality: min_j <y, p_j> >= |y|^2 - eps.
    int jmin = 0;
    double dmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      double d = y.dot(P.col(j));
      if (d < dmin) {
        dmin = d;
        jmin = j;
      }
    }
    if (dmin >= y.squaredNorm() - eps) break;
    bool in_S = false;
    for (int j : S)
      if (j == jmin) in_S = true;
    if (in_S) break;
    S.push_back(jmin);
    Eigen::VectorXd w2(w.size() + 1);
    w2 << w, 0.0;
    w = w2;

    for (int minor = 0; minor < 10 * m + 100; ++minor) {
      // Min-norm point over the affine hull of S (KKT with sum-to-one).
      const int s = static_cast<int>(S.size());
      Eigen::MatrixXd K(s + 1, s + 1);
      Eigen::VectorXd rhs(s + 1);
      for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) K(i, j) = P.col(S[i]).dot(P.col(S[j]));
        K(i, s) = 1.0;
        K(s, i) = 1.0;
        rhs[i] = 0.0;
      }
      K(s, s) = 0.0;
      rhs[s] = 1.0;
      Eigen::VectorXd sol = K.completeOrthogonalDecomposition().solve(rhs);
      Eigen::VectorXd v = sol.head(s);
      bool interior = true;
      for (int i = 0; i < s; ++i)
        if (v[i] <= tol) interior = false;
      if (interior) {
        w = v;
        break;
      }
      double theta = 1.0;
      for (int i = 0; i < s; ++i) {
        if (v[i] <= tol && w[i] - v[i] > 0) theta = std::min(theta, w[i] / (w[i] - v[i]));
      }
      w = w + theta * (v - w);
      std::vector<int> keepS;
      std::vector<double> keepW;
      for (int i = 0; i < s; ++i) {
        if (w[i] > tol) {
          keepS.push_back(S[i]);
          keepW.push_back(w[i]);
        }
      }
      S = keepS;
      w = Eigen::Map<Eigen::VectorXd>(keepW.data(), static_cast<int>(keepW.size()));
      if (w.size() > 0) w /= w.sum();
    }
    y.setZero(n);
    for (int i = 0; i < static_cast<int>(S.size()); ++i) y += w[i] * P.col(S[i]);
  }

  HullProjection out;
  out.weights = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < static_cast<int>(S.size()); ++i) out.weights[S[i]] = w[i];
  out.point = x + y;
  out.distance = y.norm();
  return out;
}

}  // namespace jsec::qp
