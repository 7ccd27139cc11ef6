#include "jsec/lp.hpp"

#include <limits>
#include <vector>

namespace jsec::lp {

namespace {

constexpr double kTol = 1e-9;

// Tableau simplex for min c'z s.t. E z = f, z >= 0, f >= 0, starting from the
// given basis (one basic variable per row, tableau already in canonical form).
// Returns false if unbounded. Bland's rule throughout.
bool simplex_iterate(Eigen::MatrixXd& T, std::vector<int>& basis, int ncols) {
  const int m = static_cast<int>(T.rows()) - 1;
  for (int iter = 0; iter < 100000; ++iter) {
    int enter = -1;
    for (int j = 0; j < ncols; ++j) {
      if (T(m, j) < -kTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return true;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (T(i, enter) > kTol) {
        double ratio = T(i, ncols) / T(i, enter);
        if (ratio < best - kTol || (ratio < best + kTol && (leave < 0 || basis[i] < basis[leave]))) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) return false;  // unbounded ray
    double piv = T(leave, enter);
    T.row(leave) /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = T(i, enter);
      if (f != 0.0) T.row(i) -= f * T.row(leave);
    }
    basis[leave] = enter;
  }
  return true;  // should not happen at desk scale
}

}  // namespace

Result maximize(const Eigen::VectorXd& c, const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  // z = [x+, x-, slacks, artificials]; rows flipped so RHS >= 0.
  const int nv = 2 * n + m;
  Eigen::MatrixXd E(m, nv + m);
  Eigen::VectorXd f(m);
  E.setZero();
  std::vector<int> art_col(m, -1);
  int nart = 0;
  for (int i = 0; i < m; ++i) {
    double sgn = (b[i] < 0) ? -1.0 : 1.0;
    E.block(i, 0, 1, n) = sgn * A.row(i);
    E.block(i, n, 1, n) = -sgn * A.row(i);
    E(i, 2 * n + i) = sgn;  // slack
    f[i] = sgn * b[i];
    if (sgn < 0) {
      art_col[i] = nv + nart;
      E(i, nv + nart) = 1.0;
      ++nart;
    }
  }
  const int ncols = nv + nart;

  Eigen::MatrixXd T(m + 1, ncols + 1);
  T.setZero();
  T.block(0, 0, m, ncols) = E.leftCols(ncols);
  T.block(0, ncols, m, 1) = f;
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = (art_col[i] >= 0) ? art_col[i] : 2 * n + i;

  if (nart > 0) {
    // Phase 1: minimize sum of artificials.
    for (int i = 0; i < m; ++i)
      if (art_col[i] >= 0) T.row(m) -= T.row(i);
    simplex_iterate(T, basis, ncols);
    if (-T(m, ncols) > 1e-7) return {Status::Infeasible, Eigen::VectorXd::Zero(n), 0.0};
    // Pivot any artificial still basic onto a structural column if possible.
    for (int i = 0; i < m; ++i) {
      if (basis[i] >= nv) {
        for (int j = 0; j < nv; ++j) {
          if (std::abs(T(i, j)) > 1e-7) {
            double piv = T(i, j);
            T.row(i) /= piv;
            for (int r = 0; r <= m; ++r) {
              if (r == i) continue;
              double fac = T(r, j);
              if (fac != 0.0) T.row(r) -= fac * T.row(i);
            }
            basis[i] = j;
            break;
          }
        }
      }
    }
  }

  // Phase 2 objective: minimize -c'(x+ - x-).
  T.row(m).setZero();
  for (int j = 0; j < n; ++j) {
    T(m, j) = -c[j];
    T(m, n + j) = c[j];
  }
  for (int i = 0; i < m; ++i) {
    if (basis[i] < nv && std::abs(T(m, basis[i])) > 0) T.row(m) -= T(m, basis[i]) * T.row(i);
  }
  // Forbid artificial re-entry by zero-width: make their reduced costs large.
  for (int j = nv; j < ncols; ++j) T(m, j) = 1.0;

  if (!simplex_iterate(T, basis, ncols)) return {Status::Unbounded, Eigen::VectorXd::Zero(n), 0.0};

  Eigen::VectorXd z = Eigen::VectorXd::Zero(ncols);
  for (int i = 0; i < m; ++i)
    if (basis[i] < ncols) z[basis[i]] = T(i, ncols);
  Eigen::VectorXd x = z.head(n) - z.segment(n, n);
  return {Status::Optimal, x, c.dot(x)};
}

InteriorPoint chebyshev_like_center(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                    double cap) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  Eigen::MatrixXd A2(m + 1, n + 1);
  Eigen::VectorXd b2(m + 1);
  A2.block(0, 0, m, n) = A;
  A2.block(0, n, m, 1).setOnes();
  A2.row(m).setZero();
  A2(m, n) = 1.0;
  b2.head(m) = b;
  b2[m] = cap;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
  c[n] = 1.0;
  Result r = maximize(c, A2, b2);
  if (r.status != Status::Optimal) return {Eigen::VectorXd::Zero(n), -1.0};
  return {r.x.head(n), r.x[n]};
}

bool positively_spans(const Eigen::MatrixXd& A) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (m < n + 1) return false;
  // Recession direction exists iff max e_i'd (or -e_i'd) over {Ad<=0, |d|<=1}
  // is positive for some coordinate.
  Eigen::MatrixXd G(m + 2 * n, n);
  Eigen::VectorXd h(m + 2 * n);
  G.topRows(m) = A;
  G.block(m, 0, n, n) = Eigen::MatrixXd::Identity(n, n);
  G.block(m + n, 0, n, n) = -Eigen::MatrixXd::Identity(n, n);
  h.head(m).setZero();
  h.tail(2 * n).setOnes();
  for (int i = 0; i < n; ++i) {
    for (double sgn : {1.0, -1.0}) {
      Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
      c[i] = sgn;
      Result r = maximize(c, G, h);
      if (r.status != Status::Optimal || r.value > 1e-7) return false;
    }
  }
  return true;
}

}  // namespace jsec::lp
