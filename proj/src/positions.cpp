#include "jsec/positions.hpp"

#include <cmath>
#include <limits>

#include "jsec/lp.hpp"
#include "jsec/polytope_ops.hpp"
#include "jsec/qp.hpp"

namespace jsec {

namespace {

// ---- maximal inscribed ellipsoid: log-barrier on (d, L lower-triangular) ----
//
// Parameters theta = (d, vech(L)); objective -t*sum log L_pp plus the barrier
// -sum_j log s_j with s_j = b_j - <a_j, d> - ||L' a_j||.  Convex in theta.

struct MvieProblem {
  const HPolytope* P;
  int n;
  int m;
  int nL;   // n(n+1)/2
  int dim;  // n + nL

  int lidx(int p, int q) const {  // p >= q, column-major over the triangle
    return n + q * n - q * (q - 1) / 2 + (p - q);
  }

  Eigen::MatrixXd unpackL(const Eigen::VectorXd& th) const {
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (int q = 0; q < n; ++q)
      for (int p = q; p < n; ++p) L(p, q) = th[lidx(p, q)];
    return L;
  }

  // Returns false if theta is outside the barrier domain.
  bool slacks(const Eigen::VectorXd& th, Eigen::MatrixXd& L, Eigen::MatrixXd& Q,
              Eigen::VectorXd& r, Eigen::VectorXd& s) const {
    L = unpackL(th);
    for (int p = 0; p < n; ++p)
      if (L(p, p) <= 0) return false;
    Eigen::VectorXd d = th.head(n);
    Q = P->normals * L;  // row j = (L' a_j)'
    r = Q.rowwise().norm();
    s = P->offsets - P->normals * d - r;
    return s.minCoeff() > 0;
  }

  double value(const Eigen::VectorXd& th, double t) const {
    Eigen::MatrixXd L, Q;
    Eigen::VectorXd r, s;
    if (!slacks(th, L, Q, r, s)) return std::numeric_limits<double>::infinity();
    double v = 0;
    for (int p = 0; p < n; ++p) v -= t * std::log(L(p, p));
    for (int j = 0; j < m; ++j) v -= std::log(s[j]);
    return v;
  }

  void grad_hess(const Eigen::VectorXd& th, double t, Eigen::VectorXd& g,
                 Eigen::MatrixXd& H) const {
    Eigen::MatrixXd L, Q;
    Eigen::VectorXd r, s;
    slacks(th, L, Q, r, s);
    g = Eigen::VectorXd::Zero(dim);
    H = Eigen::MatrixXd::Zero(dim, dim);
    for (int p = 0; p < n; ++p) {
      int i = lidx(p, p);
      g[i] -= t / L(p, p);
      H(i, i) += t / (L(p, p) * L(p, p));
    }
    Eigen::VectorXd gj(dim);
    for (int j = 0; j < m; ++j) {
      const Eigen::VectorXd a = P->normals.row(j);
      const Eigen::VectorXd qh = Q.row(j).transpose() / r[j];  // unit L'a_j
      gj.head(n) = a;
      for (int q = 0; q < n; ++q)
        for (int p = q; p < n; ++p) gj[lidx(p, q)] = a[p] * qh[q];
      // -log s_j: gradient (1/s) grad s with grad s = -gj; Hessian
      // (1/s^2) gj gj' + (1/s) grad^2 r.
      g += gj / s[j];
      H += (gj * gj.transpose()) / (s[j] * s[j]);
      double c = 1.0 / (s[j] * r[j]);
      for (int q = 0; q < n; ++q)
        for (int p = q; p < n; ++p)
          for (int q2 = 0; q2 < n; ++q2)
            for (int p2 = q2; p2 < n; ++p2) {
              double hpq = a[p] * a[p2] * ((q == q2 ? 1.0 : 0.0) - qh[q] * qh[q2]);
              H(lidx(p, q), lidx(p2, q2)) += c * hpq;
            }
    }
  }
};

}  // namespace

Ellipsoid max_inscribed_ellipsoid(const HPolytope& P, const TraceSink& trace) {
  const int n = P.dim;
  const int m = P.facet_count();
  if (m > kMaxFacets || n > kMaxDim) throw Error(ErrorCode::TooLarge, "facet/dim guard exceeded");
  if (!lp::positively_spans(P.normals)) throw Error(ErrorCode::Unbounded, "body is not bounded");
  auto ip = lp::chebyshev_like_center(P.normals, P.offsets);
  if (ip.margin <= 1e-9) throw Error(ErrorCode::EmptyInterior, "no interior point found");

  MvieProblem prob{&P, n, m, n * (n + 1) / 2, n + n * (n + 1) / 2};
  Eigen::VectorXd th = Eigen::VectorXd::Zero(prob.dim);
  th.head(n) = ip.x;
  for (int p = 0; p < n; ++p) th[prob.lidx(p, p)] = 0.9 * ip.margin;

  int total_newton = 0;
  double t = 1.0;
  while (true) {
    for (int it = 0; it < 100; ++it) {
      Eigen::VectorXd g;
      Eigen::MatrixXd H;
      prob.grad_hess(th, t, g, H);
      H.diagonal().array() += 1e-12;
      Eigen::VectorXd step = -H.ldlt().solve(g);
      double decr2 = -g.dot(step);
      if (!(decr2 > 0)) break;
      if (decr2 * 0.5 <= 1e-10) break;
      double f0 = prob.value(th, t);
      double alpha = 1.0;
      while (alpha > 1e-14 && prob.value(th + alpha * step, t) > f0 - 1e-4 * alpha * decr2)
        alpha *= 0.5;
      if (alpha <= 1e-14) break;
      th += alpha * step;
      ++total_newton;
      if (total_newton > 4000)
        throw Error(ErrorCode::NotConverged, "inscribed-ellipsoid iteration cap");
    }
    if (trace) {
      Eigen::MatrixXd L = prob.unpackL(th);
      double logdet = 0;
      for (int p = 0; p < n; ++p) logdet += std::log(L(p, p));
      trace({"max_inscribed_ellipsoid", total_newton, logdet, m / t});
    }
    if (m / t <= 1e-10) break;
    t *= 20.0;
  }

  Ellipsoid E;
  E.center = th.head(n);
  Eigen::MatrixXd L = prob.unpackL(th);
  E.shape = L * L.transpose();
  return E;
}

std::pair<HPolytope, AffineMap> to_john_position(const HPolytope& P) {
  Ellipsoid E = max_inscribed_ellipsoid(P);
  Eigen::MatrixXd L = Eigen::LLT<Eigen::MatrixXd>(E.shape).matrixL();
  AffineMap T;
  T.linear = L.inverse();
  T.shift = -T.linear * E.center;
  return {apply(T, P), T};
}

Ellipsoid min_enclosing_ellipsoid(const VPolytope& P, const TraceSink& trace) {
  const int n = P.dim;
  const int N = P.vertex_count();
  if (N > kMaxVertices || n > kMaxDim) throw Error(ErrorCode::TooLarge, "vertex/dim guard exceeded");
  Eigen::MatrixXd Z(N, n + 1);
  Z.leftCols(n) = P.vertices;
  Z.col(n).setOnes();
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Z);
    if (svd.singularValues().size() < n + 1 ||
        svd.singularValues()[n] <= 1e-10 * svd.singularValues()[0])
      throw Error(ErrorCode::DegenerateDim, "vertices do not span the space");
  }

  const double eps = 1e-9;
  Eigen::VectorXd u = Eigen::VectorXd::Constant(N, 1.0 / N);
  Eigen::VectorXd kappa(N);
  for (int it = 0; it < 200000; ++it) {
    Eigen::MatrixXd X = Z.transpose() * u.asDiagonal() * Z;
    Eigen::MatrixXd Y = X.ldlt().solve(Z.transpose());  // (n+1) x N
    for (int i = 0; i < N; ++i) kappa[i] = Z.row(i).dot(Y.col(i));

    int iadd = 0, iaway = -1;
    double kmax = -1, kmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < N; ++i) {
      if (kappa[i] > kmax) {
        kmax = kappa[i];
        iadd = i;
      }
      if (u[i] > 1e-12 && kappa[i] < kmin) {
        kmin = kappa[i];
        iaway = i;
      }
    }
    double over = kmax - (n + 1.0);
    double under = (n + 1.0) - kmin;
    if (trace && it % 100 == 0) trace({"min_enclosing_ellipsoid", it, 0.0, std::max(over, under)});
    if (over <= eps * (n + 1.0) && under <= eps * (n + 1.0)) {
      Eigen::VectorXd c = P.vertices.transpose() * u;
      Eigen::MatrixXd S = P.vertices.transpose() * u.asDiagonal() * P.vertices - c * c.transpose();
      Ellipsoid E;
      E.center = c;
      E.shape = n * S;
      return E;
    }
    if (over >= under) {
      double k = kappa[iadd];
      double a = (k - (n + 1.0)) / ((n + 1.0) * (k - 1.0));
      u *= (1.0 - a);
      u[iadd] += a;
    } else {
      double k = kappa[iaway];
      double b = (k > 1.0 + 1e-15) ? ((n + 1.0) - k) / ((n + 1.0) * (k - 1.0))
                                   : std::numeric_limits<double>::infinity();
      b = std::min(b, u[iaway] / (1.0 - u[iaway]));
      u *= (1.0 + b);
      u[iaway] -= b;
      u[iaway] = std::max(u[iaway], 0.0);
    }
  }
  throw Error(ErrorCode::NotConverged, "enclosing-ellipsoid iteration cap");
}

Eigen::MatrixXd contact_points(const HPolytope& P, double tol) {
  Ellipsoid E = max_inscribed_ellipsoid(P);
  int n = P.dim;
  if ((E.shape - Eigen::MatrixXd::Identity(n, n)).norm() > 1e-4 || E.center.norm() > 1e-4)
    throw Error(ErrorCode::NotInJohnPosition, "inscribed ellipsoid is not the unit ball");
  std::vector<int> rows;
  for (int j = 0; j < P.facet_count(); ++j)
    if (P.offsets[j] <= 1.0 + tol) rows.push_back(j);
  Eigen::MatrixXd U(rows.size(), n);
  for (size_t i = 0; i < rows.size(); ++i) U.row(i) = P.normals.row(rows[i]);
  return U;
}

JohnDecomposition fit_john_decomposition(const Eigen::MatrixXd& contacts, bool symmetric) {
  const int m = static_cast<int>(contacts.rows());
  const int n = static_cast<int>(contacts.cols());
  if (m < (symmetric ? n : n + 1))
    throw Error(ErrorCode::InfeasibleDecomposition, "too few contact points");
  Eigen::MatrixXd M(n * n + n, m);
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXd u = contacts.row(j);
    Eigen::MatrixXd uu = u * u.transpose();
    M.col(j).head(n * n) = Eigen::Map<Eigen::VectorXd>(uu.data(), n * n);
    M.col(j).tail(n) = u;
  }
  Eigen::VectorXd rhs(n * n + n);
  Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  rhs.head(n * n) = Eigen::Map<Eigen::VectorXd>(I.data(), n * n);
  rhs.tail(n).setZero();
  Eigen::VectorXd c = qp::nnls(M, rhs);
  if ((M * c - rhs).norm() > 1e-7)
    throw Error(ErrorCode::InfeasibleDecomposition, "no nonnegative identity decomposition");
  std::vector<int> keep;
  for (int j = 0; j < m; ++j)
    if (c[j] >= 1e-10) keep.push_back(j);
  JohnDecomposition D;
  D.dim = n;
  D.contacts.resize(keep.size(), n);
  D.weights.resize(keep.size());
  for (size_t i = 0; i < keep.size(); ++i) {
    D.contacts.row(i) = contacts.row(keep[i]);
    D.weights[i] = c[keep[i]];
  }
  return D;
}

LiftedDecomposition lift_decomposition(const JohnDecomposition& D) {
  const int n = D.dim;
  const int m = static_cast<int>(D.contacts.rows());
  const double scale = std::sqrt(n / (n + 1.0));
  LiftedDecomposition L;
  L.dim = n + 1;
  L.vectors.resize(m, n + 1);
  for (int j = 0; j < m; ++j) {
    L.vectors.row(j).head(n) = -scale * D.contacts.row(j);
    L.vectors(j, n) = scale / std::sqrt(static_cast<double>(n));
  }
  L.weights = ((n + 1.0) / n) * D.weights;
  return L;
}

RestrictedDecomposition restrict_decomposition(const JohnDecomposition& D, const Subspace& F) {
  if (!F.linear()) throw Error(ErrorCode::InvalidBody, "plain restriction needs a linear subspace");
  if (F.ambient_dim != D.dim) throw Error(ErrorCode::InvalidBody, "ambient dim mismatch");
  const int m = static_cast<int>(D.contacts.rows());
  RestrictedDecomposition R;
  R.subspace = F;
  R.from_lift = false;
  Eigen::MatrixXd Y = D.contacts * F.basis;  // row j = intrinsic P_F u_j
  std::vector<int> J;
  for (int j = 0; j < m; ++j)
    if (Y.row(j).norm() > 1e-9) J.push_back(j);
  R.index_set = J;
  R.vectors.resize(J.size(), F.dim);
  R.weights.resize(J.size());
  R.inv_norms.resize(J.size());
  for (size_t i = 0; i < J.size(); ++i) {
    double nrm = Y.row(J[i]).norm();
    R.vectors.row(i) = Y.row(J[i]) / nrm;
    R.weights[i] = D.weights[J[i]] * nrm * nrm;
    R.inv_norms[i] = 1.0 / nrm;
  }
  return R;
}

Eigen::MatrixXd lifted_flat_basis(const Subspace& F) {
  const int n = F.ambient_dim;
  const int k = F.dim;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n + 1, k + 1);
  B.topLeftCorner(n, k) = F.basis;
  double scale = std::sqrt(F.offset.squaredNorm() + n);
  B.col(k).head(n) = F.offset / scale;
  B(n, k) = std::sqrt(static_cast<double>(n)) / scale;
  return B;
}

RestrictedDecomposition restrict_decomposition(const LiftedDecomposition& L, const Subspace& F) {
  const int n = L.dim - 1;
  if (F.ambient_dim != n) throw Error(ErrorCode::InvalidBody, "ambient dim mismatch");
  const int k = F.dim;
  const int m = static_cast<int>(L.vectors.rows());
  Eigen::MatrixXd B = lifted_flat_basis(F);
  Eigen::MatrixXd Y = L.vectors * B;  // row j = intrinsic P_H v_j
  RestrictedDecomposition R;
  R.subspace = F;
  R.from_lift = true;
  std::vector<int> J;
  for (int j = 0; j < m; ++j)
    if (Y.row(j).norm() > 1e-9) J.push_back(j);
  R.index_set = J;
  R.vectors.resize(J.size(), k + 1);
  R.weights.resize(J.size());
  R.inv_norms.resize(J.size());
  double d1 = 0.0;
  for (size_t i = 0; i < J.size(); ++i) {
    double nrm = Y.row(J[i]).norm();
    R.vectors.row(i) = Y.row(J[i]) / nrm;
    R.weights[i] = L.weights[J[i]] * nrm * nrm;
    R.inv_norms[i] = 1.0 / nrm;
    d1 += L.weights[J[i]] * nrm;
  }
  R.d1 = d1 / std::sqrt(k + 1.0);
  return R;
}

double isotropy_residual(const HPolytope& P) {
  SurfaceMeasure S = surface_measure(P);
  const int n = P.dim;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < S.areas.size(); ++i) {
    Eigen::VectorXd u = S.normals.row(i);
    M += S.areas[i] * u * u.transpose();
  }
  M *= n / S.total;
  return (M - Eigen::MatrixXd::Identity(n, n)).norm();
}

MinSurfacePosition min_surface_area_position(const HPolytope& P, const TraceSink& trace) {
  const int n = P.dim;
  BodyIncidence D = body_incidence(P);
  Eigen::MatrixXd W = Eigen::MatrixXd::Identity(n, n);
  MinSurfacePosition out;

  for (int it = 0; it <= 200; ++it) {
    Eigen::MatrixXd Vt = D.vertices * W.transpose();
    Eigen::MatrixXd Winv_t = W.inverse().transpose();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    std::vector<int> live;
    std::vector<double> areas;
    std::vector<Eigen::VectorXd> units;
    double total = 0.0;
    for (int j = 0; j < P.facet_count(); ++j) {
      if (D.facet_tris[j].empty()) continue;
      Eigen::VectorXd u = Winv_t * P.normals.row(j).transpose();
      u.normalize();
      double area = simplices_volume(Vt, D.facet_tris[j]);
      M += area * u * u.transpose();
      total += area;
      live.push_back(j);
      areas.push_back(area);
      units.push_back(u);
    }
    M *= n / total;
    double res = (M - Eigen::MatrixXd::Identity(n, n)).norm();
    out.surface_trace.push_back(total);
    out.residual = res;
    out.iterations = it;
    if (trace) trace({"min_surface_area_position", it, total, res});
    if (res <= 1e-6) {
      out.surface.normals.resize(live.size(), n);
      out.surface.areas.resize(live.size());
      out.surface.total = total;
      Eigen::VectorXd anchor = Vt.row(0);
      out.volume = 0.0;
      for (size_t i = 0; i < live.size(); ++i) {
        out.surface.normals.row(i) = units[i];
        out.surface.areas[i] = areas[i];
        double wnorm = (Winv_t * P.normals.row(live[i]).transpose()).norm();
        double offset = P.offsets[live[i]] / wnorm;
        out.volume += areas[i] * (offset - units[i].dot(anchor)) / n;
      }
      break;
    }
    if (it == 200) throw Error(ErrorCode::NotConverged, "surface isotropy residual " +
                                                            std::to_string(res));
    // stretch the directions carrying excess surface: facet area facing u
    // scales like det(W) ||W^-T a||, so W = M^{1/2} damps heavy normals
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    Eigen::MatrixXd S = es.operatorSqrt();
    S /= std::pow(S.determinant(), 1.0 / n);
    W = S * W;
  }

  W /= std::pow(std::abs(W.determinant()), 1.0 / n);
  out.map = W;
  AffineMap T{W, Eigen::VectorXd::Zero(n)};
  out.body = apply(T, P);
  return out;
}

}  // namespace jsec
