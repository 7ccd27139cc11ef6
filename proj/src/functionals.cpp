#include "jsec/functionals.hpp"

#include <cmath>

#include "jsec/polytope_ops.hpp"
#include "jsec/qp.hpp"
#include "jsec/rng.hpp"

namespace jsec {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

}  // namespace

double unit_ball_volume(int n) {
  if (n < 0) throw Error(ErrorCode::IndexOutOfRange, "negative dimension");
  return std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

double gaussian_width_constant(int n) {
  if (n < 1) throw Error(ErrorCode::IndexOutOfRange, "dimension must be positive");
  return std::sqrt(2.0) * std::exp(std::lgamma((n + 1) / 2.0) - std::lgamma(n / 2.0));
}

namespace {

template <class Body>
McEstimate width_impl(const Body& B, int n, long long N, std::uint64_t seed) {
  return mc_mean(N, seed, [&](CounterRng& rng) { return support(B, rng.sphere_direction(n)); });
}

}  // namespace

McEstimate mean_width_mc(const HPolytope& P, long long N, std::uint64_t seed) {
  return width_impl(P, P.dim, N, seed);
}
McEstimate mean_width_mc(const VPolytope& P, long long N, std::uint64_t seed) {
  return width_impl(P, P.dim, N, seed);
}
McEstimate mean_width_mc(const Ellipsoid& E, long long N, std::uint64_t seed) {
  return width_impl(E, E.dim(), N, seed);
}
McEstimate mean_width_mc(const Zonotope& Z, long long N, std::uint64_t seed) {
  return width_impl(Z, Z.dim, N, seed);
}

ProjectionResult project_onto_polytope(const HPolytope& P, const Eigen::VectorXd& x) {
  Eigen::VectorXd viol = P.normals * x - P.offsets;
  ProjectionResult r;
  if (viol.maxCoeff() <= 0) {
    r.point = x;
    r.distance = 0.0;
    return r;
  }
  Eigen::MatrixXd Q = P.normals * P.normals.transpose();
  Eigen::VectorXd lam = qp::nonneg_qp(Q, -viol, 1e-11);
  r.point = x - P.normals.transpose() * lam;
  r.distance = (x - r.point).norm();
  return r;
}

McEstimate wills_mc(const HPolytope& P, long long N, std::uint64_t seed) {
  const int n = P.dim;
  VPolytope V = vertex_enumerate(P);
  double vol = volume(P);
  Eigen::VectorXd lo = V.vertices.colwise().minCoeff().transpose().array() - 3.0;
  Eigen::VectorXd hi = V.vertices.colwise().maxCoeff().transpose().array() + 3.0;
  double boxvol = (hi - lo).prod();

  McEstimate e = mc_mean(N, seed, [&](CounterRng& rng) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
    int jmax = 0;
    double mv = (P.normals * x - P.offsets).maxCoeff(&jmax);
    if (mv <= 0) return 0.0;  // inside: counted in the exact volume
    // distance >= mv, so the weight is at most exp(-pi mv^2) <= 4e-5 here,
    // well under the Monte Carlo noise floor; skip the projection
    if (mv >= 1.8) return std::exp(-M_PI * mv * mv);
    // project onto the worst facet's hyperplane; if feasible that is the
    // exact nearest point and the QP is not needed
    Eigen::VectorXd p = x - mv * P.normals.row(jmax).transpose();
    double d = ((P.normals * p - P.offsets).maxCoeff() <= 1e-12)
                   ? mv
                   : project_onto_polytope(P, x).distance;
    return std::exp(-M_PI * d * d);
  });
  e.value = vol + boxvol * e.value;
  e.std_error *= boxvol;
  e.bias_bound = std::exp(-9.0 * M_PI) * boxvol;
  return e;
}

McEstimate wills_mc(const VPolytope& P, long long N, std::uint64_t seed) {
  const int n = P.dim;
  double vol = points_volume(P.vertices);
  Eigen::VectorXd lo = P.vertices.colwise().minCoeff().transpose().array() - 3.0;
  Eigen::VectorXd hi = P.vertices.colwise().maxCoeff().transpose().array() + 3.0;
  double boxvol = (hi - lo).prod();
  Eigen::MatrixXd cols = P.vertices.transpose();

  McEstimate e = mc_mean(N, seed, [&](CounterRng& rng) {
    Eigen::VectorXd x(n);
    for (int i = 0; i < n; ++i) x[i] = rng.uniform(lo[i], hi[i]);
    double d = qp::project_onto_hull(cols, x).distance;
    if (d <= 1e-12 || d >= 3.0) return 0.0;
    return std::exp(-M_PI * d * d);
  });
  e.value = vol + boxvol * e.value;
  e.std_error *= boxvol;
  e.bias_bound = std::exp(-9.0 * M_PI) * boxvol;
  return e;
}

McEstimate gaussian_measure_mc(const HPolytope& P, double t, long long N, std::uint64_t seed) {
  if (t < 0) throw Error(ErrorCode::IndexOutOfRange, "negative scale");
  const int n = P.dim;
  McEstimate e = mc_mean(N, seed, [&](CounterRng& rng) {
    return gauge(P, rng.gaussian_vector(n)) <= t ? 1.0 : 0.0;
  });
  double p = e.value;
  e.std_error = std::sqrt(std::max(0.0, p * (1.0 - p)) / N);
  return e;
}

McEstimate polar_wills_integral_mc(const HPolytope& P, double lambda, long long N,
                                   std::uint64_t seed) {
  if (lambda <= 0) throw Error(ErrorCode::IndexOutOfRange, "scale must be positive");
  const int k = P.dim;
  const double sigma = std::sqrt(2.0 * M_PI);
  McEstimate e = mc_mean(N, seed, [&](CounterRng& rng) {
    Eigen::VectorXd x = sigma * rng.gaussian_vector(k);
    return std::exp(-gauge(P, x) / lambda);
  });
  double scale = std::pow(2.0 * M_PI, k);
  e.value *= scale;
  e.std_error *= scale;
  return e;
}

double quermass_conversion(int n, int k, int i) {
  if (i < 0 || i > k || k > n) throw Error(ErrorCode::IndexOutOfRange, "need 0 <= i <= k <= n");
  return binom(n, n - k + i) / binom(k, i) * unit_ball_volume(i) / unit_ball_volume(n - k + i);
}

double intrinsic_volume_coefficient(int n, int i) {
  if (i < 0 || i > n) throw Error(ErrorCode::IndexOutOfRange, "need 0 <= i <= n");
  return binom(n, i) / unit_ball_volume(n - i);
}

SimplexConstants simplex_constants(int k) {
  if (k < 1) throw Error(ErrorCode::IndexOutOfRange, "k must be positive");
  SimplexConstants s;
  s.k = k;
  double kf = factorial(k);
  s.vol_delta = std::sqrt(k + 1.0) / kf;
  s.inradius = 1.0 / std::sqrt(k * (k + 1.0));
  s.circumradius = std::sqrt(k / (k + 1.0));
  s.vol_john_pow = std::sqrt(k * std::pow(k + 1.0, 1.0 + 1.0 / k)) / std::pow(kf, 1.0 / k);
  s.vol_lowner_pow = std::sqrt(std::pow(k + 1.0, 1.0 + 1.0 / k) / k) / std::pow(kf, 1.0 / k);
  return s;
}

}  // namespace jsec
