#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "jsec/bodies.hpp"
#include "jsec/rng.hpp"

namespace jsec {

/// Monte Carlo estimate; rerunning with the same (input, samples, seed)
/// reproduces `value` bit-identically.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
  double bias_bound = 0.0;  // documented truncation bias, 0 if none
};

/// Closed-form data for the regular k-simplex Delta_k (unit vertex norms),
/// its John-position scaling S_k and Lowner-position scaling S~_k.
struct SimplexConstants {
  int k = 0;
  double vol_delta = 0.0;        // sqrt(k+1)/k!
  double inradius = 0.0;         // 1/sqrt(k(k+1))
  double circumradius = 0.0;     // sqrt(k/(k+1))
  double vol_john_pow = 0.0;     // |S_k|^{1/k}
  double vol_lowner_pow = 0.0;   // |S~_k|^{1/k}
};

/// Mean of sample(rng) over N draws, accumulated in fixed-size strata with
/// per-stratum streams so the result never depends on evaluation order.
template <class F>
McEstimate mc_mean(long long N, std::uint64_t seed, F&& sample) {
  constexpr long long kStratum = 1 << 13;
  double sum = 0.0, sumsq = 0.0;
  long long done = 0;
  std::uint64_t stream = 0;
  while (done < N) {
    long long chunk = kStratum < N - done ? kStratum : N - done;
    CounterRng rng(seed, stream++);
    double s = 0.0, s2 = 0.0;
    for (long long i = 0; i < chunk; ++i) {
      double v = sample(rng);
      s += v;
      s2 += v * v;
    }
    sum += s;
    sumsq += s2;
    done += chunk;
  }
  McEstimate e;
  e.samples = N;
  e.seed = seed;
  e.value = sum / N;
  double var = (N > 1) ? std::max(0.0, (sumsq - sum * sum / N) / (N - 1.0)) : 0.0;
  e.std_error = std::sqrt(var / N);
  return e;
}

double unit_ball_volume(int n);

/// c_n = sqrt(2) Gamma((n+1)/2) / Gamma(n/2); E h_K(G) = c_n w(K).
double gaussian_width_constant(int n);

McEstimate mean_width_mc(const HPolytope& P, long long N, std::uint64_t seed);
McEstimate mean_width_mc(const VPolytope& P, long long N, std::uint64_t seed);
McEstimate mean_width_mc(const Ellipsoid& E, long long N, std::uint64_t seed);
McEstimate mean_width_mc(const Zonotope& Z, long long N, std::uint64_t seed);

struct ProjectionResult {
  Eigen::VectorXd point;
  double distance = 0.0;
};
/// Euclidean projection onto an H-polytope via the dual nonnegative QP.
ProjectionResult project_onto_polytope(const HPolytope& P, const Eigen::VectorXd& x);

/// integral of exp(-pi d(x,P)^2): exact volume plus a stratified estimate of
/// the outside mass over a bounding box inflated by 3 (tail bias reported).
McEstimate wills_mc(const HPolytope& P, long long N, std::uint64_t seed);
McEstimate wills_mc(const VPolytope& P, long long N, std::uint64_t seed);

/// Standard Gaussian measure of t*P (fraction with gauge(P, g) <= t).
McEstimate gaussian_measure_mc(const HPolytope& P, double t, long long N, std::uint64_t seed);

/// integral of exp(-|x|^2/(4 pi) - gauge(lambda P, x)) dx by importance
/// sampling from the Gaussian with variance 2 pi per coordinate.
McEstimate polar_wills_integral_mc(const HPolytope& P, double lambda, long long N,
                                   std::uint64_t seed);

/// Coefficient relating subspace quermassintegrals to ambient ones:
/// W_i^{(k)} = coeff * W_{n-k+i}.
double quermass_conversion(int n, int k, int i);

/// V_i = coeff * W_{n-i} (intrinsic volume from quermassintegral).
double intrinsic_volume_coefficient(int n, int i);

SimplexConstants simplex_constants(int k);

}  // namespace jsec
