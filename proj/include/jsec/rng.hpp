#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

namespace jsec {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based generator keyed by (seed, stream). Output depends only on
/// (seed, stream, counter), so parallel strata reproduce bit-identically
/// regardless of evaluation order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(splitmix64(seed ^ splitmix64(stream))), ctr_(0) {}

  std::uint64_t next_u64() { return splitmix64(key_ ^ (0xD1B54A32D192ED03ULL * ++ctr_)); }

  /// Uniform in (0,1), 53-bit mantissa, never exactly 0.
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller; the paired value is cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  Eigen::VectorXd gaussian_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = gaussian();
    return v;
  }

  /// Uniform direction on S^{n-1} (normalized Gaussian).
  Eigen::VectorXd sphere_direction(int n) {
    Eigen::VectorXd v;
    double nrm = 0;
    do {
      v = gaussian_vector(n);
      nrm = v.norm();
    } while (nrm < 1e-12);
    return v / nrm;
  }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_;
  double spare_ = 0;
  bool have_spare_ = false;
};

/// Deterministic derivation of per-trial / per-stratum seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(0x5851F42D4C957F2DULL + index));
}

}  // namespace jsec
