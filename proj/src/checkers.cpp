#include <cmath>

#include "jsec/functionals.hpp"
#include "jsec/harness.hpp"
#include "jsec/polytope_ops.hpp"
#include "jsec/positions.hpp"
#include "jsec/rng.hpp"

namespace jsec {

namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// One-sided pass rule: lhs <= rhs + 3*(combined std errors); exact
// quantities (no MC error on either side) get an absolute 1e-9 slack.
void finish(TrialRecord& r) {
  r.margin = r.rhs - r.lhs;
  double tol = (r.lhs_err + r.rhs_err > 0) ? 3.0 * (r.lhs_err + r.rhs_err) : 1e-9;
  r.verdict = (r.lhs <= r.rhs + tol) ? "pass" : "fail";
  if (std::abs(r.margin) <= tol) r.equality = true;
}

int sample_m(int n, CounterRng& rng) {
  return 2 * n + 2 * static_cast<int>(rng.next_u64() % (n + 1));
}

// Named classes are exact John-position bodies; random classes are put in
// position by the ellipsoid solver.
HPolytope positioned_john(const std::string& cls, int n, CounterRng& rng, std::uint64_t seed) {
  if (cls == "cube" || cls == "simplex") return gen_body(cls, n, 0, seed);
  if (cls == "cross") {
    HPolytope P = gen_body("cross", n, 0, seed);
    P.offsets *= std::sqrt(static_cast<double>(n));
    return P;
  }
  HPolytope P = gen_body(cls, n, sample_m(n, rng), seed);
  return to_john_position(P).first;
}

HPolytope cube_body(int k) { return gen_body("cube", k, 0, 0); }
HPolytope cross_body(int k) { return gen_body("cross", k, 0, 0); }
HPolytope simplex_body(int k) { return gen_body("simplex", k, 0, 0); }

}  // namespace

std::vector<TrialRecord> run_trial(const ExperimentConfig& cfg, int trial, std::uint64_t seed) {
  const std::string& id = cfg.theorem;
  const int n = cfg.n;
  const int k = cfg.k;
  const long long N = cfg.mc_samples;
  CounterRng rng(seed, 0x747269616cULL);
  std::vector<TrialRecord> out;
  auto rec = [&]() {
    TrialRecord r;
    r.trial = trial;
    r.n = n;
    r.k = k;
    r.seed = seed;
    return r;
  };
  auto skip = [&](const std::string& why) {
    TrialRecord r = rec();
    r.verdict = "skip";
    r.note = why;
    out.push_back(r);
    return out;
  };
  std::vector<double> lgrid =
      cfg.lambda_grid.empty() ? std::vector<double>{0.5, 1.0, 2.0} : cfg.lambda_grid;
  SimplexConstants sc = simplex_constants(k);
  const double b1k_pow = std::pow(std::pow(2.0, k) / factorial(k), 1.0 / k);  // |B_1^k|^{1/k}

  // ---- volume of sections in John position ----
  if (id == "T1a" || id == "T1b" || id == "T1c") {
    std::string cls = cfg.body_class.empty() ? (id == "T1b" ? "symmetric" : "general")
                                             : cfg.body_class;
    double d = 0.0;
    if (id == "T1c") d = cfg.d >= 0 ? cfg.d : rng.uniform(0.0, 0.9);
    HPolytope K = positioned_john(cls, n, rng, seed);
    Subspace F = sample_subspace(n, k, d, derive_seed(seed, 7));
    TrialRecord r = rec();
    r.d = d;
    try {
      r.lhs = std::pow(volume(section(K, F)), 1.0 / k);
    } catch (const Error& e) {
      r.verdict = "skip";
      r.note = e.what();
      out.push_back(r);
      return out;
    }
    if (id == "T1a")
      r.rhs = std::pow(k + 1.0, -(n - k) / (2.0 * k * (n + 1.0))) *
              std::sqrt(static_cast<double>(n) * (n + 1.0) / (k * (k + 1.0))) * sc.vol_john_pow;
    else if (id == "T1b")
      r.rhs = std::sqrt(static_cast<double>(n) / k) * 2.0;
    else
      r.rhs = std::sqrt(n * std::pow(n + 1.0, 1.0 + 1.0 / k) /
                        (k * std::pow(k + 1.0, 1.0 + 1.0 / k))) *
              std::pow(n / (n + d * d), 1.0 / (2.0 * k)) * sc.vol_john_pow;
    finish(r);
    out.push_back(r);
    return out;
  }

  // ---- volume of projections in Lowner position ----
  if (id == "T2a" || id == "T2b") {
    std::string cls = cfg.body_class.empty() ? (id == "T2b" ? "symmetric" : "general")
                                             : cfg.body_class;
    HPolytope K = positioned_john(cls, n, rng, seed);
    VPolytope L = polar(K);  // Lowner position by duality
    Subspace F = sample_subspace(n, k, 0, derive_seed(seed, 7));
    TrialRecord r = rec();
    r.rhs = std::pow(volume(project(L, F)), 1.0 / k);
    r.lhs = std::sqrt(static_cast<double>(k) / n) *
            (id == "T2a" ? sc.vol_lowner_pow : b1k_pow);
    finish(r);
    out.push_back(r);
    return out;
  }

  // ---- mean width of sections ----
  if (id == "T3a" || id == "T3b") {
    if (id == "T3a" && k < 2) return skip("ratio undefined for k = 1");
    std::string cls = cfg.body_class.empty() ? (id == "T3b" ? "symmetric" : "general")
                                             : cfg.body_class;
    HPolytope K = positioned_john(cls, n, rng, seed);
    Subspace F = sample_subspace(n, k, 0, derive_seed(seed, 7));
    HPolytope S;
    try {
      S = section(K, F);
    } catch (const Error& e) {
      return skip(e.what());
    }
    McEstimate ws = mean_width_mc(S, N, derive_seed(seed, 101));
    TrialRecord r = rec();
    if (id == "T3a") {
      McEstimate wsk = mean_width_mc(simplex_body(k), N, derive_seed(seed, 102));
      r.lhs = ws.value / (std::sqrt(n * std::log(n) / (k * std::log(k))) * wsk.value);
      r.verdict = "info";
      r.note = "section width over sqrt(n log n / k log k) * simplex width";
    } else {
      McEstimate wc = mean_width_mc(cube_body(k), N, derive_seed(seed, 102));
      r.lhs = ws.value;
      r.lhs_err = ws.std_error;
      r.rhs = std::sqrt(static_cast<double>(n) / k) * wc.value;
      r.rhs_err = std::sqrt(static_cast<double>(n) / k) * wc.std_error;
      finish(r);
    }
    out.push_back(r);
    return out;
  }

  // ---- mean width of projections ----
  if (id == "T4a" || id == "T4b") {
    std::string cls = cfg.body_class.empty() ? (id == "T4b" ? "symmetric" : "general")
                                             : cfg.body_class;
    HPolytope K = positioned_john(cls, n, rng, seed);
    VPolytope L = polar(K);
    Subspace F = sample_subspace(n, k, 0, derive_seed(seed, 7));
    McEstimate wp = mean_width_mc(project(L, F), N, derive_seed(seed, 101));
    McEstimate wref;
    if (id == "T4a") {
      HPolytope St = simplex_body(k);  // Lowner-position simplex = S_k / k
      St.offsets /= k;
      wref = mean_width_mc(St, N, derive_seed(seed, 102));
    } else {
      wref = mean_width_mc(cross_body(k), N, derive_seed(seed, 102));
    }
    TrialRecord r = rec();
    double c = std::sqrt(static_cast<double>(k) / n);
    r.lhs = c * wref.value;
    r.lhs_err = c * wref.std_error;
    r.rhs = wp.value;
    r.rhs_err = wp.std_error;
    finish(r);
    out.push_back(r);
    return out;
  }

  // ---- Wills functional of sections (symmetric), lambda grid ----
  if (id == "T5") {
    HPolytope K = positioned_john(cfg.body_class.empty() ? "symmetric" : cfg.body_class, n, rng,
                                  seed);
    Subspace F = sample_subspace(n, k, 0, derive_seed(seed, 7));
    HPolytope S;
    try {
      S = section(K, F);
    } catch (const Error& e) {
      return skip(e.what());
    }
    for (size_t i = 0; i < lgrid.size(); ++i) {
      HPolytope Sl = S;
      Sl.offsets *= lgrid[i];
      McEstimate w = wills_mc(Sl, N, derive_seed(seed, 200 + i));
      TrialRecord r = rec();
      r.lambda = lgrid[i];
      r.lhs = w.value;
      r.lhs_err = w.std_error;
      r.rhs = std::pow(1.0 + 2.0 * lgrid[i] * std::sqrt(static_cast<double>(n) / k), k);
      finish(r);
      out.push_back(r);
    }
    return out;
  }

  // ---- Wills functional of projections (symmetric Lowner) ----
  if (id == "T6") {
    HPolytope K = positioned_john(cfg.body_class.empty() ? "symmetric" : cfg.body_class, n, rng,
                                  seed);
    VPolytope L = polar(K);
    Subspace F = sample_subspace(n, k, 0, derive_seed(seed, 7));
    McEstimate w = wills_mc(project(L, F), N, derive_seed(seed, 101));
    TrialRecord r = rec();
    r.lhs = std::pow(static_cast<double>(k), -k / 2.0);
    r.rhs = w.value;
    r.rhs_err = w.std_error;
    finish(r);
    out.push_back(r);
    return out;
  }

  // ---- double-polarity integral comparison, general/affine + symmetric ----
  if (id == "T7") {
    double d = cfg.d >= 0 ? cfg.d : rng.uniform(0.0, 0.9);
    HPolytope K = positioned_john("general", n, rng, seed);
    Subspace F = sample_subspace(n, k, d, derive_seed(seed, 7));
    HPolytope S;
    bool have = true;
    try {
      S = section(K, F);
    } catch (const Error& e) {
      TrialRecord r = rec();
      r.d = d;
      r.verdict = "skip";
      r.note = e.what();
      out.push_back(r);
      have = false;
    }
    if (have && S.offsets.minCoeff() <= 1e-9) {
      TrialRecord r = rec();
      r.d = d;
      r.verdict = "skip";
      r.note = "anchor outside relative interior";
      out.push_back(r);
      have = false;
    }
    if (have) {
      HPolytope Sk = simplex_body(k);
      double factor = (n + 1.0) / (k + 1.0) * std::sqrt(n / (n + d * d));
      double lam_scale = std::sqrt(static_cast<double>(n) * (n + 1.0) / (k * (k + 1.0)));
      for (size_t i = 0; i < lgrid.size(); ++i) {
        McEstimate a = polar_wills_integral_mc(S, lgrid[i], N, derive_seed(seed, 300 + i));
        McEstimate b =
            polar_wills_integral_mc(Sk, lgrid[i] * lam_scale, N, derive_seed(seed, 400 + i));
        TrialRecord r = rec();
        r.d = d;
        r.lambda = lgrid[i];
        r.note = "general";
        r.lhs = a.value;
        r.lhs_err = a.std_error;
        r.rhs = factor * b.value;
        r.rhs_err = factor * b.std_error;
        finish(r);
        out.push_back(r);
      }
    }
    // symmetric variant: linear subspace, cube reference, factor 1
    HPolytope K2 = positioned_john("symmetric", n, rng, derive_seed(seed, 11));
    Subspace F2 = sample_subspace(n, k, 0, derive_seed(seed, 8));
    HPolytope S2;
    try {
      S2 = section(K2, F2);
    } catch (const Error& e) {
      TrialRecord r = rec();
      r.verdict = "skip";
      r.note = std::string("symmetric: ") + e.what();
      out.push_back(r);
      return out;
    }
    HPolytope Ck = cube_body(k);
    for (size_t i = 0; i < lgrid.size(); ++i) {
      McEstimate a = polar_wills_integral_mc(S2, lgrid[i], N, derive_seed(seed, 500 + i));
      McEstimate b = polar_wills_integral_mc(
          Ck, lgrid[i] * std::sqrt(static_cast<double>(n) / k), N, derive_seed(seed, 600 + i));
      TrialRecord r = rec();
      r.lambda = lgrid[i];
      r.note = "symmetric";
      r.lhs = a.value;
      r.lhs_err = a.std_error;
      r.rhs = b.value;
      r.rhs_err = b.std_error;
      finish(r);
      out.push_back(r);
    }
    return out;
  }

  // ---- minimal surface area position ----
  if (id == "T8a" || id == "T8b" || id == "T8i" || id == "T8ii" || id == "T8iii" ||
      id == "T8iv" || id == "T8v") {
    bool needs_symmetric = !(id == "T8a" || id == "T8b");
    std::string cls = cfg.body_class.empty() ? (needs_symmetric ? "symmetric" : "general")
                                             : cfg.body_class;
    HPolytope B0 = gen_body(cls, n, sample_m(n, rng), seed);
    MinSurfacePosition M = min_surface_area_position(B0);
    const double area = M.surface.total;
    const double vol = M.volume;
    Subspace F = sample_subspace(n, k, 0, derive_seed(seed, 7));
    TrialRecord r = rec();

    if (id == "T8a" || id == "T8b") {
      Zonotope Z;
      Z.dim = n;
      Z.generators = 0.5 * M.surface.areas.asDiagonal() * M.surface.normals;
      if (id == "T8a") {
        // spherical MC for the polar projection body section volume
        McEstimate e = mc_mean(N, derive_seed(seed, 101), [&](CounterRng& g) {
          Eigen::VectorXd th = g.sphere_direction(k);
          double h = support(Z, F.basis * th);
          return std::pow(h, -static_cast<double>(k));
        });
        double ballk = unit_ball_volume(k);
        r.lhs = ballk * e.value;
        r.lhs_err = ballk * e.std_error;
        r.rhs = std::pow(4.0 * n / area, k) / factorial(k);
      } else {
        r.lhs = std::pow(area / n, k);
        r.rhs = zonotope_volume(project(Z, F));
      }
      finish(r);
      out.push_back(r);
      return out;
    }

    HPolytope S;
    try {
      S = section(M.body, F);
    } catch (const Error& e) {
      return skip(e.what());
    }
    const double c8 = n * n * vol / (k * area);
    if (id == "T8i") {
      McEstimate w = wills_mc(S, N, derive_seed(seed, 101));
      r.lhs = w.value;
      r.lhs_err = w.std_error;
      r.rhs = std::pow(1.0 + 2.0 * c8, k);
    } else if (id == "T8ii") {
      r.lhs = std::pow(volume(S), 1.0 / k);
      r.rhs = 2.0 * c8;
    } else if (id == "T8iii") {
      McEstimate ws = mean_width_mc(S, N, derive_seed(seed, 101));
      McEstimate wc = mean_width_mc(cube_body(k), N, derive_seed(seed, 102));
      r.lhs = ws.value;
      r.lhs_err = ws.std_error;
      r.rhs = c8 * wc.value;
      r.rhs_err = c8 * wc.std_error;
    } else if (id == "T8iv") {
      r.lhs = b1k_pow / c8;
      r.rhs = std::pow(volume(polar(S)), 1.0 / k);
    } else {  // T8v
      McEstimate wx = mean_width_mc(cross_body(k), N, derive_seed(seed, 101));
      McEstimate wp = mean_width_mc(polar(S), N, derive_seed(seed, 102));
      r.lhs = wx.value / c8;
      r.lhs_err = wx.std_error / c8;
      r.rhs = wp.value;
      r.rhs_err = wp.std_error;
    }
    finish(r);
    out.push_back(r);
    return out;
  }

  // ---- Gaussian comparison on a scale grid (symmetric sections) ----
  if (id == "G1") {
    HPolytope K = positioned_john(cfg.body_class.empty() ? "symmetric" : cfg.body_class, n, rng,
                                  seed);
    Subspace F = sample_subspace(n, k, 0, derive_seed(seed, 7));
    HPolytope S;
    try {
      S = section(K, F);
    } catch (const Error& e) {
      return skip(e.what());
    }
    std::vector<double> tgrid =
        cfg.lambda_grid.empty() ? std::vector<double>{0.25, 0.5, 1.0, 2.0} : cfg.lambda_grid;
    for (size_t i = 0; i < tgrid.size(); ++i) {
      McEstimate g = gaussian_measure_mc(S, tgrid[i], N, derive_seed(seed, 700 + i));
      TrialRecord r = rec();
      r.lambda = tgrid[i];
      r.lhs = g.value;
      r.lhs_err = g.std_error;
      // cube Gaussian measure is exact: erf(a / sqrt(2))^k per side a
      r.rhs = std::pow(std::erf(tgrid[i] * std::sqrt(static_cast<double>(n) / k) / std::sqrt(2.0)),
                       k);
      finish(r);
      out.push_back(r);
    }
    return out;
  }

  // ---- projection norms of the lifted decomposition ----
  if (id == "L32") {
    HPolytope K = positioned_john(cfg.body_class.empty() ? "general" : cfg.body_class, n, rng,
                                  seed);
    Eigen::MatrixXd U = contact_points(K);
    JohnDecomposition D = fit_john_decomposition(U, K.symmetric);
    LiftedDecomposition L = lift_decomposition(D);
    Subspace F = sample_subspace(n, k, 0, derive_seed(seed, 7));
    Eigen::MatrixXd B = lifted_flat_basis(F);
    double worst = -1.0;
    for (int j = 0; j < L.vectors.rows(); ++j) {
      double e2 = (L.vectors.row(j) * B).squaredNorm();
      worst = std::max(worst, std::max(1.0 / (n + 1.0) - e2, e2 - 1.0));
    }
    TrialRecord r = rec();
    r.lhs = worst;
    r.rhs = 0.0;
    finish(r);
    out.push_back(r);
    return out;
  }

  // ---- sharpness certificates ----
  if (id == "SHARP-cube") {
    if (n % k != 0) return skip("k does not divide n");
    HPolytope K = cube_body(n);
    int block = n / k;
    Subspace F;
    F.ambient_dim = n;
    F.dim = k;
    F.basis = Eigen::MatrixXd::Zero(n, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < block; ++i) F.basis(j * block + i, j) = 1.0 / std::sqrt(block);
    F.offset = Eigen::VectorXd::Zero(n);
    TrialRecord r = rec();
    r.lhs = std::pow(volume(section(K, F)), 1.0 / k);
    r.rhs = 2.0 * std::sqrt(static_cast<double>(n) / k);
    r.margin = r.rhs - r.lhs;
    r.equality = std::abs(r.margin) <= 1e-9;
    r.verdict = r.equality ? "pass" : "fail";
    out.push_back(r);
    return out;
  }

  if (id == "SHARP-simplex") {
    HPolytope K = simplex_body(n);
    Eigen::MatrixXd V = simplex_vertices(n);
    Eigen::MatrixXd Dir(n, k);
    for (int i = 0; i < k; ++i) Dir.col(i) = (V.row(i + 1) - V.row(0)).transpose();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Dir);
    Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
    Subspace F;
    F.ambient_dim = n;
    F.dim = k;
    F.basis = Q;
    Eigen::VectorXd v0 = V.row(0);
    F.offset = v0 - Q * (Q.transpose() * v0);
    TrialRecord r = rec();
    r.d = F.offset.norm();
    r.lhs = std::pow(volume(section(K, F)), 1.0 / k);
    double dstar = std::sqrt(n * (n - k) / (k + 1.0));
    r.rhs = std::sqrt(n * std::pow(n + 1.0, 1.0 + 1.0 / k) /
                      (k * std::pow(k + 1.0, 1.0 + 1.0 / k))) *
            std::pow(n / (n + dstar * dstar), 1.0 / (2.0 * k)) * sc.vol_john_pow;
    r.margin = r.rhs - r.lhs;
    r.equality = std::abs(r.margin) <= 1e-8 * r.rhs;
    r.verdict = r.equality ? "pass" : "fail";
    out.push_back(r);
    return out;
  }

  throw Error(ErrorCode::IndexOutOfRange, "unknown checker id " + id);
}

}  // namespace jsec
