// End-to-end gate: one line per criterion, exit nonzero on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jsec/functionals.hpp"
#include "jsec/harness.hpp"
#include "jsec/polytope_ops.hpp"
#include "jsec/positions.hpp"

using namespace jsec;

namespace {

int g_failures = 0;

void report(int idx, bool ok, const std::string& what) {
  std::printf("criterion %d: %s  %s\n", idx, ok ? "PASS" : "FAIL", what.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool decomposition_ok(const HPolytope& K, bool symmetric, double tol) {
  Eigen::MatrixXd U = contact_points(K);
  JohnDecomposition D = fit_john_decomposition(U, symmetric);
  int n = K.dim;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < D.weights.size(); ++j) {
    if (D.weights[j] <= 0 || D.weights[j] > 1.0 + tol) return false;
    if (std::abs(D.contacts.row(j).norm() - 1.0) > tol) return false;
    M += D.weights[j] * D.contacts.row(j).transpose() * D.contacts.row(j);
    s += D.weights[j] * D.contacts.row(j).transpose();
  }
  return (M - Eigen::MatrixXd::Identity(n, n)).norm() <= tol && s.norm() <= tol &&
         std::abs(D.weights.sum() - n) <= tol;
}

}  // namespace

int main() {
  // 1. inscribed-ellipsoid certification and decompositions on named bodies
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    try {
      for (int n = 2; n <= 6; ++n) {
        HPolytope cube = gen_body("cube", n, 0, 0);
        HPolytope simp = gen_body("simplex", n, 0, 0);
        HPolytope cross = gen_body("cross", n, 0, 0);
        Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
        Ellipsoid ec = max_inscribed_ellipsoid(cube);
        Ellipsoid es = max_inscribed_ellipsoid(simp);
        Ellipsoid ex = max_inscribed_ellipsoid(cross);
        ok = ok && (ec.shape - I).norm() + ec.center.norm() <= 1e-5;
        ok = ok && (es.shape - I).norm() + es.center.norm() <= 1e-5;
        ok = ok && (ex.shape - I / n).norm() + ex.center.norm() <= 1e-5;
        HPolytope cross1 = cross;
        cross1.offsets *= std::sqrt(static_cast<double>(n));
        ok = ok && decomposition_ok(cube, true, 1e-7);
        ok = ok && decomposition_ok(simp, false, 1e-7);
        ok = ok && decomposition_ok(cross1, true, 1e-7);
        if (!ok) {
          detail = "failed at n = " + std::to_string(n);
          break;
        }
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    double dt = seconds_since(t0);
    ok = ok && dt < 10.0;
    report(1, ok, "ellipsoid + decomposition certification (" + std::to_string(dt) + " s) " +
                      detail);
  }

  // 2. sharp diagonal cube sections
  {
    bool ok = true;
    for (int n : {2, 4, 6}) {
      for (int k = 1; k <= n; ++k) {
        if (n % k != 0) continue;
        ExperimentConfig cfg;
        cfg.theorem = "SHARP-cube";
        cfg.n = n;
        cfg.k = k;
        CheckReport r = check(cfg);
        ok = ok && r.failed == 0 && r.skipped == 0 && r.equality_attained;
      }
    }
    report(2, ok, "cube diagonal sections attain the symmetric bound");
  }

  // 3. sharp simplex k-face sections
  {
    bool ok = true;
    for (auto [n, k] : std::vector<std::pair<int, int>>{{3, 1}, {3, 2}, {4, 2}}) {
      ExperimentConfig cfg;
      cfg.theorem = "SHARP-simplex";
      cfg.n = n;
      cfg.k = k;
      CheckReport r = check(cfg);
      ok = ok && r.failed == 0 && r.skipped == 0 && r.equality_attained;
    }
    report(3, ok, "simplex k-face sections attain the affine bound");
  }

  // 4. closed forms for the square at 10^6 samples
  {
    auto t0 = std::chrono::steady_clock::now();
    HPolytope sq = gen_body("cube", 2, 0, 0);
    McEstimate w = wills_mc(sq, 1000000, 7);
    double tw = seconds_since(t0);
    bool okw = std::abs(w.value - 9.0) <= 3.0 * w.std_error + w.bias_bound && tw < 5.0;
    auto t1 = std::chrono::steady_clock::now();
    McEstimate m = mean_width_mc(sq, 1000000, 7);
    double tm = seconds_since(t1);
    bool okm = std::abs(m.value - 4.0 / M_PI) <= 3.0 * m.std_error && tm < 5.0;
    report(4, okw && okm,
           "square closed forms (wills " + std::to_string(tw) + " s, width " +
               std::to_string(tm) + " s)");
  }

  // 5. projection-body volume of the cube
  {
    bool ok = true;
    for (int n : {2, 3}) {
      double v = zonotope_volume(projection_body(gen_body("cube", n, 0, 0)));
      ok = ok && std::abs(v - std::pow(2.0, n * n)) <= 1e-9 * std::pow(2.0, n * n);
    }
    report(5, ok, "projection body of the cube has volume 2^(n^2)");
  }

  // 6. minimal-surface solver on a distorted square
  {
    auto t0 = std::chrono::steady_clock::now();
    HPolytope P = gen_body("cube", 2, 0, 0);
    AffineMap T;
    T.linear = Eigen::MatrixXd::Zero(2, 2);
    T.linear.diagonal() << 2.0, 0.5;
    T.shift = Eigen::VectorXd::Zero(2);
    MinSurfacePosition M = min_surface_area_position(apply(T, P));
    double dt = seconds_since(t0);
    bool ok = M.residual <= 1e-6 && isotropy_residual(M.body) <= 1e-6 &&
              std::abs(M.surface.total - 8.0) <= 1e-6 && dt < 1.0;
    report(6, ok, "distorted square returns to the square (" + std::to_string(dt) + " s)");
  }

  // 7 + 8. full regression sweep: every checker over its (n, k) preset
  {
    auto t0 = std::chrono::steady_clock::now();
    int failed = 0, passed = 0, skipped = 0;
    int proof_failed = 0;  // L32 / G1 subtotals
    std::string first_fail;
    for (const auto& id : checker_catalog()) {
      auto pairs = default_pairs(id);
      int per = std::max(1, (200 + static_cast<int>(pairs.size()) - 1) /
                                static_cast<int>(pairs.size()));
      for (auto [n, k] : pairs) {
        ExperimentConfig cfg;
        cfg.theorem = id;
        cfg.n = n;
        cfg.k = k;
        cfg.trials = per;
        cfg.mc_samples = 100000;
        cfg.seed = 2024;
        CheckReport r = check(cfg);
        failed += r.failed;
        passed += r.passed;
        skipped += r.skipped;
        if (id == "L32" || id == "G1") proof_failed += r.failed;
        if (r.failed > 0 && first_fail.empty())
          first_fail = id + " n=" + std::to_string(n) + " k=" + std::to_string(k);
      }
      std::fprintf(stderr, "  [sweep] %-14s done at %.0f s\n", id.c_str(), seconds_since(t0));
    }
    double dt = seconds_since(t0);
    bool ok = failed == 0 && dt <= 900.0;
    report(7, ok,
           "regression sweep: " + std::to_string(passed) + " pass / " + std::to_string(failed) +
               " fail / " + std::to_string(skipped) + " skip in " + std::to_string(dt) + " s" +
               (first_fail.empty() ? "" : " (first failure " + first_fail + ")"));
    report(8, proof_failed == 0, "decomposition bounds and Gaussian comparison hold on all trials");
  }

  // 9. byte-identical reports for identical configs
  {
    ExperimentConfig cfg;
    cfg.theorem = "T1b";
    cfg.n = 4;
    cfg.k = 2;
    cfg.trials = 3;
    cfg.mc_samples = 5000;
    cfg.seed = 99;
    bool ok = report_json(check(cfg)) == report_json(check(cfg));
    report(9, ok, "identical configs produce byte-identical reports");
  }

  return g_failures == 0 ? 0 : 1;
}
