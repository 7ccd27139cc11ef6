#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "jsec/harness.hpp"
#include "jsec/io.hpp"
#include "jsec/lp.hpp"
#include "jsec/polytope_ops.hpp"
#include "jsec/rng.hpp"

using namespace jsec;

TEST_CASE("named body generators are exact") {
  HPolytope C = gen_body("cube", 3, 0, 0);
  CHECK(C.normals.rows() == 6);
  CHECK(volume(C) == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(C.symmetric);

  HPolytope S = gen_body("simplex", 2, 0, 0);
  CHECK(S.normals.rows() == 3);
  // inradius 1: every offset is 1 for unit normals through the origin
  for (int j = 0; j < 3; ++j) CHECK(S.offsets[j] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(S.symmetric);

  HPolytope X = gen_body("cross", 3, 0, 0);
  CHECK(X.normals.rows() == 8);
  CHECK(volume(X) == doctest::Approx(8.0 / 6.0).epsilon(1e-10));
}

TEST_CASE("random generators satisfy the body contract") {
  for (std::uint64_t s = 1; s <= 5; ++s) {
    HPolytope P = gen_body("symmetric", 4, 12, s);
    CHECK(P.symmetric);
    CHECK(P.normals.rows() == 12);
    CHECK(lp::positively_spans(P.normals));
    HPolytope Q = gen_body("general", 4, 12, s);
    CHECK(Q.offsets.minCoeff() > 0);  // origin interior
  }
}

TEST_CASE("subspace sampler invariants") {
  Subspace F = sample_subspace(5, 3, 0.7, 42);
  CHECK((F.basis.transpose() * F.basis - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-12);
  CHECK((F.basis.transpose() * F.offset).norm() < 1e-12);
  CHECK(F.offset.norm() == doctest::Approx(0.7).epsilon(1e-12));
  Subspace full = sample_subspace(4, 4, 2.0, 1);
  CHECK((full.basis - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);
  CHECK(full.offset.norm() == 0.0);
}

TEST_CASE("subspace sampler is Haar-like: mean ||P_F e1||^2 = k/n") {
  int n = 5, k = 2;
  double sum = 0.0, sumsq = 0.0;
  const int T = 10000;
  for (int t = 0; t < T; ++t) {
    Subspace F = sample_subspace(n, k, 0, derive_seed(99, t));
    double v = F.basis.row(0).squaredNorm();
    sum += v;
    sumsq += v * v;
  }
  double mean = sum / T;
  double se = std::sqrt((sumsq / T - mean * mean) / T);
  CHECK(std::abs(mean - static_cast<double>(k) / n) <= 3.0 * se);
}

TEST_CASE("check on the sharp cube section sets the equality flag") {
  ExperimentConfig cfg;
  cfg.theorem = "SHARP-cube";
  cfg.n = 4;
  cfg.k = 2;
  cfg.trials = 1;
  CheckReport r = check(cfg);
  REQUIRE(r.trials.size() == 1);
  CHECK(r.trials[0].verdict == "pass");
  CHECK(r.trials[0].equality);
  CHECK(r.equality_attained);
  CHECK(r.trials[0].lhs == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("skip accounting is exact") {
  ExperimentConfig cfg;
  cfg.theorem = "SHARP-cube";
  cfg.n = 3;  // k = 2 does not divide 3: every trial skips
  cfg.k = 2;
  cfg.trials = 4;
  CheckReport r = check(cfg);
  CHECK(r.skipped == 4);
  CHECK(r.passed + r.failed + r.skipped == 4);
}

TEST_CASE("T1b passes on random symmetric bodies") {
  ExperimentConfig cfg;
  cfg.theorem = "T1b";
  cfg.n = 4;
  cfg.k = 2;
  cfg.trials = 5;
  cfg.seed = 17;
  CheckReport r = check(cfg);
  CHECK(r.failed == 0);
  CHECK(r.passed >= 1);
}

TEST_CASE("T1c margin grows with the distance d") {
  // spot check: the section shrinks faster than the bound on this body
  double prev = -1.0;
  for (double d : {0.0, 0.4, 0.8, 1.2}) {
    ExperimentConfig cfg;
    cfg.theorem = "T1c";
    cfg.n = 3;
    cfg.k = 1;
    cfg.trials = 1;
    cfg.seed = 1;  // same body and direction each time
    cfg.d = d;
    CheckReport r = check(cfg);
    REQUIRE(r.trials.size() == 1);
    REQUIRE(r.trials[0].verdict == "pass");
    CHECK(r.trials[0].margin >= prev - 1e-9);
    prev = r.trials[0].margin;
  }
}

TEST_CASE("reports are deterministic and well-formed") {
  ExperimentConfig cfg;
  cfg.theorem = "G1";
  cfg.n = 3;
  cfg.k = 2;
  cfg.trials = 2;
  cfg.mc_samples = 2000;
  CheckReport a = check(cfg);
  CheckReport b = check(cfg);
  CHECK(report_json(a) == report_json(b));
  std::string csv = report_csv({a});
  CHECK(csv.rfind("theorem,n,k,d,lambda,trial,lhs,lhs_err,rhs,rhs_err,margin,verdict,seed", 0) ==
        0);
  // one row per record plus header
  size_t rows = 0;
  for (char c : csv)
    if (c == '\n') ++rows;
  CHECK(rows == a.trials.size() + 1);
}

TEST_CASE("catalog pairs respect k < n constraints") {
  for (const auto& id : checker_catalog()) {
    for (auto [n, k] : default_pairs(id)) {
      CHECK(k >= 1);
      CHECK(k < n);
      CHECK(n <= 6);
    }
  }
}

TEST_CASE("json round trip for bodies and subspaces") {
  HPolytope P = gen_body("general", 3, 8, 4);
  HPolytope Q = io::hpolytope_from_json(io::to_json(P));
  CHECK((P.normals - Q.normals).norm() == 0.0);
  CHECK((P.offsets - Q.offsets).norm() == 0.0);
  CHECK(P.symmetric == Q.symmetric);
  Subspace F = sample_subspace(4, 2, 0.5, 9);
  Subspace G = io::subspace_from_json(io::to_json(F));
  CHECK((F.basis - G.basis).norm() == 0.0);
  CHECK((F.offset - G.offset).norm() == 0.0);
}

TEST_CASE("invalid configs are rejected") {
  ExperimentConfig cfg;
  cfg.theorem = "T1a";
  cfg.n = 9;  // over the guard
  cfg.k = 1;
  CHECK_THROWS_AS(check(cfg), Error);
  cfg.n = 3;
  cfg.theorem = "NOPE";
  CHECK_THROWS_AS(check(cfg), Error);
}
