#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "jsec/harness.hpp"
#include "jsec/lp.hpp"
#include "jsec/polytope_ops.hpp"
#include "jsec/positions.hpp"
#include "jsec/rng.hpp"

using namespace jsec;

namespace {

double ellipsoid_error(const Ellipsoid& E, const Eigen::MatrixXd& shape) {
  return (E.shape - shape).norm() + E.center.norm();
}

// brute-force inscribed-ball cross-check for 2-D bodies: over a center grid,
// the largest min-margin ball
double grid_inradius(const HPolytope& P) {
  double best = 0.0;
  for (double x = -1.5; x <= 1.5; x += 0.01)
    for (double y = -1.5; y <= 1.5; y += 0.01) {
      Eigen::Vector2d c(x, y);
      double r = (P.offsets - P.normals * c).minCoeff();
      best = std::max(best, r);
    }
  return best;
}

}  // namespace

TEST_CASE("inscribed ellipsoid of named bodies is the unit ball") {
  for (int n = 2; n <= 4; ++n) {
    for (const char* cls : {"cube", "simplex", "cross"}) {
      HPolytope P = gen_body(cls, n, 0, 0);
      if (std::string(cls) == "cross") P.offsets *= std::sqrt(static_cast<double>(n));
      Ellipsoid E = max_inscribed_ellipsoid(P);
      CHECK(ellipsoid_error(E, Eigen::MatrixXd::Identity(n, n)) < 1e-5);
    }
  }
}

TEST_CASE("inscribed ellipsoid of the cross-polytope has radius 1/sqrt(n)") {
  HPolytope P = gen_body("cross", 2, 0, 0);
  Ellipsoid E = max_inscribed_ellipsoid(P);
  CHECK((E.shape - Eigen::MatrixXd::Identity(2, 2) / 2.0).norm() < 1e-5);
}

TEST_CASE("inscribed ball radius matches a grid search in 2-D") {
  CounterRng rng(5, 0);
  Eigen::MatrixXd A(5, 2);
  Eigen::VectorXd b(5);
  for (int i = 0; i < 5; ++i) {
    A.row(i) = rng.sphere_direction(2).transpose();
    b[i] = rng.uniform(0.6, 1.4);
  }
  if (!lp::positively_spans(A)) {  // fall back to a fixed bounded instance
    A << 1, 0, -1, 0, 0, 1, 0, -1, 1, 1;
    b << 1, 1, 1, 1, 1.2;
  }
  HPolytope P = make_hpolytope(A, b);
  Ellipsoid E = max_inscribed_ellipsoid(P);
  // feasibility: a_j' c + ||L' a_j|| <= b_j
  Eigen::MatrixXd L = Eigen::LLT<Eigen::MatrixXd>(E.shape).matrixL();
  for (int j = 0; j < P.normals.rows(); ++j) {
    double reach = P.normals.row(j) * E.center +
                   (L.transpose() * P.normals.row(j).transpose()).norm();
    CHECK(reach <= P.offsets[j] + 1e-7);
  }
  // optimality against the best inscribed ball on a 0.01 grid
  double r = grid_inradius(P);
  CHECK(std::sqrt(E.shape.determinant()) >= r * r - 0.05);
}

TEST_CASE("john position normalizes a distorted cube") {
  HPolytope P = gen_body("cube", 3, 0, 0);
  AffineMap T;
  T.linear = Eigen::MatrixXd::Zero(3, 3);
  T.linear.diagonal() << 3.0, 0.5, 1.5;
  T.linear(0, 1) = 0.7;
  T.shift = Eigen::VectorXd::Zero(3);
  T.shift << 0.2, -0.1, 0.4;
  HPolytope Q = apply(T, P);
  auto [K, M] = to_john_position(Q);
  Ellipsoid E = max_inscribed_ellipsoid(K);
  CHECK(ellipsoid_error(E, Eigen::MatrixXd::Identity(3, 3)) < 1e-4);
}

TEST_CASE("contact points of the cube are the coordinate directions") {
  Eigen::MatrixXd U = contact_points(gen_body("cube", 3, 0, 0));
  REQUIRE(U.rows() == 6);
  for (int i = 0; i < U.rows(); ++i) {
    CHECK(U.row(i).norm() == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(U.row(i).cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("john decomposition of the simplex has uniform weights n/(n+1)") {
  int n = 2;
  HPolytope S = gen_body("simplex", n, 0, 0);
  Eigen::MatrixXd U = contact_points(S);
  REQUIRE(U.rows() == n + 1);
  JohnDecomposition D = fit_john_decomposition(U, false);
  for (int j = 0; j < D.weights.size(); ++j)
    CHECK(D.weights[j] == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
  // decomposition identities
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd s = Eigen::VectorXd::Zero(n);
  for (int j = 0; j < D.weights.size(); ++j) {
    M += D.weights[j] * D.contacts.row(j).transpose() * D.contacts.row(j);
    s += D.weights[j] * D.contacts.row(j).transpose();
  }
  CHECK((M - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-7);
  CHECK(s.norm() < 1e-7);
}

TEST_CASE("lifted decomposition resolves the north pole") {
  HPolytope S = gen_body("simplex", 3, 0, 0);
  JohnDecomposition D = fit_john_decomposition(contact_points(S), false);
  LiftedDecomposition L = lift_decomposition(D);
  int n = 3;
  Eigen::VectorXd target = Eigen::VectorXd::Zero(n + 1);
  target[n] = std::sqrt(n + 1.0);
  Eigen::VectorXd got = L.vectors.transpose() * L.weights;
  CHECK((got - target).norm() < 1e-7);
  for (int j = 0; j < L.vectors.rows(); ++j)
    CHECK(L.vectors.row(j).norm() == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("restricted decomposition identities on a random subspace") {
  HPolytope S = gen_body("simplex", 4, 0, 0);
  JohnDecomposition D = fit_john_decomposition(contact_points(S), false);
  Subspace F = sample_subspace(4, 2, 0, 31);
  SUBCASE("linear restriction resolves I_k") {
    RestrictedDecomposition R = restrict_decomposition(D, F);
    int k = F.dim;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(k, k);
    for (int j = 0; j < R.weights.size(); ++j)
      M += R.weights[j] * R.vectors.row(j).transpose() * R.vectors.row(j);
    CHECK((M - Eigen::MatrixXd::Identity(k, k)).norm() < 1e-7);
    CHECK(R.weights.sum() == doctest::Approx(static_cast<double>(k)).epsilon(1e-7));
  }
  SUBCASE("lifted restriction resolves I_{k+1}") {
    RestrictedDecomposition R = restrict_decomposition(lift_decomposition(D), F);
    int k = F.dim;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(k + 1, k + 1);
    for (int j = 0; j < R.weights.size(); ++j)
      M += R.weights[j] * R.vectors.row(j).transpose() * R.vectors.row(j);
    CHECK((M - Eigen::MatrixXd::Identity(k + 1, k + 1)).norm() < 1e-7);
    CHECK(R.weights.sum() == doctest::Approx(static_cast<double>(k + 1)).epsilon(1e-7));
  }
}

TEST_CASE("lifted flat basis is orthonormal and spans the lift") {
  Subspace F = sample_subspace(5, 3, 0.7, 11);
  Eigen::MatrixXd B = lifted_flat_basis(F);
  CHECK((B.transpose() * B - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("lifted projection norms stay in [1/(n+1), 1]") {
  for (std::uint64_t s = 1; s <= 3; ++s) {
    int n = 4;
    HPolytope K = to_john_position(gen_body("general", n, 10, s)).first;
    JohnDecomposition D = fit_john_decomposition(contact_points(K), false);
    LiftedDecomposition L = lift_decomposition(D);
    Subspace F = sample_subspace(n, 2, 0, derive_seed(s, 7));
    Eigen::MatrixXd B = lifted_flat_basis(F);
    for (int j = 0; j < L.vectors.rows(); ++j) {
      double e2 = (L.vectors.row(j) * B).squaredNorm();
      CHECK(e2 >= 1.0 / (n + 1.0) - 1e-9);
      CHECK(e2 <= 1.0 + 1e-9);
    }
  }
}

TEST_CASE("enclosing ellipsoid of the simplex has circumradius n") {
  int n = 3;
  VPolytope V;
  V.dim = n;
  V.vertices = simplex_vertices(n);
  Ellipsoid E = min_enclosing_ellipsoid(V);
  CHECK(E.center.norm() < 1e-5);
  CHECK((E.shape - n * n * Eigen::MatrixXd::Identity(n, n)).norm() < 1e-4 * n * n);
}

TEST_CASE("enclosing ellipsoid of a distorted cube") {
  HPolytope P = gen_body("cube", 2, 0, 0);
  VPolytope V = vertex_enumerate(P);
  V.vertices.col(0) *= 3.0;  // stretch x by 3
  Ellipsoid E = min_enclosing_ellipsoid(V);
  // box corners (+-3, +-1): quadratic form diag(2 * 9, 2 * 1)
  Eigen::MatrixXd want = Eigen::MatrixXd::Zero(2, 2);
  want.diagonal() << 18.0, 2.0;
  CHECK((E.shape - want).norm() < 1e-3 * want.norm());
}

TEST_CASE("min-surface position of a distorted cube recovers the cube") {
  HPolytope P = gen_body("cube", 2, 0, 0);
  AffineMap T;
  T.linear = Eigen::MatrixXd::Zero(2, 2);
  T.linear.diagonal() << 2.0, 0.5;
  T.shift = Eigen::VectorXd::Zero(2);
  MinSurfacePosition M = min_surface_area_position(apply(T, P));
  CHECK(M.residual <= 1e-6);
  CHECK(isotropy_residual(M.body) <= 1e-6);
  CHECK(M.surface.total == doctest::Approx(8.0).epsilon(1e-6));
  CHECK(M.volume == doctest::Approx(4.0).epsilon(1e-6));
}
