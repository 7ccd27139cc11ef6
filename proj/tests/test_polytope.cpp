#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "jsec/harness.hpp"
#include "jsec/lp.hpp"
#include "jsec/polytope_ops.hpp"
#include "jsec/rng.hpp"

using namespace jsec;

namespace {

HPolytope cube(int n) { return gen_body("cube", n, 0, 0); }

// signed shoelace area of 2-D points sorted by angle around their centroid
double shoelace(Eigen::MatrixXd pts) {
  Eigen::RowVector2d c = pts.colwise().mean();
  std::vector<int> idx(pts.rows());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::atan2(pts(a, 1) - c[1], pts(a, 0) - c[0]) <
           std::atan2(pts(b, 1) - c[1], pts(b, 0) - c[0]);
  });
  double s = 0.0;
  for (size_t i = 0; i < idx.size(); ++i) {
    const auto& p = pts.row(idx[i]);
    const auto& q = pts.row(idx[(i + 1) % idx.size()]);
    s += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * std::abs(s);
}

HPolytope random_2d(std::uint64_t seed, int m) {
  CounterRng rng(seed, 99);
  while (true) {
    Eigen::MatrixXd A(m, 2);
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) {
      A.row(i) = rng.sphere_direction(2).transpose();
      b[i] = rng.uniform(0.5, 2.0);
    }
    if (lp::positively_spans(A)) return make_hpolytope(A, b);
  }
}

}  // namespace

TEST_CASE("cube vertex enumeration and exact volume") {
  for (int n = 2; n <= 4; ++n) {
    VPolytope V = vertex_enumerate(cube(n));
    CHECK(V.vertices.rows() == (1 << n));
    CHECK(volume(cube(n)) == doctest::Approx(std::pow(2.0, n)).epsilon(1e-12));
    CHECK(volume(V) == doctest::Approx(std::pow(2.0, n)).epsilon(1e-12));
  }
}

TEST_CASE("2-D volume agrees with the shoelace formula") {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    HPolytope P = random_2d(s, 6 + static_cast<int>(s % 3));
    VPolytope V = vertex_enumerate(P);
    CHECK(volume(P) == doctest::Approx(shoelace(V.vertices)).epsilon(1e-10));
  }
}

TEST_CASE("facet enumeration round-trips vertex enumeration") {
  HPolytope P = random_2d(7, 7);
  VPolytope V = vertex_enumerate(P);
  HPolytope Q = facet_enumerate(V);
  VPolytope W = vertex_enumerate(Q);
  REQUIRE(W.vertices.rows() == V.vertices.rows());
  CHECK(volume(Q) == doctest::Approx(volume(P)).epsilon(1e-10));
}

TEST_CASE("polar of the cube is the cross-polytope") {
  VPolytope C = polar(cube(3));
  CHECK(C.vertices.rows() == 6);
  CHECK(volume(C) == doctest::Approx(8.0 / 6.0).epsilon(1e-12));  // 2^n / n!
  // double polarity returns the cube
  HPolytope back = polar(C);
  CHECK(volume(back) == doctest::Approx(8.0).epsilon(1e-10));
}

TEST_CASE("support and gauge on the cube") {
  HPolytope K = cube(3);
  Eigen::VectorXd u(3);
  u << 1, 2, 3;
  CHECK(support(K, u) == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(gauge(K, u) == doctest::Approx(3.0).epsilon(1e-12));
  VPolytope V = vertex_enumerate(K);
  CHECK(support(V, u) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("diagonal section of the square is the sharp segment") {
  Subspace F;
  F.ambient_dim = 2;
  F.dim = 1;
  F.basis = Eigen::MatrixXd(2, 1);
  F.basis << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  F.offset = Eigen::VectorXd::Zero(2);
  HPolytope S = section(cube(2), F);
  CHECK(volume(S) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(S.symmetric);
}

TEST_CASE("empty affine section is detected") {
  Subspace F;
  F.ambient_dim = 2;
  F.dim = 1;
  F.basis = Eigen::MatrixXd(2, 1);
  F.basis << 1, 0;
  F.offset = Eigen::VectorXd(2);
  F.offset << 0, 5;  // line y = 5 misses [-1,1]^2
  CHECK_THROWS_AS(section(cube(2), F), Error);
}

TEST_CASE("projection of the cube onto a coordinate plane") {
  Subspace F;
  F.ambient_dim = 3;
  F.dim = 2;
  F.basis = Eigen::MatrixXd::Identity(3, 2);
  F.offset = Eigen::VectorXd::Zero(3);
  VPolytope P = project(vertex_enumerate(cube(3)), F);
  CHECK(volume(P) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(P.vertices.rows() == 4);  // non-extreme images are dropped
}

TEST_CASE("surface measure of the cube") {
  SurfaceMeasure s = surface_measure(cube(3));
  CHECK(s.total == doctest::Approx(24.0).epsilon(1e-10));
  CHECK(s.areas.size() == 6);
  for (int i = 0; i < s.areas.size(); ++i)
    CHECK(s.areas[i] == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("projection body of the cube and its volume") {
  for (int n = 2; n <= 3; ++n) {
    Zonotope Z = projection_body(cube(n));
    // |Pi K| = (area / n)^n = 2^{n^2} for the cube
    CHECK(zonotope_volume(Z) == doctest::Approx(std::pow(2.0, n * n)).epsilon(1e-10));
    // support in a coordinate direction is the facet area of the shadow
    Eigen::VectorXd e1 = Eigen::VectorXd::Unit(n, 0);
    CHECK(support(Z, e1) == doctest::Approx(std::pow(2.0, n - 1)).epsilon(1e-10));
  }
}

TEST_CASE("body incidence triangulation reproduces the volume") {
  HPolytope P = random_2d(3, 8);
  BodyIncidence D = body_incidence(P);
  // origin interior: vol = sum_j b_j * area_j / n over the facet cones
  double tot = 0.0;
  for (int j = 0; j < P.normals.rows(); ++j)
    tot += P.offsets[j] * simplices_volume(D.vertices, D.facet_tris[j]) / P.dim;
  CHECK(tot == doctest::Approx(volume(P)).epsilon(1e-9));
}

TEST_CASE("guards reject oversized inputs") {
  Eigen::MatrixXd A = Eigen::MatrixXd::Random(100, 3);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(100);
  CHECK_THROWS_AS(vertex_enumerate(make_hpolytope(A, b)), Error);
}
