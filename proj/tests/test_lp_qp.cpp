#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "jsec/lp.hpp"
#include "jsec/qp.hpp"
#include "jsec/rng.hpp"

using namespace jsec;

namespace {
Eigen::MatrixXd square_normals() {
  Eigen::MatrixXd A(4, 2);
  A << 1, 0, -1, 0, 0, 1, 0, -1;
  return A;
}
}  // namespace

TEST_CASE("lp maximize over the unit square") {
  Eigen::MatrixXd A = square_normals();
  Eigen::VectorXd b = Eigen::VectorXd::Ones(4);
  Eigen::VectorXd c(2);
  c << 1, 2;
  auto r = lp::maximize(c, A, b);
  CHECK(r.value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("lp unbounded direction is reported") {
  Eigen::MatrixXd A(2, 2);
  A << 1, 0, 0, 1;  // quadrant: unbounded along (-1,-1)
  Eigen::VectorXd b = Eigen::VectorXd::Ones(2);
  Eigen::VectorXd c(2);
  c << -1, -1;
  auto r = lp::maximize(c, A, b);
  CHECK(r.status == lp::Status::Unbounded);
}

TEST_CASE("chebyshev-like center of a right triangle") {
  // x >= 0, y >= 0, x + y <= 1: inradius (2 - sqrt(2)) / 2
  Eigen::MatrixXd A(3, 2);
  A << -1, 0, 0, -1, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  Eigen::VectorXd b(3);
  b << 0, 0, 1 / std::sqrt(2.0);
  auto c = lp::chebyshev_like_center(A, b, 10.0);
  double r = (2.0 - std::sqrt(2.0)) / 2.0;
  CHECK(c.margin == doctest::Approx(r).epsilon(1e-7));
  CHECK(c.x[0] == doctest::Approx(r).epsilon(1e-6));
  CHECK(c.x[1] == doctest::Approx(r).epsilon(1e-6));
}

TEST_CASE("positive span detection") {
  Eigen::MatrixXd A = square_normals();
  CHECK(lp::positively_spans(A));
  CHECK_FALSE(lp::positively_spans(A.topRows(3)));
}

TEST_CASE("nnls exact fit and sign constraint") {
  Eigen::MatrixXd A(3, 2);
  A << 1, 0, 0, 1, 1, 1;
  Eigen::VectorXd y(3);
  y << 1, 2, 3;  // consistent with x = (1, 2)
  Eigen::VectorXd x = qp::nnls(A, y, 1e-12);
  CHECK((A * x - y).norm() < 1e-10);
  CHECK(x.minCoeff() >= 0.0);

  y << -1, 1, 0;  // best nonnegative fit clamps the first coordinate
  x = qp::nnls(A, y, 1e-12);
  CHECK(x[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(x.minCoeff() >= 0.0);
}

TEST_CASE("nonneg qp KKT conditions on random instances") {
  CounterRng rng(42, 0);
  for (int t = 0; t < 20; ++t) {
    int m = 3 + static_cast<int>(rng.next_u64() % 5);
    Eigen::MatrixXd B(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) B(i, j) = rng.gaussian();
    Eigen::MatrixXd Q = B * B.transpose() + 1e-6 * Eigen::MatrixXd::Identity(m, m);
    Eigen::VectorXd q(m);
    for (int i = 0; i < m; ++i) q[i] = rng.gaussian();
    Eigen::VectorXd x = qp::nonneg_qp(Q, q, 1e-11);
    Eigen::VectorXd g = Q * x + q;
    for (int i = 0; i < m; ++i) {
      CHECK(x[i] >= -1e-12);
      CHECK(g[i] >= -1e-7);                    // stationarity on the active set
      CHECK(std::abs(x[i] * g[i]) < 1e-7);     // complementarity
    }
  }
}

TEST_CASE("projection onto a segment hull") {
  Eigen::MatrixXd V(2, 2);  // columns: (0,0) and (2,0)
  V << 0, 2, 0, 0;
  Eigen::VectorXd x(2);
  x << 1, 1;
  auto p = qp::project_onto_hull(V, x, 1e-12);
  CHECK(p.distance == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.point[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.point[1] == doctest::Approx(0.0).epsilon(1e-9));

  x << 3, 0;  // beyond the far endpoint
  p = qp::project_onto_hull(V, x, 1e-12);
  CHECK(p.distance == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.point[0] == doctest::Approx(2.0).epsilon(1e-9));
}
