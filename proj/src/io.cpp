#include "jsec/io.hpp"

#include <fstream>

namespace jsec::io {

namespace {

json matrix_rows(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < M.cols(); ++j) r.push_back(M(i, j));
    rows.push_back(r);
  }
  return rows;
}

json matrix_cols(const Eigen::MatrixXd& M) {
  json cols = json::array();
  for (int j = 0; j < M.cols(); ++j) {
    json c = json::array();
    for (int i = 0; i < M.rows(); ++i) c.push_back(M(i, j));
    cols.push_back(c);
  }
  return cols;
}

json vec(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::MatrixXd rows_from(const json& j, int expect_cols) {
  if (!j.is_array() || j.empty()) throw Error(ErrorCode::IoError, "expected nonempty array");
  int cols = expect_cols > 0 ? expect_cols : static_cast<int>(j[0].size());
  Eigen::MatrixXd M(j.size(), cols);
  for (size_t i = 0; i < j.size(); ++i) {
    if (static_cast<int>(j[i].size()) != cols) throw Error(ErrorCode::IoError, "ragged matrix");
    for (int c = 0; c < cols; ++c) M(i, c) = j[i][c].get<double>();
  }
  return M;
}

Eigen::VectorXd vec_from(const json& j) {
  Eigen::VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

}  // namespace

json to_json(const HPolytope& P) {
  json tags = json::array();
  if (P.symmetric) tags.push_back("symmetric");
  if (P.origin_interior) tags.push_back("origin_interior");
  return {{"type", "H"},
          {"dim", P.dim},
          {"normals", matrix_rows(P.normals)},
          {"offsets", vec(P.offsets)},
          {"tags", tags}};
}

json to_json(const VPolytope& P) {
  return {{"type", "V"}, {"dim", P.dim}, {"vertices", matrix_rows(P.vertices)}};
}

json to_json(const Subspace& F) {
  return {{"ambient", F.ambient_dim},
          {"dim", F.dim},
          {"basis", matrix_cols(F.basis)},
          {"offset", vec(F.offset)}};
}

json to_json(const Ellipsoid& E) {
  return {{"center", vec(E.center)}, {"shape", matrix_rows(E.shape)}};
}

json to_json(const McEstimate& e) {
  return {{"value", e.value},
          {"std_error", e.std_error},
          {"samples", e.samples},
          {"seed", e.seed},
          {"bias_bound", e.bias_bound}};
}

json to_json(const JohnDecomposition& D) {
  return {{"contacts", matrix_rows(D.contacts)}, {"weights", vec(D.weights)}};
}

HPolytope hpolytope_from_json(const json& j) {
  if (j.value("type", "H") != "H") throw Error(ErrorCode::IoError, "not an H body");
  int dim = j.at("dim").get<int>();
  HPolytope P = make_hpolytope(rows_from(j.at("normals"), dim), vec_from(j.at("offsets")));
  if (j.contains("tags")) {
    P.symmetric = false;
    P.origin_interior = false;
    for (const auto& t : j.at("tags")) {
      if (t == "symmetric") P.symmetric = true;
      if (t == "origin_interior") P.origin_interior = true;
    }
  }
  return P;
}

VPolytope vpolytope_from_json(const json& j) {
  if (j.value("type", "V") != "V") throw Error(ErrorCode::IoError, "not a V body");
  VPolytope P;
  P.dim = j.at("dim").get<int>();
  P.vertices = rows_from(j.at("vertices"), P.dim);
  return P;
}

Subspace subspace_from_json(const json& j) {
  Subspace F;
  F.ambient_dim = j.at("ambient").get<int>();
  F.dim = j.at("dim").get<int>();
  F.basis.resize(F.ambient_dim, F.dim);
  const json& cols = j.at("basis");
  if (static_cast<int>(cols.size()) != F.dim) throw Error(ErrorCode::IoError, "basis column count");
  for (int c = 0; c < F.dim; ++c) F.basis.col(c) = vec_from(cols[c]);
  F.offset = j.contains("offset") ? vec_from(j.at("offset"))
                                  : Eigen::VectorXd::Zero(F.ambient_dim);
  check_invariants(F);
  return F;
}

Body body_from_json(const json& j) {
  Body b;
  std::string type = j.value("type", "H");
  b.is_h = (type == "H");
  if (b.is_h)
    b.h = hpolytope_from_json(j);
  else
    b.v = vpolytope_from_json(j);
  return b;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

}  // namespace jsec::io
