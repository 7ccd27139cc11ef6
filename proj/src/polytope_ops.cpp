#include "jsec/polytope_ops.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "jsec/lp.hpp"
#include "jsec/qp.hpp"

namespace jsec {

namespace {

// Visit all k-subsets of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(int n, int k, F&& f) {
  if (k > n || k < 0) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Eigen::MatrixXd sort_rows_lex(const Eigen::MatrixXd& pts) {
  std::vector<int> order(pts.rows());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return lex_less(pts.row(a), pts.row(b)); });
  Eigen::MatrixXd out(pts.rows(), pts.cols());
  for (size_t i = 0; i < order.size(); ++i) out.row(i) = pts.row(order[i]);
  return out;
}

Eigen::MatrixXd merge_close_rows(const Eigen::MatrixXd& pts, double tol) {
  std::vector<int> kept;
  for (int i = 0; i < pts.rows(); ++i) {
    bool dup = false;
    for (int j : kept) {
      if ((pts.row(i) - pts.row(j)).norm() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(i);
  }
  Eigen::MatrixXd out(kept.size(), pts.cols());
  for (size_t i = 0; i < kept.size(); ++i) out.row(i) = pts.row(kept[i]);
  return out;
}

int affine_rank(const Eigen::MatrixXd& pts, double tol = 1e-9) {
  if (pts.rows() <= 1) return 0;
  Eigen::MatrixXd D = pts.bottomRows(pts.rows() - 1).rowwise() - pts.row(0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(D);
  int r = 0;
  double s0 = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol * std::max(1.0, s0)) ++r;
  return r;
}

// Anchored triangulation of a face of an H-polytope using constraint
// incidence only (no hull recomputation). `face` is sorted ascending; the
// vertex list is sorted lexicographically, so face[0] is the lex-min anchor.
// Emits simplices of chain.size() + d + 1 global vertex ids.
void tri_face_by_incidence(const Eigen::MatrixXd& verts,
                           const std::vector<std::vector<int>>& inc,
                           const std::vector<int>& face, int d, std::vector<int>& chain,
                           std::vector<std::vector<int>>& out) {
  if (d == 0) {
    std::vector<int> s = chain;
    s.push_back(face[0]);
    out.push_back(std::move(s));
    return;
  }
  const int anchor = face[0];
  std::vector<std::vector<int>> seen;
  for (const auto& ic : inc) {
    std::vector<int> w;
    std::set_intersection(face.begin(), face.end(), ic.begin(), ic.end(),
                          std::back_inserter(w));
    if (w.empty() || static_cast<int>(w.size()) == static_cast<int>(face.size())) continue;
    if (w[0] == anchor || std::binary_search(w.begin(), w.end(), anchor)) continue;
    if (static_cast<int>(w.size()) < d) continue;
    bool dup = false;
    for (const auto& p : seen)
      if (p == w) {
        dup = true;
        break;
      }
    if (dup) continue;
    Eigen::MatrixXd W(w.size(), verts.cols());
    for (size_t i = 0; i < w.size(); ++i) W.row(i) = verts.row(w[i]);
    if (affine_rank(W) != d - 1) continue;
    seen.push_back(w);
    chain.push_back(anchor);
    tri_face_by_incidence(verts, inc, w, d - 1, chain, out);
    chain.pop_back();
  }
}

}  // namespace

VPolytope vertex_enumerate(const HPolytope& P) {
  const int n = P.dim;
  const int m = P.facet_count();
  if (m > kMaxFacets || n > kMaxDim)
    throw Error(ErrorCode::TooLarge, "facet/dim guard exceeded");
  if (m < n + 1 || !lp::positively_spans(P.normals))
    throw Error(ErrorCode::Unbounded, "body is not bounded");

  std::vector<Eigen::VectorXd> found;
  for_each_subset(m, n, [&](const std::vector<int>& J) {
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) {
      A.row(i) = P.normals.row(J[i]);
      b[i] = P.offsets[J[i]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
    lu.setThreshold(1e-10);
    if (!lu.isInvertible()) return;
    Eigen::VectorXd x = lu.solve(b);
    if (((P.normals * x - P.offsets).array() <= kMergeTol).all()) found.push_back(x);
  });
  if (found.empty()) throw Error(ErrorCode::Unbounded, "no vertices found");

  Eigen::MatrixXd pts(found.size(), n);
  for (size_t i = 0; i < found.size(); ++i) pts.row(i) = found[i];
  VPolytope V;
  V.dim = n;
  V.vertices = sort_rows_lex(merge_close_rows(sort_rows_lex(pts), kMergeTol));
  return V;
}

std::vector<HullFacet> hull_facets(const Eigen::MatrixXd& pts) {
  const int N = static_cast<int>(pts.rows());
  const int k = static_cast<int>(pts.cols());
  if (affine_rank(pts) < k) throw Error(ErrorCode::DegenerateDim, "points not full-dimensional");

  std::vector<HullFacet> facets;
  if (k == 1) {
    int imin = 0, imax = 0;
    for (int i = 1; i < N; ++i) {
      if (pts(i, 0) < pts(imin, 0)) imin = i;
      if (pts(i, 0) > pts(imax, 0)) imax = i;
    }
    double lo = pts(imin, 0), hi = pts(imax, 0);
    HullFacet fhi, flo;
    fhi.normal = Eigen::VectorXd::Ones(1);
    fhi.offset = hi;
    flo.normal = -Eigen::VectorXd::Ones(1);
    flo.offset = -lo;
    for (int i = 0; i < N; ++i) {
      if (std::abs(pts(i, 0) - hi) <= kMergeTol) fhi.incident.push_back(i);
      if (std::abs(pts(i, 0) - lo) <= kMergeTol) flo.incident.push_back(i);
    }
    facets.push_back(flo);
    facets.push_back(fhi);
    return facets;
  }

  double scale = std::max(1.0, pts.cwiseAbs().maxCoeff());
  double tol = kMergeTol * scale;
  std::set<std::vector<int>> seen;
  for_each_subset(N, k, [&](const std::vector<int>& S) {
    Eigen::MatrixXd D(k - 1, k);
    for (int i = 1; i < k; ++i) D.row(i - 1) = pts.row(S[i]) - pts.row(S[0]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (k >= 2 && sv[k - 2] <= 1e-9 * std::max(1.0, sv[0]))
      return;  // affinely dependent subset
    Eigen::VectorXd a = svd.matrixV().col(k - 1);
    double beta = a.dot(pts.row(S[0]));
    int above = 0, below = 0;
    for (int i = 0; i < N; ++i) {
      double v = a.dot(pts.row(i)) - beta;
      if (v > tol) ++above;
      if (v < -tol) ++below;
    }
    if (above > 0 && below > 0) return;
    if (above > 0) {
      a = -a;
      beta = -beta;
    }
    HullFacet f;
    f.normal = a;
    f.offset = beta;
    for (int i = 0; i < N; ++i)
      if (std::abs(a.dot(pts.row(i)) - beta) <= tol) f.incident.push_back(i);
    if (static_cast<int>(f.incident.size()) < k) return;
    if (seen.insert(f.incident).second) facets.push_back(f);
  });
  return facets;
}

std::vector<std::vector<int>> triangulate_hull(const Eigen::MatrixXd& pts) {
  const int N = static_cast<int>(pts.rows());
  const int k = static_cast<int>(pts.cols());
  std::vector<std::vector<int>> tris;
  if (k == 1) {
    int imin = 0, imax = 0;
    for (int i = 1; i < N; ++i) {
      if (pts(i, 0) < pts(imin, 0)) imin = i;
      if (pts(i, 0) > pts(imax, 0)) imax = i;
    }
    tris.push_back({imin, imax});
    return tris;
  }
  int anchor = 0;
  for (int i = 1; i < N; ++i)
    if (lex_less(pts.row(i), pts.row(anchor))) anchor = i;

  for (const HullFacet& f : hull_facets(pts)) {
    bool has_anchor = false;
    for (int i : f.incident)
      if (i == anchor) has_anchor = true;
    if (has_anchor) continue;
    Eigen::MatrixXd B = orthogonal_complement(f.normal);  // k x (k-1)
    Eigen::MatrixXd sub(f.incident.size(), k - 1);
    for (size_t i = 0; i < f.incident.size(); ++i)
      sub.row(i) = (pts.row(f.incident[i]) - pts.row(f.incident[0])) * B;
    for (const auto& t : triangulate_hull(sub)) {
      std::vector<int> simplex;
      simplex.push_back(anchor);
      for (int li : t) simplex.push_back(f.incident[li]);
      tris.push_back(simplex);
    }
  }
  return tris;
}

double simplices_volume(const Eigen::MatrixXd& pts, const std::vector<std::vector<int>>& tris) {
  double vol = 0.0;
  for (const auto& t : tris) {
    const int j = static_cast<int>(t.size()) - 1;
    if (j == 0) {
      vol += 1.0;
      continue;
    }
    Eigen::MatrixXd E(pts.cols(), j);
    for (int i = 1; i <= j; ++i) E.col(i - 1) = (pts.row(t[i]) - pts.row(t[0])).transpose();
    double g = (E.transpose() * E).determinant();
    double fact = 1.0;
    for (int i = 2; i <= j; ++i) fact *= i;
    vol += std::sqrt(std::max(0.0, g)) / fact;
  }
  return vol;
}

double points_volume(const Eigen::MatrixXd& pts) {
  const int k = static_cast<int>(pts.cols());
  if (pts.rows() < k + 1 || affine_rank(pts) < k) return 0.0;
  return simplices_volume(pts, triangulate_hull(pts));
}

HPolytope facet_enumerate(const VPolytope& P) {
  if (P.vertex_count() > kMaxVertices || P.dim > kMaxDim)
    throw Error(ErrorCode::TooLarge, "vertex/dim guard exceeded");
  if (affine_rank(P.vertices) < P.dim)
    throw Error(ErrorCode::DegenerateDim, "vertices lie in a proper affine subspace");
  std::vector<HullFacet> facets = hull_facets(P.vertices);
  std::sort(facets.begin(), facets.end(), [](const HullFacet& a, const HullFacet& b) {
    Eigen::VectorXd ka(a.normal.size() + 1), kb(b.normal.size() + 1);
    ka << a.normal, a.offset;
    kb << b.normal, b.offset;
    return lex_less(ka, kb);
  });
  Eigen::MatrixXd A(facets.size(), P.dim);
  Eigen::VectorXd b(facets.size());
  for (size_t i = 0; i < facets.size(); ++i) {
    A.row(i) = facets[i].normal;
    b[i] = facets[i].offset;
  }
  return make_hpolytope(A, b);
}

HPolytope section(const HPolytope& P, const Subspace& F) {
  if (F.ambient_dim != P.dim) throw Error(ErrorCode::InvalidBody, "ambient dim mismatch");
  const int k = F.dim;
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> offs;
  for (int j = 0; j < P.facet_count(); ++j) {
    Eigen::VectorXd t = F.basis.transpose() * P.normals.row(j).transpose();
    double bj = P.offsets[j] - P.normals.row(j).dot(F.offset);
    double nrm = t.norm();
    if (nrm <= 1e-12) {
      if (bj < -1e-12) throw Error(ErrorCode::EmptySection, "facet parallel to F excludes it");
      continue;
    }
    t /= nrm;
    bj /= nrm;
    // keep only the tightest of coincident rows
    bool merged = false;
    for (size_t i = 0; i < rows.size() && !merged; ++i) {
      if ((rows[i] - t).norm() <= kMergeTol) {
        offs[i] = std::min(offs[i], bj);
        merged = true;
      }
    }
    if (merged) continue;
    rows.push_back(t);
    offs.push_back(bj);
  }
  if (rows.empty()) throw Error(ErrorCode::EmptySection, "no constraints intersect F");
  Eigen::MatrixXd A(rows.size(), k);
  Eigen::VectorXd b(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    A.row(i) = rows[i];
    b[i] = offs[i];
  }
  auto ip = lp::chebyshev_like_center(A, b);
  if (ip.margin <= 1e-9) throw Error(ErrorCode::EmptySection, "empty relative interior");
  HPolytope S = make_hpolytope(A, b);
  S.symmetric = P.symmetric && F.linear() && antipodal_pairs(S.normals, S.offsets);
  return S;
}

VPolytope project(const VPolytope& P, const Subspace& F) {
  if (!F.linear()) throw Error(ErrorCode::InvalidBody, "projection requires a linear subspace");
  VPolytope W;
  W.dim = F.dim;
  W.vertices = sort_rows_lex(merge_close_rows(sort_rows_lex(P.vertices * F.basis), kMergeTol));
  return reduce_to_extreme(W);
}

Zonotope project(const Zonotope& Z, const Subspace& F) {
  if (!F.linear()) throw Error(ErrorCode::InvalidBody, "projection requires a linear subspace");
  Zonotope W;
  W.dim = F.dim;
  W.generators = Z.generators * F.basis;
  return W;
}

VPolytope reduce_to_extreme(const VPolytope& P) {
  const int N = P.vertex_count();
  Eigen::MatrixXd pts = merge_close_rows(sort_rows_lex(P.vertices), kMergeTol);
  const int M = static_cast<int>(pts.rows());
  std::vector<int> keep;
  for (int i = 0; i < M; ++i) {
    if (M == 1) {
      keep.push_back(i);
      break;
    }
    Eigen::MatrixXd others(P.dim, M - 1);
    int c = 0;
    for (int j = 0; j < M; ++j)
      if (j != i) others.col(c++) = pts.row(j).transpose();
    auto proj = qp::project_onto_hull(others, pts.row(i).transpose());
    if (proj.distance > kMergeTol * (1.0 + pts.row(i).norm())) keep.push_back(i);
  }
  VPolytope out;
  out.dim = P.dim;
  out.vertices.resize(keep.size(), P.dim);
  for (size_t i = 0; i < keep.size(); ++i) out.vertices.row(i) = pts.row(keep[i]);
  (void)N;
  return out;
}

VPolytope polar(const HPolytope& P) {
  if (P.facet_count() == 0 || P.offsets.minCoeff() < 1e-9)
    throw Error(ErrorCode::OriginNotInterior, "polar of H-polytope needs all offsets >= 1e-9");
  VPolytope V;
  V.dim = P.dim;
  V.vertices.resize(P.facet_count(), P.dim);
  for (int j = 0; j < P.facet_count(); ++j) V.vertices.row(j) = P.normals.row(j) / P.offsets[j];
  return reduce_to_extreme(V);
}

HPolytope polar(const VPolytope& P) {
  std::vector<HullFacet> facets = hull_facets(P.vertices);  // throws DegenerateDim
  for (const auto& f : facets) {
    if (f.offset < 1e-9)
      throw Error(ErrorCode::OriginNotInterior, "origin not interior to the hull");
  }
  Eigen::MatrixXd A = P.vertices;
  Eigen::VectorXd b = Eigen::VectorXd::Ones(P.vertex_count());
  return make_hpolytope(A, b);
}

double support(const HPolytope& P, const Eigen::VectorXd& x) {
  auto r = lp::maximize(x, P.normals, P.offsets);
  if (r.status == lp::Status::Unbounded)
    throw Error(ErrorCode::Unbounded, "support LP unbounded");
  if (r.status == lp::Status::Infeasible)
    throw Error(ErrorCode::InvalidBody, "empty polytope in support");
  return r.value;
}

double support(const VPolytope& P, const Eigen::VectorXd& x) {
  return (P.vertices * x).maxCoeff();
}

double support(const Zonotope& Z, const Eigen::VectorXd& x) {
  return (Z.generators * x).cwiseAbs().sum();
}

double support(const Ellipsoid& E, const Eigen::VectorXd& x) {
  return E.center.dot(x) + std::sqrt(std::max(0.0, x.dot(E.shape * x)));
}

double gauge(const HPolytope& P, const Eigen::VectorXd& x) {
  if (P.offsets.minCoeff() <= 0)
    throw Error(ErrorCode::OriginNotInterior, "gauge needs the origin interior");
  double g = 0.0;
  for (int j = 0; j < P.facet_count(); ++j)
    g = std::max(g, P.normals.row(j).dot(x) / P.offsets[j]);
  return g;
}

BodyIncidence body_incidence(const HPolytope& P) {
  BodyIncidence D;
  VPolytope V = vertex_enumerate(P);
  D.vertices = V.vertices;
  const int n = P.dim;
  const int m = P.facet_count();
  D.facet_vertices.resize(m);
  D.facet_tris.resize(m);
  for (int j = 0; j < m; ++j) {
    std::vector<int>& inc = D.facet_vertices[j];
    bool dup = false;  // repeated rows would double-count the facet
    for (int p = 0; p < j && !dup; ++p)
      dup = (P.normals.row(j) - P.normals.row(p)).norm() <= kMergeTol &&
            std::abs(P.offsets[j] - P.offsets[p]) <= kMergeTol;
    if (dup) continue;
    for (int i = 0; i < V.vertex_count(); ++i) {
      double r = P.offsets[j] - P.normals.row(j).dot(V.vertices.row(i));
      if (std::abs(r) <= 1e-8) inc.push_back(i);
    }
    if (static_cast<int>(inc.size()) < n) {
      inc.clear();
      continue;  // redundant constraint or lower-dimensional contact
    }
    if (n > 1) {
      Eigen::MatrixXd sub(inc.size(), n);
      for (size_t i = 0; i < inc.size(); ++i) sub.row(i) = D.vertices.row(inc[i]);
      if (affine_rank(sub) < n - 1) inc.clear();
    }
  }
  // triangulate only after every incidence list is known: the face-lattice
  // recursion intersects a facet with all other facets' vertex sets
  for (int j = 0; j < m; ++j) {
    const std::vector<int>& inc = D.facet_vertices[j];
    if (inc.empty()) continue;
    if (n == 1) {
      D.facet_tris[j].push_back({inc[0]});
      continue;
    }
    std::vector<int> chain;
    tri_face_by_incidence(D.vertices, D.facet_vertices, inc, n - 1, chain, D.facet_tris[j]);
  }
  return D;
}

double volume(const HPolytope& P) {
  const int n = P.dim;
  BodyIncidence D = body_incidence(P);
  if (n == 1) return D.vertices.maxCoeff() - D.vertices.minCoeff();
  Eigen::VectorXd anchor = D.vertices.row(0);  // lexicographic minimum
  double vol = 0.0;
  for (int j = 0; j < P.facet_count(); ++j) {
    if (D.facet_tris[j].empty()) continue;
    double h = P.offsets[j] - P.normals.row(j).dot(anchor);
    if (h <= kMergeTol) continue;
    vol += h * simplices_volume(D.vertices, D.facet_tris[j]) / n;
  }
  return vol;
}

double volume(const VPolytope& P) {
  if (P.vertex_count() > kMaxVertices || P.dim > kMaxDim)
    throw Error(ErrorCode::TooLarge, "vertex/dim guard exceeded");
  return points_volume(P.vertices);
}

SurfaceMeasure surface_measure(const HPolytope& P) {
  BodyIncidence D = body_incidence(P);
  std::vector<int> rows;
  std::vector<double> areas;
  for (int j = 0; j < P.facet_count(); ++j) {
    if (D.facet_tris[j].empty()) continue;
    double a = simplices_volume(D.vertices, D.facet_tris[j]);
    if (a > 1e-12) {
      rows.push_back(j);
      areas.push_back(a);
    }
  }
  SurfaceMeasure S;
  S.normals.resize(rows.size(), P.dim);
  S.areas.resize(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    S.normals.row(i) = P.normals.row(rows[i]);
    S.areas[i] = areas[i];
    S.total += areas[i];
  }
  return S;
}

Zonotope projection_body(const HPolytope& P) {
  SurfaceMeasure S = surface_measure(P);
  const int m = static_cast<int>(S.areas.size());
  Zonotope Z;
  Z.dim = P.dim;
  if (P.symmetric && antipodal_pairs(S.normals, S.areas)) {
    std::vector<int> used(m, 0);
    std::vector<Eigen::VectorXd> gens;
    for (int i = 0; i < m; ++i) {
      if (used[i]) continue;
      for (int j = i + 1; j < m; ++j) {
        if (!used[j] && (S.normals.row(i) + S.normals.row(j)).norm() <= 1e-9) {
          used[i] = used[j] = 1;
          gens.push_back(0.5 * (S.areas[i] + S.areas[j]) * S.normals.row(i).transpose());
          break;
        }
      }
    }
    Z.generators.resize(gens.size(), P.dim);
    for (size_t i = 0; i < gens.size(); ++i) Z.generators.row(i) = gens[i];
  } else {
    Z.generators.resize(m, P.dim);
    for (int i = 0; i < m; ++i) Z.generators.row(i) = 0.5 * S.areas[i] * S.normals.row(i);
  }
  return Z;
}

double zonotope_volume(const Zonotope& Z) {
  const int n = Z.dim;
  const int m = Z.generator_count();
  if (m > kMaxGenerators) throw Error(ErrorCode::TooManyGenerators, "generator guard exceeded");
  if (m < n) return 0.0;
  double sum = 0.0;
  for_each_subset(m, n, [&](const std::vector<int>& S) {
    Eigen::MatrixXd G(n, n);
    for (int i = 0; i < n; ++i) G.row(i) = Z.generators.row(S[i]);
    sum += std::abs(G.determinant());
  });
  return std::pow(2.0, n) * sum;
}

}  // namespace jsec
