#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jsec/functionals.hpp"
#include "jsec/harness.hpp"
#include "jsec/io.hpp"
#include "jsec/polytope_ops.hpp"
#include "jsec/positions.hpp"

using nlohmann::json;
using namespace jsec;

namespace {

void emit(const json& j, const std::string& out) {
  std::string text = j.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    io::save_text(out, text);
}

json matrix_json(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(row);
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json map_json(const AffineMap& T) {
  return json{{"linear", matrix_json(T.linear)}, {"shift", vector_json(T.shift)}};
}

HPolytope load_h(const std::string& path) {
  io::Body b = io::body_from_json(io::load_json(path));
  if (!b.is_h) throw Error(ErrorCode::InvalidBody, "expected a facet-description body");
  return b.h;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polytope positions, sections, and convex-geometry functionals"};
  app.require_subcommand(1);

  std::string body_path, subspace_path, out_path, format = "json";
  long long samples = 100000;
  std::uint64_t seed = 1;

  // --- john ---
  auto* john = app.add_subcommand("john", "John position and contact decomposition");
  john->add_option("body", body_path, "body JSON file")->required();
  john->add_option("--out", out_path);
  john->callback([&] {
    HPolytope P = load_h(body_path);
    auto [K, T] = to_john_position(P);
    json j{{"body", io::to_json(K)}, {"map", map_json(T)}};
    try {
      Eigen::MatrixXd U = contact_points(K);
      j["decomposition"] = io::to_json(fit_john_decomposition(U, K.symmetric));
    } catch (const Error& e) {
      j["decomposition_error"] = e.what();
    }
    emit(j, out_path);
  });

  // --- lowner ---
  auto* lowner = app.add_subcommand("lowner", "Minimum-volume enclosing ellipsoid");
  lowner->add_option("body", body_path)->required();
  lowner->add_option("--out", out_path);
  lowner->callback([&] {
    io::Body b = io::body_from_json(io::load_json(body_path));
    VPolytope V = b.is_h ? vertex_enumerate(b.h) : b.v;
    emit(json{{"ellipsoid", io::to_json(min_enclosing_ellipsoid(V))}}, out_path);
  });

  // --- minsurf ---
  auto* minsurf = app.add_subcommand("minsurf", "Minimal surface area position");
  minsurf->add_option("body", body_path)->required();
  minsurf->add_option("--out", out_path);
  minsurf->callback([&] {
    MinSurfacePosition M = min_surface_area_position(load_h(body_path));
    emit(json{{"body", io::to_json(M.body)},
              {"map", matrix_json(M.map)},
              {"residual", M.residual},
              {"iterations", M.iterations},
              {"surface_area", M.surface.total},
              {"volume", M.volume}},
         out_path);
  });

  // --- section ---
  auto* sect = app.add_subcommand("section", "Intersect a body with a flat");
  sect->add_option("body", body_path)->required();
  sect->add_option("--subspace", subspace_path, "subspace JSON file")->required();
  sect->add_option("--out", out_path);
  sect->callback([&] {
    Subspace F = io::subspace_from_json(io::load_json(subspace_path));
    emit(json{{"section", io::to_json(section(load_h(body_path), F))}}, out_path);
  });

  // --- project ---
  auto* proj = app.add_subcommand("project", "Orthogonal projection onto a subspace");
  proj->add_option("body", body_path)->required();
  proj->add_option("--subspace", subspace_path)->required();
  proj->add_option("--out", out_path);
  proj->callback([&] {
    Subspace F = io::subspace_from_json(io::load_json(subspace_path));
    io::Body b = io::body_from_json(io::load_json(body_path));
    VPolytope V = b.is_h ? vertex_enumerate(b.h) : b.v;
    emit(json{{"projection", io::to_json(project(V, F))}}, out_path);
  });

  // --- polar ---
  auto* pol = app.add_subcommand("polar", "Polar body");
  pol->add_option("body", body_path)->required();
  pol->add_option("--out", out_path);
  pol->callback([&] {
    io::Body b = io::body_from_json(io::load_json(body_path));
    json j = b.is_h ? io::to_json(polar(b.h)) : io::to_json(polar(b.v));
    emit(json{{"polar", j}}, out_path);
  });

  // --- functional ---
  auto* fn = app.add_subcommand("functional", "Volume, mean width, Wills, Gaussian measure");
  std::string which;
  double tscale = 1.0;
  fn->add_option("name", which, "volume | meanwidth | wills | gauss")->required();
  fn->add_option("body", body_path)->required();
  fn->add_option("--samples", samples);
  fn->add_option("--seed", seed);
  fn->add_option("--t", tscale, "scale factor for gauss");
  fn->add_option("--out", out_path);
  fn->callback([&] {
    io::Body b = io::body_from_json(io::load_json(body_path));
    json j;
    if (which == "volume") {
      j["value"] = b.is_h ? volume(b.h) : volume(b.v);
    } else if (which == "meanwidth") {
      j["estimate"] = io::to_json(b.is_h ? mean_width_mc(b.h, samples, seed)
                                         : mean_width_mc(b.v, samples, seed));
    } else if (which == "wills") {
      j["estimate"] = io::to_json(b.is_h ? wills_mc(b.h, samples, seed)
                                         : wills_mc(b.v, samples, seed));
    } else if (which == "gauss") {
      if (!b.is_h) throw Error(ErrorCode::InvalidBody, "gauss needs a facet description");
      j["estimate"] = io::to_json(gaussian_measure_mc(b.h, tscale, samples, seed));
      j["t"] = tscale;
    } else {
      throw CLI::ValidationError("unknown functional " + which);
    }
    emit(j, out_path);
  });

  // --- check ---
  auto* chk = app.add_subcommand("check", "Run inequality checkers");
  ExperimentConfig cfg;
  bool all = false;
  double dflag = -1.0;
  std::vector<double> lgrid;
  chk->add_option("--theorem", cfg.theorem, "checker id (see --list)");
  chk->add_flag("--all", all, "run the whole catalog over preset (n, k) pairs");
  chk->add_option("--n", cfg.n);
  chk->add_option("--k", cfg.k);
  chk->add_option("--body-class", cfg.body_class, "cube | simplex | cross | symmetric | general");
  chk->add_option("--d", dflag, "affine distance (default: sampled per trial)");
  chk->add_option("--lambda-grid", lgrid, "scale grid for grid checkers");
  chk->add_option("--trials", cfg.trials);
  chk->add_option("--samples", cfg.mc_samples);
  chk->add_option("--seed", cfg.seed);
  chk->add_option("--out", out_path);
  chk->add_option("--format", format, "json | csv");
  bool list = false;
  chk->add_flag("--list", list, "print checker ids and exit");
  chk->callback([&] {
    if (list) {
      for (const auto& id : checker_catalog()) std::cout << id << "\n";
      return;
    }
    cfg.d = dflag;
    cfg.lambda_grid = lgrid;
    std::vector<CheckReport> reports;
    if (all) {
      int requested = cfg.trials;
      for (const auto& id : checker_catalog()) {
        auto pairs = default_pairs(id);
        int per = std::max(1, (requested + static_cast<int>(pairs.size()) - 1) /
                                  static_cast<int>(pairs.size()));
        for (auto [pn, pk] : pairs) {
          ExperimentConfig c = cfg;
          c.theorem = id;
          c.n = pn;
          c.k = pk;
          c.trials = per;
          reports.push_back(check(c));
        }
      }
    } else {
      if (cfg.theorem.empty())
        throw CLI::ValidationError("--theorem or --all is required");
      reports.push_back(check(cfg));
    }
    int failed = 0, passed = 0, skipped = 0;
    for (const auto& r : reports) {
      failed += r.failed;
      passed += r.passed;
      skipped += r.skipped;
      std::fprintf(stderr, "%-14s n=%d k=%d  pass=%d fail=%d skip=%d info=%d%s\n",
                   r.theorem.c_str(), r.config.n, r.config.k, r.passed, r.failed, r.skipped,
                   r.infos, r.equality_attained ? "  [equality]" : "");
    }
    if (out_path.empty()) {
      std::cout << (format == "csv" ? report_csv(reports)
                    : reports.size() == 1 ? report_json(reports.front())
                                          : report_json(reports))
                << "\n";
    } else if (reports.size() == 1 && format == "json") {
      emit_report(reports.front(), out_path, format);
    } else {
      emit_report(reports, out_path, format);
    }
    std::fprintf(stderr, "total: pass=%d fail=%d skip=%d\n", passed, failed, skipped);
    if (failed > 0) std::exit(1);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
