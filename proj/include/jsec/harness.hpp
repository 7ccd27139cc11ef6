#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "jsec/bodies.hpp"

namespace jsec {

struct ExperimentConfig {
  std::string theorem;
  int n = 3;
  int k = 1;
  std::string body_class;          // empty = checker default
  std::string position;            // informational; set by the checker
  int trials = 1;
  long long mc_samples = 10000;
  std::uint64_t seed = 1;
  double d = -1.0;                 // affine distance; < 0 = sample per trial
  std::vector<double> lambda_grid; // empty = {0.5, 1, 2}
};

struct TrialRecord {
  int trial = 0;
  int n = 0;
  int k = 0;
  double d = 0.0;
  double lambda = 0.0;  // also carries the t of Gaussian-comparison grids
  double lhs = 0.0;
  double lhs_err = 0.0;
  double rhs = 0.0;
  double rhs_err = 0.0;
  double margin = 0.0;  // rhs - lhs
  std::string verdict;  // pass | fail | skip | info
  std::string note;
  std::uint64_t seed = 0;
  bool equality = false;
};

struct CheckReport {
  std::string theorem;
  ExperimentConfig config;
  std::string config_hash;
  std::vector<TrialRecord> trials;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  int infos = 0;
  bool equality_attained = false;
};

/// Random H-polytope generators; named classes are exact.
/// class: cube | simplex | cross | symmetric | general. Random classes need
/// 2n <= m <= 4n and certify boundedness (<= 100 resamples).
HPolytope gen_body(const std::string& cls, int n, int m, std::uint64_t seed);

/// Haar subspace from QR of a seeded Gaussian matrix; offset d * (uniform
/// unit vector of the orthogonal complement). k = n forces the identity
/// basis and d = 0.
Subspace sample_subspace(int n, int k, double d, std::uint64_t seed);

/// Vertices (rows) of the regular simplex S_n with inradius 1 and
/// circumradius n, centered at the origin.
Eigen::MatrixXd simplex_vertices(int n);

const std::vector<std::string>& checker_catalog();

/// (n, k) pairs exercised by the --all preset for a given checker.
std::vector<std::pair<int, int>> default_pairs(const std::string& id);

/// Runs config.trials independent trials of the named checker.
CheckReport check(const ExperimentConfig& config);
CheckReport run_experiment(const ExperimentConfig& config);

std::string report_json(const CheckReport& report);
std::string report_json(const std::vector<CheckReport>& reports);
std::string report_csv(const std::vector<CheckReport>& reports);

/// format: "json" or "csv".
void emit_report(const CheckReport& report, const std::string& path, const std::string& format);
void emit_report(const std::vector<CheckReport>& reports, const std::string& path,
                 const std::string& format);

/// One trial of a checker (defined by the checker catalog); may emit several
/// records (grid checkers). Defined in the checker translation unit.
std::vector<TrialRecord> run_trial(const ExperimentConfig& config, int trial, std::uint64_t seed);

}  // namespace jsec
