#include "jsec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "jsec/io.hpp"
#include "jsec/lp.hpp"
#include "jsec/polytope_ops.hpp"
#include "jsec/rng.hpp"

namespace jsec {

namespace {

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int thread_budget() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("JOHNSECTIONS_THREADS")) {
    int cap = std::atoi(env);
    if (cap >= 1) hw = std::min<unsigned>(hw, cap);
  }
  return static_cast<int>(hw);
}

std::uint64_t hash_string(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Eigen::MatrixXd simplex_vertices(int n) {
  // Embed the n+1 unit coordinate vectors of R^{n+1}, centered, into the
  // hyperplane sum(x) = 0 and scale so the circumradius is n.
  Eigen::VectorXd ones = Eigen::VectorXd::Constant(n + 1, 1.0 / std::sqrt(n + 1.0));
  Eigen::MatrixXd B = orthogonal_complement(ones);  // (n+1) x n
  Eigen::MatrixXd V(n + 1, n);
  double scale = std::sqrt(n * (n + 1.0));
  for (int i = 0; i < n + 1; ++i) {
    Eigen::VectorXd y = -Eigen::VectorXd::Constant(n + 1, 1.0 / (n + 1.0));
    y[i] += 1.0;
    V.row(i) = scale * (B.transpose() * y);
  }
  return V;
}

HPolytope gen_body(const std::string& cls, int n, int m, std::uint64_t seed) {
  if (cls == "cube") {
    Eigen::MatrixXd A(2 * n, n);
    A.topRows(n) = Eigen::MatrixXd::Identity(n, n);
    A.bottomRows(n) = -Eigen::MatrixXd::Identity(n, n);
    return make_hpolytope(A, Eigen::VectorXd::Ones(2 * n));
  }
  if (cls == "simplex") {
    // Facet opposite vertex i has outer normal -v_i / n and offset 1
    // (inradius 1, John position).
    Eigen::MatrixXd V = simplex_vertices(n);
    return make_hpolytope(-V / n, Eigen::VectorXd::Ones(n + 1));
  }
  if (cls == "cross") {
    if (n > 6) throw Error(ErrorCode::TooLarge, "cross-polytope facet guard");
    int m2 = 1 << n;
    Eigen::MatrixXd A(m2, n);
    for (int s = 0; s < m2; ++s)
      for (int i = 0; i < n; ++i) A(s, i) = (s >> i) & 1 ? 1.0 : -1.0;
    return make_hpolytope(A, Eigen::VectorXd::Constant(m2, 1.0));
  }
  if (cls != "symmetric" && cls != "general")
    throw Error(ErrorCode::GenerationFailed, "unknown body class " + cls);
  if (m < 2 * n || m > 4 * n) throw Error(ErrorCode::GenerationFailed, "need 2n <= m <= 4n");
  int pairs = m / 2;
  CounterRng rng(seed, 0x67656e626f6479ULL);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::MatrixXd A(2 * pairs, n);
    for (int i = 0; i < pairs; ++i) {
      Eigen::VectorXd u = rng.sphere_direction(n);
      A.row(2 * i) = u;
      A.row(2 * i + 1) = -u;
    }
    if (!lp::positively_spans(A)) continue;
    Eigen::VectorXd b = Eigen::VectorXd::Ones(2 * pairs);
    if (cls == "general") {
      Eigen::VectorXd t = 0.3 * rng.uniform() * rng.sphere_direction(n);
      b += A * t;  // translate; offsets stay >= 0.7
    }
    return make_hpolytope(A, b);
  }
  throw Error(ErrorCode::GenerationFailed, "no positively spanning normal set in 100 attempts");
}

Subspace sample_subspace(int n, int k, double d, std::uint64_t seed) {
  if (k < 1 || k > n) throw Error(ErrorCode::IndexOutOfRange, "need 1 <= k <= n");
  Subspace F;
  F.ambient_dim = n;
  F.dim = k;
  if (k == n) {
    F.basis = Eigen::MatrixXd::Identity(n, n);
    F.offset = Eigen::VectorXd::Zero(n);
    return F;
  }
  CounterRng rng(seed, 0x73756273ULL);
  Eigen::MatrixXd G(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) G(i, j) = rng.gaussian();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  Eigen::MatrixXd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (int j = 0; j < k; ++j)
    if (R(j, j) < 0) Q.col(j) = -Q.col(j);
  F.basis = Q;
  F.offset = Eigen::VectorXd::Zero(n);
  if (d > 0) {
    Eigen::VectorXd w;
    double nrm = 0.0;
    do {
      w = rng.gaussian_vector(n);
      w -= Q * (Q.transpose() * w);
      nrm = w.norm();
    } while (nrm < 1e-9);
    F.offset = d * w / nrm;
  }
  return F;
}

const std::vector<std::string>& checker_catalog() {
  static const std::vector<std::string> ids = {
      "T1a", "T1b", "T1c", "T2a", "T2b", "T3a",  "T3b",  "T4a",   "T4b",
      "T5",  "T6",  "T7",  "T8a", "T8b", "T8i",  "T8ii", "T8iii", "T8iv",
      "T8v", "G1",  "L32", "SHARP-cube", "SHARP-simplex"};
  return ids;
}

std::vector<std::pair<int, int>> default_pairs(const std::string& id) {
  if (id == "SHARP-cube")
    return {{2, 1}, {4, 1}, {4, 2}, {6, 1}, {6, 2}, {6, 3}};
  if (id == "SHARP-simplex") return {{3, 1}, {3, 2}, {4, 2}};
  std::vector<std::pair<int, int>> base = {{2, 1}, {3, 1}, {3, 2}, {4, 2}, {4, 3},
                                           {5, 2}, {5, 4}, {6, 3}, {6, 5}};
  if (id == "T3a") {  // the ratio is undefined at k = 1
    std::vector<std::pair<int, int>> out;
    for (auto& p : base)
      if (p.second >= 2) out.push_back(p);
    return out;
  }
  return base;
}

CheckReport check(const ExperimentConfig& config) {
  if (config.k < 1 || config.k > config.n || config.n > 8)
    throw Error(ErrorCode::IndexOutOfRange, "need 1 <= k <= n <= 8");
  if (config.trials < 1) throw Error(ErrorCode::IndexOutOfRange, "trials must be >= 1");
  const auto& ids = checker_catalog();
  if (std::find(ids.begin(), ids.end(), config.theorem) == ids.end())
    throw Error(ErrorCode::IndexOutOfRange, "unknown checker id " + config.theorem);

  CheckReport rep;
  rep.theorem = config.theorem;
  rep.config = config;
  {
    std::ostringstream os;
    os << config.theorem << '|' << config.n << '|' << config.k << '|' << config.body_class << '|'
       << config.trials << '|' << config.mc_samples << '|' << config.seed << '|' << config.d;
    for (double l : config.lambda_grid) os << '|' << l;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(hash_string(os.str())));
    rep.config_hash = buf;
  }

  std::vector<std::vector<TrialRecord>> slots(config.trials);
  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      int i = next.fetch_add(1);
      if (i >= config.trials) return;
      std::uint64_t tseed = derive_seed(config.seed ^ hash_string(config.theorem), i);
      try {
        slots[i] = run_trial(config, i, tseed);
      } catch (const std::exception& e) {
        TrialRecord r;
        r.trial = i;
        r.n = config.n;
        r.k = config.k;
        r.seed = tseed;
        r.verdict = "skip";
        r.note = e.what();
        slots[i] = {r};
      }
    }
  };
  int nthreads = std::min(thread_budget(), config.trials);
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (auto& s : slots)
    for (auto& r : s) {
      if (r.verdict == "pass")
        ++rep.passed;
      else if (r.verdict == "fail")
        ++rep.failed;
      else if (r.verdict == "skip")
        ++rep.skipped;
      else
        ++rep.infos;
      if (r.equality) rep.equality_attained = true;
      rep.trials.push_back(r);
    }
  return rep;
}

CheckReport run_experiment(const ExperimentConfig& config) { return check(config); }

namespace {

nlohmann::json record_json(const TrialRecord& r) {
  return {{"trial", r.trial}, {"n", r.n},           {"k", r.k},
          {"d", r.d},         {"lambda", r.lambda}, {"lhs", r.lhs},
          {"lhs_err", r.lhs_err}, {"rhs", r.rhs},   {"rhs_err", r.rhs_err},
          {"margin", r.margin},   {"verdict", r.verdict}, {"note", r.note},
          {"seed", r.seed},       {"equality", r.equality}};
}

nlohmann::json report_json_obj(const CheckReport& rep) {
  nlohmann::json trials = nlohmann::json::array();
  for (const auto& r : rep.trials) trials.push_back(record_json(r));
  nlohmann::json grid = nlohmann::json::array();
  for (double l : rep.config.lambda_grid) grid.push_back(l);
  return {{"theorem", rep.theorem},
          {"config",
           {{"n", rep.config.n},
            {"k", rep.config.k},
            {"body_class", rep.config.body_class},
            {"position", rep.config.position},
            {"trials", rep.config.trials},
            {"mc_samples", rep.config.mc_samples},
            {"seed", rep.config.seed},
            {"d", rep.config.d},
            {"lambda_grid", grid}}},
          {"config_hash", rep.config_hash},
          {"summary",
           {{"passed", rep.passed},
            {"failed", rep.failed},
            {"skipped", rep.skipped},
            {"info", rep.infos},
            {"equality_attained", rep.equality_attained}}},
          {"trials", trials}};
}

}  // namespace

std::string report_json(const CheckReport& report) { return report_json_obj(report).dump(2) + "\n"; }

std::string report_json(const std::vector<CheckReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(report_json_obj(r));
  return arr.dump(2) + "\n";
}

std::string report_csv(const std::vector<CheckReport>& reports) {
  std::string out = "theorem,n,k,d,lambda,trial,lhs,lhs_err,rhs,rhs_err,margin,verdict,seed\n";
  for (const auto& rep : reports)
    for (const auto& r : rep.trials) {
      out += rep.theorem;
      out += ',' + std::to_string(r.n) + ',' + std::to_string(r.k) + ',' + fmt(r.d) + ',' +
             fmt(r.lambda) + ',' + std::to_string(r.trial) + ',' + fmt(r.lhs) + ',' +
             fmt(r.lhs_err) + ',' + fmt(r.rhs) + ',' + fmt(r.rhs_err) + ',' + fmt(r.margin) + ',' +
             r.verdict + ',' + std::to_string(r.seed) + '\n';
    }
  return out;
}

void emit_report(const std::vector<CheckReport>& reports, const std::string& path,
                 const std::string& format) {
  if (format == "csv")
    io::save_text(path, report_csv(reports));
  else if (format == "json")
    io::save_text(path, report_json(reports));
  else
    throw Error(ErrorCode::IoError, "unknown report format " + format);
}

void emit_report(const CheckReport& report, const std::string& path, const std::string& format) {
  if (format == "json") {
    io::save_text(path, report_json(report));
    return;
  }
  emit_report(std::vector<CheckReport>{report}, path, format);
}

}  // namespace jsec
