/* Copyright 2026 The tspqaoa Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "tspqaoa/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "tspqaoa/error.hpp"
#include "tspqaoa/exact.hpp"
#include "tspqaoa/qaoa.hpp"
#include "tspqaoa/rng.hpp"

namespace tspqaoa {

namespace {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

double parse_double(std::string_view s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ValidationError("bad number '" + std::string(s) + "' in records");
  }
  return x;
}

template <typename Int>
Int parse_int(std::string_view s) {
  Int x{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ValidationError("bad integer '" + std::string(s) + "' in records");
  }
  return x;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string join_encodings(const std::vector<EncodingKind>& kinds) {
  if (kinds.size() == 2) return "both";
  return std::string(to_string(kinds.front()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

void validate(const ExperimentConfig& c) {
  if (c.count < 1) throw ValidationError("count must be positive");
  if (c.n < 3) throw ValidationError("n must be at least 3");
  if (c.weight_lo < 1 || c.weight_lo > c.weight_hi) {
    throw ValidationError("weight range must satisfy 1 <= lo <= hi");
  }
  if (c.encodings.empty()) throw ValidationError("no encodings selected");
  if (c.p < 1) throw ValidationError("p must be at least 1");
  if (c.max_evals < 2 * c.p + 1) {
    throw ValidationError("max_evals must be at least 2p+1");
  }
  if (c.workers < 0) throw ValidationError("workers must be >= 0");
}

std::pair<int, int> parse_weight_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    throw ValidationError("weight range must look like lo..hi");
  }
  const int lo = parse_int<int>(text.substr(0, dots));
  const int hi = parse_int<int>(text.substr(dots + 2));
  if (lo < 1 || lo > hi) {
    throw ValidationError("weight range must satisfy 1 <= lo <= hi");
  }
  return {lo, hi};
}

std::vector<EncodingKind> parse_encoding_list(std::string_view text) {
  if (text == "both") return {EncodingKind::kEdge, EncodingKind::kOneHot};
  return {parse_encoding_kind(text)};
}

ExperimentConfig config_from_json(const nlohmann::json& doc,
                                  ExperimentConfig base) {
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  try {
    if (doc.contains("n")) base.n = doc["n"].get<int>();
    if (doc.contains("count")) base.count = doc["count"].get<int>();
    if (doc.contains("seed")) base.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("encoding")) {
      base.encodings = parse_encoding_list(doc["encoding"].get<std::string>());
    }
    if (doc.contains("p")) base.p = doc["p"].get<int>();
    if (doc.contains("optimizer")) {
      base.optimizer =
          parse_optimizer_kind(doc["optimizer"].get<std::string>());
    }
    if (doc.contains("max_evals")) base.max_evals = doc["max_evals"].get<int>();
    if (doc.contains("weight_range")) {
      std::tie(base.weight_lo, base.weight_hi) =
          parse_weight_range(doc["weight_range"].get<std::string>());
    }
    if (doc.contains("workers")) base.workers = doc["workers"].get<int>();
    if (doc.contains("out")) base.out = doc["out"].get<std::string>();
    if (doc.contains("cost_form")) {
      base.cost_form = parse_cost_form(doc["cost_form"].get<std::string>());
    }
    if (doc.contains("timing")) base.record_timing = doc["timing"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid config: ") + e.what());
  }
  return base;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  return nlohmann::json{
      {"n", c.n},
      {"count", c.count},
      {"seed", c.seed},
      {"encoding", join_encodings(c.encodings)},
      {"p", c.p},
      {"optimizer", std::string(to_string(c.optimizer))},
      {"max_evals", c.max_evals},
      {"weight_range",
       std::to_string(c.weight_lo) + ".." + std::to_string(c.weight_hi)},
      {"workers", c.workers},
      {"out", c.out.string()},
      {"cost_form", std::string(to_string(c.cost_form))},
      {"timing", c.record_timing},
  };
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed config " + path.string() + ": " +
                          e.what());
  }
  return config_from_json(doc);
}

std::uint64_t instance_seed(std::uint64_t master, int id) {
  return derive_seed(master, static_cast<std::uint64_t>(id));
}

TspInstance experiment_instance(const ExperimentConfig& config, int id) {
  return generate_random(config.n, instance_seed(config.seed, id),
                         config.weight_lo, config.weight_hi);
}

// ---------------------------------------------------------------------------
// Runs

namespace {

ExperimentRecord run_one(const ExperimentConfig& config, int id,
                         EncodingKind kind) {
  ExperimentRecord rec;
  rec.instance_id = id;
  rec.seed = instance_seed(config.seed, id);
  rec.encoding = kind;
  rec.p = config.p;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const TspInstance inst = experiment_instance(config, id);
    rec.optimal_cost = held_karp(inst).cost;
    QaoaConfig qc;
    qc.p = config.p;
    qc.encoding = kind;
    qc.optimizer = config.optimizer;
    qc.max_evals = config.max_evals;
    qc.seed = rec.seed;
    qc.cost_form = config.cost_form;
    const QaoaResult r = optimize(normalize(inst), qc);
    rec.found_cost = r.found_cost;
    rec.relative_error = r.relative_error;
    rec.eval_count = r.eval_count;
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.error = e.what();
    rec.found_cost = std::numeric_limits<double>::quiet_NaN();
    rec.relative_error = std::numeric_limits<double>::quiet_NaN();
  }
  if (config.record_timing) {
    rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
  }
  return rec;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
  validate(config);
  std::vector<EncodingKind> kinds = config.encodings;
  std::sort(kinds.begin(), kinds.end(), [](EncodingKind a, EncodingKind b) {
    return to_string(a) < to_string(b);
  });
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());

  const std::size_t jobs = static_cast<std::size_t>(config.count) * kinds.size();
  std::vector<ExperimentRecord> records(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const int id = static_cast<int>(job / kinds.size());
      records[job] = run_one(config, id, kinds[job % kinds.size()]);
    }
  };

  unsigned threads = config.workers > 0
                         ? static_cast<unsigned>(config.workers)
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, jobs));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return records;
}

void write_records_csv(std::span<const ExperimentRecord> records,
                       std::ostream& out) {
  out << kRecordsHeader << '\n';
  for (const auto& r : records) {
    out << r.instance_id << ',' << r.seed << ',' << to_string(r.encoding)
        << ',' << r.p << ',' << format_double(r.optimal_cost) << ','
        << format_double(r.found_cost) << ','
        << format_double(r.relative_error) << ',' << r.eval_count << ','
        << format_double(r.wall_time_ms) << '\n';
  }
}

void write_records_csv(std::span<const ExperimentRecord> records,
                       const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write records file " + path.string());
  write_records_csv(records, out);
  if (!out) throw IoError("failed writing records file " + path.string());
}

std::vector<ExperimentRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRecordsHeader) {
    throw ValidationError("records file must start with the header: " +
                          std::string(kRecordsHeader));
  }
  std::vector<ExperimentRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string_view> f;
    std::string_view rest(line);
    for (auto comma = rest.find(','); comma != std::string_view::npos;
         comma = rest.find(',')) {
      f.push_back(rest.substr(0, comma));
      rest.remove_prefix(comma + 1);
    }
    f.push_back(rest);
    if (f.size() != 9) throw ValidationError("records row needs 9 fields");
    ExperimentRecord r;
    r.instance_id = parse_int<int>(f[0]);
    r.seed = parse_int<std::uint64_t>(f[1]);
    r.encoding = parse_encoding_kind(f[2]);
    r.p = parse_int<int>(f[3]);
    r.optimal_cost = parse_double(f[4]);
    r.found_cost = parse_double(f[5]);
    r.relative_error = parse_double(f[6]);
    r.eval_count = parse_int<int>(f[7]);
    r.wall_time_ms = parse_double(f[8]);
    r.ok = !std::isnan(r.found_cost) && !std::isnan(r.relative_error);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<ExperimentRecord> read_records_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open records file " + path.string());
  return read_records_csv(in);
}

// ---------------------------------------------------------------------------
// Summaries

Histogram make_histogram(std::span<const double> values, double bin_width) {
  if (values.empty()) throw ValidationError("histogram of no values");
  if (!(bin_width > 0.0)) throw ValidationError("bin width must be positive");
  Histogram h;
  h.count = static_cast<long>(values.size());
  double max = 0.0;
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError("histogram values must be finite and >= 0");
    }
    max = std::max(max, v);
  }
  // Values that are exact multiples of the width up to rounding (0.3 / 0.05)
  // belong to the bin they open.
  auto bin_of = [bin_width](double v) {
    return static_cast<std::size_t>(std::floor(v / bin_width + 1e-9));
  };
  const std::size_t bins = bin_of(max) + 1;
  h.counts.assign(bins, 0);
  for (std::size_t i = 0; i <= bins; ++i) h.bin_edges.push_back(i * bin_width);
  for (double v : values) {
    ++h.counts[bin_of(v)];
  }
  h.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  h.median = median_of({values.begin(), values.end()});
  return h;
}

const EncodingSummary& Summary::at(EncodingKind kind) const {
  for (const auto& e : encodings) {
    if (e.encoding == kind) return e;
  }
  throw ValidationError("summary has no records for encoding " +
                        std::string(to_string(kind)));
}

Summary summarize(std::span<const ExperimentRecord> records,
                  double error_bin_width, double eval_bin_width) {
  Summary s;
  for (EncodingKind kind : {EncodingKind::kEdge, EncodingKind::kOneHot}) {
    std::vector<double> errors, evals;
    EncodingSummary e;
    e.encoding = kind;
    long optimal = 0;
    for (const auto& r : records) {
      if (r.encoding != kind) continue;
      ++e.runs;
      if (!r.ok) {
        ++e.errors;
        continue;
      }
      errors.push_back(r.relative_error);
      evals.push_back(r.eval_count);
      if (r.relative_error == 0.0) ++optimal;
    }
    if (e.runs == 0) continue;
    if (!errors.empty()) {
      e.relative_error = make_histogram(errors, error_bin_width);
      e.eval_count = make_histogram(evals, eval_bin_width);
      e.fraction_optimal =
          static_cast<double>(optimal) / static_cast<double>(errors.size());
    }
    s.encodings.push_back(std::move(e));
  }
  if (s.encodings.empty()) throw ValidationError("no records to summarise");
  return s;
}

namespace {

nlohmann::json histogram_json(const Histogram& h) {
  return nlohmann::json{{"count", h.count},
                        {"mean", h.mean},
                        {"median", h.median},
                        {"bin_edges", h.bin_edges},
                        {"counts", h.counts}};
}

}  // namespace

nlohmann::json summary_to_json(const Summary& summary) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& e : summary.encodings) {
    doc[std::string(to_string(e.encoding))] = {
        {"runs", e.runs},
        {"errors", e.errors},
        {"fraction_optimal", e.fraction_optimal},
        {"relative_error", histogram_json(e.relative_error)},
        {"eval_count", histogram_json(e.eval_count)},
    };
  }
  return doc;
}

void write_histograms_csv(const Summary& summary, std::ostream& out) {
  out << "encoding,metric,bin_lo,bin_hi,count\n";
  for (const auto& e : summary.encodings) {
    const std::pair<const char*, const Histogram*> metrics[] = {
        {"relative_error", &e.relative_error}, {"eval_count", &e.eval_count}};
    for (const auto& [name, h] : metrics) {
      for (std::size_t i = 0; i < h->counts.size(); ++i) {
        out << to_string(e.encoding) << ',' << name << ','
            << format_double(h->bin_edges[i]) << ','
            << format_double(h->bin_edges[i + 1]) << ',' << h->counts[i]
            << '\n';
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Verify

namespace {

constexpr int kVerifyMaxStateQubits = 20;
constexpr double kIdentityTol = 1e-12;
constexpr double kSimTol = 1e-10;
constexpr double kCrossTol = 1e-9;
constexpr double kExactTol = 1e-9;

CheckResult skipped(std::string name, std::string why) {
  CheckResult c;
  c.name = std::move(name);
  c.passed = true;
  c.skipped = true;
  c.detail = std::move(why);
  return c;
}

CheckResult check_feasible_count(const Encoding& enc,
                                 const NormalizedInstance& inst) {
  CheckResult c;
  c.name = std::string("feasible_count_") + std::string(to_string(enc.kind()));
  long expected = 1;
  for (int k = 2; k < enc.vertex_count(); ++k) expected *= k;
  const FeasibleSet set = enumerate_feasible(enc, inst);
  c.passed = static_cast<long>(set.size()) == expected;
  c.residual = std::abs(static_cast<double>(set.size()) - expected);
  c.detail = "|F| = " + std::to_string(set.size()) + ", expected " +
             std::to_string(expected);
  if (enc.qubit_count() <= kVerifyMaxStateQubits) {
    std::vector<BasisIndex> built;
    for (const auto& s : set.states) built.push_back(s.index);
    const bool same = built == scan_feasible(enc);
    c.passed = c.passed && same;
    c.detail += same ? "; exhaustive scan agrees" : "; exhaustive scan DISAGREES";
  } else {
    c.detail += "; by construction";
  }
  return c;
}

}  // namespace

CheckResult check_phase_identity(const EdgeEncoding& enc,
                                 const NormalizedInstance& inst,
                                 const PhaseTable& table) {
  CheckResult c;
  c.name = "phase_identity";
  for (const auto& order : fixed_start_orders(enc.vertex_count())) {
    const double phase = phase_sum(table, enc.encode(order));
    const double cost = tour_cost(inst.normalized(), order);
    c.residual = std::max(c.residual, std::abs(phase - cost));
  }
  c.passed = c.residual <= kIdentityTol;
  c.detail = "max |phase sum - normalized tour cost| over feasible states";
  return c;
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

VerifyReport verify_instance(const TspInstance& raw, std::uint64_t angle_seed) {
  const int n = raw.size();
  if (n > kVerifyMaxVertices) {
    throw SizeError("verify supports at most " +
                    std::to_string(kVerifyMaxVertices) + " vertices");
  }
  VerifyReport report;
  report.n = n;
  const NormalizedInstance inst = normalize(raw);
  const EdgeEncoding edge(n);
  const OneHotEncoding onehot(n);

  report.checks.push_back(check_feasible_count(edge, inst));
  report.checks.push_back(check_feasible_count(onehot, inst));

  const PhaseTable table = phase_table(edge, inst);
  report.checks.push_back(check_phase_identity(edge, inst, table));

  {
    CheckResult c;
    c.name = "phase_affine_consistency";
    const BasisIndex dim = BasisIndex{1} << edge.qubit_count();
    for (BasisIndex a = 0; a < dim; ++a) {
      c.residual = std::max(c.residual,
                            std::abs(phase_sum(table, a) -
                                     edge_affine_cost(edge, inst.normalized(), a)));
    }
    c.passed = c.residual <= kIdentityTol;
    c.detail = "max |phase sum - affine edge cost| over all bitstrings";
    report.checks.push_back(std::move(c));
  }

  {
    CheckResult c;
    c.name = "exact_agreement";
    const double hk = held_karp(raw).cost;
    const double bf = brute_force(raw).cost;
    c.residual = std::abs(hk - bf);
    c.passed = c.residual <= kExactTol;
    c.detail = "held_karp " + format_double(hk) + " vs brute_force " +
               format_double(bf);
    report.checks.push_back(std::move(c));
  }

  // Statevector checks, both encodings.
  Rng rng(angle_seed);
  std::vector<double> angles(6);
  for (double& a : angles) a = rng.uniform(0.0, 2.0 * 3.141592653589793);
  double mean_cost = 0.0;
  const auto orders = fixed_start_orders(n);
  for (const auto& order : orders) mean_cost += tour_cost(inst.normalized(), order);
  mean_cost /= static_cast<double>(orders.size());

  std::vector<double> expectations;
  for (EncodingKind kind : {EncodingKind::kEdge, EncodingKind::kOneHot}) {
    const std::string suffix = "_" + std::string(to_string(kind));
    const int q = kind == EncodingKind::kEdge ? edge.qubit_count()
                                              : onehot.qubit_count();
    if (q > kVerifyMaxStateQubits) {
      const std::string why =
          "skipped: " + std::to_string(q) + " qubits exceeds verify limit";
      report.checks.push_back(skipped("zero_angle_expectation" + suffix, why));
      report.checks.push_back(skipped("subspace_preservation" + suffix, why));
      continue;
    }
    const QaoaProblem problem(inst, kind);
    {
      CheckResult c;
      c.name = "zero_angle_expectation" + suffix;
      const std::vector<double> zeros(2, 0.0);
      c.residual = std::abs(problem.expectation(zeros) - mean_cost);
      c.passed = c.residual <= kSimTol;
      c.detail = "|E(0) - mean tour cost|";
      report.checks.push_back(std::move(c));
    }
    {
      CheckResult c;
      c.name = "subspace_preservation" + suffix;
      const StateVector state = problem.evolve(angles);
      const Distribution d = measure_distribution(state, problem.feasible());
      const double drift = std::abs(state.norm_squared() - 1.0);
      c.residual = std::max(d.infeasible_mass, drift);
      c.passed = c.residual <= kSimTol;
      c.detail = "p=3 random angles: infeasible mass " +
                 format_double(d.infeasible_mass) + ", norm drift " +
                 format_double(drift);
      report.checks.push_back(std::move(c));
      expectations.push_back(problem.expectation(state));
    }
  }
  if (expectations.size() == 2) {
    CheckResult c;
    c.name = "encoding_equivalence";
    c.residual = std::abs(expectations[0] - expectations[1]);
    c.passed = c.residual <= kCrossTol;
    c.detail = "|E_edge - E_onehot| at the same random angles";
    report.checks.push_back(std::move(c));
  } else {
    report.checks.push_back(
        skipped("encoding_equivalence", "skipped: needs both statevectors"));
  }
  return report;
}

nlohmann::json verify_to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"passed", c.passed},
                      {"skipped", c.skipped},
                      {"residual", c.residual},
                      {"detail", c.detail}});
  }
  return {{"n", report.n}, {"all_passed", report.all_passed()},
          {"checks", checks}};
}

}  // namespace tspqaoa
