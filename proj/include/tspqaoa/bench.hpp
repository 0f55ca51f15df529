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

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tspqaoa/encoding.hpp"
#include "tspqaoa/instance.hpp"
#include "tspqaoa/optimizer.hpp"
#include "tspqaoa/simulator.hpp"

namespace tspqaoa {

// ---------------------------------------------------------------------------
// Experiments

struct ExperimentConfig {
  int count = 1000;
  int n = 4;
  int weight_lo = 1;
  int weight_hi = 20;
  std::vector<EncodingKind> encodings{EncodingKind::kEdge,
                                      EncodingKind::kOneHot};
  int p = 2;
  OptimizerKind optimizer = OptimizerKind::kCobyla;
  int max_evals = 200;
  std::uint64_t seed = 20240101;
  /// 0 means one worker per hardware thread.
  int workers = 0;
  std::filesystem::path out = "records.csv";
  CostForm cost_form = CostForm::kPlain;
  /// Wall times make the records file nondeterministic, so they are written
  /// as 0 unless this is set.
  bool record_timing = false;
};

/// Throws ValidationError on out-of-range fields.
void validate(const ExperimentConfig& config);

/// Parses "lo..hi".
std::pair<int, int> parse_weight_range(std::string_view text);
/// "edge", "onehot" or "both".
std::vector<EncodingKind> parse_encoding_list(std::string_view text);

// Config files are JSON objects whose keys mirror the CLI flags:
//   n, count, seed, encoding, p, optimizer, max_evals, weight_range,
//   workers, out, cost_form, timing
// Missing keys keep the values already in `base`.
ExperimentConfig config_from_json(const nlohmann::json& doc,
                                  ExperimentConfig base = {});
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Seed of instance `id`; it drives both the weights and the start angles.
std::uint64_t instance_seed(std::uint64_t master, int id);
TspInstance experiment_instance(const ExperimentConfig& config, int id);

struct ExperimentRecord {
  int instance_id = 0;
  std::uint64_t seed = 0;
  EncodingKind encoding = EncodingKind::kEdge;
  int p = 0;
  double optimal_cost = 0.0;
  double found_cost = 0.0;
  double relative_error = 0.0;
  int eval_count = 0;
  double wall_time_ms = 0.0;
  /// False for runs that threw; their found_cost and relative_error are NaN.
  bool ok = true;
  std::string error;
};

/// One record per (instance, encoding), sorted by (instance_id, encoding).
/// Failed runs are kept as error rows.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config);

inline constexpr std::string_view kRecordsHeader =
    "instance_id,seed,encoding,p,optimal_cost,found_cost,relative_error,"
    "eval_count,wall_time_ms";

void write_records_csv(std::span<const ExperimentRecord> records,
                       std::ostream& out);
void write_records_csv(std::span<const ExperimentRecord> records,
                       const std::filesystem::path& path);
std::vector<ExperimentRecord> read_records_csv(std::istream& in);
std::vector<ExperimentRecord> read_records_csv(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Summaries

/// Fixed-width bins starting at 0: bin i covers [i*w, (i+1)*w). The last bin
/// is the one holding the maximum value.
struct Histogram {
  std::vector<double> bin_edges;  // counts.size() + 1 ascending edges
  std::vector<long> counts;
  double mean = 0.0;
  double median = 0.0;
  long count = 0;
};

/// Throws ValidationError on empty input, negative values, or width <= 0.
Histogram make_histogram(std::span<const double> values, double bin_width);

struct EncodingSummary {
  EncodingKind encoding = EncodingKind::kEdge;
  long runs = 0;
  long errors = 0;
  double fraction_optimal = 0.0;  // relative_error == 0
  Histogram relative_error;
  Histogram eval_count;
};

struct Summary {
  std::vector<EncodingSummary> encodings;

  const EncodingSummary& at(EncodingKind kind) const;
};

inline constexpr double kRelativeErrorBinWidth = 0.05;
inline constexpr double kEvalCountBinWidth = 5.0;

/// Per-encoding histograms and statistics over the successful records.
/// Throws ValidationError when there is nothing to summarise.
Summary summarize(std::span<const ExperimentRecord> records,
                  double error_bin_width = kRelativeErrorBinWidth,
                  double eval_bin_width = kEvalCountBinWidth);

nlohmann::json summary_to_json(const Summary& summary);
/// Columns: encoding,metric,bin_lo,bin_hi,count
void write_histograms_csv(const Summary& summary, std::ostream& out);

// ---------------------------------------------------------------------------
// Single-instance diagnostics

struct CheckResult {
  std::string name;
  bool passed = false;
  bool skipped = false;
  double residual = 0.0;
  std::string detail;
};

struct VerifyReport {
  int n = 0;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

/// Largest |phase_sum - normalized tour cost| over the feasible edge states.
/// Passes at 1e-12.
CheckResult check_phase_identity(const EdgeEncoding& enc,
                                 const NormalizedInstance& inst,
                                 const PhaseTable& table);

inline constexpr int kVerifyMaxVertices = 6;

/// Runs every encoding, simulator and oracle invariant on one instance.
/// `angle_seed` drives the random-angle checks. Throws SizeError above
/// kVerifyMaxVertices; statevector checks are skipped above 20 qubits.
VerifyReport verify_instance(const TspInstance& inst, std::uint64_t angle_seed);

nlohmann::json verify_to_json(const VerifyReport& report);

}  // namespace tspqaoa
