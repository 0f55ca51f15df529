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

// Command-line front end: generate, solve, experiment, report, verify.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tspqaoa/bench.hpp"
#include "tspqaoa/error.hpp"
#include "tspqaoa/exact.hpp"
#include "tspqaoa/qaoa.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace tspqaoa;

namespace {

struct Flags {
  int n = 4;
  int count = 1;
  std::uint64_t seed = 20240101;
  std::string encoding = "both";
  int p = 2;
  std::string optimizer = "cobyla";
  int max_evals = 200;
  std::string weight_range = "1..20";
  int workers = 0;
  std::string out;
  std::string cost_form = "plain";
  bool timing = false;
  std::string config;
  std::string instance;
  std::string records;
  int id = 0;
  int shots = 0;
};

bool given(const CLI::App* app, const std::string& name) {
  return app->count(name) > 0;
}

// Instance from --instance, otherwise generated from (--n, --seed, --id).
TspInstance load_or_generate(const Flags& f) {
  if (!f.instance.empty()) return read_instance(f.instance);
  ExperimentConfig c;
  c.n = f.n;
  c.seed = f.seed;
  std::tie(c.weight_lo, c.weight_hi) = parse_weight_range(f.weight_range);
  return experiment_instance(c, f.id);
}

json tour_json(const Tour& t) {
  return {{"order", t.order}, {"cost", t.cost}};
}

int cmd_generate(const Flags& f) {
  ExperimentConfig c;
  c.n = f.n;
  c.count = f.count;
  c.seed = f.seed;
  std::tie(c.weight_lo, c.weight_hi) = parse_weight_range(f.weight_range);
  if (c.n < 3) throw ValidationError("n must be at least 3");
  if (c.count < 1) throw ValidationError("count must be positive");
  if (f.out.empty()) {
    if (c.count != 1) throw ValidationError("--out is required when count > 1");
    std::cout << instance_to_json(experiment_instance(c, f.id)).dump(2) << '\n';
    return 0;
  }
  const fs::path dir = f.out;
  fs::create_directories(dir);
  for (int id = 0; id < c.count; ++id) {
    std::ostringstream name;
    name << "instance_" << std::setw(4) << std::setfill('0') << id << ".json";
    write_instance(experiment_instance(c, id), dir / name.str());
  }
  std::cerr << "wrote " << c.count << " instances to " << dir.string() << '\n';
  return 0;
}

int cmd_solve(const Flags& f) {
  const TspInstance inst = load_or_generate(f);
  QaoaConfig qc;
  qc.p = f.p;
  if (f.encoding == "both") {
    throw ValidationError("solve takes a single encoding: edge or onehot");
  }
  qc.encoding = parse_encoding_kind(f.encoding);
  qc.optimizer = parse_optimizer_kind(f.optimizer);
  qc.max_evals = f.max_evals;
  qc.cost_form = parse_cost_form(f.cost_form);
  // Start angles follow the experiment's per-instance seed, so a generated
  // instance file solved with the same --seed and --id repeats its record.
  qc.seed = instance_seed(f.seed, f.id);

  const NormalizedInstance norm = normalize(inst);
  const QaoaResult r = optimize(norm, qc);
  json dist = json::array();
  const QaoaProblem problem(norm, qc.encoding, qc.cost_form);
  for (const auto& [index, prob] : r.final_distribution) {
    const auto order = problem.encoding().decode(index);
    dist.push_back({{"index", index}, {"order", *order}, {"probability", prob}});
  }
  json out = {
      {"n", inst.size()},
      {"encoding", f.encoding},
      {"p", qc.p},
      {"optimizer", f.optimizer},
      {"best_angles", r.best_angles},
      {"expectation", r.expectation},
      {"eval_count", r.eval_count},
      {"status", std::string(to_string(r.status))},
      {"found_tour", tour_json(r.found_tour)},
      {"found_cost", r.found_cost},
      {"optimal_cost", r.optimal_cost},
      {"relative_error", r.relative_error},
      {"infeasible_mass", r.infeasible_mass},
      {"final_distribution", dist},
  };
  if (f.shots > 0) {
    out["sampled_tour"] =
        tour_json(sample_solution(r.final_distribution, problem.feasible(),
                                  f.shots, qc.seed));
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

ExperimentConfig experiment_config(const CLI::App* app, const Flags& f) {
  ExperimentConfig c;
  if (!f.config.empty()) c = load_experiment_config(f.config);
  if (given(app, "--n")) c.n = f.n;
  if (given(app, "--count")) c.count = f.count;
  if (given(app, "--seed")) c.seed = f.seed;
  if (given(app, "--encoding")) c.encodings = parse_encoding_list(f.encoding);
  if (given(app, "--p")) c.p = f.p;
  if (given(app, "--optimizer")) c.optimizer = parse_optimizer_kind(f.optimizer);
  if (given(app, "--max-evals")) c.max_evals = f.max_evals;
  if (given(app, "--weight-range")) {
    std::tie(c.weight_lo, c.weight_hi) = parse_weight_range(f.weight_range);
  }
  if (given(app, "--workers")) c.workers = f.workers;
  if (given(app, "--out")) c.out = f.out;
  if (given(app, "--cost-form")) c.cost_form = parse_cost_form(f.cost_form);
  if (given(app, "--timing")) c.record_timing = f.timing;
  validate(c);
  return c;
}

int cmd_experiment(const CLI::App* app, const Flags& f) {
  const ExperimentConfig c = experiment_config(app, f);
  const auto records = run_experiment(c);
  write_records_csv(records, c.out);
  long failed = 0;
  for (const auto& r : records) {
    if (!r.ok) {
      ++failed;
      std::cerr << "instance " << r.instance_id << " ("
                << to_string(r.encoding) << "): " << r.error << '\n';
    }
  }
  std::cerr << "wrote " << records.size() << " records to " << c.out.string()
            << (failed ? " (" + std::to_string(failed) + " failed)" : "")
            << '\n';
  std::cout << summary_to_json(summarize(records)).dump(2) << '\n';
  return failed ? 1 : 0;
}

int cmd_report(const Flags& f) {
  if (f.records.empty()) throw ValidationError("--records is required");
  const auto records = read_records_csv(fs::path(f.records));
  const Summary s = summarize(records);
  if (!f.out.empty()) {
    std::ofstream out(f.out, std::ios::binary);
    if (!out) throw IoError("cannot write " + f.out);
    write_histograms_csv(s, out);
  }
  std::cout << summary_to_json(s).dump(2) << '\n';
  return 0;
}

int cmd_verify(const Flags& f) {
  const TspInstance inst = load_or_generate(f);
  const VerifyReport report = verify_instance(inst, instance_seed(f.seed, f.id));
  std::cout << verify_to_json(report).dump(2) << '\n';
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QAOA for the travelling salesperson problem"};
  app.require_subcommand(1);
  Flags f;

  auto add_instance_flags = [&f](CLI::App* sub) {
    sub->add_option("--n", f.n, "Vertex count");
    sub->add_option("--seed", f.seed, "Master seed");
    sub->add_option("--weight-range", f.weight_range, "Integer weights lo..hi");
    sub->add_option("--id", f.id, "Instance id under the master seed");
  };
  auto add_run_flags = [&f](CLI::App* sub) {
    sub->add_option("--p", f.p, "QAOA layers");
    sub->add_option("--optimizer", f.optimizer, "cobyla or nelder-mead");
    sub->add_option("--max-evals", f.max_evals, "Objective evaluation budget");
    sub->add_option("--cost-form", f.cost_form,
                    "Conventional separator cost: plain or eq1");
  };

  auto* gen = app.add_subcommand("generate", "Write random instance files");
  add_instance_flags(gen);
  gen->add_option("--count", f.count, "Number of instances");
  gen->add_option("--out", f.out, "Output directory (stdout if omitted)");

  auto* solve = app.add_subcommand("solve", "Run QAOA on one instance");
  add_instance_flags(solve);
  add_run_flags(solve);
  solve->add_option("--instance", f.instance, "Instance JSON file");
  solve->add_option("--encoding", f.encoding, "edge or onehot")
      ->default_val("edge");
  solve->add_option("--shots", f.shots, "Also sample this many shots");

  auto* exp = app.add_subcommand("experiment", "Batch runs to a records CSV");
  add_instance_flags(exp);
  add_run_flags(exp);
  exp->add_option("--config", f.config, "JSON config; flags override it");
  exp->add_option("--count", f.count, "Number of instances");
  exp->add_option("--encoding", f.encoding, "edge, onehot or both");
  exp->add_option("--workers", f.workers, "Worker threads (0 = all cores)");
  exp->add_option("--out", f.out, "Records CSV path");
  exp->add_flag("--timing", f.timing, "Record wall times");

  auto* report = app.add_subcommand("report", "Summarise a records CSV");
  report->add_option("--records", f.records, "Records CSV")->required();
  report->add_option("--out", f.out, "Histogram bins CSV");

  auto* verify = app.add_subcommand("verify", "Run invariant checks");
  add_instance_flags(verify);
  verify->add_option("--instance", f.instance, "Instance JSON file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_generate(f);
    if (*solve) return cmd_solve(f);
    if (*exp) return cmd_experiment(exp, f);
    if (*report) return cmd_report(f);
    if (*verify) return cmd_verify(f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
