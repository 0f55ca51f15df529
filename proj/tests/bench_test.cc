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
#include <cmath>
#include <numeric>
#include <sstream>

#include "gtest/gtest.h"
#include "tspqaoa/error.hpp"

namespace tspqaoa {
namespace {

ExperimentConfig Small(int count) {
  ExperimentConfig c;
  c.count = count;
  c.workers = 3;
  return c;
}

std::string Csv(std::span<const ExperimentRecord> records) {
  std::ostringstream out;
  write_records_csv(records, out);
  return out.str();
}

TEST(ConfigTest, ParseHelpers) {
  EXPECT_EQ(parse_weight_range("1..20"), (std::pair<int, int>{1, 20}));
  EXPECT_EQ(parse_weight_range("5..5"), (std::pair<int, int>{5, 5}));
  EXPECT_THROW(parse_weight_range("1-20"), ValidationError);
  EXPECT_THROW(parse_weight_range("0..3"), ValidationError);
  EXPECT_THROW(parse_weight_range("9..3"), ValidationError);
  EXPECT_EQ(parse_encoding_list("both").size(), 2u);
  EXPECT_EQ(parse_encoding_list("onehot"),
            std::vector<EncodingKind>{EncodingKind::kOneHot});
  EXPECT_THROW(parse_encoding_list("all"), ValidationError);
}

TEST(ConfigTest, JsonRoundTripAndPartialOverride) {
  ExperimentConfig c;
  c.n = 5;
  c.count = 17;
  c.encodings = {EncodingKind::kEdge};
  c.optimizer = OptimizerKind::kNelderMead;
  c.weight_lo = 2;
  c.weight_hi = 9;
  c.cost_form = CostForm::kQuboAffine;
  const ExperimentConfig back = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));

  const ExperimentConfig partial =
      config_from_json(nlohmann::json{{"p", 3}, {"seed", 7}});
  EXPECT_EQ(partial.p, 3);
  EXPECT_EQ(partial.seed, 7u);
  EXPECT_EQ(partial.count, ExperimentConfig{}.count);

  EXPECT_THROW(config_from_json(nlohmann::json{{"p", "two"}}), ValidationError);
  EXPECT_THROW(config_from_json(nlohmann::json::array()), ValidationError);
}

TEST(ConfigTest, Validation) {
  ExperimentConfig c;
  EXPECT_NO_THROW(validate(c));
  c.count = 0;
  EXPECT_THROW(validate(c), ValidationError);
  c = {};
  c.n = 2;
  EXPECT_THROW(validate(c), ValidationError);
  c = {};
  c.max_evals = 4;
  EXPECT_THROW(validate(c), ValidationError);
  c = {};
  c.encodings.clear();
  EXPECT_THROW(validate(c), ValidationError);
}

TEST(ExperimentTest, RecordCountAndOrder) {
  const auto records = run_experiment(Small(12));
  ASSERT_EQ(records.size(), 24u);
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].instance_id, static_cast<int>(i / 2));
    EXPECT_EQ(records[i].encoding,
              i % 2 ? EncodingKind::kOneHot : EncodingKind::kEdge);
    EXPECT_TRUE(records[i].ok);
    EXPECT_GE(records[i].relative_error, 0.0);
    EXPECT_LE(records[i].optimal_cost, records[i].found_cost);
    EXPECT_EQ(records[i].seed, instance_seed(20240101, records[i].instance_id));
  }
}

TEST(ExperimentTest, ByteIdenticalAcrossRunsAndWorkerCounts) {
  ExperimentConfig c = Small(8);
  const std::string first = Csv(run_experiment(c));
  EXPECT_EQ(first, Csv(run_experiment(c)));
  c.workers = 1;
  EXPECT_EQ(first, Csv(run_experiment(c)));
}

TEST(ExperimentTest, SmallestCase) {
  ExperimentConfig c = Small(3);
  c.n = 3;
  for (const auto& r : run_experiment(c)) {
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.relative_error, 0.0);  // p=2 on two tours
  }
}

TEST(ExperimentTest, FailuresBecomeErrorRows) {
  ExperimentConfig c = Small(2);
  c.n = 7;  // beyond the dense statevector limit for both encodings
  const auto records = run_experiment(c);
  ASSERT_EQ(records.size(), 4u);
  for (const auto& r : records) {
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.error.empty());
    EXPECT_TRUE(std::isnan(r.found_cost));
  }
  std::istringstream in(Csv(records));
  const auto back = read_records_csv(in);
  ASSERT_EQ(back.size(), 4u);
  EXPECT_FALSE(back[0].ok);
  const Summary s = summarize(records);
  EXPECT_EQ(s.at(EncodingKind::kEdge).errors, 2);
}

TEST(RecordsCsvTest, RoundTrip) {
  const auto records = run_experiment(Small(5));
  const std::string text = Csv(records);
  EXPECT_EQ(text.substr(0, text.find('\n')), kRecordsHeader);
  std::istringstream in(text);
  const auto back = read_records_csv(in);
  ASSERT_EQ(back.size(), records.size());
  EXPECT_EQ(Csv(back), text);
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].relative_error, records[i].relative_error);
    EXPECT_EQ(back[i].seed, records[i].seed);
  }
}

TEST(RecordsCsvTest, RejectsBadInput) {
  std::istringstream no_header("1,2,3\n");
  EXPECT_THROW(read_records_csv(no_header), ValidationError);
  std::istringstream short_row(std::string(kRecordsHeader) + "\n1,2,edge\n");
  EXPECT_THROW(read_records_csv(short_row), ValidationError);
  EXPECT_THROW(read_records_csv(std::filesystem::path("/nonexistent/r.csv")),
               IoError);
}

TEST(HistogramTest, Bins) {
  const std::vector<double> zeros(7, 0.0);
  const Histogram z = make_histogram(zeros, 0.05);
  EXPECT_EQ(z.counts, std::vector<long>{7});
  EXPECT_EQ(z.mean, 0.0);
  EXPECT_EQ(z.median, 0.0);

  const std::vector<double> v{0.0, 0.04, 0.05, 0.12, 0.3};
  const Histogram h = make_histogram(v, 0.05);
  EXPECT_EQ(h.counts, (std::vector<long>{2, 1, 1, 0, 0, 0, 1}));
  EXPECT_EQ(h.bin_edges.size(), h.counts.size() + 1);
  EXPECT_TRUE(std::is_sorted(h.bin_edges.begin(), h.bin_edges.end()));
  EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), 0L), 5);
  EXPECT_DOUBLE_EQ(h.median, 0.05);
  EXPECT_DOUBLE_EQ(h.mean, 0.51 / 5);

  EXPECT_THROW(make_histogram(std::vector<double>{}, 1.0), ValidationError);
  EXPECT_THROW(make_histogram(std::vector<double>{-1.0}, 1.0), ValidationError);
  EXPECT_THROW(make_histogram(v, 0.0), ValidationError);
}

TEST(SummaryTest, MeansMatchRecords) {
  const auto records = run_experiment(Small(20));
  std::istringstream in(Csv(records));
  const auto reread = read_records_csv(in);
  const Summary s = summarize(reread);
  ASSERT_EQ(s.encodings.size(), 2u);
  for (const auto& e : s.encodings) {
    double err = 0.0, evals = 0.0;
    long n = 0, optimal = 0;
    for (const auto& r : reread) {
      if (r.encoding != e.encoding) continue;
      err += r.relative_error;
      evals += r.eval_count;
      optimal += r.relative_error == 0.0;
      ++n;
    }
    EXPECT_EQ(e.runs, n);
    EXPECT_EQ(e.relative_error.mean, err / static_cast<double>(n));
    EXPECT_EQ(e.eval_count.mean, evals / static_cast<double>(n));
    EXPECT_EQ(e.fraction_optimal, static_cast<double>(optimal) / static_cast<double>(n));
  }
  const auto doc = summary_to_json(s);
  EXPECT_TRUE(doc.contains("edge"));
  EXPECT_TRUE(doc.contains("onehot"));
  std::ostringstream bins;
  write_histograms_csv(s, bins);
  EXPECT_EQ(bins.str().substr(0, bins.str().find('\n')),
            "encoding,metric,bin_lo,bin_hi,count");
  EXPECT_THROW(summarize(std::vector<ExperimentRecord>{}), ValidationError);
}

TEST(VerifyTest, FourVertexInstancesPass) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const VerifyReport r = verify_instance(generate_random(4, seed, 1, 20), seed);
    EXPECT_TRUE(r.all_passed());
    for (const auto& c : r.checks) {
      EXPECT_FALSE(c.skipped) << c.name;
      EXPECT_LT(c.residual, 1e-10) << c.name;
    }
  }
}

TEST(VerifyTest, FiveVertexFeasibleCounts) {
  const VerifyReport r = verify_instance(generate_random(5, 3, 1, 20), 3);
  EXPECT_TRUE(r.all_passed());
  int counted = 0;
  for (const auto& c : r.checks) {
    if (c.name.rfind("feasible_count_", 0) == 0) {
      EXPECT_NE(c.detail.find("|F| = 24"), std::string::npos);
      ++counted;
    }
  }
  EXPECT_EQ(counted, 2);
  EXPECT_THROW(verify_instance(generate_random(7, 3, 1, 20), 3), SizeError);
}

TEST(VerifyTest, CorruptedPhaseTableFailsIdentity) {
  const NormalizedInstance inst = normalize(generate_random(4, 1, 1, 20));
  const EdgeEncoding enc(4);
  PhaseTable table = phase_table(enc, inst);
  EXPECT_TRUE(check_phase_identity(enc, inst, table).passed);
  table.qubits[2].if_one += 1e-6;
  const CheckResult bad = check_phase_identity(enc, inst, table);
  EXPECT_FALSE(bad.passed);
  EXPECT_NEAR(bad.residual, 1e-6, 1e-9);
}

}  // namespace
}  // namespace tspqaoa
