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

#include "tspqaoa/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tspqaoa/error.hpp"
#include "tspqaoa/exact.hpp"
#include "tspqaoa/rng.hpp"

namespace tspqaoa {

void validate(const QaoaConfig& config) {
  if (config.p < 1) throw ValidationError("p must be at least 1");
  if (config.max_evals < 2 * config.p + 1) {
    throw ValidationError("max_evals must be at least 2p+1 = " +
                          std::to_string(2 * config.p + 1));
  }
  if (config.initial_angles &&
      config.initial_angles->size() != static_cast<std::size_t>(2 * config.p)) {
    throw ValidationError("initial angles must have length 2p");
  }
}

QaoaProblem::QaoaProblem(const NormalizedInstance& inst, EncodingKind kind,
                         CostForm form)
    : inst_(inst),
      encoding_(make_encoding(kind, inst.size())),
      feasible_(enumerate_feasible(*encoding_, inst_)),
      separator_(*encoding_, inst_, form) {}

StateVector QaoaProblem::evolve(std::span<const double> angles) const {
  if (angles.empty() || angles.size() % 2 != 0) {
    throw ValidationError("angle vector must have even, nonzero length 2p");
  }
  const std::size_t p = angles.size() / 2;
  StateVector state = prepare_feasible_superposition(feasible_);
  for (std::size_t layer = 0; layer < p; ++layer) {
    separator_.apply(state, angles[layer]);
    apply_grover_mixer(state, feasible_, angles[p + layer]);
  }
  return state;
}

double QaoaProblem::expectation(const StateVector& state) const {
  double e = 0.0;
  for (const auto& s : feasible_.states) {
    e += std::norm(state[s.index]) * s.normalized_cost;
  }
  return e;
}

double evaluate_expectation(const NormalizedInstance& inst, EncodingKind kind,
                            std::span<const double> angles, CostForm form) {
  return QaoaProblem(inst, kind, form).expectation(angles);
}

std::vector<double> random_initial_angles(int p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> angles(static_cast<std::size_t>(2 * p));
  for (double& a : angles) a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  return angles;
}

namespace {

const FeasibleState& state_at(const FeasibleSet& feasible, BasisIndex index) {
  auto it = std::lower_bound(
      feasible.states.begin(), feasible.states.end(), index,
      [](const FeasibleState& s, BasisIndex a) { return s.index < a; });
  if (it == feasible.states.end() || it->index != index) {
    throw ValidationError("index " + std::to_string(index) +
                          " is not in the feasible set");
  }
  return *it;
}

double relative_error(double found, double optimal) {
  if (optimal > 0.0) return (found - optimal) / optimal;
  return found == optimal ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

QaoaResult optimize(const NormalizedInstance& inst, const QaoaConfig& config) {
  validate(config);
  const QaoaProblem problem(inst, config.encoding, config.cost_form);

  const Objective objective = [&problem](std::span<const double> angles) {
    return problem.expectation(angles);
  };
  auto start = config.initial_angles.value_or(
      random_initial_angles(config.p, config.seed));
  OptimizerOptions options;
  options.initial_step = config.initial_step;
  options.tolerance = config.tolerance;
  options.max_evals = config.max_evals;
  OptimizeOutcome outcome =
      minimize(config.optimizer, objective, std::move(start), options);

  QaoaResult r;
  r.best_angles = std::move(outcome.x);
  r.eval_count = outcome.evals;
  r.status = outcome.status;
  const StateVector state = problem.evolve(r.best_angles);
  r.expectation = problem.expectation(state);
  Distribution dist = measure_distribution(state, problem.feasible());
  r.final_distribution = std::move(dist.feasible);
  r.infeasible_mass = dist.infeasible_mass;

  auto best = r.final_distribution.begin();
  for (auto it = r.final_distribution.begin(); it != r.final_distribution.end();
       ++it) {
    if (it->second > best->second) best = it;
  }
  r.found_tour = state_at(problem.feasible(), best->first).tour;
  r.found_cost = r.found_tour.cost;
  r.optimal_cost = held_karp(inst.base()).cost;
  r.relative_error = relative_error(r.found_cost, r.optimal_cost);
  return r;
}

Tour sample_solution(std::span<const std::pair<BasisIndex, double>> distribution,
                     const FeasibleSet& feasible, int shots,
                     std::uint64_t seed) {
  if (shots < 1) throw ValidationError("shots must be at least 1");
  if (distribution.empty()) throw ValidationError("empty distribution");
  std::vector<double> cumulative;
  double total = 0.0;
  for (const auto& [index, prob] : distribution) {
    total += prob;
    cumulative.push_back(total);
  }
  std::vector<int> counts(distribution.size(), 0);
  Rng rng(seed);
  for (int shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform01() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    ++counts[static_cast<std::size_t>(it - cumulative.begin())];
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best] ||
        (counts[i] == counts[best] &&
         distribution[i].first < distribution[best].first)) {
      best = i;
    }
  }
  return state_at(feasible, distribution[best].first).tour;
}

}  // namespace tspqaoa
