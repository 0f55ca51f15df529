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
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tspqaoa/encoding.hpp"
#include "tspqaoa/instance.hpp"
#include "tspqaoa/optimizer.hpp"
#include "tspqaoa/simulator.hpp"

namespace tspqaoa {

// Angle vectors are laid out as [gamma_1, ..., gamma_p, beta_1, ..., beta_p].

struct QaoaConfig {
  int p = 2;
  EncodingKind encoding = EncodingKind::kEdge;
  OptimizerKind optimizer = OptimizerKind::kCobyla;
  int max_evals = 200;
  /// 2p starting angles; when empty they are drawn uniformly from [0, 2pi)
  /// with `seed`.
  std::optional<std::vector<double>> initial_angles;
  std::uint64_t seed = 0;
  CostForm cost_form = CostForm::kPlain;
  double initial_step = 0.5;
  double tolerance = 1e-4;
};

/// Throws ValidationError unless p >= 1, max_evals >= 2p+1 and any given
/// initial angles have length 2p.
void validate(const QaoaConfig& config);

struct QaoaResult {
  std::vector<double> best_angles;
  double expectation = 0.0;  // normalized cost units
  /// Objective evaluations consumed (the reported "iteration" count).
  int eval_count = 0;
  OptimizerStatus status = OptimizerStatus::kConverged;
  /// Feasible index -> probability at best_angles, in index order.
  std::vector<std::pair<BasisIndex, double>> final_distribution;
  double infeasible_mass = 0.0;
  Tour found_tour;  // raw units
  double found_cost = 0.0;
  double optimal_cost = 0.0;
  double relative_error = 0.0;
};

/// An instance bound to one encoding: feasible set, separator, and mixer.
class QaoaProblem {
 public:
  QaoaProblem(const NormalizedInstance& inst, EncodingKind kind,
              CostForm form = CostForm::kPlain);

  const NormalizedInstance& instance() const { return inst_; }
  const Encoding& encoding() const { return *encoding_; }
  const FeasibleSet& feasible() const { return feasible_; }
  const PhaseSeparator& separator() const { return separator_; }

  /// Uniform feasible state followed by p (separator, mixer) layers.
  StateVector evolve(std::span<const double> angles) const;

  /// Exact sum over feasible a of |amp(a)|^2 * basis_cost(a).
  double expectation(const StateVector& state) const;
  double expectation(std::span<const double> angles) const {
    return expectation(evolve(angles));
  }

 private:
  NormalizedInstance inst_;
  std::unique_ptr<Encoding> encoding_;
  FeasibleSet feasible_;
  PhaseSeparator separator_;
};

double evaluate_expectation(const NormalizedInstance& inst, EncodingKind kind,
                            std::span<const double> angles,
                            CostForm form = CostForm::kPlain);

std::vector<double> random_initial_angles(int p, std::uint64_t seed);

/**
 * Minimises the expectation over the 2p angles with the configured
 * derivative-free optimizer, then reads the most probable feasible state of
 * the final distribution (ties to the lower index) as the answer. The
 * relative error is measured against held_karp.
 */
QaoaResult optimize(const NormalizedInstance& inst, const QaoaConfig& config);

/// Multinomial sampling of `shots` outcomes from a feasible distribution;
/// returns the most frequent outcome's tour (ties to the lower index).
Tour sample_solution(std::span<const std::pair<BasisIndex, double>> distribution,
                     const FeasibleSet& feasible, int shots,
                     std::uint64_t seed);

}  // namespace tspqaoa
