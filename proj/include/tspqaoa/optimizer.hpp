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

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace tspqaoa {

using Objective = std::function<double(std::span<const double>)>;

enum class OptimizerKind { kCobyla, kNelderMead };

std::string_view to_string(OptimizerKind kind);
/// Accepts "cobyla" and "nelder-mead".
OptimizerKind parse_optimizer_kind(std::string_view name);

struct OptimizerOptions {
  /// COBYLA: initial trust radius. Nelder-Mead: initial simplex edge.
  double initial_step = 0.5;
  /// COBYLA: final trust radius. Nelder-Mead: simplex size and value spread.
  double tolerance = 1e-4;
  /// Hard cap on objective evaluations.
  int max_evals = 200;
};

enum class OptimizerStatus { kConverged, kMaxEvals, kRoundingError };

std::string_view to_string(OptimizerStatus status);

struct OptimizeOutcome {
  std::vector<double> x;
  double value = 0.0;
  int evals = 0;
  OptimizerStatus status = OptimizerStatus::kConverged;
};

/**
 * Powell's COBYLA for problems without constraints.
 *
 * Keeps a simplex of n+1 evaluated points, fits the linear interpolant, and
 * steps to the edge of a trust region of radius rho along the model's descent
 * direction. Without constraints the linear trust-region subproblem is solved
 * exactly by that step. rho is halved from initial_step down to tolerance;
 * simplex geometry is repaired whenever it degenerates. Returns the best
 * vertex found.
 */
OptimizeOutcome minimize_cobyla(const Objective& f, std::vector<double> x0,
                                const OptimizerOptions& options);

/// Nelder-Mead simplex search with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
OptimizeOutcome minimize_nelder_mead(const Objective& f,
                                     std::vector<double> x0,
                                     const OptimizerOptions& options);

OptimizeOutcome minimize(OptimizerKind kind, const Objective& f,
                         std::vector<double> x0,
                         const OptimizerOptions& options);

}  // namespace tspqaoa
