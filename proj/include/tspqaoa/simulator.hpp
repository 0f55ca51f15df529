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

#include <complex>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "tspqaoa/encoding.hpp"

namespace tspqaoa {

using Amplitude = std::complex<double>;

/// Dense amplitudes over 2^q basis states. Owned by one QAOA run.
class StateVector {
 public:
  /// The all-zeros basis state. Throws SizeError above kMaxDenseQubits.
  explicit StateVector(int qubits);

  int qubit_count() const { return qubits_; }
  std::size_t dimension() const { return amps_.size(); }

  std::span<Amplitude> amplitudes() { return amps_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  Amplitude& operator[](BasisIndex a) { return amps_[a]; }
  const Amplitude& operator[](BasisIndex a) const { return amps_[a]; }

  double norm_squared() const;

 private:
  int qubits_;
  std::vector<Amplitude> amps_;
};

/// Explicit diagonal operator amp(a) <- e^{-i*gamma*angle(a)} * amp(a).
class DiagonalOperator {
 public:
  DiagonalOperator(int qubits, std::vector<double> angles);

  /// Angles equal to the feasible states' normalized costs, 0 elsewhere.
  static DiagonalOperator from_costs(const FeasibleSet& feasible);

  std::span<const double> angles() const { return angles_; }
  void apply(StateVector& state, double gamma) const;

 private:
  int qubits_;
  std::vector<double> angles_;
};

/// How the 1-hot separator turns a tour cost f into a phase.
///   kPlain     : f
///   kQuboAffine : 4f - (n-2) * sum of all weights (the QUBO-derived form)
/// The edge encoding always uses its own phase table and ignores this.
enum class CostForm { kPlain, kQuboAffine };

std::string_view to_string(CostForm form);
/// Accepts "plain" and "eq1".
CostForm parse_cost_form(std::string_view name);

/// Uniform superposition over the feasible states.
StateVector prepare_feasible_superposition(const FeasibleSet& feasible);

/// Single-qubit diagonal gate diag(e^{-i*gamma*if_zero}, e^{-i*gamma*if_one}).
void apply_phase_gate(StateVector& state, int qubit, PhaseBranches phases,
                      double gamma);

/**
 * Phase separator e^{-i*gamma*C} for one (encoding, instance) pair.
 *
 * Edge encoding: a tensor product of single-qubit phase gates from the phase
 * table, applied gate by gate; O(q * 2^q) and no 2^q cost table.
 * 1-hot encoding: a phase on each feasible state from its tour cost; the
 * infeasible states are left untouched.
 */
class PhaseSeparator {
 public:
  PhaseSeparator(const Encoding& enc, const NormalizedInstance& inst,
                 CostForm form = CostForm::kPlain);

  int qubit_count() const { return qubits_; }
  void apply(StateVector& state, double gamma) const;

  /// Phase angle the separator assigns to basis state `a` at gamma = 1.
  double angle(BasisIndex a) const;

 private:
  using FeasiblePhases = std::vector<std::pair<BasisIndex, double>>;

  int qubits_;
  std::variant<PhaseTable, FeasiblePhases> phases_;
};

/// Convenience wrapper building a PhaseSeparator and applying it once.
void apply_phase_separator(StateVector& state, const Encoding& enc,
                           const NormalizedInstance& inst, double gamma,
                           CostForm form = CostForm::kPlain);

/// Grover mixer e^{-i*beta*|F><F|} = I + (e^{-i*beta} - 1)|F><F|, applied in
/// O(|F|). States orthogonal to |F> are unchanged.
void apply_grover_mixer(StateVector& state, const FeasibleSet& feasible,
                        double beta);

struct Distribution {
  /// (basis index, probability) for every feasible state, in index order.
  std::vector<std::pair<BasisIndex, double>> feasible;
  double infeasible_mass = 0.0;
};

Distribution measure_distribution(const StateVector& state,
                                  const FeasibleSet& feasible);

}  // namespace tspqaoa
