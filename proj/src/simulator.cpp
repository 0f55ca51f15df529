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

#include "tspqaoa/simulator.hpp"

#include <cmath>
#include <string>

#include "tspqaoa/error.hpp"

namespace tspqaoa {

namespace {

void check_dimension(const StateVector& state, int qubits) {
  if (state.qubit_count() != qubits) {
    throw ValidationError("state has " + std::to_string(state.qubit_count()) +
                          " qubits, operator expects " +
                          std::to_string(qubits));
  }
}

void check_nonempty(const FeasibleSet& feasible) {
  if (feasible.states.empty()) throw ValidationError("feasible set is empty");
}

Amplitude phase(double angle) { return std::polar(1.0, angle); }

}  // namespace

StateVector::StateVector(int qubits) : qubits_(qubits) {
  if (qubits < 0 || qubits > kMaxDenseQubits) {
    throw SizeError("statevector limited to " +
                    std::to_string(kMaxDenseQubits) + " qubits, requested " +
                    std::to_string(qubits));
  }
  amps_.assign(std::size_t{1} << qubits, Amplitude{0.0, 0.0});
  amps_[0] = 1.0;
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amps_) s += std::norm(a);
  return s;
}

DiagonalOperator::DiagonalOperator(int qubits, std::vector<double> angles)
    : qubits_(qubits), angles_(std::move(angles)) {
  if (qubits < 0 || qubits > kMaxDenseQubits) {
    throw SizeError("diagonal operator exceeds qubit limit");
  }
  if (angles_.size() != (std::size_t{1} << qubits)) {
    throw ValidationError("diagonal operator needs 2^q angles");
  }
}

DiagonalOperator DiagonalOperator::from_costs(const FeasibleSet& feasible) {
  std::vector<double> angles(std::size_t{1} << feasible.qubit_count, 0.0);
  for (const auto& s : feasible.states) angles[s.index] = s.normalized_cost;
  return DiagonalOperator(feasible.qubit_count, std::move(angles));
}

void DiagonalOperator::apply(StateVector& state, double gamma) const {
  check_dimension(state, qubits_);
  auto amps = state.amplitudes();
  for (std::size_t a = 0; a < amps.size(); ++a) {
    amps[a] *= phase(-gamma * angles_[a]);
  }
}

std::string_view to_string(CostForm form) {
  return form == CostForm::kPlain ? "plain" : "eq1";
}

CostForm parse_cost_form(std::string_view name) {
  if (name == "plain") return CostForm::kPlain;
  if (name == "eq1") return CostForm::kQuboAffine;
  throw ValidationError("unknown cost form '" + std::string(name) + "'");
}

StateVector prepare_feasible_superposition(const FeasibleSet& feasible) {
  check_nonempty(feasible);
  StateVector state(feasible.qubit_count);
  state[0] = 0.0;
  const double amp = 1.0 / std::sqrt(static_cast<double>(feasible.size()));
  for (const auto& s : feasible.states) state[s.index] = amp;
  return state;
}

void apply_phase_gate(StateVector& state, int qubit, PhaseBranches phases,
                      double gamma) {
  if (qubit < 0 || qubit >= state.qubit_count()) {
    throw ValidationError("phase gate qubit out of range");
  }
  const Amplitude p0 = phase(-gamma * phases.if_zero);
  const Amplitude p1 = phase(-gamma * phases.if_one);
  auto amps = state.amplitudes();
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t block = 0; block < amps.size(); block += 2 * stride) {
    for (std::size_t i = block; i < block + stride; ++i) {
      amps[i] *= p0;
      amps[i + stride] *= p1;
    }
  }
}

PhaseSeparator::PhaseSeparator(const Encoding& enc,
                               const NormalizedInstance& inst, CostForm form)
    : qubits_(enc.qubit_count()) {
  if (enc.kind() == EncodingKind::kEdge) {
    phases_ = phase_table(static_cast<const EdgeEncoding&>(enc), inst);
    return;
  }
  FeasiblePhases table;
  for (const auto& s : enumerate_feasible(enc, inst).states) {
    const double f = s.normalized_cost;
    table.emplace_back(s.index, form == CostForm::kPlain
                                    ? f
                                    : conventional_affine_cost(inst, f));
  }
  phases_ = std::move(table);
}

void PhaseSeparator::apply(StateVector& state, double gamma) const {
  check_dimension(state, qubits_);
  if (const auto* table = std::get_if<PhaseTable>(&phases_)) {
    for (std::size_t q = 0; q < table->qubits.size(); ++q) {
      apply_phase_gate(state, static_cast<int>(q), table->qubits[q], gamma);
    }
    return;
  }
  for (const auto& [index, angle] : std::get<FeasiblePhases>(phases_)) {
    state[index] *= phase(-gamma * angle);
  }
}

double PhaseSeparator::angle(BasisIndex a) const {
  if (const auto* table = std::get_if<PhaseTable>(&phases_)) {
    return phase_sum(*table, a);
  }
  for (const auto& [index, angle] : std::get<FeasiblePhases>(phases_)) {
    if (index == a) return angle;
  }
  return 0.0;
}

void apply_phase_separator(StateVector& state, const Encoding& enc,
                           const NormalizedInstance& inst, double gamma,
                           CostForm form) {
  PhaseSeparator(enc, inst, form).apply(state, gamma);
}

void apply_grover_mixer(StateVector& state, const FeasibleSet& feasible,
                        double beta) {
  check_nonempty(feasible);
  check_dimension(state, feasible.qubit_count);
  const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(feasible.size()));
  Amplitude overlap = 0.0;
  for (const auto& s : feasible.states) overlap += state[s.index];
  overlap *= inv_sqrt;
  const Amplitude shift = (phase(-beta) - 1.0) * overlap * inv_sqrt;
  for (const auto& s : feasible.states) state[s.index] += shift;
}

Distribution measure_distribution(const StateVector& state,
                                  const FeasibleSet& feasible) {
  check_dimension(state, feasible.qubit_count);
  Distribution d;
  std::vector<bool> in_feasible(state.dimension(), false);
  for (const auto& s : feasible.states) {
    in_feasible[s.index] = true;
    d.feasible.emplace_back(s.index, std::norm(state[s.index]));
  }
  const auto amps = state.amplitudes();
  for (std::size_t a = 0; a < amps.size(); ++a) {
    if (!in_feasible[a]) d.infeasible_mass += std::norm(amps[a]);
  }
  return d;
}

}  // namespace tspqaoa
