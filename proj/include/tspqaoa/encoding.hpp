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
#include <string_view>
#include <utility>
#include <vector>

#include "tspqaoa/instance.hpp"

namespace tspqaoa {

/// Basis-state index. Qubit q is bit q of the index (qubit 0 is the least
/// significant bit).
using BasisIndex = std::uint64_t;

/// Upper bound on qubits for anything that touches a dense 2^q structure.
inline constexpr int kMaxDenseQubits = 26;

enum class EncodingKind { kEdge, kOneHot };

std::string_view to_string(EncodingKind kind);
/// Accepts "edge" and "onehot". Throws ValidationError otherwise.
EncodingKind parse_encoding_kind(std::string_view name);

/// Bidirectional map between fixed-start tours and basis states.
class Encoding {
 public:
  virtual ~Encoding() = default;

  virtual EncodingKind kind() const = 0;
  virtual int qubit_count() const = 0;
  int vertex_count() const { return n_; }

  /// Throws ValidationError unless `order` is a permutation starting at 0.
  virtual BasisIndex encode(std::span<const Vertex> order) const = 0;
  /// The tour a basis state stands for, or nullopt for infeasible states.
  virtual std::optional<std::vector<Vertex>> decode(BasisIndex a) const = 0;

  bool is_feasible(BasisIndex a) const { return decode(a).has_value(); }

 protected:
  explicit Encoding(int n);
  void check_tour(std::span<const Vertex> order) const;

 private:
  int n_;
};

/**
 * One qubit per directed edge j -> k between non-start vertices.
 *
 * Qubits are laid out row-major over (j, k) with 1 <= j, k <= n-1, j outer,
 * k inner, skipping j == k. A set bit selects the edge. Edges touching vertex
 * 0 are implicit: a state is feasible iff its set bits form one directed
 * Hamiltonian path through {1..n-1}, which the implicit edges 0 -> first and
 * last -> 0 close into a tour.
 */
class EdgeEncoding final : public Encoding {
 public:
  explicit EdgeEncoding(int n);

  EncodingKind kind() const override { return EncodingKind::kEdge; }
  int qubit_count() const override { return (vertex_count() - 1) * (vertex_count() - 2); }

  int qubit_index(Vertex from, Vertex to) const;
  std::pair<Vertex, Vertex> edge_of(int qubit) const;

  BasisIndex encode(std::span<const Vertex> order) const override;
  std::optional<std::vector<Vertex>> decode(BasisIndex a) const override;
};

/**
 * Conventional 1-hot time-step encoding with vertex 0 pinned to step 1.
 *
 * Qubit (step s, vertex v) for s in 2..n and v in 1..n-1 says "v is visited at
 * step s"; index (s-2)*(n-1) + (v-1). Feasible states are exactly the
 * permutation matrices on the (n-1)x(n-1) grid.
 */
class OneHotEncoding final : public Encoding {
 public:
  explicit OneHotEncoding(int n);

  EncodingKind kind() const override { return EncodingKind::kOneHot; }
  int qubit_count() const override { return (vertex_count() - 1) * (vertex_count() - 1); }

  int qubit_index(int step, Vertex v) const;

  BasisIndex encode(std::span<const Vertex> order) const override;
  std::optional<std::vector<Vertex>> decode(BasisIndex a) const override;
};

std::unique_ptr<Encoding> make_encoding(EncodingKind kind, int n);

/// Phases of the single-qubit diagonal gate diag(e^{i*if_zero}, e^{i*if_one}).
struct PhaseBranches {
  double if_zero = 0.0;
  double if_one = 0.0;
};

/// Per-qubit branch phases for the edge encoding, indexed by qubit.
struct PhaseTable {
  std::vector<PhaseBranches> qubits;
};

/**
 * Branch phases realising the edge-encoding cost as a tensor product of
 * single-qubit phase gates (normalized costs, m = n-2):
 *
 *   if_zero(j,k) = (c(j,0) + c(0,k)) / m
 *   if_one(j,k)  = c(j,k) - (n-3) * (c(j,0) + c(0,k)) / m
 *
 * Summed over all qubits of a feasible state these give the tour cost.
 */
PhaseTable phase_table(const EdgeEncoding& enc, const NormalizedInstance& inst);

/// Sum over qubits of the branch phase selected by each bit of `a`.
double phase_sum(const PhaseTable& table, BasisIndex a);

/// Affine edge cost at any bitstring: the implicit start-vertex edges
/// sum_j c(j,0) + sum_k c(0,k), plus c(j,k) - c(j,0) - c(0,k) per set bit.
double edge_affine_cost(const EdgeEncoding& enc, const TspInstance& costs,
                        BasisIndex a);

/// Normalized cost of a feasible basis state: the affine edge form for the
/// edge encoding, the decoded tour cost for 1-hot. Throws ValidationError on
/// infeasible states.
double basis_cost(const Encoding& enc, const NormalizedInstance& inst,
                  BasisIndex a);

/// Conventional QUBO-derived phase for a tour of normalized cost `tour_cost`:
/// 4*f - (n-2) * (sum of all normalized weights).
double conventional_affine_cost(const NormalizedInstance& inst,
                                double tour_cost);

struct FeasibleState {
  BasisIndex index = 0;
  Tour tour;                    // raw units
  double normalized_cost = 0.0;
};

/// Every feasible basis state of an encoding on one instance, sorted by index.
struct FeasibleSet {
  EncodingKind kind = EncodingKind::kEdge;
  int qubit_count = 0;
  std::vector<FeasibleState> states;

  std::size_t size() const { return states.size(); }
};

/// Builds the feasible set from the (n-1)! tours. Throws SizeError when the
/// encoding needs more than kMaxDenseQubits qubits.
FeasibleSet enumerate_feasible(const Encoding& enc,
                               const NormalizedInstance& inst);

/// Exhaustive 2^q scan for feasible indices (cross-check for small q).
std::vector<BasisIndex> scan_feasible(const Encoding& enc);

struct GateCountReport {
  int n = 0;
  bool symmetric_costs = false;
  long onehot_qubits_unanchored = 0;  // n^2
  long onehot_qubits = 0;             // (n-1)^2, vertex 0 pinned
  long edge_qubits = 0;               // (n-1)(n-2), halved for symmetric costs
  long onehot_rzz_unanchored = 0;     // n * n(n-1): cyclic step pairs
  long onehot_rzz = 0;                // (n-2) step pairs * (n-1)(n-2)
  long onehot_rz = 0;                 // 2(n-1) terms from edges at vertex 0
  long edge_phase_gates = 0;          // two per qubit
  long edge_x_gates = 0;              // two per qubit
};

/// Analytic resource counts for both phase separators. No circuit is built.
GateCountReport gate_count_report(int n, bool symmetric_costs = false);

}  // namespace tspqaoa
