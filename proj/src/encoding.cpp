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

#include "tspqaoa/encoding.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "tspqaoa/error.hpp"

namespace tspqaoa {

namespace {

constexpr int kMaxIndexQubits = 63;

bool bit_set(BasisIndex a, int qubit) { return (a >> qubit) & 1U; }

}  // namespace

std::string_view to_string(EncodingKind kind) {
  switch (kind) {
    case EncodingKind::kEdge:
      return "edge";
    case EncodingKind::kOneHot:
      return "onehot";
  }
  return "?";
}

EncodingKind parse_encoding_kind(std::string_view name) {
  if (name == "edge") return EncodingKind::kEdge;
  if (name == "onehot") return EncodingKind::kOneHot;
  throw ValidationError("unknown encoding '" + std::string(name) + "'");
}

Encoding::Encoding(int n) : n_(n) {
  if (n < 3) {
    throw ValidationError("encodings need at least 3 vertices");
  }
}

void Encoding::check_tour(std::span<const Vertex> order) const {
  validate_permutation(n_, order);
  if (order.front() != 0) throw ValidationError("tour must start at vertex 0");
}

// ---------------------------------------------------------------------------
// Edge encoding

EdgeEncoding::EdgeEncoding(int n) : Encoding(n) {
  if (qubit_count() > kMaxIndexQubits) {
    throw SizeError("edge encoding index does not fit 64 bits");
  }
}

int EdgeEncoding::qubit_index(Vertex from, Vertex to) const {
  const int n = vertex_count();
  if (from < 1 || from >= n || to < 1 || to >= n || from == to) {
    throw ValidationError("edge encoding has no qubit for this edge");
  }
  return (from - 1) * (n - 2) + (to - 1) - (to > from ? 1 : 0);
}

std::pair<Vertex, Vertex> EdgeEncoding::edge_of(int qubit) const {
  const int n = vertex_count();
  if (qubit < 0 || qubit >= qubit_count()) {
    throw ValidationError("qubit out of range");
  }
  const Vertex from = qubit / (n - 2) + 1;
  Vertex to = qubit % (n - 2) + 1;
  if (to >= from) ++to;
  return {from, to};
}

BasisIndex EdgeEncoding::encode(std::span<const Vertex> order) const {
  check_tour(order);
  BasisIndex a = 0;
  for (std::size_t i = 1; i + 1 < order.size(); ++i) {
    a |= BasisIndex{1} << qubit_index(order[i], order[i + 1]);
  }
  return a;
}

std::optional<std::vector<Vertex>> EdgeEncoding::decode(BasisIndex a) const {
  const int n = vertex_count();
  const int q = qubit_count();
  if (q < 64 && (a >> q) != 0) return std::nullopt;
  if (std::popcount(a) != n - 2) return std::nullopt;

  std::vector<Vertex> next(static_cast<std::size_t>(n), 0);
  std::vector<bool> has_pred(static_cast<std::size_t>(n), false);
  for (int qubit = 0; qubit < q; ++qubit) {
    if (!bit_set(a, qubit)) continue;
    const auto [from, to] = edge_of(qubit);
    if (next[from] != 0 || has_pred[to]) return std::nullopt;
    next[from] = to;
    has_pred[to] = true;
  }
  // n-2 edges with in-degree <= 1 leave exactly one inner vertex without a
  // predecessor. A path from it covers all n-1 inner vertices unless part of
  // the edge set is a detached cycle.
  Vertex start = 0;
  for (Vertex v = 1; v < n; ++v) {
    if (!has_pred[v]) {
      start = v;
      break;
    }
  }
  std::vector<Vertex> order{0};
  for (Vertex v = start; v != 0; v = next[v]) {
    order.push_back(v);
    if (static_cast<int>(order.size()) > n) return std::nullopt;
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

// ---------------------------------------------------------------------------
// 1-hot encoding

OneHotEncoding::OneHotEncoding(int n) : Encoding(n) {
  if (qubit_count() > kMaxIndexQubits) {
    throw SizeError("1-hot encoding index does not fit 64 bits");
  }
}

int OneHotEncoding::qubit_index(int step, Vertex v) const {
  const int n = vertex_count();
  if (step < 2 || step > n || v < 1 || v >= n) {
    throw ValidationError("1-hot encoding has no qubit for this step/vertex");
  }
  return (step - 2) * (n - 1) + (v - 1);
}

BasisIndex OneHotEncoding::encode(std::span<const Vertex> order) const {
  check_tour(order);
  BasisIndex a = 0;
  for (std::size_t i = 1; i < order.size(); ++i) {
    a |= BasisIndex{1} << qubit_index(static_cast<int>(i) + 1, order[i]);
  }
  return a;
}

std::optional<std::vector<Vertex>> OneHotEncoding::decode(BasisIndex a) const {
  const int n = vertex_count();
  const int q = qubit_count();
  if (q < 64 && (a >> q) != 0) return std::nullopt;
  std::vector<Vertex> order{0};
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int step = 2; step <= n; ++step) {
    Vertex chosen = 0;
    for (Vertex v = 1; v < n; ++v) {
      if (!bit_set(a, qubit_index(step, v))) continue;
      if (chosen != 0) return std::nullopt;  // two vertices in one step
      chosen = v;
    }
    if (chosen == 0 || used[chosen]) return std::nullopt;
    used[chosen] = true;
    order.push_back(chosen);
  }
  return order;
}

std::unique_ptr<Encoding> make_encoding(EncodingKind kind, int n) {
  switch (kind) {
    case EncodingKind::kEdge:
      return std::make_unique<EdgeEncoding>(n);
    case EncodingKind::kOneHot:
      return std::make_unique<OneHotEncoding>(n);
  }
  throw ValidationError("unknown encoding kind");
}

// ---------------------------------------------------------------------------
// Costs

PhaseTable phase_table(const EdgeEncoding& enc,
                       const NormalizedInstance& inst) {
  const TspInstance& c = inst.normalized();
  const int n = enc.vertex_count();
  if (c.size() != n) throw ValidationError("instance/encoding size mismatch");
  const double m = n - 2;
  PhaseTable table;
  table.qubits.resize(static_cast<std::size_t>(enc.qubit_count()));
  for (int qubit = 0; qubit < enc.qubit_count(); ++qubit) {
    const auto [j, k] = enc.edge_of(qubit);
    const double share = (c.weight(j, 0) + c.weight(0, k)) / m;
    table.qubits[qubit] = {share, c.weight(j, k) - (n - 3) * share};
  }
  return table;
}

double phase_sum(const PhaseTable& table, BasisIndex a) {
  double sum = 0.0;
  for (std::size_t qubit = 0; qubit < table.qubits.size(); ++qubit) {
    const auto& b = table.qubits[qubit];
    sum += bit_set(a, static_cast<int>(qubit)) ? b.if_one : b.if_zero;
  }
  return sum;
}

double edge_affine_cost(const EdgeEncoding& enc, const TspInstance& costs,
                        BasisIndex a) {
  const int n = enc.vertex_count();
  if (costs.size() != n) throw ValidationError("instance/encoding size mismatch");
  double total = 0.0;
  for (Vertex v = 1; v < n; ++v) total += costs.weight(v, 0) + costs.weight(0, v);
  for (int qubit = 0; qubit < enc.qubit_count(); ++qubit) {
    if (!bit_set(a, qubit)) continue;
    const auto [j, k] = enc.edge_of(qubit);
    total += costs.weight(j, k) - costs.weight(j, 0) - costs.weight(0, k);
  }
  return total;
}

double basis_cost(const Encoding& enc, const NormalizedInstance& inst,
                  BasisIndex a) {
  if (inst.size() != enc.vertex_count()) {
    throw ValidationError("instance/encoding size mismatch");
  }
  auto order = enc.decode(a);
  if (!order) {
    throw ValidationError("basis state " + std::to_string(a) +
                          " is not a feasible tour");
  }
  if (enc.kind() == EncodingKind::kEdge) {
    return edge_affine_cost(static_cast<const EdgeEncoding&>(enc),
                            inst.normalized(), a);
  }
  return tour_cost(inst.normalized(), *order);
}

double conventional_affine_cost(const NormalizedInstance& inst,
                                double tour_cost) {
  return 4.0 * tour_cost -
         (inst.size() - 2) * inst.normalized().total_weight();
}

FeasibleSet enumerate_feasible(const Encoding& enc,
                               const NormalizedInstance& inst) {
  if (enc.qubit_count() > kMaxDenseQubits) {
    throw SizeError("encoding needs " + std::to_string(enc.qubit_count()) +
                    " qubits; limit is " + std::to_string(kMaxDenseQubits));
  }
  if (inst.size() != enc.vertex_count()) {
    throw ValidationError("instance/encoding size mismatch");
  }
  FeasibleSet set;
  set.kind = enc.kind();
  set.qubit_count = enc.qubit_count();
  for (auto& order : fixed_start_orders(enc.vertex_count())) {
    FeasibleState s;
    s.index = enc.encode(order);
    s.normalized_cost = basis_cost(enc, inst, s.index);
    s.tour = make_tour(inst.base(), std::move(order));
    set.states.push_back(std::move(s));
  }
  std::sort(set.states.begin(), set.states.end(),
            [](const FeasibleState& x, const FeasibleState& y) {
              return x.index < y.index;
            });
  return set;
}

std::vector<BasisIndex> scan_feasible(const Encoding& enc) {
  if (enc.qubit_count() > kMaxDenseQubits) {
    throw SizeError("exhaustive scan limited to " +
                    std::to_string(kMaxDenseQubits) + " qubits");
  }
  std::vector<BasisIndex> out;
  const BasisIndex dim = BasisIndex{1} << enc.qubit_count();
  for (BasisIndex a = 0; a < dim; ++a) {
    if (enc.is_feasible(a)) out.push_back(a);
  }
  return out;
}

GateCountReport gate_count_report(int n, bool symmetric_costs) {
  if (n < 3) throw ValidationError("gate counts need at least 3 vertices");
  const long nn = n;
  GateCountReport r;
  r.n = n;
  r.symmetric_costs = symmetric_costs;
  r.onehot_qubits_unanchored = nn * nn;
  r.onehot_qubits = (nn - 1) * (nn - 1);
  r.edge_qubits = (nn - 1) * (nn - 2);
  if (symmetric_costs) r.edge_qubits /= 2;
  r.onehot_rzz_unanchored = nn * nn * (nn - 1);
  r.onehot_rzz = (nn - 2) * (nn - 1) * (nn - 2);
  r.onehot_rz = 2 * (nn - 1);
  r.edge_phase_gates = 2 * r.edge_qubits;
  r.edge_x_gates = 2 * r.edge_qubits;
  return r;
}

}  // namespace tspqaoa
