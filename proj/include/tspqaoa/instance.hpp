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
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace tspqaoa {

/// Vertex index in [0, n). Vertex 0 is the fixed start of every tour.
using Vertex = int;

/**
 * Complete directed graph with nonnegative edge costs.
 *
 * weight(j, k) is the cost of the directed edge j -> k. No symmetry or
 * triangle inequality is assumed. The diagonal is stored as 0 and never read
 * by any cost routine. Immutable after construction.
 */
class TspInstance {
 public:
  /// `weights` is row-major n*n. Throws ValidationError on n < 3, a size
  /// mismatch, a negative or non-finite off-diagonal entry, or a nonzero
  /// diagonal.
  TspInstance(int n, std::vector<double> weights);

  static TspInstance from_rows(const std::vector<std::vector<double>>& rows);

  int size() const { return n_; }
  double weight(Vertex from, Vertex to) const {
    return weights_[static_cast<std::size_t>(from * n_ + to)];
  }
  std::span<const double> weights() const { return weights_; }
  std::vector<std::vector<double>> rows() const;

  /// Largest off-diagonal weight.
  double max_weight() const;
  /// Sum of all off-diagonal weights.
  double total_weight() const;

  bool operator==(const TspInstance&) const = default;

 private:
  int n_;
  std::vector<double> weights_;
};

/// A closed tour anchored at vertex 0. `cost` is in the units of the instance
/// it was evaluated on.
struct Tour {
  std::vector<Vertex> order;
  double cost = 0.0;

  bool operator==(const Tour&) const = default;
};

/**
 * An instance rescaled by scale = n * max_weight.
 *
 * A tour has n edges, each at most max_weight, so every normalized tour cost
 * lies in (0, 1]. Phase sums built from normalized costs therefore stay below
 * 2*pi.
 */
class NormalizedInstance {
 public:
  /// Throws ValidationError when every off-diagonal weight is zero.
  explicit NormalizedInstance(TspInstance base);

  const TspInstance& base() const { return base_; }
  const TspInstance& normalized() const { return normalized_; }
  double scale() const { return scale_; }
  int size() const { return base_.size(); }

  double to_raw(double normalized_cost) const {
    return normalized_cost * scale_;
  }

 private:
  TspInstance base_;
  double scale_;
  TspInstance normalized_;
};

/// Off-diagonal weights i.i.d. uniform integers in [lo, hi]. Deterministic in
/// `seed` on every platform (see rng.hpp).
TspInstance generate_random(int n, std::uint64_t seed, int lo, int hi);

NormalizedInstance normalize(const TspInstance& inst);

/// Throws ValidationError unless `order` is a permutation of {0..n-1}.
void validate_permutation(int n, std::span<const Vertex> order);

/// Closed-cycle cost, including the return edge to order[0].
double tour_cost(const TspInstance& inst, std::span<const Vertex> order);

/// Validates that `order` is a permutation starting at 0 and attaches its cost.
Tour make_tour(const TspInstance& inst, std::vector<Vertex> order);

/// All (n-1)! orders with order[0] = 0, in lexicographic order.
std::vector<std::vector<Vertex>> fixed_start_orders(int n);

// Instance files are JSON objects:
//   { "n": 4, "weights": [[0, 3, 7, 1], [2, 0, 5, 9], ...] }
// `weights` is an array of n rows of n numbers; the diagonal must be 0.
nlohmann::json instance_to_json(const TspInstance& inst);
TspInstance instance_from_json(const nlohmann::json& doc);

TspInstance read_instance(const std::filesystem::path& path);
void write_instance(const TspInstance& inst, const std::filesystem::path& path);

}  // namespace tspqaoa
