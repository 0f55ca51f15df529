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

#include "tspqaoa/exact.hpp"

#include <limits>

#include "tspqaoa/error.hpp"

namespace tspqaoa {

Tour held_karp(const TspInstance& inst) {
  const int n = inst.size();
  if (n > kHeldKarpMaxVertices) {
    throw SizeError("held_karp supports at most " +
                    std::to_string(kHeldKarpMaxVertices) + " vertices");
  }
  // Inner vertices 1..n-1 map to bits 0..n-2. togo[R][v] is the cheapest way
  // to leave v, visit every vertex of the unvisited set R, and return to 0.
  const int inner = n - 1;
  const std::size_t subsets = std::size_t{1} << inner;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> togo(subsets * n, inf);
  auto at = [n](std::size_t mask, int v) -> std::size_t {
    return mask * static_cast<std::size_t>(n) + static_cast<std::size_t>(v);
  };

  for (int v = 1; v < n; ++v) togo[at(0, v)] = inst.weight(v, 0);
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    for (int v = 1; v < n; ++v) {
      if (mask & (std::size_t{1} << (v - 1))) continue;
      double best = inf;
      for (int u = 1; u < n; ++u) {
        const std::size_t bit = std::size_t{1} << (u - 1);
        if (!(mask & bit)) continue;
        best = std::min(best, inst.weight(v, u) + togo[at(mask ^ bit, u)]);
      }
      togo[at(mask, v)] = best;
    }
  }
  const std::size_t all = subsets - 1;
  double opt = inf;
  for (int v = 1; v < n; ++v) {
    const std::size_t bit = std::size_t{1} << (v - 1);
    opt = std::min(opt, inst.weight(0, v) + togo[at(all ^ bit, v)]);
  }

  // Walk forward taking the smallest vertex that attains the optimum, which
  // yields the lexicographically smallest optimal order.
  std::vector<Vertex> order{0};
  std::size_t remaining = all;
  int cur = 0;
  double target = opt;
  while (remaining != 0) {
    for (int v = 1; v < n; ++v) {
      const std::size_t bit = std::size_t{1} << (v - 1);
      if (!(remaining & bit)) continue;
      const double rest = togo[at(remaining ^ bit, v)];
      if (inst.weight(cur, v) + rest == target) {
        order.push_back(v);
        remaining ^= bit;
        cur = v;
        target = rest;
        break;
      }
    }
  }
  return make_tour(inst, std::move(order));
}

Tour brute_force(const TspInstance& inst) {
  const int n = inst.size();
  if (n > kBruteForceMaxVertices) {
    throw SizeError("brute_force supports at most " +
                    std::to_string(kBruteForceMaxVertices) + " vertices");
  }
  Tour best;
  best.cost = std::numeric_limits<double>::infinity();
  for (auto& order : fixed_start_orders(n)) {
    const double cost = tour_cost(inst, order);
    if (cost < best.cost) best = Tour{std::move(order), cost};
  }
  return best;
}

}  // namespace tspqaoa
