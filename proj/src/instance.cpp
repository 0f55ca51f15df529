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

#include "tspqaoa/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "tspqaoa/error.hpp"
#include "tspqaoa/rng.hpp"

namespace tspqaoa {

namespace {

void require_size(int n) {
  if (n < 3) {
    throw ValidationError("TSP instance needs at least 3 vertices, got " +
                          std::to_string(n));
  }
}

}  // namespace

TspInstance::TspInstance(int n, std::vector<double> weights)
    : n_(n), weights_(std::move(weights)) {
  require_size(n_);
  if (weights_.size() != static_cast<std::size_t>(n_) * n_) {
    throw ValidationError("weight matrix must have n*n entries");
  }
  for (int j = 0; j < n_; ++j) {
    for (int k = 0; k < n_; ++k) {
      const double w = weight(j, k);
      if (j == k) {
        if (w != 0.0) {
          throw ValidationError("diagonal weight (" + std::to_string(j) +
                                ") must be 0");
        }
      } else if (!std::isfinite(w) || w < 0.0) {
        throw ValidationError("weight (" + std::to_string(j) + "," +
                              std::to_string(k) +
                              ") must be finite and nonnegative");
      }
    }
  }
}

TspInstance TspInstance::from_rows(
    const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<double> flat;
  flat.reserve(rows.size() * rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw ValidationError("weight matrix is not square");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return TspInstance(n, std::move(flat));
}

std::vector<std::vector<double>> TspInstance::rows() const {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) {
    out[j].assign(weights_.begin() + j * n_, weights_.begin() + (j + 1) * n_);
  }
  return out;
}

double TspInstance::max_weight() const {
  return *std::max_element(weights_.begin(), weights_.end());
}

double TspInstance::total_weight() const {
  return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

NormalizedInstance::NormalizedInstance(TspInstance base)
    : base_(std::move(base)),
      scale_(base_.size() * base_.max_weight()),
      normalized_(base_) {
  if (!(scale_ > 0.0)) {
    throw ValidationError("cannot normalize an all-zero weight matrix");
  }
  std::vector<double> w(base_.weights().begin(), base_.weights().end());
  for (double& x : w) x /= scale_;
  normalized_ = TspInstance(base_.size(), std::move(w));
}

TspInstance generate_random(int n, std::uint64_t seed, int lo, int hi) {
  require_size(n);
  if (lo < 1 || lo > hi) {
    throw ValidationError("weight range must satisfy 1 <= lo <= hi");
  }
  Rng rng(seed);
  std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j != k) w[j * n + k] = static_cast<double>(rng.uniform_int(lo, hi));
    }
  }
  return TspInstance(n, std::move(w));
}

NormalizedInstance normalize(const TspInstance& inst) {
  return NormalizedInstance(inst);
}

void validate_permutation(int n, std::span<const Vertex> order) {
  if (order.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("tour must list every vertex exactly once");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (Vertex v : order) {
    if (v < 0 || v >= n || seen[v]) {
      throw ValidationError("tour is not a permutation of the vertices");
    }
    seen[v] = true;
  }
}

double tour_cost(const TspInstance& inst, std::span<const Vertex> order) {
  const int n = inst.size();
  validate_permutation(n, order);
  double cost = 0.0;
  for (int i = 0; i < n; ++i) {
    cost += inst.weight(order[i], order[(i + 1) % n]);
  }
  return cost;
}

Tour make_tour(const TspInstance& inst, std::vector<Vertex> order) {
  const double cost = tour_cost(inst, order);
  if (order.front() != 0) {
    throw ValidationError("tour must start at vertex 0");
  }
  return Tour{std::move(order), cost};
}

std::vector<std::vector<Vertex>> fixed_start_orders(int n) {
  require_size(n);
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<Vertex>> out;
  do {
    out.push_back(order);
  } while (std::next_permutation(order.begin() + 1, order.end()));
  return out;
}

nlohmann::json instance_to_json(const TspInstance& inst) {
  return nlohmann::json{{"n", inst.size()}, {"weights", inst.rows()}};
}

TspInstance instance_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("weights")) {
    throw ValidationError("instance document needs fields 'n' and 'weights'");
  }
  if (!doc["n"].is_number_integer()) {
    throw ValidationError("'n' must be an integer");
  }
  const int n = doc["n"].get<int>();
  const auto& rows_doc = doc["weights"];
  if (!rows_doc.is_array() || rows_doc.size() != static_cast<std::size_t>(n)) {
    throw ValidationError("'weights' must be an array of n rows");
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : rows_doc) {
    if (!row.is_array()) throw ValidationError("weight row must be an array");
    std::vector<double> r;
    for (const auto& x : row) {
      if (!x.is_number()) throw ValidationError("weights must be numbers");
      r.push_back(x.get<double>());
    }
    rows.push_back(std::move(r));
  }
  return TspInstance::from_rows(rows);
}

TspInstance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open instance file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed instance file " + path.string() + ": " +
                          e.what());
  }
  return instance_from_json(doc);
}

void write_instance(const TspInstance& inst,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write instance file " + path.string());
  out << instance_to_json(inst).dump(2) << '\n';
}

}  // namespace tspqaoa
