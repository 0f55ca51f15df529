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

#include "tspqaoa/instance.hpp"

namespace tspqaoa {

/// Largest n accepted by held_karp (memory is n * 2^(n-1) doubles).
inline constexpr int kHeldKarpMaxVertices = 18;
/// Largest n accepted by brute_force ((n-1)! tours).
inline constexpr int kBruteForceMaxVertices = 10;

/// Exact optimum by dynamic programming over subsets, anchored at vertex 0.
/// Among optimal tours the lexicographically smallest order is returned.
Tour held_karp(const TspInstance& inst);

/// Exact optimum by enumerating all (n-1)! fixed-start orders. Ties go to the
/// lexicographically smallest order. Throws SizeError above
/// kBruteForceMaxVertices.
Tour brute_force(const TspInstance& inst);

}  // namespace tspqaoa
