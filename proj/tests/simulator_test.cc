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
#include <complex>
#include <numbers>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "gtest/gtest.h"
#include "tspqaoa/error.hpp"
#include "tspqaoa/rng.hpp"

namespace tspqaoa {
namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

StateVector RandomState(int qubits, std::uint64_t seed) {
  StateVector s(qubits);
  Rng rng(seed);
  double norm = 0.0;
  for (auto& a : s.amplitudes()) {
    a = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    norm += std::norm(a);
  }
  for (auto& a : s.amplitudes()) a /= std::sqrt(norm);
  return s;
}

// Largest |x_a - e^{i phi} y_a| with phi fixed by the largest entry of y.
double DistanceUpToPhase(const StateVector& x, const StateVector& y) {
  BasisIndex ref = 0;
  for (BasisIndex a = 0; a < y.dimension(); ++a) {
    if (std::abs(y[a]) > std::abs(y[ref])) ref = a;
  }
  const Complex phase = x[ref] / y[ref];
  double d = 0.0;
  for (BasisIndex a = 0; a < y.dimension(); ++a) {
    d = std::max(d, std::abs(x[a] - phase * y[a]));
  }
  return d;
}

double MaxDiff(const StateVector& x, const StateVector& y) {
  double d = 0.0;
  for (BasisIndex a = 0; a < x.dimension(); ++a) {
    d = std::max(d, std::abs(x[a] - y[a]));
  }
  return d;
}

TEST(StateVectorTest, StartsInZeroState) {
  const StateVector s(3);
  EXPECT_EQ(s.dimension(), 8u);
  EXPECT_EQ(s[0], Complex(1.0));
  EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
  EXPECT_THROW(StateVector(kMaxDenseQubits + 1), SizeError);
}

TEST(SimulatorTest, PrepareFeasibleSuperposition) {
  const NormalizedInstance inst = normalize(generate_random(4, 1, 1, 20));
  const FeasibleSet f = enumerate_feasible(EdgeEncoding(4), inst);
  const StateVector s = prepare_feasible_superposition(f);
  EXPECT_EQ(s.dimension(), 64u);
  int zeros = 0;
  for (BasisIndex a = 0; a < 64; ++a) {
    if (s[a] == Complex(0.0)) ++zeros;
  }
  EXPECT_EQ(zeros, 58);
  for (const auto& st : f.states) {
    EXPECT_NEAR(std::abs(s[st.index]), 1 / std::sqrt(6.0), 1e-15);
  }
  EXPECT_NEAR(s.norm_squared(), 1.0, 1e-12);

  const FeasibleSet f3 = enumerate_feasible(EdgeEncoding(3), normalize(generate_random(3, 1, 1, 9)));
  const StateVector s3 = prepare_feasible_superposition(f3);
  for (const auto& st : f3.states) {
    EXPECT_NEAR(s3[st.index].real(), 1 / std::sqrt(2.0), 1e-15);
  }
  EXPECT_THROW(prepare_feasible_superposition(FeasibleSet{}), ValidationError);
}

class SeparatorTest : public ::testing::TestWithParam<EncodingKind> {};

TEST_P(SeparatorTest, ZeroAngleIsIdentity) {
  const NormalizedInstance inst = normalize(generate_random(4, 2, 1, 20));
  const auto enc = make_encoding(GetParam(), 4);
  const StateVector before = RandomState(enc->qubit_count(), 3);
  StateVector after = before;
  apply_phase_separator(after, *enc, inst, 0.0);
  EXPECT_LE(MaxDiff(before, after), 1e-15);
}

TEST_P(SeparatorTest, FeasibleBasisStatePicksUpTourPhase) {
  const NormalizedInstance inst = normalize(generate_random(4, 4, 1, 20));
  const auto enc = make_encoding(GetParam(), 4);
  const double gamma = 1.7;
  for (const auto& st : enumerate_feasible(*enc, inst).states) {
    StateVector s(enc->qubit_count());
    s[0] = 0.0;
    s[st.index] = 1.0;
    apply_phase_separator(s, *enc, inst, gamma);
    const Complex expected =
        std::exp(-kI * gamma * basis_cost(*enc, inst, st.index));
    EXPECT_NEAR(std::abs(s[st.index] - expected), 0.0, 1e-12);
  }
}

TEST_P(SeparatorTest, AnglesAdd) {
  const NormalizedInstance inst = normalize(generate_random(4, 5, 1, 20));
  const auto enc = make_encoding(GetParam(), 4);
  const PhaseSeparator sep(*enc, inst);
  StateVector one = RandomState(enc->qubit_count(), 6);
  StateVector two = one;
  sep.apply(one, 0.4);
  sep.apply(one, 1.9);
  sep.apply(two, 2.3);
  EXPECT_LE(MaxDiff(one, two), 1e-12);
  EXPECT_NEAR(one.norm_squared(), 1.0, 1e-10);
}

TEST_P(SeparatorTest, MatchesExplicitDiagonal) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 3 + static_cast<int>(seed % 2);
    const NormalizedInstance inst = normalize(generate_random(n, seed, 1, 20));
    const auto enc = make_encoding(GetParam(), n);
    const FeasibleSet f = enumerate_feasible(*enc, inst);
    StateVector a = prepare_feasible_superposition(f);
    StateVector b = a;
    apply_phase_separator(a, *enc, inst, 0.83);
    DiagonalOperator::from_costs(f).apply(b, 0.83);
    EXPECT_LE(MaxDiff(a, b), 1e-12);
  }
}

INSTANTIATE_TEST_SUITE_P(Encodings, SeparatorTest,
                         ::testing::Values(EncodingKind::kEdge,
                                           EncodingKind::kOneHot),
                         [](const auto& info) {
                           return std::string(to_string(info.param));
                         });

TEST(SeparatorTest, DimensionMismatch) {
  const NormalizedInstance inst = normalize(generate_random(4, 1, 1, 20));
  StateVector wrong(5);
  EXPECT_THROW(apply_phase_separator(wrong, EdgeEncoding(4), inst, 1.0),
               ValidationError);
  EXPECT_THROW(apply_phase_separator(wrong, OneHotEncoding(4), inst, 1.0),
               ValidationError);
}

TEST(SeparatorTest, AffineFormIsPlainAtFourGammaUpToGlobalPhase) {
  const NormalizedInstance inst = normalize(generate_random(4, 9, 1, 20));
  const OneHotEncoding enc(4);
  const FeasibleSet f = enumerate_feasible(enc, inst);
  StateVector affine = prepare_feasible_superposition(f);
  apply_grover_mixer(affine, f, 0.6);
  StateVector plain = affine;
  StateVector unscaled = affine;
  apply_phase_separator(affine, enc, inst, 0.35, CostForm::kQuboAffine);
  apply_phase_separator(plain, enc, inst, 4 * 0.35, CostForm::kPlain);
  EXPECT_LE(DistanceUpToPhase(affine, plain), 1e-12);
  apply_phase_separator(unscaled, enc, inst, 0.35, CostForm::kPlain);
  EXPECT_GT(DistanceUpToPhase(affine, unscaled), 1e-3);
}

TEST(MixerTest, MatchesDenseExponential) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    // Edge n=3 (2 qubits), edge n=4 (6 qubits), 1-hot n=3 (4 qubits).
    const int which = static_cast<int>(seed % 3);
    const int n = which == 1 ? 4 : 3;
    const auto enc = make_encoding(
        which == 2 ? EncodingKind::kOneHot : EncodingKind::kEdge, n);
    const NormalizedInstance inst = normalize(generate_random(n, seed, 1, 20));
    const FeasibleSet f = enumerate_feasible(*enc, inst);
    const auto dim = static_cast<Eigen::Index>(BasisIndex{1} << enc->qubit_count());

    Eigen::VectorXcd uniform = Eigen::VectorXcd::Zero(dim);
    for (const auto& st : f.states) {
      uniform(static_cast<Eigen::Index>(st.index)) = 1 / std::sqrt(double(f.size()));
    }
    const double beta = 0.37 + 0.9 * static_cast<double>(seed);
    const Eigen::MatrixXcd generator =
        Complex(0.0, -beta) * (uniform * uniform.adjoint());
    const Eigen::MatrixXcd u = generator.exp();

    const StateVector in = RandomState(enc->qubit_count(), seed + 100);
    Eigen::VectorXcd v(dim);
    for (Eigen::Index a = 0; a < dim; ++a) v(a) = in[static_cast<BasisIndex>(a)];
    const Eigen::VectorXcd expected = u * v;
    StateVector out = in;
    apply_grover_mixer(out, f, beta);
    for (Eigen::Index a = 0; a < dim; ++a) {
      ASSERT_NEAR(std::abs(out[static_cast<BasisIndex>(a)] - expected(a)), 0.0, 1e-9);
    }
  }
}

TEST(MixerTest, SpecialInputs) {
  const NormalizedInstance inst = normalize(generate_random(4, 1, 1, 20));
  const FeasibleSet f = enumerate_feasible(EdgeEncoding(4), inst);

  const StateVector base = RandomState(6, 8);
  StateVector zero = base;
  apply_grover_mixer(zero, f, 0.0);
  EXPECT_LE(MaxDiff(zero, base), 1e-15);

  const StateVector uniform = prepare_feasible_superposition(f);
  StateVector eig = uniform;
  apply_grover_mixer(eig, f, 1.2);
  for (BasisIndex a = 0; a < 64; ++a) {
    EXPECT_NEAR(std::abs(eig[a] - std::exp(-kI * 1.2) * uniform[a]), 0.0, 1e-15);
  }

  StateVector outside(6);  // |0...0> is infeasible
  apply_grover_mixer(outside, f, 2.0);
  EXPECT_EQ(outside[0], Complex(1.0));
  EXPECT_THROW(apply_grover_mixer(outside, FeasibleSet{}, 1.0), ValidationError);
}

TEST(SimulatorTest, SubspaceAndNormPreserved) {
  Rng rng(77);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 3 + static_cast<int>(seed % 3);
    const auto kind = seed % 2 ? EncodingKind::kOneHot : EncodingKind::kEdge;
    if (kind == EncodingKind::kOneHot && n == 5) continue;  // keep it quick
    const auto enc = make_encoding(kind, n);
    const NormalizedInstance inst = normalize(generate_random(n, seed, 1, 20));
    const FeasibleSet f = enumerate_feasible(*enc, inst);
    const PhaseSeparator sep(*enc, inst);
    StateVector s = prepare_feasible_superposition(f);
    for (int layer = 0; layer < 3; ++layer) {
      sep.apply(s, rng.uniform(0, 2 * std::numbers::pi));
      apply_grover_mixer(s, f, rng.uniform(0, 2 * std::numbers::pi));
    }
    const Distribution d = measure_distribution(s, f);
    EXPECT_LE(d.infeasible_mass, 1e-10);
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10);
    double total = d.infeasible_mass;
    for (const auto& [a, p] : d.feasible) total += p;
    EXPECT_NEAR(total, 1.0, 1e-10);
  }
}

TEST(SimulatorTest, MeasureUniform) {
  const NormalizedInstance inst = normalize(generate_random(4, 3, 1, 20));
  const FeasibleSet f = enumerate_feasible(OneHotEncoding(4), inst);
  const Distribution d = measure_distribution(prepare_feasible_superposition(f), f);
  ASSERT_EQ(d.feasible.size(), 6u);
  for (const auto& [a, p] : d.feasible) EXPECT_NEAR(p, 1.0 / 6, 1e-15);
  EXPECT_EQ(d.infeasible_mass, 0.0);
}

TEST(SimulatorTest, ParseCostForm) {
  EXPECT_EQ(parse_cost_form("plain"), CostForm::kPlain);
  EXPECT_EQ(parse_cost_form("eq1"), CostForm::kQuboAffine);
  EXPECT_THROW(parse_cost_form("other"), ValidationError);
}

}  // namespace
}  // namespace tspqaoa
