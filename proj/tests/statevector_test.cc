// Copyright 2026 The QDT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdt/statevector.h"

#include <gtest/gtest.h>

#include <random>

#include "oracles.h"
#include "qdt/presets.h"

namespace qdt {
namespace {

PauliString on(std::size_t n, std::size_t k, int alpha) { return PauliString::single(n, k, static_cast<Pauli>(alpha)); }

std::vector<Amplitude> dense_apply(const oracle::Matrix &m, const Statevector &s) {
    std::vector<Amplitude> out(s.dimension());
    for (std::size_t r = 0; r < m.dim; r++) {
        for (std::size_t c = 0; c < m.dim; c++) {
            out[r] += m.at(r, c) * s[c];
        }
    }
    return out;
}

TEST(Statevector, BasisStatesAndLimits) {
    Statevector zero(3);
    EXPECT_EQ(zero[0], Amplitude(1));
    EXPECT_EQ(Statevector::from_ket("10")[1], Amplitude(1));
    EXPECT_THROW(Statevector(Statevector::kMaxQubits + 1), OracleLimitError);
    EXPECT_THROW(Statevector(2, std::vector<Amplitude>(3)), DimensionError);
}

TEST(GraphStateVector, SmallExamples) {
    Statevector one = graph_state_vector(GraphAdjacency(std::vector<BitVector>(1, BitVector(1))));
    const double h = 1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(one[0] - h), 0, 1e-15);
    EXPECT_NEAR(std::abs(one[1] - h), 0, 1e-15);
    Statevector edge = graph_state_vector(GraphAdjacency::from_edges(2, {{0, 1}}));
    std::vector<Amplitude> expect = {0.5, 0.5, 0.5, -0.5};
    EXPECT_LT(max_abs_difference(edge, Statevector(2, expect)), 1e-15);
}

TEST(GraphStateVector, MatchesEdgeSignFormula) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 10; t++) {
        std::size_t n = 1 + rng() % 9;
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t u = 0; u < n; u++) {
            for (std::size_t v = u + 1; v < n; v++) {
                if (rng() % 3 == 0) {
                    edges.emplace_back(u, v);
                }
            }
        }
        Statevector g = graph_state_vector(GraphAdjacency::from_edges(n, edges));
        double scale = std::pow(2.0, -0.5 * static_cast<double>(n));
        for (std::size_t x = 0; x < g.dimension(); x++) {
            int sign = 1;
            for (auto [u, v] : edges) {
                if (((x >> u) & 1) && ((x >> v) & 1)) {
                    sign = -sign;
                }
            }
            ASSERT_NEAR(std::abs(g[x] - Amplitude(sign * scale)), 0, 1e-15);
        }
    }
}

TEST(ApplyPauli, MatchesDenseMatrices) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 300; t++) {
        std::size_t n = 1 + rng() % 4;
        Statevector s = random_state(n, rng);
        PauliString p = oracle::random_pauli(n, rng);
        auto expect = dense_apply(oracle::dense(p), s);
        ASSERT_LT(max_abs_difference(apply_pauli(s, p), Statevector(n, expect)), 1e-14) << p;
    }
}

TEST(ApplyPauli, Examples) {
    EXPECT_LT(max_abs_difference(apply_pauli(Statevector(5), PauliString::parse("XIIII")), Statevector::from_ket("10000")),
              1e-15);
    std::mt19937_64 rng(23);
    for (int t = 0; t < 50; t++) {
        Statevector s = random_state(6, rng);
        PauliString p = oracle::random_pauli(6, rng, true);
        Statevector twice = apply_pauli(apply_pauli(s, p), p);
        ASSERT_LT(max_abs_difference(twice, s), 1e-12);
        ASSERT_NEAR(apply_pauli(s, p).norm(), 1, 1e-10);
        ASSERT_LT(max_abs_difference(apply_pauli(s, PauliString(6)), s), 1e-15);
    }
    EXPECT_THROW(apply_pauli(Statevector(2), PauliString(3)), DimensionError);
}

TEST(SwapQubits, Examples) {
    EXPECT_LT(max_abs_difference(swap_qubits(Statevector::from_ket("01"), 0, 1), Statevector::from_ket("10")), 1e-15);
    const double h = 1 / std::sqrt(2.0);
    Statevector sym(2, {0, h, h, 0});
    EXPECT_LT(max_abs_difference(swap_qubits(sym, 0, 1), sym), 1e-15);
    EXPECT_THROW(swap_qubits(sym, 1, 1), std::invalid_argument);
}

TEST(SwapQubits, EqualsExchangeOperatorSum) {
    std::mt19937_64 rng(24);
    for (int t = 0; t < 100; t++) {
        Statevector s = random_state(4, rng);
        std::size_t i = rng() % 4;
        std::size_t j = (i + 1 + rng() % 3) % 4;
        auto terms = exchange_decomposition(i, j, 4);
        Statevector sum = apply_operator_sum(s, terms);
        ASSERT_LT(max_abs_difference(swap_qubits(s, i, j), sum), 1e-12);
        ASSERT_NEAR(swap_qubits(s, i, j).norm(), 1, 1e-10);
    }
}

TEST(EncodeLogical, CodewordsAreStabilizedAndLogicalZPermutesThem) {
    for (const auto &name : preset_names()) {
        const StabilizerCode &code = load_preset(name);
        std::vector<Amplitude> zero = {1, 0};
        EXPECT_LT(max_abs_difference(encode_logical(code, zero), graph_state_vector(code.adjacency())), 1e-12);
        std::mt19937_64 rng(25);
        Statevector logical = random_state(1, rng);
        Statevector psi = encode_logical(code, logical.amplitudes());
        for (const auto &g : code.generators()) {
            EXPECT_LT(max_abs_difference(apply_pauli(psi, g), psi), 1e-12);
        }
        // Z^a carries Z^{a^0}|G> to Z^{a^1}|G> and back.
        std::vector<Amplitude> flipped = {logical[1], logical[0]};
        EXPECT_TRUE(equal_up_to_global_phase(apply_pauli(psi, code.logical_z_operators()[0]),
                                             encode_logical(code, flipped)));
    }
}

class PresetOracle : public ::testing::TestWithParam<std::string> {};

TEST_P(PresetOracle, SwapExpandsIntoTwinedErrors) {
    const StabilizerCode &code = load_preset(GetParam());
    std::size_t n = code.n();
    Statevector g = graph_state_vector(code.adjacency());
    Statevector joint = tensor(g, g);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            std::vector<Amplitude> acc(joint.dimension());
            for (int a = 0; a < 4; a++) {
                Statevector term = tensor(apply_pauli(g, on(n, i, a)), apply_pauli(g, on(n, j, a)));
                for (std::size_t k = 0; k < acc.size(); k++) {
                    acc[k] += 0.5 * term[k];
                }
            }
            ASSERT_LT(max_abs_difference(swap_qubits(joint, i, n + j), Statevector(2 * n, acc)), 1e-10)
                << "i=" << i << " j=" << j;
        }
    }
}

TEST_P(PresetOracle, SingleQubitTwinedStatesAreOrthogonal) {
    const StabilizerCode &code = load_preset(GetParam());
    std::size_t n = code.n();
    Statevector g = graph_state_vector(code.adjacency());
    for (std::size_t i = 0; i < n; i++) {
        for (int a = 0; a < 4; a++) {
            for (int b = a + 1; b < 4; b++) {
                ASSERT_LT(std::abs(inner_product(apply_pauli(g, on(n, i, a)), apply_pauli(g, on(n, i, b)))), 1e-10);
            }
        }
    }
}

TEST_P(PresetOracle, QemsBranchesAreQuarterWeightTwinedStates) {
    const StabilizerCode &code = load_preset(GetParam());
    std::size_t n = code.n();
    Statevector g = graph_state_vector(code.adjacency());
    std::size_t step = n > 5 ? 4 : 1;
    for (std::size_t i = 0; i < n; i += step) {
        for (std::size_t j = 0; j < n; j += step) {
            BranchReport rep = qems_branches(code, g, code, g, i, j);
            ASSERT_EQ(rep.branches.size(), 4u);
            EXPECT_NEAR(rep.total_probability(), 1, 1e-10);
            for (int a = 0; a < 4; a++) {
                const Branch *b = rep.find(a);
                ASSERT_NE(b, nullptr) << "alpha=" << a;
                EXPECT_NEAR(b->probability, 0.25, 1e-10);
                Statevector expect = tensor(apply_pauli(g, on(n, i, a)), apply_pauli(g, on(n, j, a)));
                EXPECT_TRUE(equal_up_to_global_phase(b->post_state, expect)) << "i=" << i << " j=" << j;
                EXPECT_NEAR(b->post_state.norm(), 1, 1e-10);
            }
            BranchReport control = qems_branches(code, g, code, g, i, j, false);
            ASSERT_EQ(control.branches.size(), 1u);
            EXPECT_EQ(control.branches[0].alpha, 0);
            EXPECT_NEAR(control.branches[0].probability, 1, 1e-12);
        }
    }
}

TEST_P(PresetOracle, ProjectiveMeasurementReproducesSymbolicSyndromes) {
    const StabilizerCode &code = load_preset(GetParam());
    std::mt19937_64 rng(26);
    for (int t = 0; t < 40; t++) {
        Statevector logical = random_state(1, rng);
        Statevector psi = encode_logical(code, logical.amplitudes());
        PauliString e = oracle::random_pauli(code.n(), rng, true);
        auto branches = measure_stabilizers(apply_pauli(psi, e), code.generators());
        ASSERT_EQ(branches.size(), 1u);
        EXPECT_NEAR(branches[0].probability, 1, 1e-10);
        EXPECT_EQ(branches[0].outcomes, syndrome(code, e).bits) << e;
    }
}

INSTANTIATE_TEST_SUITE_P(Presets, PresetOracle, ::testing::Values("ring5", "shor9-graph"), [](const auto &info) {
    std::string name = info.param;
    std::replace(name.begin(), name.end(), '-', '_');
    return name;
});

TEST(MeasureStabilizers, RejectsNonHermitianObservables) {
    std::vector<PauliString> obs = {PauliString::parse("iZ")};
    EXPECT_THROW(measure_stabilizers(Statevector(1), obs), std::invalid_argument);
}

TEST(MeasureStabilizers, BranchesNormalizeAndSumToOne) {
    std::mt19937_64 rng(27);
    Statevector s = random_state(4, rng);
    std::vector<PauliString> obs = {PauliString::parse("ZZII"), PauliString::parse("IIXX"), PauliString::parse("ZZZZ")};
    auto branches = measure_stabilizers(s, obs);
    double total = 0;
    for (const auto &b : branches) {
        total += b.probability;
        EXPECT_NEAR(b.post_state.norm(), 1, 1e-10);
        for (std::size_t mu = 0; mu < obs.size(); mu++) {
            double sign = b.outcomes.get(mu) ? -1 : 1;
            EXPECT_LT(max_abs_difference(apply_pauli(b.post_state, obs[mu]),
                                         Statevector(4, [&] {
                                             auto v = b.post_state.amplitudes();
                                             for (auto &a : v) {
                                                 a *= sign;
                                             }
                                             return v;
                                         }())),
                      1e-10);
        }
    }
    EXPECT_NEAR(total, 1, 1e-10);
}

TEST(SampleMeasurement, FrequenciesFollowBranchProbabilities) {
    std::mt19937_64 rng(28);
    Statevector s = random_state(3, rng);
    std::vector<PauliString> obs = {PauliString::parse("ZII"), PauliString::parse("IZZ")};
    auto branches = measure_stabilizers(s, obs);
    std::map<BitVector, int> counts;
    const int trials = 20000;
    for (int t = 0; t < trials; t++) {
        counts[sample_measurement(s, obs, rng).outcomes]++;
    }
    for (const auto &b : branches) {
        double sigma = std::sqrt(trials * b.probability * (1 - b.probability));
        EXPECT_LT(std::abs(counts[b.outcomes] - trials * b.probability), 4.5 * sigma + 1);
    }
}

TEST(TeleportQems, RandomInputLandsOnThirdQubit) {
    std::mt19937_64 rng(29);
    const double h = 1 / std::sqrt(2.0);
    Statevector bell(2, {h, 0, 0, h});
    for (int t = 0; t < 20; t++) {
        Statevector phi = random_state(1, rng);
        BranchReport rep = teleport_qems(phi);
        ASSERT_EQ(rep.branches.size(), 4u);
        for (int a = 0; a < 4; a++) {
            const Branch *b = rep.find(a);
            ASSERT_NE(b, nullptr);
            EXPECT_NEAR(b->probability, 0.25, 1e-10);
            Statevector expect = tensor(apply_pauli(bell, on(2, 0, a)), apply_pauli(phi, on(1, 0, a)));
            EXPECT_TRUE(equal_up_to_global_phase(b->post_state, expect));
        }
    }
}

TEST(PermutationStatistics, IdentityPermutation) {
    StabilizerCode ghz = ghz_star_code(0);
    Statevector g = graph_state_vector(ghz.adjacency());
    PatternHistogram hist = permutation_statistics({g, g, g}, {ghz, ghz, ghz}, {{0, 2}, {1, 2}, {2, 2}}, {});
    ASSERT_EQ(hist.probability.size(), 1u);
    EXPECT_NEAR(hist.probability.at("III"), 1, 1e-12);
}

TEST(PermutationStatistics, ThreeCycleOverGhzStatesGivesSixteenUniformPatterns) {
    EXPECT_EQ(cycle_transpositions(3), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}}));
    StabilizerCode ghz = ghz_star_code(0);
    Statevector g = graph_state_vector(ghz.adjacency());
    PatternHistogram hist =
        permutation_statistics({g, g, g}, {ghz, ghz, ghz}, {{0, 2}, {1, 2}, {2, 2}}, cycle_transpositions(3));
    EXPECT_EQ(hist.probability.size(), 16u);
    std::map<std::string, int> expect = {{"III", 1}, {"IXX", 3}, {"IYY", 3}, {"IZZ", 3}, {"XYZ", 6}};
    EXPECT_EQ(hist.type_counts, expect);
    EXPECT_EQ(hist.rule_violations, 0);
    double total = 0;
    for (const auto &[pattern, prob] : hist.probability) {
        EXPECT_NEAR(prob, 1.0 / 16, 1e-10) << pattern;
        total += prob;
    }
    EXPECT_NEAR(total, 1, 1e-10);
}

TEST(PermutationStatistics, RejectsInvalidPermutations) {
    StabilizerCode ghz = ghz_star_code(0);
    Statevector g = graph_state_vector(ghz.adjacency());
    EXPECT_THROW(permutation_statistics({g, g}, {ghz, ghz}, {{0, 1}, {0, 2}}, {{0, 1}}), std::invalid_argument);
    EXPECT_THROW(permutation_statistics({g, g}, {ghz, ghz}, {{0, 1}, {1, 2}}, {{0, 0}}), std::invalid_argument);
    EXPECT_THROW(permutation_statistics({g, g}, {ghz, ghz}, {{0, 1}, {1, 2}}, {{0, 3}}), std::invalid_argument);
}

TEST(Oracle, RejectsOversizedJointSystems) {
    const StabilizerCode &shor = load_preset("shor9-graph");
    Statevector g = graph_state_vector(shor.adjacency());
    std::vector<Statevector> three = {g, g, g};
    std::vector<StabilizerCode> codes = {shor, shor, shor};
    EXPECT_THROW(permutation_statistics(three, codes, {{0, 0}, {1, 0}, {2, 0}}, {{0, 1}}), OracleLimitError);
}

}  // namespace
}  // namespace qdt
