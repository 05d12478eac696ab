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

#include "qdt/graph_code.h"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "oracles.h"
#include "qdt/presets.h"
#include "qdt/statevector.h"

namespace qdt {
namespace {

std::vector<PauliString> parse_all(std::initializer_list<const char *> texts) {
    std::vector<PauliString> out;
    for (const char *t : texts) {
        out.push_back(PauliString::parse(t));
    }
    return out;
}

std::vector<BitVector> vectors(std::initializer_list<const char *> texts) {
    std::vector<BitVector> out;
    for (const char *t : texts) {
        out.push_back(BitVector::from_string(t));
    }
    return out;
}

TEST(GraphAdjacency, RejectsMalformedMatrices) {
    EXPECT_THROW(GraphAdjacency(vectors({"01", "00"})), std::invalid_argument);
    EXPECT_THROW(GraphAdjacency(vectors({"10", "00"})), std::invalid_argument);
    EXPECT_THROW(GraphAdjacency(vectors({"01", "100"})), std::invalid_argument);
    EXPECT_NO_THROW(GraphAdjacency(vectors({"01", "10"})));
}

TEST(GraphStabilizers, CycleGenerators) {
    auto gens = graph_stabilizers(GraphAdjacency::cycle(5));
    EXPECT_EQ(gens, parse_all({"XZIIZ", "ZXZII", "IZXZI", "IIZXZ", "ZIIZX"}));
}

TEST(GraphStabilizers, EdgelessAndStar) {
    EXPECT_EQ(graph_stabilizers(GraphAdjacency(std::vector<BitVector>(3, BitVector(3)))),
              parse_all({"XII", "IXI", "IIX"}));
    EXPECT_EQ(graph_stabilizers(GraphAdjacency::star(3, 0)), parse_all({"XZZ", "ZXI", "ZIX"}));
}

TEST(GraphStabilizers, MutuallyCommuteAndStabilizeTheState) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 20; t++) {
        std::size_t n = 2 + rng() % 8;
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t u = 0; u < n; u++) {
            for (std::size_t v = u + 1; v < n; v++) {
                if (rng() & 1) {
                    edges.emplace_back(u, v);
                }
            }
        }
        GraphAdjacency adj = GraphAdjacency::from_edges(n, edges);
        auto gens = graph_stabilizers(adj);
        Statevector g = graph_state_vector(adj);
        for (const auto &a : gens) {
            for (const auto &b : gens) {
                ASSERT_TRUE(commutes(a, b));
            }
            ASSERT_LT(max_abs_difference(apply_pauli(g, a), g), 1e-12);
        }
    }
}

TEST(GraphExpectation, Examples) {
    GraphAdjacency c5 = GraphAdjacency::cycle(5);
    auto gens = graph_stabilizers(c5);
    for (const auto &g : gens) {
        EXPECT_EQ(graph_expectation(c5, g), std::complex<double>(1, 0));
    }
    EXPECT_EQ(graph_expectation(c5, PauliString::parse("XIIII")), std::complex<double>(0, 0));
    PauliString minus = (gens[0] * gens[1]).times_i_pow(2);
    EXPECT_EQ(graph_expectation(c5, minus), std::complex<double>(-1, 0));
    EXPECT_THROW(graph_expectation(c5, PauliString(4)), DimensionError);
}

TEST(GraphExpectation, MatchesStatevectorForEveryPauliOnTheCycle) {
    GraphAdjacency c5 = GraphAdjacency::cycle(5);
    Statevector g = graph_state_vector(c5);
    for (const auto &p0 : oracle::all_paulis(5)) {
        for (uint8_t phase = 0; phase < 4; phase++) {
            PauliString p = p0.with_phase(phase);
            std::complex<double> expect = inner_product(g, apply_pauli(g, p));
            ASSERT_LT(std::abs(graph_expectation(c5, p) - expect), 1e-12) << p;
        }
    }
}

TEST(BuildCode, RingFiveIsAValidCode) {
    StabilizerCode code = build_code(GraphAdjacency::cycle(5), vectors({"00000", "11111"}), 3, "ring");
    EXPECT_EQ(code.n(), 5u);
    EXPECT_EQ(code.k(), 1u);
    EXPECT_EQ(code.d(), 3u);
    EXPECT_EQ(code.generators().size(), 4u);
    EXPECT_EQ(code.logical_z_operators(), parse_all({"ZZZZZ"}));
}

TEST(BuildCode, EdgelessGraphFailsVerification) {
    GraphAdjacency empty(std::vector<BitVector>(5, BitVector(5)));
    try {
        build_code(empty, vectors({"00000", "11111"}), 3);
        FAIL() << "expected verification failure";
    } catch (const CodeVerificationError &e) {
        EXPECT_NE(std::string(e.what()).find("not a [[G,K,d]] code"), std::string::npos);
    }
}

TEST(BuildCode, OverclaimedDistanceFails) {
    EXPECT_THROW(build_code(GraphAdjacency::cycle(5), vectors({"00000", "11111"}), 4), CodeVerificationError);
}

TEST(BuildCode, RejectsBadLogicalVectors) {
    GraphAdjacency c5 = GraphAdjacency::cycle(5);
    EXPECT_THROW(build_code(c5, vectors({"11111", "00000"}), 3), std::invalid_argument);
    EXPECT_THROW(build_code(c5, vectors({"00000", "00000"}), 3), std::invalid_argument);
    EXPECT_THROW(build_code(c5, vectors({"00000", "11111", "10000"}), 1), std::invalid_argument);
    EXPECT_THROW(build_code(c5, vectors({"00000", "1111"}), 3), std::invalid_argument);
}

TEST(BuildCode, ShorGraphFormIsAValidCode) {
    GraphAdjacency star = GraphAdjacency::star(3, 0);
    GraphAdjacency g = GraphAdjacency::disjoint_union(GraphAdjacency::disjoint_union(star, star), star);
    StabilizerCode code = build_code(g, vectors({"000000000", "100100100"}), 3);
    EXPECT_EQ(code.n(), 9u);
    EXPECT_EQ(code.k(), 1u);
    EXPECT_EQ(code.generators().size(), 8u);
}

class PresetTest : public ::testing::TestWithParam<std::string> {};

TEST_P(PresetTest, GeneratorsCommuteAreIndependentAndCountNMinusK) {
    const StabilizerCode &code = load_preset(GetParam());
    const auto &gens = code.generators();
    ASSERT_EQ(gens.size(), code.n() - code.k());
    for (const auto &a : gens) {
        EXPECT_TRUE(a.is_hermitian());
        for (const auto &b : gens) {
            EXPECT_TRUE(commutes(a, b));
        }
        for (const auto &z : code.logical_z_operators()) {
            EXPECT_TRUE(commutes(a, z));
        }
        EXPECT_EQ(graph_expectation(code.adjacency(), a), std::complex<double>(1, 0));
    }
    EXPECT_EQ(oracle::symplectic_rank(gens), gens.size());
}

TEST_P(PresetTest, DistinguishabilityAgreesWithStatevector) {
    const StabilizerCode &code = load_preset(GetParam());
    std::size_t n = code.n();
    Statevector g = graph_state_vector(code.adjacency());
    std::vector<Statevector> words;
    for (const auto &a : code.logical_z_vectors()) {
        words.push_back(apply_pauli(g, PauliString(BitVector(n), a)));
    }
    std::size_t checked = 0;
    for (std::size_t w = 0; w < code.d(); w++) {
        for_each_pauli_of_weight(n, w, [&](const PauliString &e) {
            std::complex<double> f = graph_expectation(code.adjacency(), e);
            for (std::size_t i = 0; i < words.size(); i++) {
                Statevector ew = apply_pauli(words[i], e);
                for (std::size_t j = 0; j < words.size(); j++) {
                    std::complex<double> value = inner_product(words[j], ew);
                    std::complex<double> expect = i == j ? f : 0.0;
                    ASSERT_LT(std::abs(value - expect), 1e-10) << e << " i=" << i << " j=" << j;
                }
            }
            checked++;
        });
    }
    // 1 + 3n + 9 C(n, 2) errors of weight below 3.
    EXPECT_EQ(checked, 1 + 3 * n + 9 * n * (n - 1) / 2);
}

TEST_P(PresetTest, SingleErrorsAreCorrected) {
    const StabilizerCode &code = load_preset(GetParam());
    for (std::size_t w = 0; w <= code.correctable_weight(); w++) {
        for_each_pauli_of_weight(code.n(), w, [&](const PauliString &e) {
            auto correction = decode(code, syndrome(code, e));
            ASSERT_TRUE(correction.has_value()) << e;
            ASSERT_LE(weight(*correction), code.correctable_weight());
            PauliString residual = e * *correction;
            ASSERT_FALSE(is_logical_failure(code, residual)) << e;
            ASSERT_TRUE(oracle::in_span(code.generators(), residual)) << e;
        });
    }
}

TEST_P(PresetTest, FailureClassifierMatchesRankOracleOnWeightTwo) {
    const StabilizerCode &code = load_preset(GetParam());
    for_each_pauli_of_weight(code.n(), 2, [&](const PauliString &e) {
        Syndrome s = syndrome(code, e);
        auto correction = decode(code, s);
        bool oracle_fail = true;
        if (correction) {
            oracle_fail = !oracle::in_span(code.generators(), e * *correction);
        }
        bool fail = !correction || is_logical_failure(code, e * *correction);
        ASSERT_EQ(fail, oracle_fail) << e;
    });
}

TEST_P(PresetTest, TableHoldsLexFirstMinimumWeightRepresentatives) {
    const StabilizerCode &code = load_preset(GetParam());
    std::map<std::string, PauliString> best;
    for (std::size_t w = 0; w <= code.correctable_weight(); w++) {
        for_each_pauli_of_weight(code.n(), w, [&](const PauliString &e) {
            std::string key = syndrome(code, e).str();
            auto it = best.find(key);
            if (it == best.end()) {
                best.emplace(key, e);
            } else if (weight(e) == weight(it->second) && lex_less(e, it->second)) {
                it->second = e;
            }
        });
    }
    EXPECT_EQ(code.syndrome_table().size(), best.size());
    for (const auto &[s, correction] : code.syndrome_table()) {
        ASSERT_EQ(correction, best.at(s.str()));
    }
}

INSTANTIATE_TEST_SUITE_P(Presets, PresetTest, ::testing::Values("ring5", "shor9-graph"),
                         [](const auto &info) {
                             std::string name = info.param;
                             for (auto &c : name) {
                                 if (c == '-') {
                                     c = '_';
                                 }
                             }
                             return name;
                         });

TEST(Syndrome, RingSingleErrorsAreDistinctAndNonzero) {
    const StabilizerCode &code = load_preset("ring5");
    std::set<std::string> seen;
    for_each_pauli_of_weight(5, 1, [&](const PauliString &e) {
        Syndrome s = syndrome(code, e);
        EXPECT_FALSE(s.is_trivial());
        seen.insert(s.str());
    });
    EXPECT_EQ(seen.size(), 15u);
    EXPECT_TRUE(syndrome(code, PauliString(5)).is_trivial());
}

TEST(Syndrome, RingIsPerfect) {
    const StabilizerCode &code = load_preset("ring5");
    EXPECT_EQ(code.syndrome_table().size(), 16u);
}

TEST(Syndrome, BitsFollowAnticommutationAndAreLinear) {
    const StabilizerCode &code = load_preset("shor9-graph");
    std::mt19937_64 rng(5);
    for (int t = 0; t < 500; t++) {
        PauliString p = oracle::random_pauli(9, rng);
        PauliString q = oracle::random_pauli(9, rng);
        Syndrome sp = syndrome(code, p);
        for (std::size_t mu = 0; mu < code.generators().size(); mu++) {
            ASSERT_EQ(sp.bits.get(mu), !commutes(code.generators()[mu], p));
        }
        ASSERT_EQ(syndrome(code, p * q), sp ^ syndrome(code, q));
    }
    EXPECT_THROW(syndrome(code, PauliString(5)), DimensionError);
}

TEST(Decode, Examples) {
    const StabilizerCode &code = load_preset("ring5");
    auto zero = decode(code, syndrome(code, PauliString(5)));
    ASSERT_TRUE(zero);
    EXPECT_TRUE(zero->is_identity_up_to_phase());

    PauliString x3 = PauliString::parse("IIXII");
    auto fix = decode(code, syndrome(code, x3));
    ASSERT_TRUE(fix);
    EXPECT_EQ(weight(*fix), 1u);
    EXPECT_FALSE(is_logical_failure(code, x3 * *fix));
}

TEST(Decode, EveryWeightTwoErrorDefeatsTheRing) {
    const StabilizerCode &code = load_preset("ring5");
    int count = 0;
    for_each_pauli_of_weight(5, 2, [&](const PauliString &e) {
        auto fix = decode(code, syndrome(code, e));
        ASSERT_TRUE(fix);
        ASSERT_LE(weight(*fix), 1u);
        ASSERT_TRUE(is_logical_failure(code, e * *fix)) << e;
        count++;
    });
    EXPECT_EQ(count, 90);
}

TEST(Decode, UncoveredSyndromeIsReportedAsUncorrectable) {
    const StabilizerCode &code = load_preset("shor9-graph");
    int uncovered = 0;
    for_each_pauli_of_weight(9, 2, [&](const PauliString &e) {
        if (!decode(code, syndrome(code, e))) {
            uncovered++;
        }
    });
    // 2^8 syndromes but only 1 + 27 weight-<=1 errors.
    EXPECT_GT(uncovered, 0);
}

TEST(IsLogicalFailure, Examples) {
    const StabilizerCode &code = load_preset("ring5");
    EXPECT_FALSE(is_logical_failure(code, PauliString(5)));
    EXPECT_FALSE(is_logical_failure(code, PauliString(5).times_i_pow(1)));
    for (const auto &g : code.generators()) {
        EXPECT_FALSE(is_logical_failure(code, g));
        EXPECT_FALSE(is_logical_failure(code, g.times_i_pow(2)));
    }
    EXPECT_TRUE(is_logical_failure(code, PauliString::parse("ZZZZZ")));
    // An element of the graph group that does not commute with the logical
    // Z is not a stabilizer of the coding space.
    EXPECT_TRUE(is_logical_failure(code, graph_stabilizers(code.adjacency())[0]));
}

TEST(ForEachPauliOfWeight, CountsAndOrder) {
    std::vector<PauliString> seen;
    for_each_pauli_of_weight(4, 2, [&](const PauliString &p) { seen.push_back(p); });
    EXPECT_EQ(seen.size(), 6u * 9u);
    for (std::size_t k = 1; k < seen.size(); k++) {
        EXPECT_TRUE(lex_less(seen[k - 1], seen[k]));
    }
}

TEST(Presets, JsonRoundTripAndNames) {
    EXPECT_EQ(preset_names(), (std::vector<std::string>{"ring5", "shor9-graph"}));
    for (const auto &name : preset_names()) {
        const StabilizerCode &code = load_preset(name);
        StabilizerCode back = code_from_json(code_to_json(code));
        EXPECT_EQ(back.name(), code.name());
        EXPECT_EQ(back.adjacency(), code.adjacency());
        EXPECT_EQ(back.generators(), code.generators());
        EXPECT_EQ(back.logical_z_vectors(), code.logical_z_vectors());
        EXPECT_EQ(code_to_json(back), code_to_json(code));
    }
    EXPECT_THROW(load_preset("nosuch"), UnknownPresetError);
}

TEST(Presets, JsonRejectsTamperedGenerators) {
    std::string text = code_to_json(load_preset("ring5"));
    auto pos = text.find("\"+YYZIZ\"");
    ASSERT_NE(pos, std::string::npos);
    text.replace(pos, 8, "\"+YYZIX\"");
    EXPECT_THROW(code_from_json(text), std::exception);
}

TEST(Presets, GhzStarCode) {
    StabilizerCode ghz = ghz_star_code(0);
    EXPECT_EQ(ghz.n(), 3u);
    EXPECT_EQ(ghz.k(), 0u);
    EXPECT_EQ(ghz.generators().size(), 3u);
}

}  // namespace
}  // namespace qdt
