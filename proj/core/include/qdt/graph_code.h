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

#ifndef QDT_GRAPH_CODE_H
#define QDT_GRAPH_CODE_H

#include <complex>
#include <functional>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qdt/bits.h"
#include "qdt/pauli.h"

namespace qdt {

/// Simple undirected graph on `n` vertices stored as a symmetric bit matrix.
class GraphAdjacency {
   public:
    GraphAdjacency() = default;
    /// Validates symmetry and an empty diagonal.
    explicit GraphAdjacency(std::vector<BitVector> rows);

    static GraphAdjacency from_edges(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>> &edges);
    static GraphAdjacency cycle(std::size_t n);
    static GraphAdjacency star(std::size_t n, std::size_t center);
    /// Vertices of `b` are appended after those of `a`.
    static GraphAdjacency disjoint_union(const GraphAdjacency &a, const GraphAdjacency &b);

    std::size_t num_vertices() const { return rows_.size(); }
    bool has_edge(std::size_t u, std::size_t v) const { return rows_[u].get(v); }
    const BitVector &neighbors(std::size_t v) const { return rows_[v]; }
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    friend bool operator==(const GraphAdjacency &, const GraphAdjacency &) = default;

   private:
    std::vector<BitVector> rows_;
};

/// Canonical graph-state generators g_v = X_v prod_{u in N(v)} Z_u.
std::vector<PauliString> graph_stabilizers(const GraphAdjacency &adj);

/// <G|P|G> for the graph state of `adj`. The result is one of
/// 0, +1, -1, +i, -i and is computed exactly from stabilizer-group
/// membership.
std::complex<double> graph_expectation(const GraphAdjacency &adj, const PauliString &p);

/// Same as graph_expectation but returns the phase exponent k of i^k, or
/// nothing when the expectation vanishes.
std::optional<uint8_t> graph_expectation_phase(const GraphAdjacency &adj, const PauliString &p);

/// Raised when a graph and logical vectors fail the distinguishability
/// check for the claimed distance.
struct CodeVerificationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Measurement record: bit mu is set when the error anticommutes with
/// generator mu.
struct Syndrome {
    BitVector bits;

    std::size_t size() const { return bits.size(); }
    bool is_trivial() const { return bits.none(); }
    std::string str() const { return bits.str(); }
    friend bool operator==(const Syndrome &, const Syndrome &) = default;
    friend Syndrome operator^(const Syndrome &a, const Syndrome &b) { return {a.bits ^ b.bits}; }
};

}  // namespace qdt

template <>
struct std::hash<qdt::Syndrome> {
    std::size_t operator()(const qdt::Syndrome &s) const noexcept { return std::hash<qdt::BitVector>{}(s.bits); }
};

namespace qdt {

/// A verified graphical stabilizer code [[n, k, d]].
///
/// Codewords are Z^{a^i}|G> for the logical vectors a^i. Only build_code
/// constructs these, so an instance always satisfies the distinguishability
/// condition for every error of weight below d.
class StabilizerCode {
   public:
    const std::string &name() const { return name_; }
    std::size_t n() const { return adjacency_.num_vertices(); }
    std::size_t k() const { return k_; }
    std::size_t d() const { return d_; }
    /// Number of errors guaranteed correctable, floor((d - 1) / 2).
    std::size_t correctable_weight() const { return d_ == 0 ? 0 : (d_ - 1) / 2; }

    const GraphAdjacency &adjacency() const { return adjacency_; }
    /// The n - k coding-space stabilizers.
    const std::vector<PauliString> &generators() const { return generators_; }
    /// All K = 2^k logical vectors, a^0 = 0 first.
    const std::vector<BitVector> &logical_z_vectors() const { return logical_vectors_; }
    /// Z^a for a basis of the logical vectors (k operators).
    const std::vector<PauliString> &logical_z_operators() const { return logical_z_; }
    const std::unordered_map<Syndrome, PauliString> &syndrome_table() const { return table_; }

   private:
    friend StabilizerCode build_code(const GraphAdjacency &, const std::vector<BitVector> &, std::size_t,
                                     std::string);

    std::string name_;
    std::size_t k_ = 0;
    std::size_t d_ = 0;
    GraphAdjacency adjacency_;
    std::vector<PauliString> generators_;
    std::vector<BitVector> logical_vectors_;
    std::vector<PauliString> logical_z_;
    std::unordered_map<Syndrome, PauliString> table_;
};

/// Verifies and assembles a code. Every Pauli error of weight below
/// `claimed_d` is checked against <G|Z^{a^i} E Z^{a^j}|G> = f(E) delta_ij;
/// the first violation is reported in the thrown CodeVerificationError.
StabilizerCode build_code(const GraphAdjacency &adj, const std::vector<BitVector> &logical_z_vectors,
                          std::size_t claimed_d, std::string name = "");

Syndrome syndrome(const StabilizerCode &code, const PauliString &error);

/// Minimum-weight lookup decoder. Returns nothing for syndromes outside
/// the table (the error exceeded table coverage).
std::optional<PauliString> decode(const StabilizerCode &code, const Syndrome &s);

/// False exactly when `residual` is, up to a scalar, an element of the
/// coding-space stabilizer group.
bool is_logical_failure(const StabilizerCode &code, const PauliString &residual);

/// Calls `visit` with every Pauli string on `n` qubits of exactly weight
/// `w`, in lexicographic order of the (x_bits, z_bits) encoding.
void for_each_pauli_of_weight(std::size_t n, std::size_t w, const std::function<void(const PauliString &)> &visit);

}  // namespace qdt

#endif  // QDT_GRAPH_CODE_H
