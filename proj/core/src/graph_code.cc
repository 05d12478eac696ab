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

#include <algorithm>
#include <set>

namespace qdt {

GraphAdjacency::GraphAdjacency(std::vector<BitVector> rows) : rows_(std::move(rows)) {
    std::size_t n = rows_.size();
    for (std::size_t u = 0; u < n; u++) {
        if (rows_[u].size() != n) {
            throw std::invalid_argument("adjacency row " + std::to_string(u) + " has wrong length");
        }
        if (rows_[u].get(u)) {
            throw std::invalid_argument("adjacency has a self loop on vertex " + std::to_string(u));
        }
        for (std::size_t v = 0; v < u; v++) {
            if (rows_[u].get(v) != rows_[v].get(u)) {
                throw std::invalid_argument("adjacency is not symmetric at (" + std::to_string(u) + ", " +
                                            std::to_string(v) + ")");
            }
        }
    }
}

GraphAdjacency GraphAdjacency::from_edges(std::size_t n,
                                          const std::vector<std::pair<std::size_t, std::size_t>> &edges) {
    std::vector<BitVector> rows(n, BitVector(n));
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (u == v) {
            throw std::invalid_argument("self loops are not allowed");
        }
        rows[u].set(v, true);
        rows[v].set(u, true);
    }
    return GraphAdjacency(std::move(rows));
}

GraphAdjacency GraphAdjacency::cycle(std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t v = 0; v < n && n >= 3; v++) {
        edges.emplace_back(v, (v + 1) % n);
    }
    return from_edges(n, edges);
}

GraphAdjacency GraphAdjacency::star(std::size_t n, std::size_t center) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t v = 0; v < n; v++) {
        if (v != center) {
            edges.emplace_back(center, v);
        }
    }
    return from_edges(n, edges);
}

GraphAdjacency GraphAdjacency::disjoint_union(const GraphAdjacency &a, const GraphAdjacency &b) {
    std::size_t offset = a.num_vertices();
    auto edges = a.edges();
    for (auto [u, v] : b.edges()) {
        edges.emplace_back(u + offset, v + offset);
    }
    return from_edges(offset + b.num_vertices(), edges);
}

std::vector<std::pair<std::size_t, std::size_t>> GraphAdjacency::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < rows_.size(); u++) {
        for (std::size_t v = u + 1; v < rows_.size(); v++) {
            if (rows_[u].get(v)) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

std::vector<PauliString> graph_stabilizers(const GraphAdjacency &adj) {
    std::size_t n = adj.num_vertices();
    std::vector<PauliString> out;
    out.reserve(n);
    for (std::size_t v = 0; v < n; v++) {
        BitVector x(n);
        x.set(v, true);
        out.emplace_back(std::move(x), adj.neighbors(v));
    }
    return out;
}

namespace {

void require_size(const GraphAdjacency &adj, const PauliString &p) {
    if (adj.num_vertices() != p.num_qubits()) {
        throw DimensionError("operator on " + std::to_string(p.num_qubits()) + " qubits applied to a " +
                             std::to_string(adj.num_vertices()) + "-vertex graph");
    }
}

// The unique group element whose X part matches `x`: prod_{v in x} g_v.
PauliString stabilizer_with_x_part(const GraphAdjacency &adj, const BitVector &x) {
    std::size_t n = adj.num_vertices();
    PauliString acc(n);
    for (std::size_t v = 0; v < n; v++) {
        if (x.get(v)) {
            BitVector gx(n);
            gx.set(v, true);
            acc = acc * PauliString(std::move(gx), adj.neighbors(v));
        }
    }
    return acc;
}

}  // namespace

std::optional<uint8_t> graph_expectation_phase(const GraphAdjacency &adj, const PauliString &p) {
    require_size(adj, p);
    PauliString s = stabilizer_with_x_part(adj, p.x_bits());
    if (s.z_bits() != p.z_bits()) {
        return std::nullopt;
    }
    // p = i^(p.phase - s.phase) * s and s|G> = |G>.
    return static_cast<uint8_t>((p.phase() + 4 - s.phase()) & 3);
}

std::complex<double> graph_expectation(const GraphAdjacency &adj, const PauliString &p) {
    static constexpr std::complex<double> kUnit[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    auto phase = graph_expectation_phase(adj, p);
    return phase ? kUnit[*phase] : std::complex<double>{0, 0};
}

void for_each_pauli_of_weight(std::size_t n, std::size_t w, const std::function<void(const PauliString &)> &visit) {
    if (w > n) {
        return;
    }
    std::vector<PauliString> all;
    std::vector<std::size_t> support(w);
    // Walk all w-subsets, then all 3^w letter assignments on each.
    std::vector<bool> chosen(n, false);
    std::fill(chosen.begin(), chosen.begin() + static_cast<std::ptrdiff_t>(w), true);
    do {
        std::size_t m = 0;
        for (std::size_t q = 0; q < n; q++) {
            if (chosen[q]) {
                support[m++] = q;
            }
        }
        std::size_t combos = 1;
        for (std::size_t e = 0; e < w; e++) {
            combos *= 3;
        }
        for (std::size_t c = 0; c < combos; c++) {
            BitVector x(n);
            BitVector z(n);
            std::size_t code = c;
            for (std::size_t e = 0; e < w; e++) {
                int letter = static_cast<int>(code % 3) + 1;
                code /= 3;
                x.set(support[e], letter == 1 || letter == 2);
                z.set(support[e], letter == 2 || letter == 3);
            }
            all.emplace_back(std::move(x), std::move(z));
        }
    } while (std::prev_permutation(chosen.begin(), chosen.end()));
    std::sort(all.begin(), all.end(), lex_less);
    for (const auto &p : all) {
        visit(p);
    }
}

namespace {

// Reduced row echelon form over GF(2); returns pivot columns.
std::vector<std::size_t> row_reduce(std::vector<BitVector> &rows, std::size_t num_cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < num_cols && r < rows.size(); c++) {
        std::size_t pick = r;
        while (pick < rows.size() && !rows[pick].get(c)) {
            pick++;
        }
        if (pick == rows.size()) {
            continue;
        }
        std::swap(rows[r], rows[pick]);
        for (std::size_t other = 0; other < rows.size(); other++) {
            if (other != r && rows[other].get(c)) {
                rows[other] ^= rows[r];
            }
        }
        pivots.push_back(c);
        r++;
    }
    rows.resize(r);
    return pivots;
}

std::string describe_violation(const PauliString &error, std::size_t i, std::size_t j, std::size_t n,
                               std::size_t d) {
    return "not a [[G,K,d]] code: error operator " + error.str() + " (weight " + std::to_string(weight(error)) +
           ") violates <G|Z^a" + std::to_string(i) + " E Z^a" + std::to_string(j) + "|G> = f(E) delta for n=" +
           std::to_string(n) + ", d=" + std::to_string(d);
}

}  // namespace

StabilizerCode build_code(const GraphAdjacency &adj, const std::vector<BitVector> &logical_z_vectors,
                          std::size_t claimed_d, std::string name) {
    std::size_t n = adj.num_vertices();
    if (n == 0) {
        throw std::invalid_argument("code needs at least one qubit");
    }
    if (logical_z_vectors.empty()) {
        throw std::invalid_argument("at least the all-zero logical vector is required");
    }
    for (const auto &a : logical_z_vectors) {
        if (a.size() != n) {
            throw DimensionError("logical vector length " + std::to_string(a.size()) + " does not match n=" +
                                 std::to_string(n));
        }
    }
    if (!logical_z_vectors.front().none()) {
        throw std::invalid_argument("first logical vector must be all-zero");
    }
    std::set<std::string> seen;
    for (const auto &a : logical_z_vectors) {
        if (!seen.insert(a.str()).second) {
            throw std::invalid_argument("logical vectors must be distinct (duplicate " + a.str() + ")");
        }
    }
    std::size_t K = logical_z_vectors.size();
    if ((K & (K - 1)) != 0) {
        throw std::invalid_argument("number of logical vectors must be a power of two for a stabilizer code");
    }
    for (const auto &a : logical_z_vectors) {
        for (const auto &b : logical_z_vectors) {
            if (!seen.contains((a ^ b).str())) {
                throw std::invalid_argument("logical vectors are not closed under addition; only additive codes "
                                            "are supported");
            }
        }
    }

    std::vector<PauliString> zs;
    zs.reserve(K);
    for (const auto &a : logical_z_vectors) {
        zs.push_back(PauliString(BitVector(n), a));
    }

    // Distinguishability: every error of weight < d.
    for (std::size_t w = 0; w < claimed_d && w <= n; w++) {
        for_each_pauli_of_weight(n, w, [&](const PauliString &e) {
            auto f = graph_expectation_phase(adj, e);
            for (std::size_t i = 0; i < K; i++) {
                PauliString left = zs[i] * e;
                for (std::size_t j = 0; j < K; j++) {
                    auto value = graph_expectation_phase(adj, left * zs[j]);
                    bool ok = i == j ? value == f : !value.has_value();
                    if (!ok) {
                        throw CodeVerificationError(describe_violation(e, i, j, n, claimed_d));
                    }
                }
            }
        });
    }

    StabilizerCode code;
    code.name_ = std::move(name);
    code.d_ = claimed_d;
    code.adjacency_ = adj;
    code.logical_vectors_ = logical_z_vectors;

    std::vector<BitVector> basis(logical_z_vectors.begin() + 1, logical_z_vectors.end());
    auto pivots = row_reduce(basis, n);
    code.k_ = basis.size();
    if ((std::size_t{1} << code.k_) != K) {
        throw std::invalid_argument("logical vectors do not span a space of dimension log2(K)");
    }
    for (const auto &a : basis) {
        code.logical_z_.push_back(PauliString(BitVector(n), a));
    }

    // Coding-space stabilizers: graph-group elements prod_{v in S} g_v with
    // S orthogonal to every logical vector.
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots) {
        is_pivot[c] = true;
    }
    for (std::size_t f = 0; f < n; f++) {
        if (is_pivot[f]) {
            continue;
        }
        BitVector s(n);
        s.set(f, true);
        for (std::size_t r = 0; r < basis.size(); r++) {
            if (basis[r].get(f)) {
                s.set(pivots[r], true);
            }
        }
        code.generators_.push_back(stabilizer_with_x_part(adj, s));
    }

    // Minimum-weight lookup table over all correctable errors.
    code.table_.emplace(Syndrome{BitVector(code.generators_.size())}, PauliString(n));
    for (std::size_t w = 1; w <= code.correctable_weight(); w++) {
        for_each_pauli_of_weight(n, w, [&](const PauliString &e) { code.table_.try_emplace(syndrome(code, e), e); });
    }
    return code;
}

Syndrome syndrome(const StabilizerCode &code, const PauliString &error) {
    if (error.num_qubits() != code.n()) {
        throw DimensionError("error on " + std::to_string(error.num_qubits()) + " qubits for a code with n=" +
                             std::to_string(code.n()));
    }
    const auto &gens = code.generators();
    Syndrome s{BitVector(gens.size())};
    for (std::size_t mu = 0; mu < gens.size(); mu++) {
        if (!commutes(gens[mu], error)) {
            s.bits.set(mu, true);
        }
    }
    return s;
}

std::optional<PauliString> decode(const StabilizerCode &code, const Syndrome &s) {
    if (s.size() != code.generators().size()) {
        throw DimensionError("syndrome has " + std::to_string(s.size()) + " bits, code has " +
                             std::to_string(code.generators().size()) + " generators");
    }
    auto it = code.syndrome_table().find(s);
    if (it == code.syndrome_table().end()) {
        return std::nullopt;
    }
    return it->second;
}

bool is_logical_failure(const StabilizerCode &code, const PauliString &residual) {
    if (residual.num_qubits() != code.n()) {
        throw DimensionError("residual size does not match code");
    }
    if (!graph_expectation_phase(code.adjacency(), residual).has_value()) {
        return true;
    }
    for (const auto &z : code.logical_z_operators()) {
        if (!commutes(z, residual)) {
            return true;
        }
    }
    return false;
}

}  // namespace qdt
