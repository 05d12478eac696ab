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

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

namespace qdt {

namespace {

void require_oracle_size(std::size_t n) {
    if (n > Statevector::kMaxQubits) {
        throw OracleLimitError("statevector oracle is limited to " + std::to_string(Statevector::kMaxQubits) +
                               " qubits, requested " + std::to_string(n));
    }
}

void require_same_qubits(const Statevector &a, const Statevector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionError("statevectors on " + std::to_string(a.num_qubits()) + " and " +
                             std::to_string(b.num_qubits()) + " qubits");
    }
}

constexpr Amplitude kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

Statevector::Statevector(std::size_t n) : n_(n) {
    require_oracle_size(n);
    amps_.assign(std::size_t{1} << n, Amplitude{0, 0});
    amps_[0] = 1;
}

Statevector::Statevector(std::size_t n, std::vector<Amplitude> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    require_oracle_size(n);
    if (amps_.size() != (std::size_t{1} << n)) {
        throw DimensionError("expected 2^" + std::to_string(n) + " amplitudes, got " + std::to_string(amps_.size()));
    }
}

Statevector Statevector::from_ket(std::string_view bits) {
    std::size_t index = 0;
    for (std::size_t k = 0; k < bits.size(); k++) {
        if (bits[k] == '1') {
            index |= std::size_t{1} << k;
        } else if (bits[k] != '0') {
            throw std::invalid_argument("ket label may only contain 0 and 1");
        }
    }
    std::vector<Amplitude> amps(std::size_t{1} << bits.size());
    amps[index] = 1;
    return Statevector(bits.size(), std::move(amps));
}

double Statevector::norm() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return std::sqrt(total);
}

Statevector Statevector::normalized() const {
    double scale = norm();
    if (scale == 0) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    std::vector<Amplitude> out(amps_);
    for (auto &a : out) {
        a /= scale;
    }
    return Statevector(n_, std::move(out));
}

Amplitude inner_product(const Statevector &a, const Statevector &b) {
    require_same_qubits(a, b);
    Amplitude total = 0;
    for (std::size_t k = 0; k < a.dimension(); k++) {
        total += std::conj(a[k]) * b[k];
    }
    return total;
}

Statevector tensor(const Statevector &a, const Statevector &b) {
    std::size_t n = a.num_qubits() + b.num_qubits();
    require_oracle_size(n);
    std::vector<Amplitude> out(std::size_t{1} << n);
    for (std::size_t hi = 0; hi < b.dimension(); hi++) {
        for (std::size_t lo = 0; lo < a.dimension(); lo++) {
            out[(hi << a.num_qubits()) | lo] = a[lo] * b[hi];
        }
    }
    return Statevector(n, std::move(out));
}

double max_abs_difference(const Statevector &a, const Statevector &b) {
    require_same_qubits(a, b);
    double worst = 0;
    for (std::size_t k = 0; k < a.dimension(); k++) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

bool equal_up_to_global_phase(const Statevector &a, const Statevector &b, double tol) {
    double na = a.norm();
    double nb = b.norm();
    if (std::abs(na - nb) > tol) {
        return false;
    }
    return std::abs(std::abs(inner_product(a, b)) - na * nb) <= tol;
}

Statevector random_state(std::size_t n, std::mt19937_64 &rng) {
    require_oracle_size(n);
    std::normal_distribution<double> gauss;
    std::vector<Amplitude> amps(std::size_t{1} << n);
    for (auto &a : amps) {
        double re = gauss(rng);
        double im = gauss(rng);
        a = {re, im};
    }
    return Statevector(n, std::move(amps)).normalized();
}

Statevector graph_state_vector(const GraphAdjacency &adj) {
    std::size_t n = adj.num_vertices();
    require_oracle_size(n);
    std::vector<uint64_t> neighbor_masks(n);
    for (std::size_t v = 0; v < n; v++) {
        neighbor_masks[v] = adj.neighbors(v).to_u64();
    }
    double scale = std::pow(2.0, -0.5 * static_cast<double>(n));
    std::vector<Amplitude> amps(std::size_t{1} << n);
    for (std::size_t index = 0; index < amps.size(); index++) {
        // Each edge {u,v} with both endpoints set contributes a -1; summing
        // popcount(index & N(v)) over set v counts every such edge twice.
        unsigned twice_edges = 0;
        for (std::size_t v = 0; v < n; v++) {
            if ((index >> v) & 1) {
                twice_edges += std::popcount(index & neighbor_masks[v]);
            }
        }
        amps[index] = ((twice_edges / 2) & 1) ? -scale : scale;
    }
    return Statevector(n, std::move(amps));
}

Statevector encode_logical(const StabilizerCode &code, std::span<const Amplitude> logical_amplitudes) {
    const auto &vectors = code.logical_z_vectors();
    if (logical_amplitudes.size() != vectors.size()) {
        throw DimensionError("expected " + std::to_string(vectors.size()) + " logical amplitudes");
    }
    Statevector g = graph_state_vector(code.adjacency());
    std::vector<Amplitude> out(g.dimension());
    for (std::size_t i = 0; i < vectors.size(); i++) {
        Statevector word = apply_pauli(g, PauliString(BitVector(code.n()), vectors[i]));
        for (std::size_t k = 0; k < out.size(); k++) {
            out[k] += logical_amplitudes[i] * word[k];
        }
    }
    return Statevector(code.n(), std::move(out)).normalized();
}

Statevector apply_pauli(const Statevector &state, const PauliString &p) {
    if (p.num_qubits() != state.num_qubits()) {
        throw DimensionError("Pauli on " + std::to_string(p.num_qubits()) + " qubits applied to " +
                             std::to_string(state.num_qubits()) + "-qubit state");
    }
    uint64_t xmask = p.x_bits().to_u64();
    uint64_t zmask = p.z_bits().to_u64();
    // Y = iXZ: apply Z, then X, then the accumulated power of i.
    unsigned base = (p.phase() + std::popcount(xmask & zmask)) & 3;
    Amplitude plus = kIPow[base];
    Amplitude minus = kIPow[(base + 2) & 3];
    std::vector<Amplitude> out(state.dimension());
    for (std::size_t index = 0; index < out.size(); index++) {
        bool odd = std::popcount(index & zmask) & 1;
        out[index ^ xmask] = (odd ? minus : plus) * state[index];
    }
    return Statevector(state.num_qubits(), std::move(out));
}

Statevector swap_qubits(const Statevector &state, std::size_t i, std::size_t j) {
    if (i == j) {
        throw std::invalid_argument("swap needs two distinct qubits");
    }
    if (i >= state.num_qubits() || j >= state.num_qubits()) {
        throw DimensionError("swap qubit index out of range");
    }
    std::vector<Amplitude> out(state.dimension());
    for (std::size_t index = 0; index < out.size(); index++) {
        std::size_t bi = (index >> i) & 1;
        std::size_t bj = (index >> j) & 1;
        std::size_t target = index;
        if (bi != bj) {
            target ^= (std::size_t{1} << i) | (std::size_t{1} << j);
        }
        out[target] = state[index];
    }
    return Statevector(state.num_qubits(), std::move(out));
}

Statevector apply_operator_sum(const Statevector &state, std::span<const std::pair<PauliString, double>> terms) {
    std::vector<Amplitude> out(state.dimension());
    for (const auto &[p, c] : terms) {
        Statevector part = apply_pauli(state, p);
        for (std::size_t k = 0; k < out.size(); k++) {
            out[k] += c * part[k];
        }
    }
    return Statevector(state.num_qubits(), std::move(out));
}

PauliString embed_pauli(const PauliString &p, std::size_t offset, std::size_t total) {
    if (offset + p.num_qubits() > total) {
        throw DimensionError("embedded Pauli does not fit in the register");
    }
    BitVector x(total);
    BitVector z(total);
    for (std::size_t k = 0; k < p.num_qubits(); k++) {
        x.set(offset + k, p.x_bits().get(k));
        z.set(offset + k, p.z_bits().get(k));
    }
    return PauliString(std::move(x), std::move(z), p.phase());
}

namespace {

// (1 + sign * G) / 2 applied to `state`, unnormalized.
std::vector<Amplitude> project(const Statevector &state, const PauliString &g, bool negative) {
    Statevector gs = apply_pauli(state, g);
    double sign = negative ? -1.0 : 1.0;
    std::vector<Amplitude> out(state.dimension());
    for (std::size_t k = 0; k < out.size(); k++) {
        out[k] = 0.5 * (state[k] + sign * gs[k]);
    }
    return out;
}

void require_hermitian(std::span<const PauliString> observables, std::size_t n) {
    for (const auto &g : observables) {
        if (g.num_qubits() != n) {
            throw DimensionError("observable size does not match the state");
        }
        if (!g.is_hermitian()) {
            throw std::invalid_argument("measured observable " + g.str() + " is not Hermitian");
        }
    }
}

}  // namespace

std::vector<MeasurementBranch> measure_stabilizers(const Statevector &state, std::span<const PauliString> observables,
                                                   double min_probability) {
    require_hermitian(observables, state.num_qubits());
    double base = state.norm();
    std::vector<MeasurementBranch> frontier;
    frontier.push_back({BitVector(observables.size()), 1.0, state});
    for (std::size_t mu = 0; mu < observables.size(); mu++) {
        std::vector<MeasurementBranch> next;
        for (const auto &branch : frontier) {
            for (int tau = 0; tau < 2; tau++) {
                Statevector projected(state.num_qubits(), project(branch.post_state, observables[mu], tau == 1));
                double weight = projected.norm() / base;
                double probability = weight * weight;
                if (probability <= min_probability) {
                    continue;
                }
                MeasurementBranch child{branch.outcomes, probability, std::move(projected)};
                child.outcomes.set(mu, tau == 1);
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    for (auto &branch : frontier) {
        branch.post_state = branch.post_state.normalized();
    }
    return frontier;
}

MeasurementBranch sample_measurement(const Statevector &state, std::span<const PauliString> observables,
                                     std::mt19937_64 &rng) {
    require_hermitian(observables, state.num_qubits());
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    MeasurementBranch current{BitVector(observables.size()), 1.0, state.normalized()};
    for (std::size_t mu = 0; mu < observables.size(); mu++) {
        Statevector zero(state.num_qubits(), project(current.post_state, observables[mu], false));
        double p0 = zero.norm() * zero.norm();
        bool tau = uniform(rng) >= p0;
        Statevector chosen =
            tau ? Statevector(state.num_qubits(), project(current.post_state, observables[mu], true)) : zero;
        current.probability *= tau ? 1.0 - p0 : p0;
        current.outcomes.set(mu, tau);
        current.post_state = chosen.normalized();
    }
    return current;
}

double BranchReport::total_probability() const {
    double total = 0;
    for (const auto &b : branches) {
        total += b.probability;
    }
    return total;
}

const Branch *BranchReport::find(int alpha) const {
    for (const auto &b : branches) {
        if (b.alpha == alpha) {
            return &b;
        }
    }
    return nullptr;
}

namespace {

std::vector<PauliString> lifted_generators(const StabilizerCode &code, std::size_t offset, std::size_t total) {
    std::vector<PauliString> out;
    for (const auto &g : code.generators()) {
        out.push_back(embed_pauli(g, offset, total));
    }
    return out;
}

}  // namespace

BranchReport qems_branches(const StabilizerCode &code_a, const Statevector &state_a, const StabilizerCode &code_b,
                           const Statevector &state_b, std::size_t i, std::size_t j, bool apply_exchange) {
    if (state_a.num_qubits() != code_a.n() || state_b.num_qubits() != code_b.n()) {
        throw DimensionError("register sizes do not match their codes");
    }
    if (i >= code_a.n() || j >= code_b.n()) {
        throw DimensionError("exchange qubit index out of range");
    }
    std::size_t na = code_a.n();
    std::size_t total = na + code_b.n();
    require_oracle_size(total);
    Statevector joint = tensor(state_a, state_b);
    if (apply_exchange) {
        joint = swap_qubits(joint, i, na + j);
    }
    std::vector<PauliString> observables = lifted_generators(code_a, 0, total);
    auto more = lifted_generators(code_b, na, total);
    observables.insert(observables.end(), more.begin(), more.end());

    // Expected outcome pattern of each twined error.
    std::vector<BitVector> signature(4, BitVector(observables.size()));
    for (int alpha = 0; alpha < 4; alpha++) {
        auto p = static_cast<Pauli>(alpha);
        PauliString twin = PauliString::single(total, i, p) * PauliString::single(total, na + j, p);
        for (std::size_t mu = 0; mu < observables.size(); mu++) {
            signature[alpha].set(mu, !commutes(observables[mu], twin));
        }
    }

    BranchReport report;
    for (auto &leaf : measure_stabilizers(joint, observables)) {
        Branch b;
        for (int alpha = 0; alpha < 4; alpha++) {
            if (signature[alpha] == leaf.outcomes) {
                b.alpha = alpha;
                break;
            }
        }
        b.probability = leaf.probability;
        b.post_state = std::move(leaf.post_state);
        b.outcomes = std::move(leaf.outcomes);
        report.branches.push_back(std::move(b));
    }
    return report;
}

BranchReport teleport_qems(const Statevector &phi) {
    if (phi.num_qubits() != 1) {
        throw DimensionError("teleport example expects a single-qubit state");
    }
    const double h = 1.0 / std::sqrt(2.0);
    Statevector bell(2, {h, 0, 0, h});
    Statevector joint = swap_qubits(tensor(bell, phi.normalized()), 0, 2);
    std::vector<PauliString> observables = {PauliString::parse("XXI"), PauliString::parse("ZZI")};

    BranchReport report;
    for (auto &leaf : measure_stabilizers(joint, observables)) {
        Branch b;
        for (int alpha = 0; alpha < 4; alpha++) {
            PauliString e = PauliString::single(3, 0, static_cast<Pauli>(alpha));
            BitVector expected(2);
            expected.set(0, !commutes(observables[0], e));
            expected.set(1, !commutes(observables[1], e));
            if (expected == leaf.outcomes) {
                b.alpha = alpha;
            }
        }
        b.probability = leaf.probability;
        b.post_state = std::move(leaf.post_state);
        b.outcomes = std::move(leaf.outcomes);
        report.branches.push_back(std::move(b));
    }
    return report;
}

std::vector<std::pair<std::size_t, std::size_t>> cycle_transpositions(std::size_t m) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t k = 1; k < m; k++) {
        out.emplace_back(0, k);
    }
    return out;
}

PatternHistogram permutation_statistics(const std::vector<Statevector> &states,
                                        const std::vector<StabilizerCode> &codes, const std::vector<Slot> &slots,
                                        const std::vector<std::pair<std::size_t, std::size_t>> &transpositions) {
    if (states.size() != codes.size() || states.empty()) {
        throw std::invalid_argument("need one code per register");
    }
    std::vector<std::size_t> offset(states.size());
    std::size_t total = 0;
    for (std::size_t s = 0; s < states.size(); s++) {
        if (states[s].num_qubits() != codes[s].n()) {
            throw DimensionError("register " + std::to_string(s) + " does not match its code");
        }
        offset[s] = total;
        total += states[s].num_qubits();
    }
    require_oracle_size(total);

    std::set<std::size_t> hosts;
    for (const auto &slot : slots) {
        if (slot.state >= states.size() || slot.qubit >= states[slot.state].num_qubits()) {
            throw std::invalid_argument("invalid permutation: slot out of range");
        }
        if (!hosts.insert(slot.state).second) {
            throw std::invalid_argument("invalid permutation: register " + std::to_string(slot.state) +
                                        " hosts more than one slot");
        }
    }
    for (auto [a, b] : transpositions) {
        if (a >= slots.size() || b >= slots.size() || a == b) {
            throw std::invalid_argument("invalid permutation: bad transposition (" + std::to_string(a) + ", " +
                                        std::to_string(b) + ")");
        }
    }

    Statevector joint = states[0];
    for (std::size_t s = 1; s < states.size(); s++) {
        joint = tensor(joint, states[s]);
    }
    for (auto it = transpositions.rbegin(); it != transpositions.rend(); ++it) {
        const Slot &a = slots[it->first];
        const Slot &b = slots[it->second];
        joint = swap_qubits(joint, offset[a.state] + a.qubit, offset[b.state] + b.qubit);
    }

    std::vector<PauliString> observables;
    std::vector<std::size_t> first_observable(states.size());
    for (std::size_t s = 0; s < states.size(); s++) {
        first_observable[s] = observables.size();
        auto lifted = lifted_generators(codes[s], offset[s], total);
        observables.insert(observables.end(), lifted.begin(), lifted.end());
    }

    PatternHistogram hist;
    for (const auto &leaf : measure_stabilizers(joint, observables)) {
        std::string pattern;
        PauliString product(1);
        for (const auto &slot : slots) {
            const StabilizerCode &code = codes[slot.state];
            std::size_t gens = code.generators().size();
            char letter = '?';
            for (int alpha = 0; alpha < 4; alpha++) {
                Syndrome expected = syndrome(code, PauliString::single(code.n(), slot.qubit, static_cast<Pauli>(alpha)));
                bool match = true;
                for (std::size_t mu = 0; mu < gens && match; mu++) {
                    match = expected.bits.get(mu) == leaf.outcomes.get(first_observable[slot.state] + mu);
                }
                if (match) {
                    letter = pauli_char(static_cast<Pauli>(alpha));
                    product = product * PauliString::single(1, 0, static_cast<Pauli>(alpha));
                    break;
                }
            }
            pattern.push_back(letter);
        }
        if (pattern.find('?') != std::string::npos || !product.is_identity_up_to_phase()) {
            hist.rule_violations++;
        }
        hist.probability[pattern] += leaf.probability;
    }
    for (const auto &[pattern, prob] : hist.probability) {
        std::string type = pattern;
        std::sort(type.begin(), type.end());
        hist.type_counts[type]++;
    }
    return hist;
}

}  // namespace qdt
