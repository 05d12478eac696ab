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

#include "qdt/pauli.h"

#include <ostream>

namespace qdt {

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

PauliString::PauliString(std::size_t n) : x_(n), z_(n) {}

PauliString::PauliString(BitVector x_bits, BitVector z_bits, uint8_t phase)
    : x_(std::move(x_bits)), z_(std::move(z_bits)), phase_(phase & 3) {
    if (x_.size() != z_.size()) {
        throw DimensionError("x and z bit vectors differ in length");
    }
}

PauliString PauliString::parse(std::string_view text) {
    uint8_t phase = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        phase = text[0] == '-' ? 2 : 0;
        text.remove_prefix(1);
    }
    if (!text.empty() && text[0] == 'i') {
        phase = (phase + 1) & 3;
        text.remove_prefix(1);
    }
    if (text.empty()) {
        throw std::invalid_argument("empty Pauli string");
    }
    PauliString out(text.size());
    out.phase_ = phase;
    for (std::size_t k = 0; k < text.size(); k++) {
        switch (text[k]) {
            case 'I':
            case '_':
                break;
            case 'X':
                out.x_.set(k, true);
                break;
            case 'Y':
                out.x_.set(k, true);
                out.z_.set(k, true);
                break;
            case 'Z':
                out.z_.set(k, true);
                break;
            default:
                throw std::invalid_argument("unexpected character in Pauli string: '" + std::string(1, text[k]) + "'");
        }
    }
    return out;
}

PauliString PauliString::single(std::size_t n, std::size_t k, Pauli p) {
    if (k >= n) {
        throw DimensionError("qubit index " + std::to_string(k) + " out of range for " + std::to_string(n) + " qubits");
    }
    PauliString out(n);
    int v = static_cast<int>(p);
    out.x_.set(k, v == 1 || v == 2);
    out.z_.set(k, v == 2 || v == 3);
    return out;
}

PauliString PauliString::from_xz_product(const BitVector &s, const BitVector &t) {
    // X^s Z^t: every qubit with s_k = t_k = 1 carries XZ = -iY.
    PauliString out(s, t, 0);
    std::size_t ys = (s & t).popcount();
    out.phase_ = static_cast<uint8_t>((4 - (ys & 3)) & 3);
    return out;
}

PauliString PauliString::with_phase(uint8_t phase) const {
    PauliString out = *this;
    out.phase_ = phase & 3;
    return out;
}

PauliString PauliString::times_i_pow(int k) const {
    PauliString out = *this;
    out.phase_ = static_cast<uint8_t>(((phase_ + k) % 4 + 4) % 4);
    return out;
}

std::string PauliString::str() const {
    static constexpr const char *kPrefix[4] = {"+", "+i", "-", "-i"};
    std::string out = kPrefix[phase_];
    for (std::size_t k = 0; k < num_qubits(); k++) {
        out.push_back(pauli_char(at(k)));
    }
    return out;
}

std::ostream &operator<<(std::ostream &out, const PauliString &p) { return out << p.str(); }

PauliString multiply(const PauliString &p, const PauliString &q) {
    if (p.num_qubits() != q.num_qubits()) {
        throw DimensionError("cannot multiply Pauli strings on " + std::to_string(p.num_qubits()) + " and " +
                             std::to_string(q.num_qubits()) + " qubits");
    }
    PauliString out = p;
    // Per qubit, P_a P_b = i^g P_c with g = +-1 exactly where the letters
    // anticommute. The sign is -1 when new_x ^ new_z ^ (x1 & z2) is set.
    unsigned log_i = p.phase_ + q.phase_;
    for (std::size_t w = 0; w < p.x_.num_words(); w++) {
        uint64_t x1 = p.x_.word(w);
        uint64_t z1 = p.z_.word(w);
        uint64_t x2 = q.x_.word(w);
        uint64_t z2 = q.z_.word(w);
        uint64_t nx = x1 ^ x2;
        uint64_t nz = z1 ^ z2;
        uint64_t x1z2 = x1 & z2;
        uint64_t anti = (x2 & z1) ^ x1z2;
        uint64_t negative = (nx ^ nz ^ x1z2) & anti;
        log_i += std::popcount(anti) + 2 * std::popcount(negative);
        out.x_.word(w) = nx;
        out.z_.word(w) = nz;
    }
    out.phase_ = static_cast<uint8_t>(log_i & 3);
    return out;
}

bool commutes(const PauliString &p, const PauliString &q) {
    if (p.num_qubits() != q.num_qubits()) {
        throw DimensionError("commutation check between " + std::to_string(p.num_qubits()) + " and " +
                             std::to_string(q.num_qubits()) + " qubits");
    }
    uint64_t acc = 0;
    for (std::size_t w = 0; w < p.x_bits().num_words(); w++) {
        acc ^= (p.x_bits().word(w) & q.z_bits().word(w)) ^ (p.z_bits().word(w) & q.x_bits().word(w));
    }
    return (std::popcount(acc) & 1) == 0;
}

std::size_t weight(const PauliString &p) {
    std::size_t total = 0;
    for (std::size_t w = 0; w < p.x_bits().num_words(); w++) {
        total += std::popcount(p.x_bits().word(w) | p.z_bits().word(w));
    }
    return total;
}

std::array<std::pair<PauliString, double>, 4> exchange_decomposition(std::size_t i, std::size_t j, std::size_t n) {
    if (i == j) {
        throw std::invalid_argument("exchange operator needs two distinct qubits");
    }
    if (i >= n || j >= n) {
        throw DimensionError("exchange qubit index out of range");
    }
    std::array<std::pair<PauliString, double>, 4> terms;
    for (int alpha = 0; alpha < 4; alpha++) {
        auto p = static_cast<Pauli>(alpha);
        terms[alpha] = {PauliString::single(n, i, p) * PauliString::single(n, j, p), 0.5};
    }
    return terms;
}

bool lex_less(const PauliString &a, const PauliString &b) {
    if (a.x_bits() != b.x_bits()) {
        return a.x_bits() < b.x_bits();
    }
    return a.z_bits() < b.z_bits();
}

}  // namespace qdt
