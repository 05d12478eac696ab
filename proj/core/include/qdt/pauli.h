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

#ifndef QDT_PAULI_H
#define QDT_PAULI_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include "qdt/bits.h"

namespace qdt {

/// Single-qubit Pauli label. The numeric value is the alpha index of
/// sigma_alpha, so {I, X, Y, Z} = {0, 1, 2, 3}.
enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

/// A phased n-qubit Pauli operator in symplectic form.
///
/// The operator represented is `i^phase * P_0 (x) P_1 (x) ... (x) P_{n-1}`
/// where `P_k` is the letter selected by `(x_k, z_k)`:
/// (0,0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z. With this convention the operator
/// is Hermitian exactly when the phase is even.
///
/// Values are immutable in spirit: every operation returns a new string.
class PauliString {
   public:
    PauliString() = default;
    /// Identity on `n` qubits.
    explicit PauliString(std::size_t n);
    PauliString(BitVector x_bits, BitVector z_bits, uint8_t phase = 0);

    /// Parses e.g. "XZZXI", "-iYYZ", "+_X_" ('_' is accepted for identity).
    static PauliString parse(std::string_view text);
    /// A single Pauli on qubit `k`, identity elsewhere.
    static PauliString single(std::size_t n, std::size_t k, Pauli p);
    /// X^s Z^t with the plain product convention (no Y relabelling), i.e.
    /// the operator (prod_k X_k^{s_k}) (prod_k Z_k^{t_k}).
    static PauliString from_xz_product(const BitVector &s, const BitVector &t);

    std::size_t num_qubits() const { return x_.size(); }
    const BitVector &x_bits() const { return x_; }
    const BitVector &z_bits() const { return z_; }
    uint8_t phase() const { return phase_; }

    Pauli at(std::size_t k) const {
        return static_cast<Pauli>((x_.get(k) ? 1 : 0) + (z_.get(k) ? (x_.get(k) ? 1 : 3) : 0));
    }

    bool is_hermitian() const { return (phase_ & 1) == 0; }
    /// True when every qubit carries I (the phase may be anything).
    bool is_identity_up_to_phase() const { return x_.none() && z_.none(); }

    PauliString with_phase(uint8_t phase) const;
    /// Multiplies the overall scalar by i^k.
    PauliString times_i_pow(int k) const;

    std::string str() const;

    friend bool operator==(const PauliString &a, const PauliString &b) = default;

   private:
    friend PauliString multiply(const PauliString &p, const PauliString &q);

    BitVector x_;
    BitVector z_;
    uint8_t phase_ = 0;
};

std::ostream &operator<<(std::ostream &out, const PauliString &p);

/// Exact operator product p*q, phase included.
PauliString multiply(const PauliString &p, const PauliString &q);
inline PauliString operator*(const PauliString &p, const PauliString &q) { return multiply(p, q); }

/// Symplectic commutation test.
bool commutes(const PauliString &p, const PauliString &q);

/// Number of qubits on which `p` acts non-trivially.
std::size_t weight(const PauliString &p);

/// The four Pauli-product terms of the two-qubit exchange operator
/// V_ij = (II + XX + YY + ZZ) / 2, as (operator, real coefficient) pairs
/// ordered by alpha = 0..3.
std::array<std::pair<PauliString, double>, 4> exchange_decomposition(std::size_t i, std::size_t j, std::size_t n);

/// Strict weak order on the (x_bits, z_bits) encoding, ignoring phase.
bool lex_less(const PauliString &a, const PauliString &b);

}  // namespace qdt

#endif  // QDT_PAULI_H
