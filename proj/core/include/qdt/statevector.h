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

// Dense brute-force simulator used to check the exchange/measurement
// statistics directly on amplitudes. Qubit k is bit k of the basis index;
// kets are written with qubit 0 leftmost.

#ifndef QDT_STATEVECTOR_H
#define QDT_STATEVECTOR_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdt/graph_code.h"
#include "qdt/pauli.h"

namespace qdt {

using Amplitude = std::complex<double>;

struct OracleLimitError : std::length_error {
    using std::length_error::length_error;
};

class Statevector {
   public:
    static constexpr std::size_t kMaxQubits = 20;

    /// |0...0> on n qubits.
    explicit Statevector(std::size_t n);
    /// Takes ownership of 2^n amplitudes; no normalization is applied.
    Statevector(std::size_t n, std::vector<Amplitude> amplitudes);

    /// Computational basis state from a ket label such as "0110".
    static Statevector from_ket(std::string_view bits);

    std::size_t num_qubits() const { return n_; }
    std::size_t dimension() const { return amps_.size(); }
    const std::vector<Amplitude> &amplitudes() const { return amps_; }
    Amplitude operator[](std::size_t index) const { return amps_[index]; }

    double norm() const;
    Statevector normalized() const;

   private:
    std::size_t n_;
    std::vector<Amplitude> amps_;
};

/// <a|b>.
Amplitude inner_product(const Statevector &a, const Statevector &b);
/// |a> (x) |b>, with `a` occupying the low qubit indices.
Statevector tensor(const Statevector &a, const Statevector &b);
/// Largest componentwise amplitude difference.
double max_abs_difference(const Statevector &a, const Statevector &b);
/// |<a|b>| = |a| |b| within `tol`, i.e. equal up to a global phase.
bool equal_up_to_global_phase(const Statevector &a, const Statevector &b, double tol = 1e-10);

/// Haar-random pure state (normalized complex Gaussian amplitudes).
Statevector random_state(std::size_t n, std::mt19937_64 &rng);

/// Uniform superposition followed by a controlled-phase per edge.
Statevector graph_state_vector(const GraphAdjacency &adj);
/// Z^{a}|G> superposed with the given logical amplitudes: sum_i c_i Z^{a^i}|G>.
Statevector encode_logical(const StabilizerCode &code, std::span<const Amplitude> logical_amplitudes);

Statevector apply_pauli(const Statevector &state, const PauliString &p);
/// Exchanges the values of bits i and j in every basis index.
Statevector swap_qubits(const Statevector &state, std::size_t i, std::size_t j);
/// sum_t c_t P_t |state>.
Statevector apply_operator_sum(const Statevector &state, std::span<const std::pair<PauliString, double>> terms);

/// Places `p` on qubits [offset, offset + p.n) of a `total`-qubit register.
PauliString embed_pauli(const PauliString &p, std::size_t offset, std::size_t total);

/// One leaf of a projective stabilizer measurement.
struct MeasurementBranch {
    BitVector outcomes;  // tau_mu per observable
    double probability = 0;
    Statevector post_state{0};
};

/// Applies M_{mu,tau} = (1 + (-1)^tau G_mu) / 2 for every observable and
/// every outcome, keeping branches with probability above `min_probability`.
/// Post-states are renormalized.
std::vector<MeasurementBranch> measure_stabilizers(const Statevector &state, std::span<const PauliString> observables,
                                                   double min_probability = 1e-14);

/// Samples one outcome per observable in order, collapsing between
/// measurements.
MeasurementBranch sample_measurement(const Statevector &state, std::span<const PauliString> observables,
                                     std::mt19937_64 &rng);

/// One labelled branch of an exchange followed by measurement.
struct Branch {
    int alpha = -1;  // twined Pauli label 0..3, -1 if unidentified
    double probability = 0;
    Statevector post_state{0};
    BitVector outcomes;
};

struct BranchReport {
    std::vector<Branch> branches;

    double total_probability() const;
    const Branch *find(int alpha) const;
};

/// Exchanges qubit i of register A with qubit j of register B, then
/// measures the coding-space generators of both codes. Each branch is
/// labelled by the alpha for which (sigma_alpha)_i (x) (sigma_alpha)_j has
/// the observed syndrome. With `apply_exchange == false` the same
/// measurement runs on the untouched pair (control run).
BranchReport qems_branches(const StabilizerCode &code_a, const Statevector &state_a, const StabilizerCode &code_b,
                           const Statevector &state_b, std::size_t i, std::size_t j, bool apply_exchange = true);

/// Single qubit |phi> next to a Bell pair: the intended layout is
/// |Phi+>_{01} |phi>_2, qubits 0 and 2 are exchanged and {X0X1, Z0Z1} is
/// measured. Branch alpha leaves (sigma_alpha)_0|Phi+> (x) sigma_alpha|phi>.
BranchReport teleport_qems(const Statevector &phi);

/// A (register, qubit) position taking part in a permutation.
struct Slot {
    std::size_t state = 0;
    std::size_t qubit = 0;
};

/// Transpositions realizing the cycle V_{12...m} = V_12 V_13 ... V_1m over
/// slot indices, listed left to right as written in the product.
std::vector<std::pair<std::size_t, std::size_t>> cycle_transpositions(std::size_t m);

struct PatternHistogram {
    /// Pattern string (one letter per slot, slot order) -> probability.
    std::map<std::string, double> probability;
    /// Sorted-letter pattern type (e.g. "IXX", "XYZ") -> number of distinct
    /// patterns observed of that type.
    std::map<std::string, int> type_counts;
    /// Observed patterns whose letter product is not proportional to I.
    int rule_violations = 0;
};

/// Applies the product of exchanges (rightmost first) to the joint state,
/// measures every register's code generators and histograms the error
/// pattern seen on the slots. Each register may host at most one slot.
PatternHistogram permutation_statistics(const std::vector<Statevector> &states,
                                        const std::vector<StabilizerCode> &codes, const std::vector<Slot> &slots,
                                        const std::vector<std::pair<std::size_t, std::size_t>> &transpositions);

}  // namespace qdt

#endif  // QDT_STATEVECTOR_H
