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

#ifndef QDT_QDE_CHANNEL_H
#define QDT_QDE_CHANNEL_H

#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdt/pauli.h"

namespace qdt {

enum class ModelKind { Edm, Ldm, PowerTail };

std::string_view model_kind_name(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

/// Arrival-time density of the physical qubits of one encoded signal,
/// calibrated so the per-qubit overlap probability at the reference
/// spacing L equals q.
///
///   EDM:       f(t) = a exp(-a (t - t_i)),                          t > t_i
///   LDM:       f(t) = sqrt(c / 2pi) exp(-c / 2(t - t_i)) / (t - t_i)^{3/2}
///   PowerTail: f(t) = alpha (t - t_i)^{-s} for t - t_i >= x_min (Pareto)
///
/// The overlap probability is p = lambda * S_c, S_c being the area shared
/// by two neighbouring densities; lambda defaults to 1/2.
class DistributionModel {
   public:
    static DistributionModel edm(double q, double spacing_L = 1.0, double lambda = 0.5);
    static DistributionModel ldm(double q, double spacing_L = 1.0, double lambda = 0.5);
    static DistributionModel power_tail(double q, double s, double spacing_L = 1.0, double lambda = 0.5);

    ModelKind kind() const { return kind_; }
    double q() const { return q_; }
    double spacing_L() const { return L_; }
    double lambda() const { return lambda_; }

    /// EDM decay rate a.
    double rate() const { return a_; }
    /// LDM scale c.
    double scale() const { return c_; }
    /// Power-tail coefficient alpha and exponent s.
    double tail_coefficient() const { return alpha_; }
    double tail_exponent() const { return s_; }
    /// Lower cutoff of the power-tail density (where it integrates to 1).
    double tail_cutoff() const;

    /// Density of a signal centred at 0, evaluated at offset t.
    double density(double t) const;

   private:
    DistributionModel() = default;

    ModelKind kind_ = ModelKind::Edm;
    double q_ = 0;
    double L_ = 1;
    double lambda_ = 0.5;
    double a_ = 0;
    double c_ = 0;
    double alpha_ = 0;
    double s_ = 0;
};

/// Closed-form per-qubit QDE probability at spacing l:
///   EDM: lambda (q / lambda)^{l/L}   (= (2q)^{l/L} / 2 for lambda = 1/2)
///   LDM: sqrt(L / l) q
///   PowerTail: (L / l)^{s-1} q
/// clamped to [0, 1/2].
double overlap_probability(const DistributionModel &model, double l);

/// lambda * integral of min(f_A, f_B) for signals spaced l apart, by
/// adaptive quadrature on the exact densities.
double empirical_overlap_probability(const DistributionModel &model, double l);

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// n i.i.d. arrival times from the model around t_i. EDM uses the
/// inverse CDF, LDM uses t_i + c / Z^2 with Z standard normal, the power
/// tail uses the Pareto inverse CDF.
std::vector<double> sample_arrival_times(const DistributionModel &model, double t_i, std::size_t n,
                                         std::mt19937_64 &rng);

/// Per-qubit QDE flags with their twined Pauli labels.
struct QdeSample {
    /// Flagged qubit positions in increasing order.
    std::vector<std::size_t> positions;
    /// Twined label for each flagged position, uniform over I, X, Y, Z.
    std::vector<Pauli> labels;
    std::size_t num_qubits = 0;

    std::size_t flag_count() const { return positions.size(); }
    /// The error this sample applies to one codeword.
    PauliString error() const;
};

/// Flags each of n positions independently with probability p and draws a
/// uniform twined label for each flag.
QdeSample sample_qde(double p, std::size_t n, std::mt19937_64 &rng);

/// Uniform double in (0, 1], built from the top 53 bits of one draw.
inline double uniform_open_closed(std::mt19937_64 &rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace qdt

#endif  // QDT_QDE_CHANNEL_H
