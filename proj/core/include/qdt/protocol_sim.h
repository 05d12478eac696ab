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

// Monte Carlo of the encode -> exchange -> measure -> decode pipeline using
// a symbolic Pauli error frame.

#ifndef QDT_PROTOCOL_SIM_H
#define QDT_PROTOCOL_SIM_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qdt/graph_code.h"
#include "qdt/qde_channel.h"

namespace qdt {

enum class ProbabilityMode { Analytic, Empirical };

std::string_view mode_name(ProbabilityMode mode);
ProbabilityMode parse_mode(std::string_view name);

struct SimConfig {
    std::string code = "ring5";
    DistributionModel model = DistributionModel::edm(0.01);
    /// Exactly one of spacing (in the same time unit as L) or target ratio
    /// N'_m / N_m = L / l must be set.
    std::optional<double> spacing;
    std::optional<double> target_ratio;
    uint64_t trials = 0;
    uint64_t seed = 0;
    ProbabilityMode mode = ProbabilityMode::Analytic;
    /// Worker cap. Results do not depend on it.
    unsigned threads = 1;
};

/// Throws std::invalid_argument on a malformed config.
void validate(const SimConfig &config);
double resolved_spacing(const SimConfig &config);
/// Per-qubit QDE probability the config implies.
double resolved_probability(const SimConfig &config);

enum class Outcome { Success, Corrected, LogicalFailure };

std::string_view outcome_name(Outcome outcome);

/// Decodes one error on one codeword and classifies the residual.
Outcome classify_error(const StabilizerCode &code, const PauliString &error);

struct TrialResult {
    Outcome outcome = Outcome::Success;
    /// The adjacent codeword carries the twin error and is decoded on its own.
    Outcome partner_outcome = Outcome::Success;
    std::size_t flags = 0;
    std::size_t nontrivial_flags = 0;
};

/// Error-frame pipeline for a given QDE sample.
TrialResult run_trial(const StabilizerCode &code, const QdeSample &sample);
/// Samples the QDE channel at probability p, then runs the pipeline.
TrialResult run_trial(const StabilizerCode &code, double p, std::mt19937_64 &rng);

struct SimReport {
    std::string code;
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t d = 0;
    std::size_t r = 0;
    std::string model;
    std::string mode;
    double q = 0;
    double spacing = 0;
    double ratio = 0;
    double p = 0;
    uint64_t seed = 0;
    uint64_t trials = 0;

    /// Index j counts codewords with exactly j flagged qubits.
    std::vector<uint64_t> qde_histogram;
    uint64_t successes = 0;
    uint64_t corrected = 0;
    uint64_t failures = 0;
    uint64_t partner_failures = 0;

    double observed_failure_rate = 0;
    double wilson_low = 0;
    double wilson_high = 0;
    double predicted_failure_rate = 0;
    /// Binomial standard deviation of the observed rate around the prediction.
    double sigma = 0;
    double z_score = 0;
    double observed_over_predicted = 0;
};

/// Deterministic in (config, seed); independent of config.threads.
SimReport run_monte_carlo(const SimConfig &config);

std::string report_to_json(const SimReport &report);
std::string report_to_text(const SimReport &report);

/// Wilson score interval for k successes in n trials at z = 1.96.
std::pair<double, double> wilson_interval(uint64_t k, uint64_t n);

/// Deterministic per-chunk seed derivation (SplitMix64 finaliser).
uint64_t derive_seed(uint64_t seed, uint64_t stream);

struct SweepRow {
    double spacing = 0;  // l / L
    double ratio = 0;    // L / l
    double p = 0;
    double observed_failure_rate = 0;
    double predicted_failure_rate = 0;
    double threshold = 0;  // 3q/4
    bool pass = false;
    uint64_t trials = 0;
};

struct SweepResult {
    std::string model;
    std::size_t n = 0;
    std::size_t r = 0;
    double q = 0;
    double s = 0;
    std::vector<SweepRow> rows;  // ordered by increasing ratio
    double crossing_ratio = 0;   // largest ratio whose row and every slower row pass
    double bound_ratio = 0;      // closed-form bound for the same (model, n, r, q)
    double grid_step = 0;        // ratio gap between the crossing row and the next
    bool within_one_step = false;
};

struct GridError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Simulates every spacing (in units of L) and locates the fastest rate
/// whose failure rate stays at or below 3q/4. Throws GridError when the
/// grid does not contain both passing and failing rows.
SweepResult rate_consistency_sweep(const StabilizerCode &code, const DistributionModel &model,
                                   std::vector<double> spacings, uint64_t trials_per_point, uint64_t seed,
                                   unsigned threads = 1);

}  // namespace qdt

#endif  // QDT_PROTOCOL_SIM_H
