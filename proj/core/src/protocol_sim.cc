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

#include "qdt/protocol_sim.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>
#include <thread>

#include "qdt/presets.h"
#include "qdt/rate_bounds.h"

namespace qdt {

std::string_view mode_name(ProbabilityMode mode) {
    return mode == ProbabilityMode::Analytic ? "analytic_p" : "empirical_p";
}

ProbabilityMode parse_mode(std::string_view name) {
    if (name == "analytic_p") {
        return ProbabilityMode::Analytic;
    }
    if (name == "empirical_p") {
        return ProbabilityMode::Empirical;
    }
    throw std::invalid_argument("unknown probability mode '" + std::string(name) + "'");
}

std::string_view outcome_name(Outcome outcome) {
    switch (outcome) {
        case Outcome::Success:
            return "success";
        case Outcome::Corrected:
            return "corrected";
        case Outcome::LogicalFailure:
            return "logical_failure";
    }
    return "?";
}

void validate(const SimConfig &config) {
    if (config.trials < 1) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (config.spacing.has_value() == config.target_ratio.has_value()) {
        throw std::invalid_argument("exactly one of spacing or target ratio must be given");
    }
    if (config.spacing && !(*config.spacing > 0)) {
        throw std::invalid_argument("spacing must be positive");
    }
    if (config.target_ratio && !(*config.target_ratio > 0)) {
        throw std::invalid_argument("target ratio must be positive");
    }
    if (config.threads < 1) {
        throw std::invalid_argument("threads must be at least 1");
    }
}

double resolved_spacing(const SimConfig &config) {
    validate(config);
    return config.spacing ? *config.spacing : config.model.spacing_L() / *config.target_ratio;
}

double resolved_probability(const SimConfig &config) {
    double l = resolved_spacing(config);
    double p = config.mode == ProbabilityMode::Analytic ? overlap_probability(config.model, l)
                                                        : empirical_overlap_probability(config.model, l);
    return std::clamp(p, 0.0, 0.5);
}

Outcome classify_error(const StabilizerCode &code, const PauliString &error) {
    Syndrome s = syndrome(code, error);
    auto correction = decode(code, s);
    if (!correction) {
        return Outcome::LogicalFailure;
    }
    if (is_logical_failure(code, error * *correction)) {
        return Outcome::LogicalFailure;
    }
    return s.is_trivial() ? Outcome::Success : Outcome::Corrected;
}

TrialResult run_trial(const StabilizerCode &code, const QdeSample &sample) {
    if (sample.num_qubits != code.n()) {
        throw DimensionError("QDE sample size does not match the code");
    }
    TrialResult out;
    out.flags = sample.flag_count();
    for (Pauli label : sample.labels) {
        if (label != Pauli::I) {
            out.nontrivial_flags++;
        }
    }
    if (out.nontrivial_flags == 0) {
        return out;
    }
    PauliString error = sample.error();
    out.outcome = classify_error(code, error);
    out.partner_outcome = classify_error(code, error);
    return out;
}

TrialResult run_trial(const StabilizerCode &code, double p, std::mt19937_64 &rng) {
    return run_trial(code, sample_qde(p, code.n(), rng));
}

uint64_t derive_seed(uint64_t seed, uint64_t stream) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::pair<double, double> wilson_interval(uint64_t k, uint64_t n) {
    if (n == 0) {
        return {0, 1};
    }
    constexpr double z = 1.959963984540054;
    double nn = static_cast<double>(n);
    double phat = static_cast<double>(k) / nn;
    double denom = 1 + z * z / nn;
    double center = (phat + z * z / (2 * nn)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / nn + z * z / (4 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

constexpr uint64_t kChunkTrials = uint64_t{1} << 15;

struct Tally {
    std::vector<uint64_t> histogram;
    uint64_t successes = 0;
    uint64_t corrected = 0;
    uint64_t failures = 0;
    uint64_t partner_failures = 0;

    void add(const Tally &other) {
        for (std::size_t j = 0; j < histogram.size(); j++) {
            histogram[j] += other.histogram[j];
        }
        successes += other.successes;
        corrected += other.corrected;
        failures += other.failures;
        partner_failures += other.partner_failures;
    }
};

// Trials are split into fixed chunks with their own derived streams, so
// the totals are the same whichever worker runs which chunk.
Tally simulate(const StabilizerCode &code, double p, uint64_t trials, uint64_t seed, unsigned threads) {
    uint64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
    std::vector<Tally> per_chunk(chunks, Tally{std::vector<uint64_t>(code.n() + 1, 0)});
    std::atomic<uint64_t> next{0};
    auto work = [&]() {
        for (uint64_t c = next++; c < chunks; c = next++) {
            std::mt19937_64 rng(derive_seed(seed, c));
            uint64_t begin = c * kChunkTrials;
            uint64_t end = std::min(trials, begin + kChunkTrials);
            Tally &t = per_chunk[c];
            for (uint64_t trial = begin; trial < end; trial++) {
                TrialResult r = run_trial(code, p, rng);
                t.histogram[r.flags]++;
                switch (r.outcome) {
                    case Outcome::Success:
                        t.successes++;
                        break;
                    case Outcome::Corrected:
                        t.corrected++;
                        break;
                    case Outcome::LogicalFailure:
                        t.failures++;
                        break;
                }
                if (r.partner_outcome == Outcome::LogicalFailure) {
                    t.partner_failures++;
                }
            }
        }
    };
    unsigned workers = static_cast<unsigned>(std::min<uint64_t>(std::max(1u, threads), chunks));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; w++) {
        pool.emplace_back(work);
    }
    work();
    for (auto &th : pool) {
        th.join();
    }
    Tally total{std::vector<uint64_t>(code.n() + 1, 0)};
    for (const auto &t : per_chunk) {
        total.add(t);
    }
    return total;
}

}  // namespace

SimReport run_monte_carlo(const SimConfig &config) {
    validate(config);
    const StabilizerCode &code = load_preset(config.code);
    SimReport rep;
    rep.code = code.name();
    rep.n = code.n();
    rep.k = code.k();
    rep.d = code.d();
    rep.r = code.correctable_weight();
    rep.model = std::string(model_kind_name(config.model.kind()));
    rep.mode = std::string(mode_name(config.mode));
    rep.q = config.model.q();
    rep.spacing = resolved_spacing(config);
    rep.ratio = config.model.spacing_L() / rep.spacing;
    rep.p = resolved_probability(config);
    rep.seed = config.seed;
    rep.trials = config.trials;

    Tally t = simulate(code, rep.p, config.trials, config.seed, config.threads);
    rep.qde_histogram = t.histogram;
    rep.successes = t.successes;
    rep.corrected = t.corrected;
    rep.failures = t.failures;
    rep.partner_failures = t.partner_failures;

    double trials = static_cast<double>(config.trials);
    rep.observed_failure_rate = static_cast<double>(t.failures) / trials;
    std::tie(rep.wilson_low, rep.wilson_high) = wilson_interval(t.failures, config.trials);
    rep.predicted_failure_rate = predicted_failure_rate(rep.n, rep.r, rep.p);
    rep.sigma = std::sqrt(rep.predicted_failure_rate * (1 - rep.predicted_failure_rate) / trials);
    rep.z_score = rep.sigma > 0 ? (rep.observed_failure_rate - rep.predicted_failure_rate) / rep.sigma : 0;
    rep.observed_over_predicted =
        rep.predicted_failure_rate > 0 ? rep.observed_failure_rate / rep.predicted_failure_rate : 0;
    return rep;
}

std::string report_to_json(const SimReport &r) {
    nlohmann::ordered_json doc;
    doc["code"] = r.code;
    doc["n"] = r.n;
    doc["k"] = r.k;
    doc["d"] = r.d;
    doc["r"] = r.r;
    doc["model"] = r.model;
    doc["mode"] = r.mode;
    doc["q"] = r.q;
    doc["spacing"] = r.spacing;
    doc["ratio"] = r.ratio;
    doc["p"] = r.p;
    doc["seed"] = r.seed;
    doc["trials"] = r.trials;
    doc["qde_histogram"] = r.qde_histogram;
    doc["successes"] = r.successes;
    doc["corrected"] = r.corrected;
    doc["failures"] = r.failures;
    doc["partner_failures"] = r.partner_failures;
    doc["observed_failure_rate"] = r.observed_failure_rate;
    doc["wilson_95"] = {r.wilson_low, r.wilson_high};
    doc["predicted_failure_rate"] = r.predicted_failure_rate;
    doc["sigma"] = r.sigma;
    doc["z_score"] = r.z_score;
    doc["observed_over_predicted"] = r.observed_over_predicted;
    return doc.dump(2) + "\n";
}

std::string report_to_text(const SimReport &r) {
    std::ostringstream out;
    auto row = [&](std::string_view key, const auto &value) {
        out << std::left << std::setw(26) << key << value << "\n";
    };
    row("code", r.code + " [[" + std::to_string(r.n) + "," + std::to_string(r.k) + "," + std::to_string(r.d) + "]]");
    row("model", r.model + " (q=" + std::to_string(r.q) + ", " + r.mode + ")");
    row("rate ratio N'/N", r.ratio);
    row("p", r.p);
    row("trials", r.trials);
    row("success", r.successes);
    row("corrected", r.corrected);
    row("logical failures", r.failures);
    row("observed failure rate", r.observed_failure_rate);
    std::ostringstream ci;
    ci << "[" << r.wilson_low << ", " << r.wilson_high << "]";
    row("wilson 95%", ci.str());
    row("predicted failure rate", r.predicted_failure_rate);
    row("z score", r.z_score);
    std::ostringstream hist;
    for (std::size_t j = 0; j < r.qde_histogram.size(); j++) {
        hist << (j ? " " : "") << j << ":" << r.qde_histogram[j];
    }
    row("flags per codeword", hist.str());
    return out.str();
}

SweepResult rate_consistency_sweep(const StabilizerCode &code, const DistributionModel &model,
                                   std::vector<double> spacings, uint64_t trials_per_point, uint64_t seed,
                                   unsigned threads) {
    if (spacings.size() < 2) {
        throw GridError("sweep needs at least two spacings");
    }
    if (trials_per_point < 1) {
        throw std::invalid_argument("trials per point must be at least 1");
    }
    for (double l : spacings) {
        if (!(l > 0)) {
            throw GridError("spacings must be positive");
        }
    }
    std::sort(spacings.begin(), spacings.end(), std::greater<>());

    SweepResult out;
    out.model = std::string(model_kind_name(model.kind()));
    out.n = code.n();
    out.r = code.correctable_weight();
    out.q = model.q();
    out.s = model.kind() == ModelKind::PowerTail ? model.tail_exponent() : (model.kind() == ModelKind::Ldm ? 1.5 : 0);
    double threshold = 0.75 * model.q();
    for (std::size_t idx = 0; idx < spacings.size(); idx++) {
        SweepRow row;
        row.spacing = spacings[idx];
        row.ratio = 1 / spacings[idx];
        row.p = overlap_probability(model, spacings[idx] * model.spacing_L());
        row.trials = trials_per_point;
        Tally t = simulate(code, row.p, trials_per_point, derive_seed(seed, idx), threads);
        row.observed_failure_rate = static_cast<double>(t.failures) / static_cast<double>(trials_per_point);
        row.predicted_failure_rate = predicted_failure_rate(code.n(), out.r, row.p);
        row.threshold = threshold;
        row.pass = row.observed_failure_rate <= threshold;
        out.rows.push_back(row);
    }

    std::size_t last_pass = out.rows.size();
    for (std::size_t idx = 0; idx < out.rows.size() && out.rows[idx].pass; idx++) {
        last_pass = idx;
    }
    if (last_pass == out.rows.size() || last_pass + 1 == out.rows.size()) {
        throw GridError("spacing grid does not bracket the failure-rate crossing");
    }
    out.crossing_ratio = out.rows[last_pass].ratio;
    out.grid_step = out.rows[last_pass + 1].ratio - out.rows[last_pass].ratio;

    switch (model.kind()) {
        case ModelKind::Edm:
            out.bound_ratio = edm_bound(code.n(), out.r, model.q()).ratio;
            break;
        case ModelKind::Ldm:
            out.bound_ratio = ldm_bound(code.n(), out.r, model.q()).ratio;
            break;
        case ModelKind::PowerTail:
            out.bound_ratio = power_tail_bound(code.n(), out.r, model.q(), model.tail_exponent()).ratio;
            break;
    }
    out.within_one_step = std::abs(out.crossing_ratio - out.bound_ratio) <= out.grid_step;
    return out;
}

}  // namespace qdt
