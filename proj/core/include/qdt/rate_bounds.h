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

// Encoded-rate upper bounds N'_m / N_m for [[n, 1, 2r+1]] codes. All
// results are dimensionless ratios against the raw limit N_m.

#ifndef QDT_RATE_BOUNDS_H
#define QDT_RATE_BOUNDS_H

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qdt/qde_channel.h"

namespace qdt {

enum class BoundMethod { ClosedForm, Numeric };

std::string_view method_name(BoundMethod method);
BoundMethod parse_method(std::string_view name);

struct RateBoundQuery {
    ModelKind model = ModelKind::Edm;
    std::size_t n = 5;
    std::size_t r = 1;
    double q = 0.01;
    double s = 1.5;  // tail exponent, power-tail model only
    BoundMethod method = BoundMethod::ClosedForm;
};

struct RateBoundResult {
    double ratio = 0;       // N'_m / N_m
    double p_at_bound = 0;  // per-qubit QDE probability at that rate
    bool validity_flag = false;
};

/// Raised by numeric_bound when the failure condition has no crossing in
/// [1, r+1]. Carries the diagnostics needed to see which guard failed.
struct RegimeViolation : std::domain_error {
    RegimeViolation(const std::string &what, double p_low, double p_high, double guard)
        : std::domain_error(what), p_at_ratio_one(p_low), p_at_ratio_max(p_high), guard_limit(guard) {}

    double p_at_ratio_one;
    double p_at_ratio_max;
    double guard_limit;  // (r+2)/(n+1); p must stay well below it
};

/// C(n, k) as a double.
double binomial(std::size_t n, std::size_t k);

/// (3/4)^{r+1} C(n, r+1) p^{r+1} (1-p)^{n-r-1}: probability that r+1
/// non-identity twined errors land on one codeword.
double predicted_failure_rate(std::size_t n, std::size_t r, double p);

/// EDM closed form (r+1) / (1 + log2((3/8)^r C(n, r+1)) / log2(1/(2q))).
RateBoundResult edm_bound(std::size_t n, std::size_t r, double q);
/// Same expression with the (3/8)^r factor dropped.
RateBoundResult edm_bound_factor_free(std::size_t n, std::size_t r, double q);

/// LDM closed form (4/3)^2 (3/4)^{2/(r+1)} C(n, r+1)^{-2/(r+1)} q^{2/(r+1)} q^{-2}.
RateBoundResult ldm_bound(std::size_t n, std::size_t r, double q);
/// The specialised r = 1 and r = 2 table rows (r must be 1 or 2).
double ldm_bound_table_row(std::size_t n, std::size_t r, double q);
/// (4/3)^2 q^{-2}, the r -> infinity limit of ldm_bound.
double ldm_large_r_limit(double q);

/// Tail alpha x^{-s}:
/// (4/3)^{1/(s-1)} q^{-1/(s-1)} ((3/4) q / C(n, r+1))^{1/((r+1)(s-1))}.
RateBoundResult power_tail_bound(std::size_t n, std::size_t r, double q, double s);
/// (4/3)^{1/(s-1)} q^{-1/(s-1)}, the (r+1)(s-1) >> 1 limit.
double power_tail_large_r_limit(double q, double s);

/// 1/2 (8/3)^r (r+1)! / (n (n-1) ... (n-r)); q must stay well below it for
/// the EDM rate to approach (r+1) N_m.
double q_threshold(std::size_t n, std::size_t r);
/// Largest q for which the EDM closed form still exceeds 1:
/// 1/2 (8/3) C(n, r+1)^{-1/r}. Coincides with q_threshold at r = 1.
double q_gain_threshold(std::size_t n, std::size_t r);

/// Largest ratio in [1, r+1] with
/// (3/4)^{r+1} C(n,r+1) p^{r+1} (1-p)^{n-r-1} <= 3q/4, p = (2q)^{1/ratio} / 2,
/// found by bisection to 1e-9.
RateBoundResult numeric_bound(std::size_t n, std::size_t r, double q);

/// Dispatches on model and method. The numeric method is EDM-only.
RateBoundResult evaluate(const RateBoundQuery &query);

}  // namespace qdt

#endif  // QDT_RATE_BOUNDS_H
