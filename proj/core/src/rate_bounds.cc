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

#include "qdt/rate_bounds.h"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <sstream>

namespace qdt {

std::string_view method_name(BoundMethod method) {
    return method == BoundMethod::ClosedForm ? "closed_form" : "numeric";
}

BoundMethod parse_method(std::string_view name) {
    if (name == "closed_form" || name == "closed-form") {
        return BoundMethod::ClosedForm;
    }
    if (name == "numeric") {
        return BoundMethod::Numeric;
    }
    throw std::invalid_argument("unknown bound method '" + std::string(name) + "'");
}

double binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0;
    }
    double out = 1;
    for (std::size_t j = 1; j <= k; j++) {
        out = out * static_cast<double>(n - k + j) / static_cast<double>(j);
    }
    return out;
}

double predicted_failure_rate(std::size_t n, std::size_t r, double p) {
    double e = static_cast<double>(r + 1);
    return std::pow(0.75, e) * binomial(n, r + 1) * std::pow(p, e) * std::pow(1 - p, static_cast<double>(n - r - 1));
}

namespace {

void check_query(std::size_t n, std::size_t r, double q) {
    if (r < 1) {
        throw std::invalid_argument("r must be at least 1");
    }
    if (n <= r + 1) {
        throw std::invalid_argument("need n > r + 1 (got n=" + std::to_string(n) + ", r=" + std::to_string(r) + ")");
    }
    if (!(q > 0)) {
        throw std::invalid_argument("q must be positive");
    }
    if (!(q < 0.5)) {
        throw std::invalid_argument("q must be below 1/2");
    }
}

double higher_order_guard(std::size_t n, std::size_t r) {
    return static_cast<double>(r + 2) / static_cast<double>(n + 1);
}

double edm_p(double q, double ratio) { return 0.5 * std::pow(2 * q, 1 / ratio); }

RateBoundResult edm_like(std::size_t n, std::size_t r, double q, double prefactor) {
    check_query(n, r, q);
    double r1 = static_cast<double>(r + 1);
    double ratio = r1 / (1 + std::log2(prefactor * binomial(n, r + 1)) / std::log2(1 / (2 * q)));
    return {ratio, edm_p(q, ratio), q < q_threshold(n, r)};
}

}  // namespace

RateBoundResult edm_bound(std::size_t n, std::size_t r, double q) {
    return edm_like(n, r, q, std::pow(3.0 / 8.0, static_cast<double>(r)));
}

RateBoundResult edm_bound_factor_free(std::size_t n, std::size_t r, double q) { return edm_like(n, r, q, 1.0); }

RateBoundResult ldm_bound(std::size_t n, std::size_t r, double q) {
    check_query(n, r, q);
    double e = 2 / static_cast<double>(r + 1);
    double ratio = (16.0 / 9.0) * std::pow(0.75, e) * std::pow(binomial(n, r + 1), -e) * std::pow(q, e) / (q * q);
    double p = std::sqrt(ratio) * q;
    return {ratio, p, p < higher_order_guard(n, r)};
}

double ldm_bound_table_row(std::size_t n, std::size_t r, double q) {
    check_query(n, r, q);
    if (r == 1) {
        return (4.0 / 3.0) / binomial(n, 2) / q;
    }
    if (r == 2) {
        return std::pow(4.0 / 3.0, 4.0 / 3.0) * std::pow(binomial(n, 3), -2.0 / 3.0) * std::pow(q, -4.0 / 3.0);
    }
    throw std::invalid_argument("table rows exist for r = 1 and r = 2 only");
}

double ldm_large_r_limit(double q) { return (16.0 / 9.0) / (q * q); }

RateBoundResult power_tail_bound(std::size_t n, std::size_t r, double q, double s) {
    check_query(n, r, q);
    if (!(s > 1)) {
        throw std::invalid_argument("tail exponent s must exceed 1");
    }
    double outer = 1 / (s - 1);
    double inner = 1 / (static_cast<double>(r + 1) * (s - 1));
    double ratio = std::pow(4.0 / 3.0, outer) * std::pow(q, -outer) * std::pow(0.75, inner) * std::pow(q, inner) *
                   std::pow(binomial(n, r + 1), -inner);
    double p = std::pow(ratio, s - 1) * q;
    return {ratio, p, p < higher_order_guard(n, r)};
}

double power_tail_large_r_limit(double q, double s) {
    if (!(s > 1)) {
        throw std::invalid_argument("tail exponent s must exceed 1");
    }
    return std::pow(4.0 / 3.0, 1 / (s - 1)) * std::pow(q, -1 / (s - 1));
}

double q_threshold(std::size_t n, std::size_t r) {
    if (n <= r) {
        throw std::invalid_argument("q threshold needs n > r");
    }
    double falling = 1;
    for (std::size_t j = 0; j <= r; j++) {
        falling *= static_cast<double>(n - j);
    }
    double factorial = 1;
    for (std::size_t j = 2; j <= r + 1; j++) {
        factorial *= static_cast<double>(j);
    }
    return 0.5 * std::pow(8.0 / 3.0, static_cast<double>(r)) * factorial / falling;
}

double q_gain_threshold(std::size_t n, std::size_t r) {
    if (n <= r || r < 1) {
        throw std::invalid_argument("q gain threshold needs n > r >= 1");
    }
    return 0.5 * (8.0 / 3.0) * std::pow(binomial(n, r + 1), -1 / static_cast<double>(r));
}

RateBoundResult numeric_bound(std::size_t n, std::size_t r, double q) {
    check_query(n, r, q);
    double r1 = static_cast<double>(r + 1);
    double target = 0.75 * q;
    auto excess = [&](double ratio) { return predicted_failure_rate(n, r, edm_p(q, ratio)) - target; };

    double lo = 1;
    double hi = r1;
    double guard = higher_order_guard(n, r);
    double f_lo = excess(lo);
    double f_hi = excess(hi);
    if (f_lo > 0 || f_hi < 0) {
        std::ostringstream msg;
        msg << "regime violation: no crossing of the failure condition for ratio in [1, " << r1 << "] (n=" << n
            << ", r=" << r << ", q=" << q << "); p ranges over [" << edm_p(q, lo) << ", " << edm_p(q, hi)
            << "] and must satisfy p << (r+2)/(n+1) = " << guard;
        if (f_lo > 0) {
            msg << "; the condition already fails at the raw rate";
        } else {
            msg << "; the condition still holds at (r+1) N_m";
        }
        throw RegimeViolation(msg.str(), edm_p(q, lo), edm_p(q, hi), guard);
    }
    auto done = [](double a, double b) { return b - a <= 1e-9; };
    auto bracket = boost::math::tools::bisect(excess, lo, hi, done);
    double ratio = bracket.first;
    double p = edm_p(q, ratio);
    return {ratio, p, q < q_threshold(n, r)};
}

RateBoundResult evaluate(const RateBoundQuery &query) {
    if (query.method == BoundMethod::Numeric) {
        if (query.model != ModelKind::Edm) {
            throw std::invalid_argument("the numeric method is defined for the EDM model only");
        }
        return numeric_bound(query.n, query.r, query.q);
    }
    switch (query.model) {
        case ModelKind::Edm:
            return edm_bound(query.n, query.r, query.q);
        case ModelKind::Ldm:
            return ldm_bound(query.n, query.r, query.q);
        case ModelKind::PowerTail:
            return power_tail_bound(query.n, query.r, query.q, query.s);
    }
    throw std::invalid_argument("unknown model");
}

}  // namespace qdt
