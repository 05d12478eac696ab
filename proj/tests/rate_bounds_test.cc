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

#include <gtest/gtest.h>

#include <cmath>

namespace qdt {
namespace {

// Every closed form solves (3/4)^{r+1} C(n,r+1) p^{r+1} = 3q/4 for p and
// then inverts the model's p(ratio). The oracles below do the same in that
// order, without going through the library expressions.
double leading_order_p(std::size_t n, std::size_t r, double q) {
    double c = 1;
    for (std::size_t j = 0; j <= r; j++) {
        c = c * static_cast<double>(n - j) / static_cast<double>(j + 1);
    }
    return std::pow(0.75 * q / (std::pow(0.75, static_cast<double>(r + 1)) * c), 1.0 / static_cast<double>(r + 1));
}

double edm_oracle(std::size_t n, std::size_t r, double q) {
    return std::log(2 * q) / std::log(2 * leading_order_p(n, r, q));
}

double tail_oracle(std::size_t n, std::size_t r, double q, double s) {
    return std::pow(leading_order_p(n, r, q) / q, 1 / (s - 1));
}

// Bisection on p for the full failure expression, including (1-p)^{n-r-1}.
double numeric_oracle(std::size_t n, std::size_t r, double q) {
    auto f = [&](double p) {
        double c = 1;
        for (std::size_t j = 0; j <= r; j++) {
            c = c * static_cast<double>(n - j) / static_cast<double>(j + 1);
        }
        return std::pow(0.75, r + 1.0) * c * std::pow(p, r + 1.0) * std::pow(1 - p, static_cast<double>(n - r - 1)) -
               0.75 * q;
    };
    double lo = 1e-300;
    double hi = 0.5 * std::pow(2 * q, 1.0 / static_cast<double>(r + 1));
    for (int it = 0; it < 200; it++) {
        double mid = 0.5 * (lo + hi);
        (f(mid) > 0 ? hi : lo) = mid;
    }
    return std::log(2 * q) / std::log(2 * lo);
}

TEST(Binomial, Values) {
    EXPECT_EQ(binomial(5, 2), 10);
    EXPECT_EQ(binomial(9, 3), 84);
    EXPECT_EQ(binomial(4, 5), 0);
    EXPECT_EQ(binomial(40, 20), 137846528820.0);
}

TEST(PredictedFailureRate, Example) {
    EXPECT_NEAR(predicted_failure_rate(5, 1, 0.01), 0.5625 * 10 * 1e-4 * std::pow(0.99, 3), 1e-18);
}

TEST(LdmBound, TableValues) {
    EXPECT_NEAR(ldm_bound(5, 1, 0.01).ratio, 13.33, 0.05);
    EXPECT_NEAR(ldm_bound(5, 2, 0.01).ratio, 146.8, 0.5);
    EXPECT_NEAR(ldm_large_r_limit(0.01), 17778, 1);
}

TEST(LdmBound, TableRowsMatchGeneralForm) {
    for (std::size_t n : {5, 7, 9, 13}) {
        for (double q : {0.1, 0.01, 1e-3, 1e-5}) {
            for (std::size_t r : {1, 2}) {
                if (n <= r + 1) continue;
                EXPECT_NEAR(ldm_bound_table_row(n, r, q) / ldm_bound(n, r, q).ratio, 1, 1e-12);
            }
        }
    }
    EXPECT_THROW(ldm_bound_table_row(9, 3, 0.01), std::invalid_argument);
}

TEST(LdmBound, MatchesOracleAndApproachesLimit) {
    for (std::size_t r = 1; r <= 4; r++) {
        for (double q : {0.05, 0.01, 1e-4}) {
            auto res = ldm_bound(13, r, q);
            EXPECT_NEAR(res.ratio / tail_oracle(13, r, q, 1.5), 1, 1e-12);
            EXPECT_NEAR(res.p_at_bound, leading_order_p(13, r, q), 1e-12 * res.p_at_bound);
            EXPECT_LT(res.ratio, ldm_large_r_limit(q));
        }
    }
}

TEST(LdmBound, PAtBoundIsTheModelOverlap) {
    auto model = DistributionModel::ldm(0.01);
    auto res = ldm_bound(5, 1, 0.01);
    EXPECT_NEAR(overlap_probability(model, model.spacing_L() / res.ratio), res.p_at_bound, 1e-14);
}

TEST(PowerTailBound, Values) {
    EXPECT_NEAR(power_tail_bound(5, 1, 0.01, 2).ratio, 3.65, 0.01);
    EXPECT_NEAR(power_tail_large_r_limit(0.01, 2), 133.3, 0.5);
    for (std::size_t r : {1, 2, 3}) {
        for (double q : {0.1, 0.01, 1e-4}) {
            EXPECT_NEAR(power_tail_bound(9, r, q, 1.5).ratio / ldm_bound(9, r, q).ratio, 1, 1e-12);
            for (double s : {1.2, 2.0, 4.0}) {
                EXPECT_NEAR(power_tail_bound(9, r, q, s).ratio / tail_oracle(9, r, q, s), 1, 1e-12);
            }
        }
    }
    EXPECT_THROW(power_tail_bound(5, 1, 0.01, 1.0), std::invalid_argument);
    EXPECT_THROW(power_tail_large_r_limit(0.01, 0.5), std::invalid_argument);
}

TEST(EdmBound, MatchesOracle) {
    for (std::size_t n : {5, 9, 17}) {
        for (std::size_t r : {1, 2, 3}) {
            for (double q : {1e-2, 1e-4, 1e-9}) {
                EXPECT_NEAR(edm_bound(n, r, q).ratio / edm_oracle(n, r, q), 1, 1e-12);
            }
        }
    }
}

TEST(EdmBound, Asymptotes) {
    EXPECT_NEAR(edm_bound(5, 2, 1e-12).ratio, 3.0, 0.05);
    // At q = 1e-9 the r = 1 closed form sits at about 1.876; the 0.05 band
    // around 2 needs q near 1e-23.
    EXPECT_NEAR(edm_bound(5, 1, 1e-9).ratio, 1.8762, 1e-3);
    EXPECT_NEAR(edm_bound(5, 1, 1e-24).ratio, 2.0, 0.05);
}

TEST(EdmBound, MonotoneInQAndN) {
    for (std::size_t r : {1, 2}) {
        double prev = 0;
        for (double q = 0.1; q > 1e-15; q /= 10) {
            double ratio = edm_bound(9, r, q).ratio;
            EXPECT_GT(ratio, prev);
            EXPECT_LT(ratio, r + 1.0);
            prev = ratio;
        }
        double prev_n = 1e9;
        for (std::size_t n = r + 2; n < 40; n++) {
            double ratio = edm_bound(n, r, 1e-4).ratio;
            EXPECT_LT(ratio, prev_n);
            prev_n = ratio;
        }
    }
}

TEST(EdmBound, FactorFreeFormIsNeverLarger) {
    for (std::size_t n : {5, 9}) {
        for (std::size_t r : {1, 2, 3}) {
            if (n <= r + 1) continue;
            for (double q : {0.01, 1e-4, 1e-8}) {
                EXPECT_LE(edm_bound_factor_free(n, r, q).ratio, edm_bound(n, r, q).ratio);
            }
        }
    }
}

TEST(EdmBound, ValidityFlagFollowsThreshold) {
    EXPECT_TRUE(edm_bound(5, 1, 0.1).validity_flag);
    EXPECT_FALSE(edm_bound(5, 1, 0.2).validity_flag);
    EXPECT_GT(edm_bound(5, 1, 0.13).ratio, 1);
    EXPECT_LT(edm_bound(5, 1, 0.14).ratio, 1);
}

TEST(QThreshold, Values) {
    EXPECT_NEAR(q_threshold(5, 1), 2.0 / 15.0, 1e-15);
    EXPECT_NEAR(q_threshold(5, 2), 64.0 / 180.0, 1e-15);
    for (std::size_t n : {5, 9, 13}) {
        EXPECT_NEAR(q_gain_threshold(n, 1), q_threshold(n, 1), 1e-15);
        EXPECT_NEAR(edm_bound(n, 1, q_gain_threshold(n, 1)).ratio, 1, 1e-9);
    }
    EXPECT_NEAR(edm_bound(9, 2, q_gain_threshold(9, 2)).ratio, 1, 1e-9);
    EXPECT_THROW(q_threshold(2, 2), std::invalid_argument);
}

TEST(NumericBound, MatchesIndependentBisection) {
    EXPECT_NEAR(numeric_bound(5, 1, 0.01).ratio, 1.529557961, 1e-8);
    for (std::size_t n : {5, 9}) {
        for (std::size_t r : {1, 2}) {
            for (double q : {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
                if (n == 5 && r == 2 && q > 5e-3) continue;
                auto res = numeric_bound(n, r, q);
                EXPECT_NEAR(res.ratio, numeric_oracle(n, r, q), 2e-9) << n << " " << r << " " << q;
                EXPECT_LT(res.ratio, r + 1.0);
                EXPECT_GE(res.ratio, 1.0);
            }
        }
    }
}

TEST(NumericBound, TracksClosedFormAtSmallQ) {
    for (double q : {1e-6, 1e-9, 1e-12}) {
        EXPECT_NEAR(numeric_bound(5, 1, q).ratio / edm_bound(5, 1, q).ratio, 1, 1e-3);
    }
}

TEST(NumericBound, RegimeViolationDiagnostics) {
    try {
        numeric_bound(9, 1, 0.1);
        FAIL() << "expected RegimeViolation";
    } catch (const RegimeViolation &e) {
        EXPECT_NEAR(e.guard_limit, 0.3, 1e-15);
        EXPECT_NEAR(e.p_at_ratio_one, 0.1, 1e-15);
        EXPECT_NE(std::string(e.what()).find("already fails at the raw rate"), std::string::npos);
    }
    try {
        numeric_bound(5, 2, 0.1);
        FAIL() << "expected RegimeViolation";
    } catch (const RegimeViolation &e) {
        EXPECT_NE(std::string(e.what()).find("still holds"), std::string::npos);
    }
}

TEST(RateBounds, RejectsBadQueries) {
    EXPECT_THROW(edm_bound(5, 0, 0.01), std::invalid_argument);
    EXPECT_THROW(edm_bound(2, 1, 0.01), std::invalid_argument);
    EXPECT_THROW(ldm_bound(5, 1, 0), std::invalid_argument);
    EXPECT_THROW(ldm_bound(5, 1, 0.5), std::invalid_argument);
    RateBoundQuery q;
    q.model = ModelKind::Ldm;
    q.method = BoundMethod::Numeric;
    EXPECT_THROW(evaluate(q), std::invalid_argument);
    EXPECT_THROW(parse_method("golden"), std::invalid_argument);
}

TEST(RateBounds, EvaluateDispatches) {
    RateBoundQuery q;
    q.model = ModelKind::PowerTail;
    q.s = 2;
    EXPECT_EQ(evaluate(q).ratio, power_tail_bound(5, 1, 0.01, 2).ratio);
    q.model = ModelKind::Edm;
    q.method = BoundMethod::Numeric;
    EXPECT_EQ(evaluate(q).ratio, numeric_bound(5, 1, 0.01).ratio);
    EXPECT_EQ(parse_method(method_name(BoundMethod::ClosedForm)), BoundMethod::ClosedForm);
}

}  // namespace
}  // namespace qdt
