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

#include "qdt/qde_channel.h"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>

namespace qdt {

std::string_view model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::Edm:
            return "edm";
        case ModelKind::Ldm:
            return "ldm";
        case ModelKind::PowerTail:
            return "power_tail";
    }
    return "?";
}

ModelKind parse_model_kind(std::string_view name) {
    if (name == "edm") {
        return ModelKind::Edm;
    }
    if (name == "ldm") {
        return ModelKind::Ldm;
    }
    if (name == "power_tail" || name == "power-tail") {
        return ModelKind::PowerTail;
    }
    throw std::invalid_argument("unknown distribution model '" + std::string(name) + "'");
}

namespace {

void check_calibration(double q, double L, double lambda) {
    if (!(L > 0)) {
        throw std::invalid_argument("reference spacing L must be positive");
    }
    if (!(lambda > 0)) {
        throw std::invalid_argument("overlap proportionality lambda must be positive");
    }
    if (!(q > 0 && q < 0.5)) {
        throw std::invalid_argument("calibration probability q must lie in (0, 1/2)");
    }
    if (!(q < lambda)) {
        throw std::invalid_argument("calibration probability q must be below lambda");
    }
}

}  // namespace

DistributionModel DistributionModel::edm(double q, double spacing_L, double lambda) {
    check_calibration(q, spacing_L, lambda);
    DistributionModel m;
    m.kind_ = ModelKind::Edm;
    m.q_ = q;
    m.L_ = spacing_L;
    m.lambda_ = lambda;
    // lambda * exp(-a L) = q
    m.a_ = -std::log(q / lambda) / spacing_L;
    return m;
}

DistributionModel DistributionModel::ldm(double q, double spacing_L, double lambda) {
    check_calibration(q, spacing_L, lambda);
    DistributionModel m;
    m.kind_ = ModelKind::Ldm;
    m.q_ = q;
    m.L_ = spacing_L;
    m.lambda_ = lambda;
    // lambda * sqrt(2c / (pi L)) = q, using the x^{-3/2} tail.
    m.c_ = std::numbers::pi * spacing_L * q * q / (2 * lambda * lambda);
    return m;
}

DistributionModel DistributionModel::power_tail(double q, double s, double spacing_L, double lambda) {
    check_calibration(q, spacing_L, lambda);
    if (!(s > 1)) {
        throw std::invalid_argument("tail exponent s must exceed 1");
    }
    DistributionModel m;
    m.kind_ = ModelKind::PowerTail;
    m.q_ = q;
    m.L_ = spacing_L;
    m.lambda_ = lambda;
    m.s_ = s;
    // lambda * alpha L^{1-s} / (s-1) = q
    m.alpha_ = q * (s - 1) * std::pow(spacing_L, s - 1) / lambda;
    return m;
}

double DistributionModel::tail_cutoff() const {
    if (kind_ != ModelKind::PowerTail) {
        return 0;
    }
    return std::pow(alpha_ / (s_ - 1), 1 / (s_ - 1));
}

double DistributionModel::density(double t) const {
    switch (kind_) {
        case ModelKind::Edm:
            return t < 0 ? 0 : a_ * std::exp(-a_ * t);
        case ModelKind::Ldm:
            if (t <= 0) {
                return 0;
            }
            return std::sqrt(c_ / (2 * std::numbers::pi)) * std::exp(-c_ / (2 * t) - 1.5 * std::log(t));
        case ModelKind::PowerTail:
            return t < tail_cutoff() ? 0 : alpha_ * std::pow(t, -s_);
    }
    return 0;
}

double overlap_probability(const DistributionModel &model, double l) {
    if (!(l > 0)) {
        throw std::invalid_argument("signal spacing l must be positive");
    }
    double ratio = model.spacing_L() / l;
    double p = 0;
    switch (model.kind()) {
        case ModelKind::Edm:
            p = model.lambda() * std::pow(model.q() / model.lambda(), 1 / ratio);
            break;
        case ModelKind::Ldm:
            p = std::sqrt(ratio) * model.q();
            break;
        case ModelKind::PowerTail:
            p = std::pow(ratio, model.tail_exponent() - 1) * model.q();
            break;
    }
    return std::clamp(p, 0.0, 0.5);
}

double empirical_overlap_probability(const DistributionModel &model, double l) {
    if (!(l > 0)) {
        throw std::invalid_argument("signal spacing l must be positive");
    }
    // Signal A sits at 0 and B at l; min(f_A, f_B) vanishes before B's
    // support begins.
    double start = l + model.tail_cutoff();
    auto f_a = [&](double t) { return model.density(t); };
    auto f_b = [&](double t) { return model.density(t - l); };
    auto gap = [&](double t) { return f_a(t) - f_b(t); };
    auto lower = [&](double t) { return std::min(f_a(t), f_b(t)); };

    // Locate sign changes of f_A - f_B on a geometric grid of offsets.
    double unit = std::max(model.spacing_L(), l);
    std::vector<double> breaks = {start};
    double prev_t = start + unit * 1e-15;
    double prev_gap = gap(prev_t);
    for (double offset = unit * 1e-15; offset < unit * 1e8; offset *= 1.05) {
        double t = start + offset;
        double g = gap(t);
        if ((g < 0) != (prev_gap < 0) && g != 0 && prev_gap != 0) {
            auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-15 * std::abs(a); };
            auto [lo, hi] = boost::math::tools::bisect(gap, prev_t, t, tol);
            breaks.push_back(0.5 * (lo + hi));
        }
        prev_t = t;
        prev_gap = g;
    }

    double area = 0;
    double error_total = 0;
    for (std::size_t k = 0; k + 1 < breaks.size(); k++) {
        double err = 0;
        area += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(lower, breaks[k], breaks[k + 1], 15,
                                                                              1e-12, &err);
        error_total += err;
    }
    double err = 0;
    double l1 = 0;
    boost::math::quadrature::exp_sinh<double> tail;
    double last = breaks.back();
    area += tail.integrate([&](double u) { return lower(last + u); }, 1e-12, &err, &l1);
    error_total += err;

    if (!std::isfinite(area) || error_total > 1e-6 * std::max(area, 1e-300) + 1e-15) {
        throw QuadratureError("overlap quadrature did not converge (area " + std::to_string(area) + ", error " +
                              std::to_string(error_total) + ")");
    }
    return model.lambda() * area;
}

std::vector<double> sample_arrival_times(const DistributionModel &model, double t_i, std::size_t n,
                                         std::mt19937_64 &rng) {
    std::vector<double> out(n);
    switch (model.kind()) {
        case ModelKind::Edm:
            for (auto &t : out) {
                t = t_i - std::log(uniform_open_closed(rng)) / model.rate();
            }
            break;
        case ModelKind::Ldm: {
            std::normal_distribution<double> gauss;
            for (auto &t : out) {
                double z = gauss(rng);
                t = t_i + model.scale() / (z * z);
            }
            break;
        }
        case ModelKind::PowerTail: {
            double cutoff = model.tail_cutoff();
            double inv = -1 / (model.tail_exponent() - 1);
            for (auto &t : out) {
                t = t_i + cutoff * std::pow(uniform_open_closed(rng), inv);
            }
            break;
        }
    }
    return out;
}

PauliString QdeSample::error() const {
    // Letters sit on distinct qubits, so the product carries no phase.
    BitVector x(num_qubits);
    BitVector z(num_qubits);
    for (std::size_t f = 0; f < positions.size(); f++) {
        int v = static_cast<int>(labels[f]);
        x.set(positions[f], v == 1 || v == 2);
        z.set(positions[f], v == 2 || v == 3);
    }
    return PauliString(std::move(x), std::move(z));
}

QdeSample sample_qde(double p, std::size_t n, std::mt19937_64 &rng) {
    if (!(p >= 0 && p <= 0.5)) {
        throw std::invalid_argument("QDE probability must lie in [0, 1/2]");
    }
    QdeSample out;
    out.num_qubits = n;
    for (std::size_t k = 0; k < n; k++) {
        if (uniform_open_closed(rng) <= p) {
            out.positions.push_back(k);
            out.labels.push_back(static_cast<Pauli>(rng() >> 62));
        }
    }
    return out;
}

}  // namespace qdt
