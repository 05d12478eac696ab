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

#include "cli.h"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <random>
#include <set>
#include <sstream>

#include "qdt/presets.h"
#include "qdt/statevector.h"

namespace qdt::cli {

namespace {

// Rounds to 12 significant digits so grid arithmetic like 1/(1/1.8) prints
// as 1.8.
double trim12(double v) {
    std::ostringstream trimmed;
    trimmed << std::setprecision(12) << v;
    return std::stod(trimmed.str());
}

using nlohmann::json;

const std::vector<std::string> kBaseColumns = {"model", "n", "r", "q", "s", "method", "ratio", "p_at_bound",
                                               "validity_flag"};

void configure_logging() {
    static std::shared_ptr<spdlog::logger> logger = [] {
        auto l = spdlog::stderr_logger_mt("qdt");
        l->set_pattern("[%l] %v");
        return l;
    }();
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char *env = std::getenv("QDT_LOG")) {
        std::string text(env);
        std::transform(text.begin(), text.end(), text.begin(), [](unsigned char c) { return std::tolower(c); });
        if (text == "warning") {
            text = "warn";
        }
        level = spdlog::level::from_str(text);
    }
    logger->set_level(level);
    spdlog::set_default_logger(logger);
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("failed writing '" + path + "'");
    }
}

// Writes to `path`, or to `out` when the path is empty.
void emit(const std::string &path, const std::string &content, std::ostream &out) {
    if (path.empty()) {
        out << content;
    } else {
        write_file(path, content);
    }
}

std::string bool_text(bool b) { return b ? "1" : "0"; }

bool parse_bool_text(std::string_view text) {
    if (text == "1" || text == "true") {
        return true;
    }
    if (text == "0" || text == "false") {
        return false;
    }
    throw ConfigError("bad boolean field '" + std::string(text) + "'");
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

DistributionModel make_model(ModelKind kind, double q, double s, double spacing_L, double lambda) {
    switch (kind) {
        case ModelKind::Edm:
            return DistributionModel::edm(q, spacing_L, lambda);
        case ModelKind::Ldm:
            return DistributionModel::ldm(q, spacing_L, lambda);
        case ModelKind::PowerTail:
            return DistributionModel::power_tail(q, s, spacing_L, lambda);
    }
    throw ConfigError("unknown model");
}

// ---------------------------------------------------------------- qems-verify

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::string sci(double v) {
    std::ostringstream out;
    out << std::scientific << std::setprecision(2) << v;
    return out.str();
}

PauliString on_qubit(std::size_t n, std::size_t k, int alpha) { return PauliString::single(n, k, static_cast<Pauli>(alpha)); }

std::vector<PauliString> joint_observables(const StabilizerCode &a, const StabilizerCode &b) {
    std::size_t total = a.n() + b.n();
    std::vector<PauliString> out;
    for (const auto &g : a.generators()) {
        out.push_back(embed_pauli(g, 0, total));
    }
    for (const auto &g : b.generators()) {
        out.push_back(embed_pauli(g, a.n(), total));
    }
    return out;
}

// Branch report checks for one exchanged pair: four labelled branches of
// weight 1/4, each equal to the twined-error state.
void check_pair_branches(const StabilizerCode &ca, const Statevector &ga, const StabilizerCode &cb,
                         const Statevector &gb, std::size_t i, std::size_t j, double &worst_prob, bool &labels_ok,
                         bool &states_ok) {
    BranchReport rep = qems_branches(ca, ga, cb, gb, i, j);
    std::set<int> seen;
    for (const auto &b : rep.branches) {
        seen.insert(b.alpha);
        worst_prob = std::max(worst_prob, std::abs(b.probability - 0.25));
        if (b.alpha < 0) {
            continue;
        }
        Statevector expect = tensor(apply_pauli(ga, on_qubit(ca.n(), i, b.alpha)), apply_pauli(gb, on_qubit(cb.n(), j, b.alpha)));
        if (!equal_up_to_global_phase(b.post_state, expect.normalized())) {
            states_ok = false;
        }
    }
    if (rep.branches.size() != 4 || seen != std::set<int>{0, 1, 2, 3}) {
        labels_ok = false;
        worst_prob = std::max(worst_prob, 1.0);
    }
}

std::vector<Check> verify_code(const StabilizerCode &code, uint64_t trials, uint64_t seed) {
    std::vector<Check> checks;
    Statevector g = graph_state_vector(code.adjacency());
    std::size_t n = code.n();
    std::size_t total = 2 * n;

    double worst_stab = 0;
    for (const auto &gen : code.generators()) {
        worst_stab = std::max(worst_stab, max_abs_difference(apply_pauli(g, gen), g));
    }
    checks.push_back({"graph state stabilized by code generators", worst_stab < 1e-10, "max dev " + sci(worst_stab)});

    double worst_orth = 0;
    for (std::size_t i = 0; i < n; i++) {
        for (int a = 0; a < 4; a++) {
            for (int b = a + 1; b < 4; b++) {
                Amplitude ip = inner_product(apply_pauli(g, on_qubit(n, i, a)), apply_pauli(g, on_qubit(n, i, b)));
                worst_orth = std::max(worst_orth, std::abs(ip));
            }
        }
    }
    checks.push_back({"single-qubit twined states orthogonal", worst_orth < 1e-10, "max overlap " + sci(worst_orth)});

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; i++) {
        pairs.emplace_back(i, i);
        if (n > 1) {
            pairs.emplace_back(i, (i + 1) % n);
        }
    }

    Statevector joint = tensor(g, g);
    double worst_sum = 0;
    double worst_expansion = 0;
    double worst_prob = 0;
    bool labels_ok = true;
    bool states_ok = true;
    double worst_control = 0;
    for (auto [i, j] : pairs) {
        Statevector swapped = swap_qubits(joint, i, n + j);
        auto terms = exchange_decomposition(i, n + j, total);
        worst_sum = std::max(worst_sum, max_abs_difference(swapped, apply_operator_sum(joint, terms)));

        std::vector<Amplitude> acc(joint.dimension(), 0.0);
        for (int alpha = 0; alpha < 4; alpha++) {
            Statevector term = tensor(apply_pauli(g, on_qubit(n, i, alpha)), apply_pauli(g, on_qubit(n, j, alpha)));
            for (std::size_t k = 0; k < acc.size(); k++) {
                acc[k] += 0.5 * term[k];
            }
        }
        worst_expansion = std::max(worst_expansion, max_abs_difference(swapped, Statevector(total, std::move(acc))));

        check_pair_branches(code, g, code, g, i, j, worst_prob, labels_ok, states_ok);

        BranchReport control = qems_branches(code, g, code, g, i, j, false);
        const Branch *id = control.find(0);
        worst_control = std::max(worst_control, id ? std::abs(id->probability - 1) : 1.0);
    }
    std::string span = std::to_string(pairs.size()) + " exchanged pairs";
    checks.push_back({"exchange operator sum equals swap", worst_sum < 1e-12, span + ", max dev " + sci(worst_sum)});
    checks.push_back({"swap expansion into twined errors", worst_expansion < 1e-10,
                      span + ", max dev " + sci(worst_expansion)});
    checks.push_back({"four labelled branches of probability 1/4", labels_ok && worst_prob < 1e-10,
                      span + ", max dev " + sci(worst_prob)});
    checks.push_back({"branch post-states carry twined errors", states_ok, span});
    checks.push_back({"control run without exchange", worst_control < 1e-10, "max dev " + sci(worst_control)});

    if (trials > 0) {
        auto observables = joint_observables(code, code);
        Statevector swapped = swap_qubits(joint, 0, n);
        BranchReport rep = qems_branches(code, g, code, g, 0, 0);
        std::map<BitVector, int> label;
        for (const auto &b : rep.branches) {
            label.emplace(b.outcomes, b.alpha);
        }
        std::mt19937_64 rng(seed);
        std::vector<uint64_t> counts(4, 0);
        uint64_t unlabelled = 0;
        for (uint64_t t = 0; t < trials; t++) {
            MeasurementBranch m = sample_measurement(swapped, observables, rng);
            auto it = label.find(m.outcomes);
            if (it == label.end() || it->second < 0) {
                unlabelled++;
            } else {
                counts[it->second]++;
            }
        }
        double sigma = std::sqrt(static_cast<double>(trials) * 0.25 * 0.75);
        double worst_z = 0;
        for (uint64_t c : counts) {
            worst_z = std::max(worst_z, std::abs(static_cast<double>(c) - 0.25 * static_cast<double>(trials)) / sigma);
        }
        std::ostringstream detail;
        detail << "counts I/X/Y/Z " << counts[0] << "/" << counts[1] << "/" << counts[2] << "/" << counts[3]
               << " of " << trials << ", max |z| " << std::fixed << std::setprecision(2) << worst_z;
        checks.push_back({"sampled outcome frequencies", unlabelled == 0 && worst_z < 4.5, detail.str()});
    }
    return checks;
}

std::vector<Check> worked_teleport(uint64_t seed) {
    std::mt19937_64 rng(seed);
    Statevector phi = random_state(1, rng);
    BranchReport rep = teleport_qems(phi);
    const double h = 1.0 / std::sqrt(2.0);
    Statevector bell(2, {h, 0, 0, h});
    double worst_prob = 0;
    bool states_ok = rep.branches.size() == 4;
    for (const auto &b : rep.branches) {
        worst_prob = std::max(worst_prob, std::abs(b.probability - 0.25));
        if (b.alpha < 0) {
            states_ok = false;
            continue;
        }
        Statevector expect = tensor(apply_pauli(bell, on_qubit(2, 0, b.alpha)), apply_pauli(phi, on_qubit(1, 0, b.alpha)));
        states_ok = states_ok && equal_up_to_global_phase(b.post_state, expect);
    }
    return {{"(a) Bell measurement branches of probability 1/4", rep.branches.size() == 4 && worst_prob < 1e-10,
             "max dev " + sci(worst_prob)},
            {"(a) third qubit carries sigma_alpha|phi>", states_ok, "random |phi>, seed " + std::to_string(seed)}};
}

std::vector<Check> worked_pair(const std::string &tag, const StabilizerCode &code, std::size_t i, std::size_t j) {
    Statevector g = graph_state_vector(code.adjacency());
    double worst_prob = 0;
    bool labels_ok = true;
    bool states_ok = true;
    check_pair_branches(code, g, code, g, i, j, worst_prob, labels_ok, states_ok);
    std::string where = "qubits " + std::to_string(i + 1) + " and " + std::to_string(code.n() + j + 1);
    return {{tag + " four twined branches of probability 1/4", labels_ok && worst_prob < 1e-10,
             where + ", max dev " + sci(worst_prob)},
            {tag + " post-states carry twined errors", states_ok, where}};
}

std::vector<Check> worked_permutation(std::ostream &out) {
    StabilizerCode ghz = ghz_star_code(0);
    Statevector g = graph_state_vector(ghz.adjacency());
    std::vector<Statevector> states(3, g);
    std::vector<StabilizerCode> codes(3, ghz);
    std::vector<Slot> slots = {{0, 2}, {1, 2}, {2, 2}};
    PatternHistogram hist = permutation_statistics(states, codes, slots, cycle_transpositions(3));

    double worst = 0;
    for (const auto &[pattern, prob] : hist.probability) {
        out << "  pattern " << pattern << "  probability " << std::setprecision(12) << prob << "\n";
        worst = std::max(worst, std::abs(prob - 1.0 / 16));
    }
    std::ostringstream types;
    bool first = true;
    for (const auto &[type, count] : hist.type_counts) {
        types << (first ? "" : " ") << type << ":" << count;
        first = false;
    }
    std::map<std::string, int> expected = {{"III", 1}, {"IXX", 3}, {"IYY", 3}, {"IZZ", 3}, {"XYZ", 6}};
    return {{"(d) 16 patterns observed", hist.probability.size() == 16,
             std::to_string(hist.probability.size()) + " patterns"},
            {"(d) multiplicities 1,3,3,3,6", hist.type_counts == expected, types.str()},
            {"(d) patterns uniform at 1/16", worst < 1e-10, "max dev " + sci(worst)},
            {"(d) every pattern multiplies to the identity", hist.rule_violations == 0,
             std::to_string(hist.rule_violations) + " violations"}};
}

int report_checks(const std::vector<Check> &checks, std::ostream &out) {
    bool all = true;
    for (const auto &c : checks) {
        out << (c.pass ? "PASS  " : "FAIL  ") << c.name;
        if (!c.detail.empty()) {
            out << "  (" << c.detail << ")";
        }
        out << "\n";
        all = all && c.pass;
    }
    return all ? kExitOk : kExitCheckFailed;
}

// ------------------------------------------------------------------ rate-bound

struct BoundArgs {
    std::string model = "edm";
    std::size_t n = 5;
    std::size_t r = 1;
    std::optional<double> q;
    double s = 1.5;
    std::string method = "closed_form";
    std::string sweep;
    std::string format = "csv";
    std::string out_path;
    std::optional<double> nm;
    bool thresholds = false;
};

CsvRow bound_row(const RateBoundQuery &query, std::ostream &err) {
    CsvRow row;
    row.model = std::string(model_kind_name(query.model));
    row.n = query.n;
    row.r = query.r;
    row.q = query.q;
    row.s = query.model == ModelKind::PowerTail ? query.s : (query.model == ModelKind::Ldm ? 1.5 : 0);
    row.method = std::string(method_name(query.method));
    try {
        RateBoundResult res = evaluate(query);
        row.ratio = res.ratio;
        row.p_at_bound = res.p_at_bound;
        row.validity_flag = res.validity_flag;
    } catch (const RegimeViolation &e) {
        err << "warning: " << e.what() << "\n";
        row.ratio = std::numeric_limits<double>::quiet_NaN();
        row.p_at_bound = std::numeric_limits<double>::quiet_NaN();
        row.validity_flag = false;
    }
    return row;
}

std::string rows_as_text(const std::vector<CsvRow> &rows) {
    std::ostringstream out;
    std::vector<std::string> header = kBaseColumns;
    for (const auto &[k, v] : rows.empty() ? std::vector<std::pair<std::string, std::string>>{} : rows[0].extra) {
        header.push_back(k);
    }
    std::vector<std::vector<std::string>> cells;
    cells.push_back(header);
    for (const auto &row : rows) {
        std::vector<std::string> line = {row.model,
                                         std::to_string(row.n),
                                         std::to_string(row.r),
                                         format_double(row.q),
                                         format_double(row.s),
                                         row.method,
                                         format_double(row.ratio),
                                         format_double(row.p_at_bound),
                                         bool_text(row.validity_flag)};
        for (const auto &[k, v] : row.extra) {
            line.push_back(v);
        }
        cells.push_back(line);
    }
    std::vector<std::size_t> width(header.size(), 0);
    for (const auto &line : cells) {
        for (std::size_t c = 0; c < line.size() && c < width.size(); c++) {
            width[c] = std::max(width[c], line[c].size());
        }
    }
    for (const auto &line : cells) {
        for (std::size_t c = 0; c < line.size(); c++) {
            if (c + 1 < line.size()) {
                out << std::left << std::setw(static_cast<int>(width[c])) << line[c] << "  ";
            } else {
                out << line[c];
            }
        }
        out << "\n";
    }
    return out.str();
}

std::string rows_as_csv(const std::vector<CsvRow> &rows) {
    std::vector<std::string> extra;
    if (!rows.empty()) {
        for (const auto &[k, v] : rows[0].extra) {
            extra.push_back(k);
        }
    }
    std::string text = csv_header(extra);
    for (const auto &row : rows) {
        text += csv_line(row);
    }
    return text;
}

int cmd_rate_bound(const BoundArgs &args, std::ostream &out, std::ostream &err) {
    RateBoundQuery base;
    base.model = parse_model_kind(args.model);
    base.n = args.n;
    base.r = args.r;
    base.s = args.s;
    base.method = parse_method(args.method);

    std::vector<RateBoundQuery> queries;
    if (args.sweep.empty()) {
        if (!args.q) {
            throw ConfigError("-q is required unless --sweep is given");
        }
        base.q = *args.q;
        queries.push_back(base);
    } else {
        auto eq = args.sweep.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--sweep expects NAME=VALUES, e.g. q=1e-1:1e-6:6");
        }
        std::string key = args.sweep.substr(0, eq);
        std::vector<double> values = parse_grid(std::string_view(args.sweep).substr(eq + 1), key == "q");
        if (key != "q" && !args.q) {
            throw ConfigError("-q is required when sweeping " + key);
        }
        for (double v : values) {
            RateBoundQuery query = base;
            if (args.q) {
                query.q = *args.q;
            }
            if (key == "q") {
                query.q = v;
            } else if (key == "n" || key == "r") {
                if (v < 0 || v != std::floor(v)) {
                    throw ConfigError("--sweep " + key + " values must be non-negative integers");
                }
                (key == "n" ? query.n : query.r) = static_cast<std::size_t>(v);
            } else if (key == "s") {
                query.s = v;
            } else {
                throw ConfigError("--sweep supports q, n, r or s, not '" + key + "'");
            }
            queries.push_back(query);
        }
    }

    std::vector<CsvRow> rows;
    for (const auto &query : queries) {
        if (queries.size() == 1 && query.method == BoundMethod::Numeric) {
            // A single numeric query with no root is a usage error.
            RateBoundResult res = evaluate(query);
            (void)res;
        }
        CsvRow row = bound_row(query, err);
        if (args.nm) {
            row.extra.emplace_back("n_m", format_double(*args.nm));
            row.extra.emplace_back("n_m_prime", format_double(row.ratio * *args.nm));
        }
        if (args.thresholds) {
            row.extra.emplace_back("q_threshold", format_double(q_threshold(query.n, query.r)));
            row.extra.emplace_back("q_gain_threshold", format_double(q_gain_threshold(query.n, query.r)));
        }
        rows.push_back(std::move(row));
    }
    if (args.format == "csv") {
        emit(args.out_path, rows_as_csv(rows), out);
    } else if (args.format == "text") {
        emit(args.out_path, rows_as_text(rows), out);
    } else {
        throw ConfigError("--format must be csv or text");
    }
    return kExitOk;
}

// ------------------------------------------------------------------- simulate

std::string summary_line(const SimReport &r) {
    std::ostringstream out;
    out << r.code << " " << r.model << " q=" << r.q << " ratio=" << r.ratio << " p=" << r.p << " trials=" << r.trials
        << " failures=" << r.failures << " observed=" << sci(r.observed_failure_rate)
        << " predicted=" << sci(r.predicted_failure_rate) << " z=" << std::fixed << std::setprecision(2) << r.z_score;
    return out.str();
}

// ---------------------------------------------------------------------- sweep

struct SweepArgs {
    std::string code = "ring5";
    std::string model = "edm";
    double q = 0.01;
    double s = 1.5;
    std::string ratios;
    std::string spacings;
    uint64_t trials = 200000;
    std::optional<uint64_t> seed;
    unsigned threads = 1;
    std::string format = "csv";
    std::string out_path;
};

int cmd_sweep(const SweepArgs &args, std::ostream &out, std::ostream &err) {
    if (!args.seed) {
        throw ConfigError("--seed is required");
    }
    if (args.ratios.empty() == args.spacings.empty()) {
        throw ConfigError("give exactly one of --ratios or --spacings");
    }
    const StabilizerCode &code = load_preset(args.code);
    DistributionModel model = make_model(parse_model_kind(args.model), args.q, args.s, 1.0, 0.5);
    std::vector<double> spacings;
    if (!args.spacings.empty()) {
        spacings = parse_grid(args.spacings, false);
    } else {
        for (double ratio : parse_grid(args.ratios, false)) {
            if (!(ratio > 0)) {
                throw ConfigError("ratios must be positive");
            }
            spacings.push_back(1 / ratio);
        }
    }
    SweepResult res = rate_consistency_sweep(code, model, spacings, args.trials, *args.seed, args.threads);

    std::vector<CsvRow> rows;
    for (const auto &sr : res.rows) {
        CsvRow row;
        row.model = res.model;
        row.n = res.n;
        row.r = res.r;
        row.q = res.q;
        row.s = res.s;
        row.method = "monte_carlo";
        row.ratio = trim12(sr.ratio);
        row.p_at_bound = sr.p;
        row.validity_flag = sr.pass;
        row.extra = {{"spacing", format_double(sr.spacing)},
                     {"observed_failure_rate", format_double(sr.observed_failure_rate)},
                     {"predicted_failure_rate", format_double(sr.predicted_failure_rate)},
                     {"threshold", format_double(sr.threshold)},
                     {"trials", std::to_string(sr.trials)}};
        rows.push_back(std::move(row));
    }
    if (args.format == "csv") {
        emit(args.out_path, rows_as_csv(rows), out);
    } else if (args.format == "text") {
        emit(args.out_path, rows_as_text(rows), out);
    } else {
        throw ConfigError("--format must be csv or text");
    }
    err << "crossing ratio " << res.crossing_ratio << ", closed-form bound " << res.bound_ratio << ", grid step "
        << res.grid_step << (res.within_one_step ? ", within one step" : ", NOT within one step") << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------- codes

std::string code_as_text(const StabilizerCode &code) {
    std::ostringstream out;
    out << "name        " << code.name() << "\n";
    out << "parameters  [[" << code.n() << "," << code.k() << "," << code.d() << "]]\n";
    out << "edges      ";
    for (auto [u, v] : code.adjacency().edges()) {
        out << " " << u << "-" << v;
    }
    out << "\n";
    out << "logical Z vectors";
    for (const auto &a : code.logical_z_vectors()) {
        out << " " << a.str();
    }
    out << "\n";
    out << "generators (" << code.generators().size() << ")\n";
    for (const auto &g : code.generators()) {
        out << "  " << g.str() << "\n";
    }
    out << "logical Z\n";
    for (const auto &z : code.logical_z_operators()) {
        out << "  " << z.str() << "\n";
    }
    return out.str();
}

}  // namespace

// ------------------------------------------------------------------ CSV / config

std::string format_double(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    if (text == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (text == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    double value = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw ConfigError("bad number '" + std::string(text) + "'");
    }
    return value;
}

std::string csv_header(const std::vector<std::string> &extra_columns) {
    std::string out;
    for (const auto &c : kBaseColumns) {
        out += (out.empty() ? "" : ",") + c;
    }
    for (const auto &c : extra_columns) {
        out += "," + c;
    }
    return out + "\n";
}

std::string csv_line(const CsvRow &row) {
    std::string out = row.model + "," + std::to_string(row.n) + "," + std::to_string(row.r) + "," +
                      format_double(row.q) + "," + format_double(row.s) + "," + row.method + "," +
                      format_double(row.ratio) + "," + format_double(row.p_at_bound) + "," +
                      bool_text(row.validity_flag);
    for (const auto &[k, v] : row.extra) {
        out += "," + v;
    }
    return out + "\n";
}

std::vector<CsvRow> parse_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ConfigError("empty CSV");
    }
    std::vector<std::string> header = split(line, ',');
    if (header.size() < kBaseColumns.size() ||
        !std::equal(kBaseColumns.begin(), kBaseColumns.end(), header.begin())) {
        throw ConfigError("CSV header does not start with the shared bound columns");
    }
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f = split(line, ',');
        if (f.size() != header.size()) {
            throw ConfigError("CSV row has " + std::to_string(f.size()) + " fields, header has " +
                              std::to_string(header.size()));
        }
        CsvRow row;
        row.model = f[0];
        row.n = static_cast<std::size_t>(std::stoull(f[1]));
        row.r = static_cast<std::size_t>(std::stoull(f[2]));
        row.q = parse_double(f[3]);
        row.s = parse_double(f[4]);
        row.method = f[5];
        row.ratio = parse_double(f[6]);
        row.p_at_bound = parse_double(f[7]);
        row.validity_flag = parse_bool_text(f[8]);
        for (std::size_t c = kBaseColumns.size(); c < f.size(); c++) {
            row.extra.emplace_back(header[c], f[c]);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> parse_grid(std::string_view text, bool geometric) {
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        auto parts = split(text, ':');
        if (parts.size() != 3) {
            throw ConfigError("range must be start:stop:count");
        }
        double start = parse_double(parts[0]);
        double stop = parse_double(parts[1]);
        long count = 0;
        try {
            count = std::stol(parts[2]);
        } catch (const std::exception &) {
            throw ConfigError("bad range count '" + parts[2] + "'");
        }
        if (count < 1) {
            throw ConfigError("range count must be at least 1");
        }
        bool geo = geometric && start > 0 && stop > 0;
        for (long k = 0; k < count; k++) {
            double t = count == 1 ? 0 : static_cast<double>(k) / static_cast<double>(count - 1);
            double v = geo ? start * std::pow(stop / start, t) : start + (stop - start) * t;
            out.push_back(trim12(v));
        }
        return out;
    }
    for (const auto &item : split(text, ',')) {
        out.push_back(parse_double(item));
    }
    if (out.empty()) {
        throw ConfigError("empty value list");
    }
    return out;
}

SimConfig parse_sim_config(std::string_view json_text, std::string *output) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    static const std::set<std::string> top_keys = {"code",   "model", "spacing", "target_ratio", "trials",
                                                   "seed",   "mode",  "threads", "output"};
    static const std::set<std::string> model_keys = {"kind", "q", "s", "L", "lambda"};
    for (const auto &[key, value] : doc.items()) {
        if (!top_keys.count(key)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    auto need = [&](const json &obj, const std::string &key, const std::string &where) -> const json & {
        if (!obj.contains(key)) {
            throw ConfigError("missing required key '" + where + key + "'");
        }
        return obj.at(key);
    };
    auto number = [](const json &v, const std::string &key) {
        if (!v.is_number()) {
            throw ConfigError("'" + key + "' must be a number");
        }
        return v.get<double>();
    };
    auto count = [](const json &v, const std::string &key) {
        if (v.is_number_unsigned()) {
            return v.get<uint64_t>();
        }
        if (v.is_number_float() && v.get<double>() >= 0 && v.get<double>() == std::floor(v.get<double>()) &&
            v.get<double>() < 1.8e19) {
            return static_cast<uint64_t>(v.get<double>());
        }
        throw ConfigError("'" + key + "' must be a non-negative integer");
    };
    auto text = [](const json &v, const std::string &key) {
        if (!v.is_string()) {
            throw ConfigError("'" + key + "' must be a string");
        }
        return v.get<std::string>();
    };

    SimConfig cfg;
    if (doc.contains("code")) {
        cfg.code = text(doc["code"], "code");
    }
    const json &m = need(doc, "model", "");
    if (!m.is_object()) {
        throw ConfigError("'model' must be an object");
    }
    for (const auto &[key, value] : m.items()) {
        if (!model_keys.count(key)) {
            throw ConfigError("unknown config key 'model." + key + "'");
        }
    }
    ModelKind kind;
    try {
        kind = parse_model_kind(text(need(m, "kind", "model."), "model.kind"));
    } catch (const ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    double q = number(need(m, "q", "model."), "model.q");
    double L = m.contains("L") ? number(m["L"], "model.L") : 1.0;
    double lambda = m.contains("lambda") ? number(m["lambda"], "model.lambda") : 0.5;
    double s = 0;
    if (kind == ModelKind::PowerTail) {
        s = number(need(m, "s", "model."), "model.s");
    } else if (m.contains("s")) {
        throw ConfigError("'model.s' only applies to the power_tail model");
    }
    try {
        cfg.model = make_model(kind, q, s, L, lambda);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }

    if (doc.contains("spacing")) {
        cfg.spacing = number(doc["spacing"], "spacing");
    }
    if (doc.contains("target_ratio")) {
        cfg.target_ratio = number(doc["target_ratio"], "target_ratio");
    }
    cfg.trials = count(need(doc, "trials", ""), "trials");
    cfg.seed = count(need(doc, "seed", ""), "seed");
    if (doc.contains("mode")) {
        try {
            cfg.mode = parse_mode(text(doc["mode"], "mode"));
        } catch (const ConfigError &) {
            throw;
        } catch (const std::invalid_argument &e) {
            throw ConfigError(e.what());
        }
    }
    if (doc.contains("threads")) {
        uint64_t t = count(doc["threads"], "threads");
        if (t < 1 || t > 1024) {
            throw ConfigError("'threads' must lie in [1, 1024]");
        }
        cfg.threads = static_cast<unsigned>(t);
    }
    if (doc.contains("output") && output) {
        *output = text(doc["output"], "output");
    } else if (doc.contains("output")) {
        text(doc["output"], "output");
    }
    try {
        validate(cfg);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

// ------------------------------------------------------------------------ run

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    configure_logging();

    CLI::App app{"Graph-code QDE protocol simulator and rate-bound calculator", "qdt"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::string verify_code_name = "ring5";
    std::string example;
    uint64_t verify_trials = 256;
    uint64_t verify_seed = 7;
    auto *verify = app.add_subcommand("qems-verify", "Run the statevector-oracle QEMS checks");
    verify->add_option("--code", verify_code_name, "Code preset")->capture_default_str();
    verify->add_option("--appendix-a", example, "Run one worked example instead: a, b, c or d")
        ->check(CLI::IsMember({"a", "b", "c", "d"}));
    verify->add_option("--trials", verify_trials, "Sampled measurement runs")->capture_default_str();
    verify->add_option("--seed", verify_seed, "Seed for sampled checks")->capture_default_str();

    BoundArgs bound;
    auto *rate = app.add_subcommand("rate-bound", "Evaluate encoded-rate upper bounds N'_m / N_m");
    rate->add_option("--model", bound.model, "edm, ldm or power_tail")->capture_default_str();
    rate->add_option("-n", bound.n, "Code length")->capture_default_str();
    rate->add_option("-r", bound.r, "Correctable QDE count")->capture_default_str();
    rate->add_option("-q", bound.q, "Calibrated QDE probability at spacing L");
    rate->add_option("-s", bound.s, "Tail exponent (power_tail)")->capture_default_str();
    rate->add_option("--method", bound.method, "closed_form or numeric")->capture_default_str();
    rate->add_option("--sweep", bound.sweep, "NAME=a,b,c or NAME=start:stop:count (q is geometric)");
    rate->add_option("--format", bound.format, "csv or text")->capture_default_str();
    rate->add_option("--out", bound.out_path, "Write to this file instead of stdout");
    rate->add_option("--nm", bound.nm, "Raw rate N_m; adds absolute-rate columns");
    rate->add_flag("--thresholds", bound.thresholds, "Add the q_threshold and q_gain_threshold columns");

    std::string config_path;
    std::string sim_out;
    std::string sim_format = "json";
    std::optional<unsigned> sim_threads;
    auto *sim = app.add_subcommand("simulate", "Run a Monte Carlo simulation from a JSON config");
    sim->add_option("config", config_path, "Config file")->required();
    sim->add_option("--threads", sim_threads, "Worker cap; results do not depend on it");
    sim->add_option("--out", sim_out, "Report path (overrides the config)");
    sim->add_option("--format", sim_format, "json or text")->capture_default_str();

    SweepArgs sweep;
    auto *sw = app.add_subcommand("sweep", "Locate the simulated rate crossing and compare to the bound");
    sw->add_option("--code", sweep.code, "Code preset")->capture_default_str();
    sw->add_option("--model", sweep.model, "edm, ldm or power_tail")->capture_default_str();
    sw->add_option("-q", sweep.q, "Calibrated QDE probability")->capture_default_str();
    sw->add_option("-s", sweep.s, "Tail exponent (power_tail)")->capture_default_str();
    sw->add_option("--ratios", sweep.ratios, "Ratio grid L/l: a,b,c or start:stop:count");
    sw->add_option("--spacings", sweep.spacings, "Spacing grid l/L: a,b,c or start:stop:count");
    sw->add_option("--trials", sweep.trials, "Trials per grid point")->capture_default_str();
    sw->add_option("--seed", sweep.seed, "Seed (required)");
    sw->add_option("--threads", sweep.threads, "Worker cap")->capture_default_str();
    sw->add_option("--format", sweep.format, "csv or text")->capture_default_str();
    sw->add_option("--out", sweep.out_path, "Write to this file instead of stdout");

    bool as_json = false;
    std::string show_name;
    auto *codes = app.add_subcommand("codes", "List or show code presets");
    codes->require_subcommand(1);
    auto *codes_list = codes->add_subcommand("list", "List presets");
    auto *codes_show = codes->add_subcommand("show", "Show one preset");
    codes_show->add_option("name", show_name, "Preset name")->required();
    codes_show->add_flag("--json", as_json, "Emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::CallForAllHelp &e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (verify->parsed()) {
            std::vector<Check> checks;
            if (example == "a") {
                checks = worked_teleport(verify_seed);
            } else if (example == "b") {
                checks = worked_pair("(b)", ghz_star_code(0), 1, 0);
            } else if (example == "c") {
                checks = worked_pair("(c)", load_preset("ring5"), 4, 0);
            } else if (example == "d") {
                checks = worked_permutation(out);
            } else {
                const StabilizerCode &code = load_preset(verify_code_name);
                spdlog::info("verifying {} with {} sampled runs", code.name(), verify_trials);
                checks = verify_code(code, verify_trials, verify_seed);
            }
            return report_checks(checks, out);
        }
        if (rate->parsed()) {
            return cmd_rate_bound(bound, out, err);
        }
        if (sim->parsed()) {
            std::string path_from_config;
            SimConfig cfg = parse_sim_config(read_file(config_path), &path_from_config);
            if (sim_threads) {
                if (*sim_threads < 1) {
                    throw ConfigError("--threads must be at least 1");
                }
                cfg.threads = *sim_threads;
            }
            std::string path = sim_out.empty() ? path_from_config : sim_out;
            if (sim_format != "json" && sim_format != "text") {
                throw ConfigError("--format must be json or text");
            }
            if (!path.empty()) {
                // Fail on an unwritable destination before spending the run.
                std::ofstream probe(path, std::ios::app);
                if (!probe) {
                    throw IoError("cannot open '" + path + "' for writing");
                }
            }
            spdlog::info("simulating {} trials on {} worker(s)", cfg.trials, cfg.threads);
            SimReport report = run_monte_carlo(cfg);
            std::string body = sim_format == "json" ? report_to_json(report) : report_to_text(report);
            if (path.empty()) {
                out << body;
            } else {
                write_file(path, body);
                out << summary_line(report) << "\n";
            }
            return kExitOk;
        }
        if (sw->parsed()) {
            return cmd_sweep(sweep, out, err);
        }
        if (codes_list->parsed()) {
            for (const auto &name : preset_names()) {
                const StabilizerCode &code = load_preset(name);
                out << std::left << std::setw(14) << name << "[[" << code.n() << "," << code.k() << "," << code.d()
                    << "]]  verified\n";
            }
            return kExitOk;
        }
        if (codes_show->parsed()) {
            const StabilizerCode &code = load_preset(show_name);
            out << (as_json ? code_to_json(code) : code_as_text(code));
            return kExitOk;
        }
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::logic_error &e) {
        // Bad configs, unknown presets, out-of-regime queries.
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}

}  // namespace qdt::cli
