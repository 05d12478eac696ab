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

#ifndef QDT_TOOLS_CLI_H
#define QDT_TOOLS_CLI_H

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdt/protocol_sim.h"
#include "qdt/rate_bounds.h"

namespace qdt::cli {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Entry point shared by the qdt binary and the tests.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// One CSV row of the shared bound/sweep schema. Sweep rows fill the
/// trailing columns as well.
struct CsvRow {
    std::string model;
    std::size_t n = 0;
    std::size_t r = 0;
    double q = 0;
    double s = 0;
    std::string method;
    double ratio = 0;
    double p_at_bound = 0;
    bool validity_flag = false;
    std::vector<std::pair<std::string, std::string>> extra;

    friend bool operator==(const CsvRow &, const CsvRow &) = default;
};

/// Shortest text that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

std::string csv_header(const std::vector<std::string> &extra_columns = {});
std::string csv_line(const CsvRow &row);
std::vector<CsvRow> parse_csv(std::istream &in);

/// Parses a simulation config document. Unknown keys and a missing seed
/// are rejected with ConfigError. `output` receives the report path, if any.
SimConfig parse_sim_config(std::string_view json_text, std::string *output = nullptr);

/// "a,b,c" or "start:stop:count" (geometric when both ends are positive and
/// `geometric` is set, linear otherwise).
std::vector<double> parse_grid(std::string_view text, bool geometric);

}  // namespace qdt::cli

#endif  // QDT_TOOLS_CLI_H
