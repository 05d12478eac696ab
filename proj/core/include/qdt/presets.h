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

#ifndef QDT_PRESETS_H
#define QDT_PRESETS_H

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qdt/graph_code.h"

namespace qdt {

struct UnknownPresetError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Names accepted by load_preset, in display order.
std::vector<std::string> preset_names();

/// "ring5": the 5-cycle with logical vector 11111, a [[5,1,3]] code.
/// "shor9-graph": three disjoint 3-vertex stars (GHZ-type blocks, centers
/// 0, 3, 6) with logical vector on the centers, a [[9,1,3]] code.
/// Both are run through build_code, so a returned code is verified.
const StabilizerCode &load_preset(std::string_view name);

/// 3-vertex star graph state viewed as a k = 0 code; used as the GHZ-type
/// register in the small exchange examples.
StabilizerCode ghz_star_code(std::size_t center = 0);

/// JSON document with name, n, k, d, edges, logical vectors (bit strings),
/// generators and logical Z operators in letter format.
std::string code_to_json(const StabilizerCode &code);

/// Inverse of code_to_json; re-runs verification. Generators in the
/// document, if present, must match the derived ones.
StabilizerCode code_from_json(std::string_view json_text);

}  // namespace qdt

#endif  // QDT_PRESETS_H
