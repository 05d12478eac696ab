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

#include "qdt/presets.h"

#include <nlohmann/json.hpp>

namespace qdt {

namespace {

StabilizerCode make_ring5() {
    return build_code(GraphAdjacency::cycle(5), {BitVector::from_string("00000"), BitVector::from_string("11111")},
                      3, "ring5");
}

StabilizerCode make_shor9_graph() {
    GraphAdjacency block = GraphAdjacency::star(3, 0);
    GraphAdjacency adj = GraphAdjacency::disjoint_union(GraphAdjacency::disjoint_union(block, block), block);
    return build_code(adj, {BitVector::from_string("000000000"), BitVector::from_string("100100100")}, 3,
                      "shor9-graph");
}

}  // namespace

std::vector<std::string> preset_names() { return {"ring5", "shor9-graph"}; }

const StabilizerCode &load_preset(std::string_view name) {
    if (name == "ring5") {
        static const StabilizerCode code = make_ring5();
        return code;
    }
    if (name == "shor9-graph") {
        static const StabilizerCode code = make_shor9_graph();
        return code;
    }
    throw UnknownPresetError("unknown code preset '" + std::string(name) + "'");
}

StabilizerCode ghz_star_code(std::size_t center) {
    return build_code(GraphAdjacency::star(3, center), {BitVector(3)}, 1, "ghz3");
}

std::string code_to_json(const StabilizerCode &code) {
    nlohmann::ordered_json doc;
    doc["name"] = code.name();
    doc["n"] = code.n();
    doc["k"] = code.k();
    doc["d"] = code.d();
    auto edges = nlohmann::ordered_json::array();
    for (auto [u, v] : code.adjacency().edges()) {
        edges.push_back({u, v});
    }
    doc["edges"] = edges;
    auto vectors = nlohmann::ordered_json::array();
    for (const auto &a : code.logical_z_vectors()) {
        vectors.push_back(a.str());
    }
    doc["logical_z_vectors"] = vectors;
    auto gens = nlohmann::ordered_json::array();
    for (const auto &g : code.generators()) {
        gens.push_back(g.str());
    }
    doc["generators"] = gens;
    auto logical = nlohmann::ordered_json::array();
    for (const auto &z : code.logical_z_operators()) {
        logical.push_back(z.str());
    }
    doc["logical_z"] = logical;
    return doc.dump(2);
}

StabilizerCode code_from_json(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
        std::size_t n = doc.at("n").get<std::size_t>();
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const auto &e : doc.at("edges")) {
            edges.emplace_back(e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>());
        }
        std::vector<BitVector> vectors;
        for (const auto &a : doc.at("logical_z_vectors")) {
            vectors.push_back(BitVector::from_string(a.get<std::string>()));
        }
        StabilizerCode code = build_code(GraphAdjacency::from_edges(n, edges), vectors, doc.at("d").get<std::size_t>(),
                                         doc.value("name", std::string{}));
        if (doc.contains("generators")) {
            std::vector<PauliString> listed;
            for (const auto &g : doc.at("generators")) {
                listed.push_back(PauliString::parse(g.get<std::string>()));
            }
            if (listed != code.generators()) {
                throw std::invalid_argument("generators in document do not match the derived generators");
            }
        }
        return code;
    } catch (const nlohmann::json::exception &ex) {
        throw std::invalid_argument(std::string("malformed code document: ") + ex.what());
    }
}

}  // namespace qdt
