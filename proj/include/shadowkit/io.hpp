#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "shadowkit/kgraph.hpp"

namespace shadowkit {

/// Malformed or invalid hypergraph document; the message names the field.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"n": int, "r": int, "edges": [[v, ...], ...], "name": optional string}
struct HypergraphDocument {
    KGraph graph;
    std::string name;
};

namespace detail {

inline int read_int(const nlohmann::json& j, const char* field) {
    if (!j.contains(field)) throw parse_error(std::string("missing field '") + field + "'");
    const auto& v = j.at(field);
    if (!v.is_number_integer()) throw parse_error(std::string("field '") + field + "' must be an integer");
    return v.get<int>();
}

}  // namespace detail

inline HypergraphDocument parse_document(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("malformed document: ") + e.what());
    }
    if (!j.is_object()) throw parse_error("document must be an object");
    const int n = detail::read_int(j, "n");
    const int r = detail::read_int(j, "r");
    if (n < 0 || n > kMaxVertices) throw parse_error("field 'n' must lie in [0, 64]");
    if (r < 0 || r > n) throw parse_error("field 'r' must lie in [0, n]");
    if (!j.contains("edges") || !j.at("edges").is_array()) throw parse_error("field 'edges' must be an array");
    HypergraphDocument doc;
    if (j.contains("name")) {
        if (!j.at("name").is_string()) throw parse_error("field 'name' must be a string");
        doc.name = j.at("name").get<std::string>();
    }
    std::vector<Mask> edges;
    std::unordered_set<Mask> seen;
    const auto& arr = j.at("edges");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        const auto& e = arr[i];
        if (!e.is_array()) throw parse_error(where + ": edge must be an array");
        if (static_cast<int>(e.size()) != r) throw parse_error(where + ": edge size != r");
        Mask m = 0;
        for (const auto& v : e) {
            if (!v.is_number_integer()) throw parse_error(where + ": vertex must be an integer");
            const long long x = v.get<long long>();
            if (x < 0 || x >= n) throw parse_error(where + ": vertex out of range");
            if (contains(m, static_cast<int>(x))) throw parse_error(where + ": repeated vertex");
            m |= bit(static_cast<int>(x));
        }
        if (!seen.insert(m).second) throw parse_error(where + ": duplicate edge");
        edges.push_back(m);
    }
    try {
        doc.graph = KGraph(n, r, std::move(edges));
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("edges: ") + e.what());
    }
    return doc;
}

inline KGraph parse_hypergraph(std::string_view text) { return parse_document(text).graph; }

inline HypergraphDocument load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

inline nlohmann::json to_json(const KGraph& g, const std::string& name = {}) {
    nlohmann::json edges = nlohmann::json::array();
    for (Mask e : g.edges()) edges.push_back(members(e));
    nlohmann::json j;
    j["n"] = g.n();
    j["r"] = g.r();
    j["edges"] = std::move(edges);
    if (!name.empty()) j["name"] = name;
    return j;
}

/// Canonical text: edges in colex order, vertices ascending.
inline std::string serialize(const HypergraphDocument& doc) { return to_json(doc.graph, doc.name).dump(); }

inline std::string serialize(const KGraph& g) { return to_json(g).dump(); }

}  // namespace shadowkit
