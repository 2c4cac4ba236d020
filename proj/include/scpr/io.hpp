#pragma once

// Instance file format: one JSON document per instance.
//
//   {"name": "...", "domain": "...", "universe_size": n,
//    "num_reasons": r, "pairs": [{"A": [..], "R": [..]}, ...]}
//
// `name` and `domain` are optional and omitted when empty.  The canonical
// serialization (sets ascending, pairs sorted, duplicates merged, compact
// layout, newline-terminated) is the byte stream fingerprints are computed
// over; see fingerprint.hpp.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "scpr/core.hpp"

namespace scpr {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Canonical textual form of a valid instance.
inline std::string serialize(const Instance& inst) {
    const Instance canon = canonicalize(inst);
    nlohmann::ordered_json doc;
    if (!canon.name.empty()) doc["name"] = canon.name;
    if (!canon.domain.empty()) doc["domain"] = canon.domain;
    doc["universe_size"] = canon.universe_size;
    doc["num_reasons"] = canon.num_reasons;
    auto pairs = nlohmann::ordered_json::array();
    for (const Pair& p : canon.pairs) {
        nlohmann::ordered_json jp;
        jp["A"] = p.covering;
        jp["R"] = p.reasons;
        pairs.push_back(std::move(jp));
    }
    doc["pairs"] = std::move(pairs);
    return doc.dump() + "\n";
}

namespace detail {

inline Index require_count(const nlohmann::json& doc, const char* field) {
    if (!doc.contains(field))
        throw ParseError(std::string("missing field '") + field + "'");
    const auto& v = doc.at(field);
    if (!v.is_number_unsigned())
        throw ParseError(std::string("field '") + field + "' must be a non-negative integer");
    return v.get<Index>();
}

inline IndexSet parse_index_array(const nlohmann::json& arr, const std::string& locus,
                                  Index bound, const char* bound_name) {
    if (!arr.is_array()) throw ParseError(locus + " must be an array");
    IndexSet out;
    out.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto& v = arr.at(i);
        if (!v.is_number_unsigned())
            throw ParseError(locus + "[" + std::to_string(i) + "] must be a non-negative integer");
        const auto idx = v.get<std::uint64_t>();
        if (idx >= bound)
            throw ParseError(locus + "[" + std::to_string(i) + "]: index " + std::to_string(idx) +
                             " out of range (" + bound_name + "=" + std::to_string(bound) + ")");
        out.push_back(static_cast<Index>(idx));
    }
    return out;
}

}  // namespace detail

/// Parses an instance document.  Throws ParseError for malformed syntax,
/// missing fields, and any validate() violation; the message carries the
/// offending field or pair.
inline Instance parse(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("top level must be an object");

    Instance inst;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw ParseError("field 'name' must be a string");
        inst.name = doc["name"].get<std::string>();
    }
    if (doc.contains("domain")) {
        if (!doc["domain"].is_string()) throw ParseError("field 'domain' must be a string");
        inst.domain = doc["domain"].get<std::string>();
    }
    inst.universe_size = detail::require_count(doc, "universe_size");
    inst.num_reasons = detail::require_count(doc, "num_reasons");
    if (!doc.contains("pairs")) throw ParseError("missing field 'pairs'");
    const auto& pairs = doc.at("pairs");
    if (!pairs.is_array()) throw ParseError("field 'pairs' must be an array");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& jp = pairs.at(i);
        const std::string locus = "pairs[" + std::to_string(i) + "]";
        if (!jp.is_object() || !jp.contains("A") || !jp.contains("R"))
            throw ParseError(locus + " must be an object with fields 'A' and 'R'");
        Pair p;
        p.covering = detail::parse_index_array(jp.at("A"), locus + ".A",
                                               inst.universe_size, "universe_size");
        p.reasons = detail::parse_index_array(jp.at("R"), locus + ".R",
                                              inst.num_reasons, "num_reasons");
        inst.pairs.push_back(std::move(p));
    }

    if (auto report = validate(inst); !report.empty())
        throw ParseError("invalid instance: " + report.front() +
                         (report.size() > 1
                              ? " (+" + std::to_string(report.size() - 1) + " more)"
                              : ""));
    return inst;
}

inline Instance read_instance_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_instance_file(const std::string& path, const Instance& inst) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << serialize(inst);
}

}  // namespace scpr
