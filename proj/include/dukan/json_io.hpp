#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dukan/complex.hpp"
#include "dukan/functor.hpp"
#include "dukan/int.hpp"
#include "dukan/matrix.hpp"
#include "dukan/xi.hpp"

namespace dukan {

using nlohmann::json;

/// Schema violations in the wire format. Matrix entries travel as decimal
/// strings so arbitrary precision survives every JSON parser; structural
/// integers (truncations, ranks, degrees, XiMap values) are plain numbers.
struct JsonFormatError : std::runtime_error {
    explicit JsonFormatError(const std::string& what) : std::runtime_error(what) {}
};

inline json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Shape comes from context (the ranks), so zero-row matrices encoded as []
/// decode fine.
inline IntMatrix matrix_from_json(const json& j, std::size_t rows, std::size_t cols,
                                  const std::string& where) {
    if (!j.is_array()) throw JsonFormatError(where + ": matrix must be an array of rows");
    if (j.size() != rows)
        throw JsonFormatError(where + ": expected " + std::to_string(rows) + " rows, got " +
                              std::to_string(j.size()));
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw JsonFormatError(where + ": row " + std::to_string(i) + " must hold " +
                                  std::to_string(cols) + " entries");
        for (std::size_t k = 0; k < cols; ++k) {
            if (!row[k].is_string())
                throw JsonFormatError(where + ": entries must be decimal strings");
            try {
                m.at(i, k) = parse_int(row[k].get<std::string>());
            } catch (const std::invalid_argument& e) {
                throw JsonFormatError(where + ": " + e.what());
            }
        }
    }
    return m;
}

namespace detail {

inline std::size_t get_size(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned())
        throw JsonFormatError(std::string("missing or bad field: ") + key);
    return j[key].get<std::size_t>();
}

inline std::vector<std::size_t> get_ranks(const json& j, std::size_t trunc) {
    if (!j.contains("ranks") || !j["ranks"].is_array() || j["ranks"].size() != trunc + 1)
        throw JsonFormatError("ranks must be an array of trunc + 1 numbers");
    std::vector<std::size_t> ranks;
    for (const auto& r : j["ranks"]) {
        if (!r.is_number_unsigned()) throw JsonFormatError("ranks must be nonnegative numbers");
        ranks.push_back(r.get<std::size_t>());
    }
    return ranks;
}

}  // namespace detail

inline json chain_to_json(const ChainComplex& c) {
    json j;
    j["kind"] = "chain";
    j["trunc"] = c.trunc;
    j["ranks"] = c.ranks;
    json d = json::array();
    for (std::size_t n = 1; n <= c.trunc; ++n) d.push_back(matrix_to_json(c.d[n]));
    j["d"] = std::move(d);
    return j;
}

inline ChainComplex chain_from_json(const json& j) {
    ChainComplex c;
    c.trunc = detail::get_size(j, "trunc");
    c.ranks = detail::get_ranks(j, c.trunc);
    if (!j.contains("d") || !j["d"].is_array() || j["d"].size() != c.trunc)
        throw JsonFormatError("chain: d must list trunc matrices (degree 1 and up)");
    c.d.resize(c.trunc + 1);
    for (std::size_t n = 1; n <= c.trunc; ++n)
        c.d[n] = matrix_from_json(j["d"][n - 1], c.ranks[n - 1], c.ranks[n],
                                  "d[" + std::to_string(n) + "]");
    return c;
}

inline json duchain_to_json(const DuchainComplex& b) {
    json j = chain_to_json(b.chain);
    j["kind"] = "duchain";
    json delta = json::array();
    for (std::size_t n = 0; n < b.trunc(); ++n) delta.push_back(matrix_to_json(b.delta[n]));
    j["delta"] = std::move(delta);
    return j;
}

inline DuchainComplex duchain_from_json(const json& j) {
    DuchainComplex b;
    b.chain = chain_from_json(j);
    if (!j.contains("delta") || !j["delta"].is_array() || j["delta"].size() != b.trunc())
        throw JsonFormatError("duchain: delta must list trunc matrices");
    for (std::size_t n = 0; n < b.trunc(); ++n)
        b.delta.push_back(matrix_from_json(j["delta"][n], b.rank(n + 1), b.rank(n),
                                           "delta[" + std::to_string(n) + "]"));
    return b;
}

namespace detail {

template <class Obj>
json object_to_json(const Obj& x, const char* kind) {
    json j;
    j["kind"] = kind;
    j["trunc"] = x.trunc;
    j["ranks"] = x.ranks;
    json faces = json::array();
    for (std::size_t n = 1; n <= x.trunc; ++n) {
        json level = json::array();
        for (const auto& m : x.faces[n]) level.push_back(matrix_to_json(m));
        faces.push_back(std::move(level));
    }
    j["faces"] = std::move(faces);
    json degs = json::array();
    for (std::size_t n = 0; n < x.trunc; ++n) {
        json level = json::array();
        for (const auto& m : x.degeneracies[n]) level.push_back(matrix_to_json(m));
        degs.push_back(std::move(level));
    }
    j["degeneracies"] = std::move(degs);
    return j;
}

template <class Obj>
Obj object_from_json(const json& j) {
    Obj x;
    x.trunc = get_size(j, "trunc");
    x.ranks = get_ranks(j, x.trunc);
    if (!j.contains("faces") || !j["faces"].is_array() || j["faces"].size() != x.trunc)
        throw JsonFormatError("object: faces must list trunc levels (degree 1 and up)");
    x.faces.resize(x.trunc + 1);
    for (std::size_t n = 1; n <= x.trunc; ++n) {
        const json& level = j["faces"][n - 1];
        if (!level.is_array() || level.size() != n + 1)
            throw JsonFormatError("object: faces at degree " + std::to_string(n) +
                                  " must hold " + std::to_string(n + 1) + " matrices");
        for (std::size_t i = 0; i <= n; ++i)
            x.faces[n].push_back(matrix_from_json(level[i], x.ranks[n - 1], x.ranks[n],
                                                  "faces[" + std::to_string(n) + "][" +
                                                      std::to_string(i) + "]"));
    }
    const std::size_t extra = Obj::has_extra_degeneracy ? 1 : 0;
    if (!j.contains("degeneracies") || !j["degeneracies"].is_array() ||
        j["degeneracies"].size() != x.trunc)
        throw JsonFormatError("object: degeneracies must list trunc levels");
    x.degeneracies.resize(x.trunc);
    for (std::size_t n = 0; n < x.trunc; ++n) {
        const json& level = j["degeneracies"][n];
        if (!level.is_array() || level.size() != n + 1 + extra)
            throw JsonFormatError("object: degeneracies at degree " + std::to_string(n) +
                                  " must hold " + std::to_string(n + 1 + extra) + " matrices");
        for (std::size_t i = 0; i < n + 1 + extra; ++i)
            x.degeneracies[n].push_back(matrix_from_json(level[i], x.ranks[n + 1], x.ranks[n],
                                                         "degeneracies[" + std::to_string(n) +
                                                             "][" + std::to_string(i) + "]"));
    }
    return x;
}

}  // namespace detail

inline json simplicial_to_json(const TruncatedSimplicialGroup& x) {
    return detail::object_to_json(x, "simplicial");
}

inline json duplicial_to_json(const TruncatedDuplicialGroup& x) {
    return detail::object_to_json(x, "duplicial");
}

inline TruncatedSimplicialGroup simplicial_from_json(const json& j) {
    return detail::object_from_json<TruncatedSimplicialGroup>(j);
}

inline TruncatedDuplicialGroup duplicial_from_json(const json& j) {
    return detail::object_from_json<TruncatedDuplicialGroup>(j);
}

inline json ximap_to_json(const XiMap& f) {
    json j;
    j["flavor"] = flavor_name(f.flavor);
    j["src"] = f.src;
    j["tgt"] = f.tgt;
    j["values"] = f.values;
    return j;
}

inline XiMap ximap_from_json(const json& j) {
    if (!j.contains("flavor") || !j["flavor"].is_string())
        throw JsonFormatError("ximap: missing flavor");
    const std::string fl = j["flavor"].get<std::string>();
    Flavor flavor;
    if (fl == "Delta") flavor = Flavor::Delta;
    else if (fl == "Xi") flavor = Flavor::Xi;
    else if (fl == "ParaCyclic") flavor = Flavor::ParaCyclic;
    else throw JsonFormatError("ximap: unknown flavor " + fl);
    if (!j.contains("src") || !j["src"].is_number_integer() || !j.contains("tgt") ||
        !j["tgt"].is_number_integer() || !j.contains("values") || !j["values"].is_array())
        throw JsonFormatError("ximap: needs integer src/tgt and a values array");
    std::vector<std::int64_t> values;
    for (const auto& v : j["values"]) {
        if (!v.is_number_integer()) throw JsonFormatError("ximap: values must be integers");
        values.push_back(v.get<std::int64_t>());
    }
    try {
        return XiMap(flavor, j["src"].get<std::int64_t>(), j["tgt"].get<std::int64_t>(),
                     std::move(values));
    } catch (const std::invalid_argument& e) {
        throw JsonFormatError(std::string("ximap: ") + e.what());
    }
}

/// Kind dispatch for CLI inputs.
inline std::string json_kind(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw JsonFormatError("input must be an object with a \"kind\" field");
    return j["kind"].get<std::string>();
}

}  // namespace dukan
