#pragma once

/**
 * @file json_io.hpp
 * @brief JSON encodings of scalars, polynomials, ideals, root data, structure
 * constants and character reports.
 *
 * Output uses insertion-ordered objects, "p/q" strings for scalars and sorted
 * collections, so identical inputs give byte-identical text.
 */

#include "superweyl/weylmod.hpp"

#include "json.hpp"

#include <string>
#include <utility>
#include <vector>

namespace superweyl {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("JSON object lacks \"") + key + "\"");
    return j.at(key);
}

inline Scalar scalar_from(const Json& j) {
    if (!j.is_string()) throw InvalidInput("scalar must be a \"p/q\" string");
    return parse_scalar(j.get<std::string>());
}

inline ScalarVector scalars_from(const Json& j) {
    if (!j.is_array()) throw InvalidInput("expected an array of scalars");
    ScalarVector v;
    for (const auto& x : j) v.push_back(scalar_from(x));
    return v;
}

inline Json scalars_json(const ScalarVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Polynomials and ideals

inline Json to_json(const Polynomial& f) { return detail::scalars_json(f.coefficients()); }

inline Polynomial polynomial_from_json(const Json& j) { return Polynomial(detail::scalars_from(j)); }

inline Json to_json(const FactoredIdeal& ideal) {
    Json a = Json::array();
    for (const auto& [root, mult] : ideal.factors()) a.push_back(Json{{"root", to_string(root)}, {"mult", mult}});
    return a;
}

inline FactoredIdeal ideal_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidInput("ideal must be an array of {root, mult}");
    std::vector<std::pair<Scalar, unsigned>> entries;
    for (const auto& e : j) {
        const auto& m = detail::field(e, "mult");
        if (!m.is_number_unsigned()) throw InvalidInput("ideal multiplicity must be a positive integer");
        entries.emplace_back(detail::scalar_from(detail::field(e, "root")), m.get<unsigned>());
    }
    return ideal_from_points(entries);
}

// ---------------------------------------------------------------------------
// Root data

inline Json to_json(const Root& r) {
    Json j;
    j["root"] = r.coords;
    j["parity"] = r.parity;
    return j;
}

inline Root root_from_json(const Json& j) {
    Root r;
    const auto& c = detail::field(j, "root");
    if (!c.is_array()) throw InvalidInput("root coordinates must be an integer array");
    for (const auto& x : c) {
        if (!x.is_number_integer()) throw InvalidInput("root coordinates must be integers");
        r.coords.push_back(x.get<int>());
    }
    const auto& p = detail::field(j, "parity");
    if (!p.is_number_integer() || (p.get<int>() != 0 && p.get<int>() != 1))
        throw InvalidInput("root parity must be 0 or 1");
    r.parity = p.get<int>();
    return r;
}

inline Json roots_json(const std::vector<Root>& roots) {
    Json a = Json::array();
    for (const auto& r : roots) a.push_back(r.coords);
    return a;
}

/// Root data of one simple system as it appears in reports.
struct RootReport {
    std::string algebra;
    std::vector<Root> roots;
    std::vector<std::size_t> base;  ///< indices into roots
    DenseMatrix cartan_matrix;
    std::vector<std::string> coordinates;  ///< names of the weight literal coordinates

    friend bool operator==(const RootReport& a, const RootReport& b) {
        if (a.algebra != b.algebra || a.base != b.base || a.cartan_matrix != b.cartan_matrix ||
            a.coordinates != b.coordinates)
            return false;
        if (a.roots.size() != b.roots.size()) return false;
        for (std::size_t i = 0; i < a.roots.size(); ++i)
            if (a.roots[i].coords != b.roots[i].coords || a.roots[i].parity != b.roots[i].parity) return false;
        return true;
    }
};

inline RootReport make_root_report(const RootSystem& rs, const SimpleSystem& system) {
    RootReport r;
    r.algebra = rs.family.name();
    r.roots = rs.roots;
    for (const auto& b : system.base) {
        auto it = std::lower_bound(rs.roots.begin(), rs.roots.end(), b);
        r.base.push_back(static_cast<std::size_t>(it - rs.roots.begin()));
    }
    r.cartan_matrix = system.cartan_matrix;
    r.coordinates = weight_label_names(rs, system);
    return r;
}

inline Json to_json(const RootReport& r) {
    Json j;
    j["algebra"] = r.algebra;
    Json roots = Json::array();
    for (const auto& x : r.roots) roots.push_back(to_json(x));
    j["roots"] = roots;
    j["base"] = r.base;
    Json cm = Json::array();
    for (const auto& row : r.cartan_matrix) cm.push_back(detail::scalars_json(row));
    j["cartan_matrix"] = cm;
    j["coordinates"] = r.coordinates;
    return j;
}

inline RootReport root_report_from_json(const Json& j) {
    RootReport r;
    r.algebra = detail::field(j, "algebra").get<std::string>();
    for (const auto& x : detail::field(j, "roots")) r.roots.push_back(root_from_json(x));
    for (const auto& x : detail::field(j, "base")) {
        if (!x.is_number_unsigned() || x.get<std::size_t>() >= r.roots.size())
            throw InvalidInput("base index out of range");
        r.base.push_back(x.get<std::size_t>());
    }
    for (const auto& row : detail::field(j, "cartan_matrix")) r.cartan_matrix.push_back(detail::scalars_from(row));
    r.coordinates = detail::field(j, "coordinates").get<std::vector<std::string>>();
    return r;
}

// ---------------------------------------------------------------------------
// Structure constants

struct StructureConstant {
    std::size_t i = 0, j = 0, k = 0;
    Scalar c;
    friend bool operator==(const StructureConstant&, const StructureConstant&) = default;
};

/// [e_i, e_j] = sum_k c e_k over all ordered pairs, sorted by (i, j, k).
inline std::vector<StructureConstant> structure_constants(const LieSuperalgebra& g) {
    std::vector<StructureConstant> out;
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j)
            for (const auto& [k, c] : g.bracket_basis(i, j).entries())
                out.push_back({i, j, static_cast<std::size_t>(k), c});
    return out;
}

inline Json to_json(const std::vector<StructureConstant>& table) {
    Json a = Json::array();
    for (const auto& t : table) a.push_back(Json{{"i", t.i}, {"j", t.j}, {"k", t.k}, {"c", to_string(t.c)}});
    return a;
}

inline std::vector<StructureConstant> structure_constants_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidInput("structure constants must be an array");
    std::vector<StructureConstant> out;
    for (const auto& e : j)
        out.push_back({detail::field(e, "i").get<std::size_t>(), detail::field(e, "j").get<std::size_t>(),
                       detail::field(e, "k").get<std::size_t>(), detail::scalar_from(detail::field(e, "c"))});
    return out;
}

// ---------------------------------------------------------------------------
// Character reports

/// Character of a constructed module. Weights are given by their values on
/// weight_label_functionals of the system, the same coordinates the weight
/// literal grammar reads.
struct CharacterReport {
    std::string algebra;
    std::vector<Root> system;
    std::vector<std::string> coordinates;  ///< names of the weight coordinates
    std::vector<std::pair<Scalar, ScalarVector>> psi;
    unsigned truncation = 1;
    std::vector<std::pair<unsigned, std::size_t>> trace;
    std::size_t dimension = 0;
    std::vector<std::pair<ScalarVector, std::size_t>> character;  ///< sorted by weight
    std::vector<std::string> notes;

    friend bool operator==(const CharacterReport& a, const CharacterReport& b) {
        if (a.system.size() != b.system.size()) return false;
        for (std::size_t i = 0; i < a.system.size(); ++i)
            if (a.system[i].coords != b.system[i].coords) return false;
        return a.algebra == b.algebra && a.coordinates == b.coordinates && a.psi == b.psi &&
               a.truncation == b.truncation && a.trace == b.trace && a.dimension == b.dimension &&
               a.character == b.character && a.notes == b.notes;
    }
};

inline CharacterReport make_character_report(const WeightModule& m) {
    const auto& rs = m.algebra->roots();
    CharacterReport r;
    r.algebra = rs.family.name();
    r.system = m.system.base;
    r.coordinates = weight_label_names(rs, m.system);
    if (m.psi)
        for (const auto& [z, w] : m.psi->entries) r.psi.emplace_back(z, weight_labels(rs, m.system, w));
    r.truncation = m.truncation;
    r.trace = m.trace;
    r.dimension = m.dim();
    for (const auto& [w, d] : m.character()) r.character.emplace_back(weight_labels(rs, m.system, w), d);
    std::sort(r.character.begin(), r.character.end());
    r.notes = m.notes;
    return r;
}

inline Json character_json(const std::vector<std::pair<ScalarVector, std::size_t>>& ch) {
    Json a = Json::array();
    for (const auto& [w, d] : ch) a.push_back(Json{{"weight", detail::scalars_json(w)}, {"dim", d}});
    return a;
}

inline std::vector<std::pair<ScalarVector, std::size_t>> character_from_json(const Json& j) {
    if (!j.is_array()) throw InvalidInput("character must be an array");
    std::vector<std::pair<ScalarVector, std::size_t>> ch;
    for (const auto& e : j)
        ch.emplace_back(detail::scalars_from(detail::field(e, "weight")), detail::field(e, "dim").get<std::size_t>());
    return ch;
}

inline Json to_json(const CharacterReport& r) {
    Json j;
    j["algebra"] = r.algebra;
    j["system"] = roots_json(r.system);
    j["coordinates"] = r.coordinates;
    Json psi = Json::array();
    for (const auto& [z, w] : r.psi) psi.push_back(Json{{"point", to_string(z)}, {"weight", detail::scalars_json(w)}});
    j["psi"] = psi;
    j["truncation"] = r.truncation;
    Json trace = Json::array();
    for (const auto& [M, d] : r.trace) trace.push_back(Json{{"M", M}, {"dimension", d}});
    j["trace"] = trace;
    j["dimension"] = r.dimension;
    j["character"] = character_json(r.character);
    j["notes"] = r.notes;
    return j;
}

inline CharacterReport character_report_from_json(const Json& j) {
    CharacterReport r;
    r.algebra = detail::field(j, "algebra").get<std::string>();
    for (const auto& b : detail::field(j, "system")) r.system.push_back(Root{b.get<std::vector<int>>(), 0});
    r.coordinates = detail::field(j, "coordinates").get<std::vector<std::string>>();
    for (const auto& e : detail::field(j, "psi"))
        r.psi.emplace_back(detail::scalar_from(detail::field(e, "point")), detail::scalars_from(detail::field(e, "weight")));
    r.truncation = detail::field(j, "truncation").get<unsigned>();
    for (const auto& e : detail::field(j, "trace"))
        r.trace.emplace_back(detail::field(e, "M").get<unsigned>(), detail::field(e, "dimension").get<std::size_t>());
    r.dimension = detail::field(j, "dimension").get<std::size_t>();
    r.character = character_from_json(detail::field(j, "character"));
    r.notes = detail::field(j, "notes").get<std::vector<std::string>>();
    return r;
}

inline Json error_json(const std::string& reason) { return Json{{"error", reason}}; }

/// Canonical text form: two-space indentation and a trailing newline.
inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace superweyl
