#pragma once

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "quad.hpp"
#include "unipotent.hpp"
#include "word.hpp"

namespace nilcone {

using Json = nlohmann::ordered_json;

struct NamedMat {
    std::string frame;
    RMat m;
};

struct RelationSpec {
    std::string name, lhs, rhs;
};

struct BoundaryPoint {
    std::string name;
    std::vector<std::string> generators;
};

struct MonodromyDataset {
    std::string name;
    int dimension = 0;
    int weight_center = 0;
    FormSpec form;
    std::vector<std::pair<std::string, NamedMat>> printed;  // paper-printed matrices, file order
    std::vector<std::pair<std::string, std::string>> derived_words;
    std::map<std::string, RMat> matrices;  // printed + derived, by name
    std::vector<RelationSpec> relations;
    std::vector<BoundaryPoint> points;
    Json raw;  // full document for sections consumed lazily (chain, series, ...)

    const RMat& mat(const std::string& n) const {
        auto it = matrices.find(n);
        if (it == matrices.end()) throw UnknownGenerator("dataset has no matrix '" + n + "'");
        return it->second;
    }
    bool has(const std::string& n) const { return matrices.count(n) != 0; }
    RMat eval(const std::string& word) const { return compose_word(word, matrices); }
};

inline RMat parse_matrix(const Json& rows, int dim, const std::string& what) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
        throw DimensionError(what + ": expected " + std::to_string(dim) + " rows");
    RMat m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        const Json& row = rows[i];
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw DimensionError(what + " row " + std::to_string(i) + ": expected " +
                                 std::to_string(dim) + " entries");
        for (int j = 0; j < dim; ++j) {
            if (!row[j].is_string()) throw SchemaError(what + ": matrix entries must be strings");
            m(i, j) = parse_rat(row[j].get<std::string>());
        }
    }
    return m;
}

inline RMat parse_matrix_2x2(const Json& rows, const std::string& what) {
    if (!rows.is_array() || rows.size() != 2) throw DimensionError(what + ": expected 2 rows");
    RMat m(2, 2);
    for (int i = 0; i < 2; ++i) {
        if (!rows[i].is_array() || rows[i].size() != 2)
            throw DimensionError(what + ": expected 2 entries per row");
        for (int j = 0; j < 2; ++j) m(i, j) = parse_rat(rows[i][j].get<std::string>());
    }
    return m;
}

// QuadNum coordinates stored as pairs [rational-part, sqrt-coefficient].
inline QuadRay parse_quad_ray(const Json& ray, long radicand, const std::string& what) {
    if (!ray.is_array() || ray.size() != 2) throw SchemaError(what + ": ray needs 2 coordinates");
    QuadRay out;
    for (int i = 0; i < 2; ++i) {
        if (!ray[i].is_array() || ray[i].size() != 2)
            throw SchemaError(what + ": coordinate needs [a, b] parts");
        Rat a = parse_rat(ray[i][0].get<std::string>());
        Rat b = parse_rat(ray[i][1].get<std::string>());
        out[i] = Quad(a, b, b == 0 ? 0 : radicand);
    }
    return out;
}

inline MonodromyDataset parse_dataset(const Json& doc, const std::string& origin) {
    MonodromyDataset ds;
    ds.raw = doc;
    for (const char* key : {"name", "dimension", "weight_center", "form", "matrices",
                            "relations", "points"})
        if (!doc.contains(key)) throw SchemaError(origin + ": missing field '" + key + "'");
    ds.name = doc["name"].get<std::string>();
    ds.dimension = doc["dimension"].get<int>();
    ds.weight_center = doc["weight_center"].get<int>();
    if (ds.dimension <= 0) throw SchemaError(origin + ": dimension must be positive");

    const Json& form = doc["form"];
    ds.form.j = parse_matrix(form.at("matrix"), ds.dimension, origin + " form");
    std::string action = form.at("action").get<std::string>();
    if (action != "column" && action != "row")
        throw SchemaError(origin + ": form action must be 'column' or 'row'");
    ds.form.column_action = action == "column";
    ds.form.antisymmetric = form.at("antisymmetric").get<bool>();
    if (ds.form.antisymmetric && ds.form.j.transpose() != -ds.form.j)
        throw SchemaError(origin + ": form matrix is not antisymmetric");

    for (auto& [mname, spec] : doc["matrices"].items()) {
        NamedMat nm;
        nm.frame = spec.at("frame").get<std::string>();
        nm.m = parse_matrix(spec.at("rows"), ds.dimension, origin + " matrix " + mname);
        ds.printed.emplace_back(mname, nm);
        ds.matrices[mname] = nm.m;
    }

    if (doc.contains("derived")) {
        for (auto& [dname, word] : doc["derived"].items())
            ds.derived_words.emplace_back(dname, word.get<std::string>());
        // words may reference other derived names; resolve by fixpoint
        std::vector<std::pair<std::string, std::string>> pending = ds.derived_words;
        while (!pending.empty()) {
            size_t before = pending.size();
            std::vector<std::pair<std::string, std::string>> next;
            for (auto& [dname, word] : pending) {
                try {
                    ds.matrices[dname] = compose_word(word, ds.matrices);
                } catch (const UnknownGenerator&) {
                    next.emplace_back(dname, word);
                }
            }
            pending = std::move(next);
            if (pending.size() == before)
                throw SchemaError(origin + ": unresolvable derived word '" + pending[0].second + "'");
        }
    }

    for (const Json& rel : doc["relations"]) {
        RelationSpec rs{rel.at("name").get<std::string>(), rel.at("lhs").get<std::string>(),
                        rel.at("rhs").get<std::string>()};
        ds.eval(rs.lhs);  // throws UnknownGenerator -> surface as SchemaError
        ds.eval(rs.rhs);
        ds.relations.push_back(rs);
    }
    for (const Json& pt : doc["points"]) {
        BoundaryPoint bp;
        bp.name = pt.at("name").get<std::string>();
        for (const Json& g : pt.at("generators")) {
            std::string gn = g.get<std::string>();
            if (!ds.has(gn)) throw SchemaError(origin + ": point generator '" + gn + "' unknown");
            bp.generators.push_back(gn);
        }
        ds.points.push_back(bp);
    }
    return ds;
}

inline MonodromyDataset load_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open dataset file '" + path + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        return parse_dataset(doc, path);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

// Canonical serialized form; loading then re-serializing is idempotent.
inline std::string serialize_dataset(const MonodromyDataset& ds) { return ds.raw.dump(2) + "\n"; }

} // namespace nilcone
