#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wha/assembly.hpp"
#include "wha/cyclotomic.hpp"
#include "wha/graph.hpp"
#include "wha/path_wba.hpp"
#include "wha/temperley_lieb.hpp"

namespace wha {

using json = nlohmann::ordered_json;

inline json to_json(const CycloNumber& x) {
    json coeffs = json::array();
    for (auto& c : x.coeffs()) coeffs.push_back({c.get_num().get_str(), c.get_den().get_str()});
    return {{"N", x.conductor()}, {"coeffs", coeffs}};
}

inline CycloNumber cyclo_from_json(const json& j) {
    int N = j.at("N").get<int>();
    const CycloField* F = N == 1 ? nullptr : CycloField::get(N);
    std::vector<mpq_class> c;
    for (auto& e : j.at("coeffs")) {
        mpq_class v(mpz_class(e.at(0).get<std::string>()), mpz_class(e.at(1).get<std::string>()));
        if (v.get_den() == 0) throw std::invalid_argument("CycloNumber JSON: zero denominator");
        v.canonicalize();
        c.push_back(v);
    }
    return CycloNumber::from_coeffs(F, c);
}

inline json to_json(const DimensionGraph& g) {
    json vs = json::array(), es = json::array();
    for (int v = 0; v < g.num_vertices(); ++v) vs.push_back(v);
    for (auto& e : g.edges()) es.push_back({e.source, e.target, e.id});
    return {{"vertices", vs}, {"edges", es}};
}

inline DimensionGraph graph_from_json(const json& j) {
    auto& vs = j.at("vertices");
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (vs[i].get<int>() != static_cast<int>(i)) throw std::invalid_argument("graph JSON: vertices must be 0..n-1");
    DimensionGraph g(static_cast<int>(vs.size()));
    for (auto& e : j.at("edges")) {
        int id = g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
        if (e.at(2).get<int>() != id) throw std::invalid_argument("graph JSON: edge ids must be 0..E-1 in order");
    }
    return g;
}

inline json to_json(const FusionData& f) { return {{"unit", f.unit}, {"N", f.N}}; }

inline FusionData fusion_from_json(const json& j) {
    FusionData f;
    f.unit = j.at("unit").get<int>();
    f.N = j.at("N").get<std::vector<std::vector<std::vector<int>>>>();
    if (auto err = f.validate(); !err.empty()) throw std::invalid_argument("fusion JSON: " + err);
    return f;
}

/// paths are written as vertex sequences, or as edge ids when the graph has parallel edges
inline json path_to_json(const PathSpace& S, int m, int idx) {
    const Path& p = S.path(m, idx);
    if (m > 0 && S.graph().has_parallel_edges()) return p.edges;
    return p.vertices;
}

inline int path_from_json(const PathSpace& S, int m, const json& j) {
    auto v = j.get<std::vector<int>>();
    if (m > 0 && S.graph().has_parallel_edges()) return S.index_of(make_path(S.graph(), v));
    if (static_cast<int>(v.size()) != m + 1) throw std::invalid_argument("path JSON: wrong length");
    return S.index_of_vertices(v);
}

inline json to_json(const WbaElement& x, const PathSpace& S) {
    json terms = json::array();
    for (auto& [k, c] : x.terms())
        terms.push_back({{"m", k.m}, {"p", path_to_json(S, k.m, k.p)}, {"q", path_to_json(S, k.m, k.q)}, {"c", to_json(c)}});
    return {{"terms", terms}};
}

inline WbaElement wba_from_json(const json& j, const PathSpace& S, int cap) {
    WbaElement x(cap);
    for (auto& t : j.at("terms")) {
        int m = t.at("m").get<int>();
        x.add({m, path_from_json(S, m, t.at("p")), path_from_json(S, m, t.at("q"))}, cyclo_from_json(t.at("c")));
    }
    return x;
}

inline json to_json(const RMatrix& R) {
    json es = json::array();
    for (auto& [k, c] : R.entries) es.push_back({{"p", k.first}, {"q", k.second}, {"c", to_json(c)}});
    return {{"r", R.r}, {"entries", es}};
}

inline RMatrix rmatrix_from_json(const json& j) {
    RMatrix R;
    R.r = j.at("r").get<int>();
    for (auto& e : j.at("entries")) {
        CycloNumber c = cyclo_from_json(e.at("c"));
        if (!R.F) R.F = c.field();
        R.set(e.at("p").get<RMatrix::Path3>(), e.at("q").get<RMatrix::Path3>(), c);
    }
    return R;
}

inline json to_json(const AxiomReport& rep) {
    json a = json::array();
    for (auto& c : rep.checks) {
        json e = {{"name", c.name}, {"ok", c.ok}, {"instances", c.instances}};
        if (!c.ok) e["witness"] = c.witness;
        a.push_back(e);
    }
    return a;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace wha
