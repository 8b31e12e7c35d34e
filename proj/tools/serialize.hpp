#pragma once

#include <json.hpp>

#include "ternary.hpp"

namespace ternary::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline json to_json(const TernaryForm& f) { return json::array({f.a, f.b, f.c, f.p, f.q, f.r}); }

inline json to_json(const Mat3& m) {
    json out = json::array();
    for (const auto& row : m) out.push_back(json::array({row[0], row[1], row[2]}));
    return out;
}

inline json forms(const std::vector<TernaryForm>& fs) {
    json out = json::array();
    for (const auto& f : fs) out.push_back(to_json(f));
    return out;
}

inline json symbols(const std::map<i64, LocalSymbol>& syms) {
    json out = json::object();
    for (const auto& [p, s] : syms) out[std::to_string(p)] = s.str();
    return out;
}

inline json genus_table(const GenusTable& T) {
    return {{"disc", T.four_d}, {"classes", forms(T.classes)}, {"symbols", symbols(T.symbols)}};
}

inline json partition(const SpinorPartition& P) {
    json j = genus_table(P.table);
    j["spinor_parts"] = P.parts;
    j["g"] = P.g();
    j["walk_prime"] = P.walk_prime;
    j["group_order"] = P.group ? json(P.group->order()) : json(nullptr);
    j["labels"] = P.labels_consistent ? json(P.labels) : json(nullptr);
    return j;
}

inline json watson_result(const WatsonResult& w) {
    return {{"p", w.p},
            {"input", to_json(w.input)},
            {"Lambda_basis", to_json(w.Lambda.basis)},
            {"Lambda_index", w.Lambda.index},
            {"Lambda_form", to_json(w.Lambda_form)},
            {"factor", ternary::to_string(w.factor)},
            {"lambda", to_json(w.lambda)},
            {"lambda_reduced", to_json(w.lambda_reduced)}};
}

inline json gamma_pair(const GammaPair& g, int level) {
    json d = json::array();
    for (int i = 0; i < 2; ++i)
        d.push_back({{"basis", to_json(g.sub[i].basis)},
                     {"form", to_json(g.descendant[i])},
                     {"reduced", to_json(g.reduced[i])}});
    return {{"p", g.p}, {"parent", to_json(g.parent)}, {"level", level}, {"candidates", g.candidates}, {"descendants", d}};
}

inline json watson_graph(const WatsonMultigraph& G) {
    json edges = json::array();
    for (const auto& e : G.edges) edges.push_back({{"class", to_json(e.cls)}, {"v1", e.v1}, {"v2", e.v2}});
    return {{"p", G.p}, {"m", G.m}, {"type", std::string(1, G.type)}, {"vertices", forms(G.vertices)}, {"edges", edges}};
}

inline std::string watson_dot(const WatsonMultigraph& G) {
    std::string s = "graph watson {\n  label=\"p=" + std::to_string(G.p) + " m=" + std::to_string(G.m) +
                    " type=" + std::string(1, G.type) + "\";\n";
    for (std::size_t i = 0; i < G.vertices.size(); ++i)
        s += "  v" + std::to_string(i) + " [label=\"" + emit(G.vertices[i]) + "\"];\n";
    for (const auto& e : G.edges)
        s += "  v" + std::to_string(e.v1) + " -- v" + std::to_string(e.v2) + " [label=\"" + emit(e.cls) + "\"];\n";
    return s + "}\n";
}

inline json corr_graph(const CorrespondenceGraph& G) {
    json edges = json::array();
    for (const auto& [e, m] : G.edges) edges.push_back({{"n_part", e.first}, {"m_part", e.second}, {"multiplicity", m}});
    auto reg = G.regularity();
    return {{"n", G.n},
            {"gN", G.PN.g()},
            {"gM", G.PM.g()},
            {"N_classes", forms(G.PN.table.classes)},
            {"M_classes", forms(G.PM.table.classes)},
            {"N_parts", G.PN.parts},
            {"M_parts", G.PM.parts},
            {"edges", edges},
            {"regular", reg ? json{{"u", reg->first}, {"v", reg->second}} : json(nullptr)}};
}

inline std::string corr_dot(const CorrespondenceGraph& G) {
    std::string s = "graph correspondence {\n  label=\"n=" + std::to_string(G.n) + "\";\n";
    for (int i = 0; i < G.PN.g(); ++i)
        s += "  N" + std::to_string(i) + " [label=\"spn " + emit(G.PN.table.classes[G.PN.parts[i].front()]) + "\"];\n";
    for (int i = 0; i < G.PM.g(); ++i)
        s += "  M" + std::to_string(i) + " [label=\"spn " + emit(G.PM.table.classes[G.PM.parts[i].front()]) +
             "\", shape=box];\n";
    for (const auto& [e, m] : G.edges)
        s += "  N" + std::to_string(e.first) + " -- M" + std::to_string(e.second) + " [label=\"" + std::to_string(m) +
             "\"];\n";
    return s + "}\n";
}

inline json split(const ScalingSplit& s) {
    json primes = json::array();
    for (const auto& sp : s.primes)
        primes.push_back({{"p", sp.p},
                          {"rank_two", sp.rank_two},
                          {"isotropic", sp.isotropic},
                          {"ord_dM", sp.ord_dM},
                          {"ord_dN", sp.ord_dN},
                          {"jordan", sp.jordan}});
    return {{"n", s.n},   {"n1", s.n1},   {"n2", s.n2}, {"n2e", s.n2e},
            {"n2o", s.n2o}, {"convention", to_string(s.convention)}, {"primes", primes}};
}

inline json matching_pairs(const Matching& m) {
    json out = json::array();
    for (auto [a, b] : m.pairs) out.push_back(json::array({a, b}));
    return out;
}

inline json report(const CorrespondenceReport& R, const std::optional<Matching>& m) {
    json comps = json::array();
    for (const auto& c : R.comps) comps.push_back({{"n_parts", c.n_parts}, {"m_parts", c.m_parts}, {"complete", c.complete}});
    return {{"n", R.pair.n},
            {"split", {{"n1", R.split.n1}, {"n2e", R.split.n2e}, {"n2o", R.split.n2o}, {"convention", to_string(R.split.convention)}}},
            {"gN", R.gN},
            {"gM", R.gM},
            {"L_NM", to_json(R.L_NM)},
            {"g_NM", R.gNM},
            {"alpha", R.alpha},
            {"beta", R.beta},
            {"components", comps},
            {"regular", R.regular},
            {"formula_agrees", R.formula_agrees},
            {"respects", R.respects},
            {"matching", m ? matching_pairs(*m) : json(nullptr)}};
}

}  // namespace ternary::io
