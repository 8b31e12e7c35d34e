#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "watson.hpp"

namespace ternary {

struct RepresentablePair {
    TernaryForm N, M;
    i64 n = 1;
    Sublattice witness;    // index-n sublattice of N isometric to M^n
    Mat3 U;                // transform(witness.form(), U) == M^n
    Mat3 dual;             // transform(M, dual) == N^n
};

inline void check_squarefree(i64 n) {
    if (n < 1 || !is_squarefree(n)) throw NotSquareFree(std::to_string(n) + " is not square free");
}

inline std::optional<RepresentablePair> representable_pair(const TernaryForm& N, const TernaryForm& M, i64 n) {
    check_squarefree(n);
    if (static_cast<i128>(n) * M.four_disc() != N.four_disc())
        throw DiscriminantMismatch("n * 4dM = " + to_string(static_cast<i128>(n) * M.four_disc()) +
                                   " but 4dN = " + std::to_string(N.four_disc()));
    TernaryForm Mn = rescale(M, n);
    TernaryForm target = reduce(Mn);
    for (const Sublattice& K : sublattices_of_index(N, n)) {
        TernaryForm h = K.form();
        if (h.content() % n != 0 || reduce(h) != target) continue;
        auto U = isometry(Mn, h);
        if (!U) throw std::logic_error("reduced forms agree but no isometry found");
        RepresentablePair rp{N, M, n, K, *U, {}};
        // n (B U)^{-1} is integral and carries M onto N^n
        Mat3 BU = mul(K.basis, *U);
        Mat3 adj = adjugate(BU);
        i128 d = det(BU);
        for (auto& row : adj)
            for (auto& x : row) x = narrow(static_cast<i128>(x) * n / d);
        rp.dual = adj;
        if (transform(M, rp.dual) != rescale(N, n)) throw std::logic_error("N^n is not represented by M");
        return rp;
    }
    return std::nullopt;
}

// basis x1, x2, x3 of N with the witness equal to Z x1 + Z x2 + Z n x3
inline Mat3 witness_basis(const RepresentablePair& rp) { return adapted_basis(rp.witness.basis); }

// (Z x1 + Z x2 + Z k x3)^(1/k) for k | n
inline TernaryForm intermediate(const RepresentablePair& rp, i64 k) {
    Mat3 X = witness_basis(rp);
    for (int i = 0; i < 3; ++i) X[i][2] *= k;
    return reduce(rescale(transform(rp.N, X), 1, k));
}

struct ScalingClass {
    bool lambda = false;   // M^p = Lambda_p(N)
    bool gamma = false;    // M is a Gamma_p-descendant of N
    bool ambiguous() const { return lambda && gamma; }
    std::string name() const { return ambiguous() ? "ambiguous" : lambda ? "Lambda" : gamma ? "Gamma" : "none"; }
};

inline ScalingClass scaling_p_classify(const TernaryForm& N, const TernaryForm& M, i64 p) {
    if (!is_prime(p)) throw BadPrime(std::to_string(p) + " is not prime");
    if (!N.primitive() || !M.primitive()) throw NotPrimitive("both forms must be primitive");
    if (!representable_pair(N, M, p)) throw NotRepresentable("M^p is not represented by N with index p");
    ScalingClass c;
    TernaryForm m = reduce(M);
    c.lambda = reduce(watson(N, p).Lambda_form) == reduce(rescale(M, p));
    auto lv = hyperbolic_level(N, p);
    if (lv && *lv >= 1) {
        GammaPair g = gamma_descendants(N, p);
        c.gamma = g.reduced[0] == m || g.reduced[1] == m;
    }
    return c;
}

struct ChainStep {
    i64 p;
    TernaryForm Np;
};

inline std::vector<ChainStep> chain_decompose(const RepresentablePair& rp) {
    std::vector<ChainStep> out;
    for (i64 p : prime_divisors(rp.n)) out.push_back({p, intermediate(rp, p)});
    return out;
}

struct CorrespondenceGraph {
    SpinorPartition PN, PM;
    i64 n = 1;
    std::set<std::pair<int, int>> class_pairs;        // (class of gen N, class of gen M)
    std::map<std::pair<int, int>, int> edges;         // (part of N, part of M) -> multiplicity

    std::vector<std::set<int>> n_adj() const {
        std::vector<std::set<int>> a(PN.g());
        for (auto& [e, m] : edges) a[e.first].insert(e.second);
        return a;
    }
    std::vector<std::set<int>> m_adj() const {
        std::vector<std::set<int>> a(PM.g());
        for (auto& [e, m] : edges) a[e.second].insert(e.first);
        return a;
    }
    // (u, v) if every N-part has degree u and every M-part degree v
    std::optional<std::pair<int, int>> regularity() const {
        auto a = n_adj(), b = m_adj();
        std::set<std::size_t> du, dv;
        for (auto& s : a) du.insert(s.size());
        for (auto& s : b) dv.insert(s.size());
        if (du.size() != 1 || dv.size() != 1) return std::nullopt;
        return std::pair<int, int>{static_cast<int>(*du.begin()), static_cast<int>(*dv.begin())};
    }
    bool respects() const {
        auto r = regularity();
        return r && r->first == 1 && r->second == 1;
    }
};

struct Component {
    std::vector<int> n_parts, m_parts;
    bool complete = false;
};

inline std::vector<Component> components(const CorrespondenceGraph& G) {
    int gn = G.PN.g(), gm = G.PM.g();
    std::vector<int> par(gn + gm);
    for (int i = 0; i < gn + gm; ++i) par[i] = i;
    auto find = [&](int x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
    };
    for (auto& [e, m] : G.edges) par[find(e.first)] = find(gn + e.second);
    std::map<int, int> id;
    std::vector<Component> out;
    for (int v = 0; v < gn + gm; ++v) {
        int r = find(v);
        auto it = id.find(r);
        if (it == id.end()) {
            it = id.emplace(r, static_cast<int>(out.size())).first;
            out.emplace_back();
        }
        if (v < gn)
            out[it->second].n_parts.push_back(v);
        else
            out[it->second].m_parts.push_back(v - gn);
    }
    for (Component& c : out) {
        c.complete = true;
        for (int a : c.n_parts)
            for (int b : c.m_parts)
                if (!G.edges.count({a, b})) c.complete = false;
    }
    return out;
}

// class-level pairs between two spinor partitions by scaling n
inline CorrespondenceGraph graph_from_partitions(const SpinorPartition& PN, const SpinorPartition& PM, i64 n) {
    check_squarefree(n);
    CorrespondenceGraph G;
    G.PN = PN;
    G.PM = PM;
    G.n = n;
    for (std::size_t i = 0; i < PN.table.size(); ++i)
        for (const Sublattice& K : sublattices_of_index(PN.table.classes[i], n)) {
            TernaryForm h = K.form();
            if (h.content() % n != 0) continue;
            int j = PM.table.find(rescale(h, 1, n));
            if (j >= 0) G.class_pairs.insert({static_cast<int>(i), j});
        }
    for (auto [i, j] : G.class_pairs) ++G.edges[{PN.part_of[i], PM.part_of[j]}];
    return G;
}

inline CorrespondenceGraph build_graph(const TernaryForm& N, const TernaryForm& M, i64 n) {
    if (!representable_pair(N, M, n)) throw NotRepresentable("(N, M) is not a representable pair by scaling " + std::to_string(n));
    return graph_from_partitions(spinor_partition(enumerate_genus(N)), spinor_partition(enumerate_genus(M)), n);
}

// juxtaposition of G(U,V) and G(V,W) over the shared middle genus
inline std::set<std::pair<int, int>> juxtapose(const CorrespondenceGraph& A, const CorrespondenceGraph& B) {
    std::set<std::pair<int, int>> out;
    for (auto& [e1, m1] : A.edges)
        for (auto& [e2, m2] : B.edges)
            if (e1.second == e2.first) out.insert({e1.first, e2.second});
    return out;
}

enum class Convention { dM, dN };

inline std::string to_string(Convention c) { return c == Convention::dM ? "dM" : "dN"; }

// the only convention under which the component-shape formula matches the brute-force graph
// of gen(<12,15,135,5,0,0>) -> gen(<1,20,80>) by scaling 15; pinned by the acceptance run
inline constexpr Convention kDefaultConvention = Convention::dN;

struct SplitPrime {
    i64 p;
    bool rank_two = false;    // the 1/2 Z_p-modular constituent of N_p has rank 2
    bool isotropic = false;   // ... and is a hyperbolic plane
    int ord_dM = 0, ord_dN = 0;
    std::string jordan;       // local symbol of N_p
};

struct ScalingSplit {
    i64 n = 1, n1 = 1, n2 = 1, n2e = 1, n2o = 1;
    Convention convention = Convention::dN;
    std::vector<SplitPrime> primes;
};

inline ScalingSplit scaling_split(const TernaryForm& N, const TernaryForm& M, i64 n, Convention conv) {
    check_squarefree(n);
    ScalingSplit s;
    s.n = n;
    s.convention = conv;
    for (i64 p : prime_divisors(n)) {
        SplitPrime sp;
        sp.p = p;
        sp.ord_dM = val(static_cast<i128>(M.four_disc()), p);
        sp.ord_dN = val(static_cast<i128>(N.four_disc()), p);
        sp.jordan = local_symbol(N, p).str();
        int half_scale = p == 2 ? -1 : 0;
        for (const JordanBlock& b : jordan(N, p)) {
            if (b.scale != half_scale || b.rank != 2) continue;
            if (p == 2 && b.odd_type) continue;
            sp.rank_two = true;
            sp.isotropic = p == 2 ? b.det_unit == 7 : b.det_unit == legendre(-1, p);
        }
        if (!sp.rank_two) {
            s.n1 *= p;
        } else {
            s.n2 *= p;
            int ord = conv == Convention::dM ? sp.ord_dM : sp.ord_dN;
            (ord % 2 == 0 ? s.n2e : s.n2o) *= p;
        }
        s.primes.push_back(sp);
    }
    return s;
}

struct CorrespondenceReport {
    RepresentablePair pair;
    ScalingSplit split;
    CorrespondenceGraph graph;
    int gN = 0, gM = 0, gNM = 0;
    TernaryForm L_NM;
    int alpha = 0, beta = 0;            // 0 when g_NM does not divide
    std::vector<Component> comps;
    bool regular = false;
    bool all_complete = false;
    bool formula_agrees = false;        // every component is K with beta N-parts and alpha M-parts
    bool respects = false;
    std::optional<bool> equal_g_agrees;   // when g(N) = g(M): respects iff g_NM = g(N)
};

inline CorrespondenceReport analyze_with(const RepresentablePair& rp, const CorrespondenceGraph& G, Convention conv) {
    CorrespondenceReport R;
    R.pair = rp;
    R.graph = G;
    R.split = scaling_split(rp.N, rp.M, rp.n, conv);
    R.gN = G.PN.g();
    R.gM = G.PM.g();
    R.L_NM = intermediate(rp, R.split.n1 * R.split.n2e);
    R.gNM = g_truth(R.L_NM);
    if (R.gM % R.gNM == 0 && R.gN % R.gNM == 0) {
        R.alpha = R.gM / R.gNM;
        R.beta = R.gN / R.gNM;
    }
    R.comps = components(G);
    R.regular = G.regularity().has_value();
    R.all_complete = true;
    R.formula_agrees = R.alpha > 0;
    for (const Component& c : R.comps) {
        R.all_complete &= c.complete;
        R.formula_agrees &= c.complete && static_cast<int>(c.n_parts.size()) == R.beta &&
                            static_cast<int>(c.m_parts.size()) == R.alpha;
    }
    R.respects = G.respects();
    if (R.gN == R.gM) R.equal_g_agrees = R.respects == (R.gN == R.gNM);
    return R;
}

inline CorrespondenceReport analyze(const TernaryForm& N, const TernaryForm& M, i64 n, Convention conv) {
    auto rp = representable_pair(N, M, n);
    if (!rp) throw NotRepresentable("(N, M) is not a representable pair by scaling " + std::to_string(n));
    return analyze_with(*rp, graph_from_partitions(spinor_partition(enumerate_genus(N)),
                                                   spinor_partition(enumerate_genus(M)), n),
                        conv);
}

struct Matching {
    std::vector<std::pair<int, int>> pairs;   // (N-part, M-part)
    bool transfer = false;                    // every class of a matched part has a partner in the other
};

inline Matching hall_matching(const CorrespondenceGraph& G) {
    int gn = G.PN.g(), gm = G.PM.g();
    if (gn != gm) throw NoMatching("g(N) != g(M)");
    if (!G.regularity()) throw NoMatching("the spinor genus graph is not regular");
    auto adj = G.n_adj();
    std::vector<int> match_m(gm, -1);
    for (int u = 0; u < gn; ++u) {
        std::vector<bool> seen(gm, false);
        std::function<bool(int)> augment = [&](int x) {
            for (int y : adj[x]) {
                if (seen[y]) continue;
                seen[y] = true;
                if (match_m[y] < 0 || augment(match_m[y])) {
                    match_m[y] = x;
                    return true;
                }
            }
            return false;
        };
        if (!augment(u)) throw NoMatching("no perfect matching");
    }
    Matching m;
    for (int y = 0; y < gm; ++y) m.pairs.push_back({match_m[y], y});
    std::sort(m.pairs.begin(), m.pairs.end());
    m.transfer = true;
    for (auto [a, b] : m.pairs) {
        for (int i : G.PN.parts[a]) {
            bool ok = false;
            for (int j : G.PM.parts[b]) ok |= G.class_pairs.count({i, j}) > 0;
            m.transfer &= ok;
        }
        for (int j : G.PM.parts[b]) {
            bool ok = false;
            for (int i : G.PN.parts[a]) ok |= G.class_pairs.count({i, j}) > 0;
            m.transfer &= ok;
        }
    }
    return m;
}

struct ExceptionalTransfer {
    std::vector<i64> nS;
    bool complete = false;        // n S is a complete system for gen(N)
    bool per_part = false;        // spn(N_i) represents n k iff spn(M_i) represents k
};

inline ExceptionalTransfer exceptional_transfer(const CorrespondenceReport& R, const std::vector<i64>& S) {
    if (!R.respects || R.gN != R.gNM || R.gM != R.gNM)
        throw HypothesisFailure("the correspondence must respect spinor genus with g(N) = g_NM = g(M)");
    const CorrespondenceGraph& G = R.graph;
    if (!complete_exceptional_system_check(G.PM, S)) throw HypothesisFailure("S is not a complete system for gen(M)");
    ExceptionalTransfer t;
    for (i64 k : S) t.nS.push_back(R.pair.n * k);
    t.complete = complete_exceptional_system_check(G.PN, t.nS);
    t.per_part = true;
    for (auto& [e, mult] : G.edges)
        for (i64 k : S)
            t.per_part &= spn_represents(G.PN, e.first, R.pair.n * k) == spn_represents(G.PM, e.second, k);
    return t;
}

}  // namespace ternary
