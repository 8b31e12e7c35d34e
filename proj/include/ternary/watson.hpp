#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "genus.hpp"

namespace ternary {

namespace detail {

// basis of the null space of X over F_p (X taken mod p)
inline std::vector<Vec3> kernel_mod(const Mat3& X, i64 p) {
    std::array<std::array<i64, 3>, 3> M{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M[i][j] = mod(X[i][j], p);
    std::array<int, 3> pivcol{-1, -1, -1};
    int row = 0;
    for (int col = 0; col < 3 && row < 3; ++col) {
        int piv = -1;
        for (int i = row; i < 3; ++i)
            if (M[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[row], M[piv]);
        i64 inv = inv_mod(M[row][col], p);
        for (int j = 0; j < 3; ++j) M[row][j] = M[row][j] * inv % p;
        for (int i = 0; i < 3; ++i) {
            if (i == row || M[i][col] == 0) continue;
            i64 m = M[i][col];
            for (int j = 0; j < 3; ++j) M[i][j] = mod(M[i][j] - m * M[row][j], p);
        }
        pivcol[row++] = col;
    }
    std::vector<Vec3> out;
    for (int free = 0; free < 3; ++free) {
        bool is_piv = false;
        for (int r = 0; r < row; ++r) is_piv |= pivcol[r] == free;
        if (is_piv) continue;
        Vec3 v{0, 0, 0};
        v[free] = 1;
        for (int r = 0; r < row; ++r) v[pivcol[r]] = mod(-M[r][free], p);
        out.push_back(v);
    }
    return out;
}

inline std::vector<i64> unit_classes(i64 p) {
    if (p == 2) return {1, 3, 5, 7};
    return {1, smallest_nonresidue(p)};
}

}  // namespace detail

struct WatsonResult {
    TernaryForm input;
    i64 p = 0;
    Sublattice Lambda;
    TernaryForm Lambda_form;
    Rational factor;        // lambda = Lambda_form scaled by factor
    TernaryForm lambda;     // primitive, in the basis of Lambda
    TernaryForm lambda_reduced;
};

// Lambda_p(L) = {x : Q(x+z) = Q(z) mod p for all z} = {x : A x = 0 mod p and Q(x) = 0 mod p}
inline WatsonResult watson(const TernaryForm& f, i64 p) {
    if (!is_prime(p)) throw BadPrime(std::to_string(p) + " is not prime");
    std::vector<Vec3> gens;
    for (int i = 0; i < 3; ++i) {
        Vec3 e{0, 0, 0};
        e[i] = p;
        gens.push_back(e);
    }
    auto ker = detail::kernel_mod(f.A(), p);
    if (p == 2) {
        // Q is additive mod 2 on the kernel; keep its zero set
        std::optional<Vec3> odd;
        for (const Vec3& k : ker) {
            if (mod(f.Q(k), 2) == 0) {
                gens.push_back(k);
            } else if (!odd) {
                odd = k;
                gens.push_back({2 * k[0], 2 * k[1], 2 * k[2]});
            } else {
                gens.push_back({k[0] + (*odd)[0], k[1] + (*odd)[1], k[2] + (*odd)[2]});
            }
        }
    } else {
        for (const Vec3& k : ker) gens.push_back(k);
    }
    WatsonResult w;
    w.input = f;
    w.p = p;
    Mat3 B = hnf_basis(gens);
    w.Lambda = Sublattice{f, B, narrow(det(B))};
    w.Lambda_form = w.Lambda.form();
    w.factor = Rational(1, w.Lambda_form.content());
    w.lambda = rescale(w.Lambda_form, w.factor);
    w.lambda_reduced = reduce(w.lambda);
    return w;
}

inline TernaryForm lambda(const TernaryForm& f, i64 p) { return watson(f, p).lambda_reduced; }

inline bool is_H_type(const TernaryForm& f, i64 p) {
    if (!f.primitive()) throw NotPrimitive(emit(f) + " is not primitive");
    return g_truth(f) == g_truth(lambda(f, p));
}

inline int lambda_fiber_exponent(const TernaryForm& f, i64 p) {
    if (!f.primitive()) throw NotPrimitive(emit(f) + " is not primitive");
    int gl = g_truth(f), gm = g_truth(lambda(f, p));
    if (gl % gm != 0) throw std::logic_error("g(lambda_p L) does not divide g(L)");
    int a = 0;
    while ((gm << a) < gl) ++a;
    if ((gm << a) != gl) throw std::logic_error("g(L)/g(lambda_p L) is not a power of 2");
    return a;
}

// Q = xy + eps p^k z^2: the local model H + <eps p^k> (not positive definite; only its
// local symbols are used)
inline TernaryForm hyperbolic_model(i64 p, i64 eps, int k) { return TernaryForm{0, 0, eps * ipow(p, k), 0, 0, 1}; }

// the k with F_p = H + <eps p^k>, if F_p has that shape
inline std::optional<int> hyperbolic_level(const TernaryForm& f, i64 p) {
    int k = val(static_cast<i128>(f.four_disc()), p);
    LocalSymbol s = local_symbol(f, p);
    for (i64 eps : detail::unit_classes(p))
        if (local_symbol(hyperbolic_model(p, eps, k), p) == s) return k;
    return std::nullopt;
}

struct GammaPair {
    TernaryForm parent;
    i64 p = 0;
    std::array<Sublattice, 2> sub;
    std::array<TernaryForm, 2> descendant;   // sub[i] scaled by 1/p
    std::array<TernaryForm, 2> reduced;
    int candidates = 0;                      // index-p sublattices inspected
};

inline GammaPair gamma_descendants(const TernaryForm& f, i64 p) {
    auto k = hyperbolic_level(f, p);
    if (!k || *k < 1)
        throw NotHyperbolicAtP(emit(f) + " is not of the form H + <eps p^(m+1)> at " + std::to_string(p));
    GammaPair g;
    g.parent = f;
    g.p = p;
    auto subs = sublattices_of_index(f, p);
    g.candidates = static_cast<int>(subs.size());
    int found = 0;
    for (const Sublattice& s : subs) {
        TernaryForm h = s.form();
        if (h.content() % p != 0) continue;
        if (found == 2) throw std::logic_error("more than two index-p sublattices with norm in pZ");
        g.sub[found] = s;
        g.descendant[found] = rescale(h, 1, p);
        g.reduced[found] = reduce(g.descendant[found]);
        ++found;
    }
    if (found != 2) throw std::logic_error("expected exactly two index-p sublattices with norm in pZ");
    return g;
}

// one step up the family: N = M^p + Z v/p for an isotropic v, checked to have level k+1
inline TernaryForm family_lift(const TernaryForm& m, i64 p, int k) {
    std::optional<TernaryForm> found;
    auto try_v = [&](const Vec3& v) {
        if (found || mod(m.Q(v), p) != 0) return;
        std::vector<Vec3> gens{v};
        for (int i = 0; i < 3; ++i) {
            Vec3 e{0, 0, 0};
            e[i] = p;
            gens.push_back(e);
        }
        TernaryForm n = rescale(transform(m, hnf_basis(gens)), 1, p);
        auto lv = hyperbolic_level(n, p);
        if (lv && *lv == k + 1) found = n;
    };
    for (i64 x = 0; x < p; ++x)
        for (i64 y = 0; y < p; ++y) try_v({1, x, y});
    for (i64 y = 0; y < p; ++y) try_v({0, 1, y});
    try_v({0, 0, 1});
    if (!found) throw std::logic_error("no lift to the next level of the family");
    return reduce(*found);
}

struct FamilySlice {
    TernaryForm base;
    i64 p = 0;
    int m = 0;
    TernaryForm seed;
    GenusTable table;
};

inline FamilySlice family_slice(const TernaryForm& L, i64 p, int m) {
    auto k = hyperbolic_level(L, p);
    if (!k || *k != 0) throw NotHyperbolicAtP(emit(L) + " is not of the form H + <eps> at " + std::to_string(p));
    FamilySlice s;
    s.base = L;
    s.p = p;
    s.m = m;
    s.seed = reduce(L);
    for (int i = 0; i < m; ++i) s.seed = family_lift(s.seed, p, i);
    s.table = enumerate_genus(s.seed);
    return s;
}

struct WatsonEdge {
    TernaryForm cls;
    int v1 = -1, v2 = -1;
};

struct WatsonMultigraph {
    i64 p = 0;
    int m = 0;
    char type = 'O';
    FamilySlice vertices_slice, edges_slice;
    std::vector<TernaryForm> vertices;
    std::vector<WatsonEdge> edges;

    // connected components as (vertex indices, edge indices)
    std::vector<std::pair<std::vector<int>, std::vector<int>>> components() const {
        std::vector<int> par(vertices.size());
        for (std::size_t i = 0; i < par.size(); ++i) par[i] = static_cast<int>(i);
        auto find = [&](int x) {
            while (par[x] != x) x = par[x] = par[par[x]];
            return x;
        };
        for (const auto& e : edges) par[find(e.v1)] = find(e.v2);
        std::map<int, int> id;
        std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            int r = find(static_cast<int>(v));
            auto it = id.find(r);
            if (it == id.end()) {
                it = id.emplace(r, static_cast<int>(out.size())).first;
                out.emplace_back();
            }
            out[it->second].first.push_back(static_cast<int>(v));
        }
        for (std::size_t e = 0; e < edges.size(); ++e) out[id.at(find(edges[e].v1))].second.push_back(static_cast<int>(e));
        return out;
    }
};

// E-type needs m even and j(p) outside P_D J^L
inline char watson_type(const TernaryForm& L, i64 p, int m) {
    if (m % 2 == 1) return 'O';
    return idele_class_group(L).j_trivial(p) ? 'O' : 'E';
}

inline WatsonMultigraph watson_graph(const TernaryForm& L, i64 p, int m) {
    WatsonMultigraph G;
    G.p = p;
    G.m = m;
    G.vertices_slice = family_slice(L, p, m);
    G.edges_slice = family_slice(L, p, m + 1);
    G.type = watson_type(L, p, m);
    G.vertices = G.vertices_slice.table.classes;
    for (const TernaryForm& n : G.edges_slice.table.classes) {
        GammaPair gp = gamma_descendants(n, p);
        WatsonEdge e{n, G.vertices_slice.table.find_reduced(gp.reduced[0]),
                     G.vertices_slice.table.find_reduced(gp.reduced[1])};
        if (e.v1 < 0 || e.v2 < 0) throw std::logic_error("Gamma descendant outside the lower slice");
        if (e.v1 > e.v2) std::swap(e.v1, e.v2);
        G.edges.push_back(e);
    }
    return G;
}

// Cspn of a class in a slice: its spinor genus, together with the one translated by j(p) for E-type
inline std::vector<int> cspn(const SpinorPartition& P, int cls, i64 p, char type) {
    int part = P.part_of.at(cls);
    std::vector<int> out = P.parts[part];
    if (type == 'E') {
        if (!P.labels_consistent) throw std::logic_error("cspn needs a labelled spinor partition");
        int other = P.part_with_label(P.labels[part] ^ P.group->j(p));
        if (other < 0 || other == part) throw std::logic_error("E-type slice without a paired spinor genus");
        out.insert(out.end(), P.parts[other].begin(), P.parts[other].end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct ExchangeReport {
    bool part1 = false;
    std::optional<bool> part2;   // only when N also has the shape at q
    bool ok() const { return part1 && part2.value_or(true); }
};

inline ExchangeReport exchange_check(const TernaryForm& N, i64 p, i64 q) {
    if (p == q) throw BadPrime("exchange_check needs distinct primes");
    ExchangeReport r;
    GammaPair gp = gamma_descendants(N, p);
    GammaPair glq = gamma_descendants(lambda(N, q), p);
    r.part1 = true;
    for (const TernaryForm& m : gp.reduced) {
        TernaryForm lm = lambda(m, q);
        if (lm != glq.reduced[0] && lm != glq.reduced[1]) r.part1 = false;
    }
    auto kq = hyperbolic_level(N, q);
    if (kq && *kq >= 1) {
        std::set<TernaryForm> qp, pq;
        for (const TernaryForm& m : gp.reduced)
            for (const TernaryForm& x : gamma_descendants(m, q).reduced) qp.insert(x);
        for (const TernaryForm& m : gamma_descendants(N, q).reduced)
            for (const TernaryForm& x : gamma_descendants(m, p).reduced) pq.insert(x);
        r.part2 = std::includes(pq.begin(), pq.end(), qp.begin(), qp.end());
    }
    return r;
}

}  // namespace ternary
