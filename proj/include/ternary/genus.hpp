#pragma once

#include <map>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "reduce.hpp"
#include "spinor.hpp"
#include "sublattice.hpp"

namespace ternary {

// Calls visit(form) for a set of forms with 4d = D containing at least one member of every
// class: Minkowski-reduced forms with q, r >= 0.
template <class Visit>
void for_reduced_candidates(i64 D, Visit&& visit) {
    for (i64 a = 1; 2 * a * a * a <= D; ++a)
        for (i64 b = a; 2 * a * b * b <= D; ++b)
            for (i64 r = 0; r <= a; ++r) {
                i64 den = 4 * a * b - r * r;
                for (i64 q = 0; q <= a; ++q)
                    for (i64 p = -b; p <= b; ++p) {
                        i64 num = D + a * p * p + b * q * q - p * q * r;
                        if (num % den != 0) continue;
                        i64 c = num / den;
                        if (c < b) continue;
                        bool ok = true;
                        for (i64 s1 = -1; s1 <= 1 && ok; ++s1)
                            for (i64 s2 = -1; s2 <= 1; ++s2) {
                                if (s1 == 0 && s2 == 0) continue;
                                if (a * s1 * s1 + b * s2 * s2 + s2 * p + s1 * q + s1 * s2 * r < 0) {
                                    ok = false;
                                    break;
                                }
                            }
                        if (ok) visit(TernaryForm{a, b, c, p, q, r});
                    }
            }
}

// every class of positive definite ternary forms with 4d = D, canonical and sorted
inline std::vector<TernaryForm> enumerate_discriminant(i64 D) {
    std::set<TernaryForm> classes;
    for_reduced_candidates(D, [&](const TernaryForm& f) { classes.insert(reduce(f)); });
    return {classes.begin(), classes.end()};
}

struct GenusTable {
    i64 four_d = 0;
    std::vector<TernaryForm> classes;
    std::map<i64, LocalSymbol> symbols;
    std::map<TernaryForm, int> index;

    int find(const TernaryForm& f) const {
        auto it = index.find(reduce(f));
        return it == index.end() ? -1 : it->second;
    }
    int find_reduced(const TernaryForm& f) const {
        auto it = index.find(f);
        return it == index.end() ? -1 : it->second;
    }
    std::size_t size() const { return classes.size(); }
};

inline GenusTable make_table(i64 D, std::vector<TernaryForm> classes, std::map<i64, LocalSymbol> symbols) {
    GenusTable T;
    T.four_d = D;
    std::sort(classes.begin(), classes.end());
    T.classes = std::move(classes);
    T.symbols = std::move(symbols);
    for (std::size_t i = 0; i < T.classes.size(); ++i) T.index[T.classes[i]] = static_cast<int>(i);
    return T;
}

inline GenusTable genus_from_classes(const TernaryForm& f, const std::vector<TernaryForm>& all) {
    auto syms = genus_symbols(f);
    std::vector<TernaryForm> members;
    for (const TernaryForm& g : all) {
        bool same = true;
        for (auto& [p, s] : syms)
            if (!(local_symbol(g, p) == s)) {
                same = false;
                break;
            }
        if (same) members.push_back(g);
    }
    return make_table(f.four_disc(), std::move(members), std::move(syms));
}

inline GenusTable enumerate_genus(const TernaryForm& f) {
    return genus_from_classes(f, enumerate_discriminant(f.four_disc()));
}

// Kneser p-neighbors through the isotropic lines of Q mod p, each reduced.
inline std::vector<TernaryForm> p_neighbors(const TernaryForm& f, i64 p) {
    if (!is_prime(p) || p == 2 || (2 * f.four_disc()) % p == 0)
        throw BadPrime(std::to_string(p) + " divides 2*4d or is not an admissible prime");
    std::vector<TernaryForm> out;
    Mat3 A = f.A();
    auto line = [&](Vec3 v) {
        // lift so that Q(v) = 0 mod p^2
        Vec3 Av = mul(A, v);
        int k = 0;
        while (mod(Av[k], p) == 0) ++k;
        i64 qv = f.Q(v);
        i64 t = mod(-(qv / p) % p * inv_mod(mod(Av[k], p), p), p);
        v[k] += p * t;
        Av = mul(A, v);
        if (f.Q(v) % (p * p) != 0) throw std::logic_error("p_neighbors: lift failed");
        std::vector<Vec3> gens;
        for (int i = 0; i < 3; ++i) {
            Vec3 e{0, 0, 0};
            e[i] = p * p;
            gens.push_back(e);
        }
        i64 phik = inv_mod(mod(Av[k], p), p);
        for (int i = 0; i < 3; ++i) {
            if (i == k) continue;
            Vec3 e{0, 0, 0};
            e[i] = p;
            e[k] = -p * mod(Av[i] * phik, p);
            gens.push_back(e);
        }
        gens.push_back(v);
        Mat3 C = hnf_basis(gens);
        TernaryForm g = transform(f, C);
        out.push_back(reduce(rescale(g, 1, p * p)));
    };
    for (i64 x = 0; x < p; ++x)
        for (i64 y = 0; y < p; ++y) {
            Vec3 v{1, x, y};
            if (mod(f.Q(v), p) == 0) line(v);
        }
    for (i64 y = 0; y < p; ++y) {
        Vec3 v{0, 1, y};
        if (mod(f.Q(v), p) == 0) line(v);
    }
    if (mod(f.c, p) == 0) line(Vec3{0, 0, 1});
    return out;
}

inline i64 smallest_good_prime(i64 four_d, i64 after = 2) {
    for (i64 q = after + 1;; ++q)
        if (is_prime(q) && (2 * four_d) % q != 0) return q;
}

struct SpinorPartition {
    GenusTable table;
    std::vector<std::vector<int>> parts;
    std::vector<int> part_of;
    i64 walk_prime = 0;
    // F2-labels of the parts in the idele class group model (empty when not computed)
    std::optional<IdeleClassGroup> group;
    std::vector<std::uint64_t> labels;
    bool labels_consistent = false;

    int g() const { return static_cast<int>(parts.size()); }
    int part_of_form(const TernaryForm& f) const {
        int i = table.find(f);
        return i < 0 ? -1 : part_of[i];
    }
    int part_with_label(std::uint64_t l) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == l) return static_cast<int>(i);
        return -1;
    }
};

// Parity walk with one prime q: inside a q-neighbor component the classes at even distance form
// one proper spinor genus and those at odd distance form spn * j(q); a class met with both
// parities means the two coincide.
inline SpinorPartition spinor_partition(const GenusTable& T, bool with_labels = true) {
    SpinorPartition P;
    P.table = T;
    i64 q = smallest_good_prime(T.four_d);
    P.walk_prime = q;
    std::size_t n = T.size();
    std::vector<std::vector<int>> nb(n);
    for (std::size_t i = 0; i < n; ++i)
        for (const TernaryForm& g : p_neighbors(T.classes[i], q)) {
            int j = T.find_reduced(g);
            if (j < 0) throw std::logic_error("genus table is not neighbor closed");
            nb[i].push_back(j);
        }
    std::vector<int> color(n, -1), comp(n, -1);
    std::vector<bool> conflict;
    int ncomp = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        bool bad = false;
        std::queue<int> bfs;
        bfs.push(static_cast<int>(s));
        comp[s] = ncomp;
        color[s] = 0;
        while (!bfs.empty()) {
            int u = bfs.front();
            bfs.pop();
            for (int w : nb[u]) {
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    color[w] = 1 - color[u];
                    bfs.push(w);
                } else if (color[w] == color[u]) {
                    bad = true;
                }
            }
        }
        conflict.push_back(bad);
        ++ncomp;
    }
    std::map<std::pair<int, int>, int> id;
    P.part_of.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::pair<int, int> key{comp[i], conflict[comp[i]] ? 0 : color[i]};
        auto it = id.find(key);
        if (it == id.end()) {
            it = id.emplace(key, static_cast<int>(P.parts.size())).first;
            P.parts.emplace_back();
        }
        P.parts[it->second].push_back(static_cast<int>(i));
        P.part_of[i] = it->second;
    }
    if (!with_labels || n == 0) return P;

    // label parts by the idele class group, translating along q-neighbor steps
    P.group = idele_class_group(T.classes[0]);
    const IdeleClassGroup& G = *P.group;
    int g = P.g();
    P.labels.assign(g, ~0ull);
    P.labels[P.part_of[0]] = 0;
    bool consistent = G.order() == g;
    int labelled = 1, checks = 0;
    for (i64 pr = 2; consistent && (labelled < g || checks < 2); pr = smallest_good_prime(T.four_d, pr)) {
        if (pr == 2) continue;
        if (pr > 60) break;
        std::uint64_t jq = G.j(pr);
        bool progress = true;
        while (progress && consistent) {
            progress = false;
            for (int part = 0; part < g && consistent; ++part) {
                if (P.labels[part] == ~0ull) continue;
                int rep = P.parts[part].front();
                for (const TernaryForm& h : p_neighbors(T.classes[rep], pr)) {
                    int k = T.find_reduced(h);
                    if (k < 0) {
                        consistent = false;
                        break;
                    }
                    int other = P.part_of[k];
                    std::uint64_t want = P.labels[part] ^ jq;
                    if (P.labels[other] == ~0ull) {
                        P.labels[other] = want;
                        ++labelled;
                        progress = true;
                    } else if (P.labels[other] != want) {
                        consistent = false;
                        break;
                    }
                }
            }
        }
        if (labelled == g) ++checks;
    }
    P.labels_consistent = consistent && labelled == g;
    if (!P.labels_consistent) P.labels.clear();
    return P;
}

inline int g_truth(const TernaryForm& f) { return spinor_partition(enumerate_genus(f), false).g(); }

inline bool spn_represents(const SpinorPartition& P, int part, i64 k, bool primitive_only = false) {
    for (int i : P.parts.at(part))
        if (represents_integer(P.table.classes[i], k, primitive_only)) return true;
    return false;
}

inline bool complete_exceptional_system_check(const SpinorPartition& P, const std::vector<i64>& S,
                                              bool primitive_only = false) {
    if (S.size() >= 20 || (std::size_t{1} << S.size()) != static_cast<std::size_t>(P.g())) return false;
    std::set<unsigned> masks;
    for (int part = 0; part < P.g(); ++part) {
        unsigned m = 0;
        for (std::size_t j = 0; j < S.size(); ++j)
            if (spn_represents(P, part, S[j], primitive_only)) m |= 1u << j;
        masks.insert(m);
    }
    return masks.size() == static_cast<std::size_t>(P.g());
}

// every p-neighbor of every class reduces into the table
inline bool neighbor_closed(const GenusTable& T, const std::vector<i64>& primes) {
    for (i64 p : primes)
        for (const TernaryForm& f : T.classes)
            for (const TernaryForm& g : p_neighbors(f, p))
                if (T.find_reduced(g) < 0) return false;
    return true;
}

// the classes reachable from f by p-neighbor steps (for independent completeness checks)
inline std::set<TernaryForm> neighbor_closure(const TernaryForm& f, const std::vector<i64>& primes,
                                              std::size_t limit = 100000) {
    std::set<TernaryForm> seen{reduce(f)};
    std::vector<TernaryForm> todo{reduce(f)};
    while (!todo.empty() && seen.size() < limit) {
        TernaryForm x = todo.back();
        todo.pop_back();
        for (i64 p : primes)
            for (const TernaryForm& y : p_neighbors(x, p))
                if (seen.insert(y).second) todo.push_back(y);
    }
    return seen;
}

}  // namespace ternary
