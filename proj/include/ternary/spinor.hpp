#pragma once

#include <cstdint>
#include <vector>

#include "local.hpp"

namespace ternary {

// Square classes of Q_p^x encoded as small bit vectors.
//   odd p: bit0 = unit part is a non-square, bit1 = odd valuation
//   p = 2: bit0 = unit = 3 mod 4, bit1 = unit = +-3 mod 8, bit2 = odd valuation
inline int class_bits(i64 p) { return p == 2 ? 3 : 2; }

inline int square_class_code(i64 p, int v, i64 unit_residue_mod) {
    if (p == 2) {
        int u = static_cast<int>(mod(unit_residue_mod, 8));
        int b0 = (u % 4 == 3) ? 1 : 0;
        int b1 = (u == 3 || u == 5) ? 1 : 0;
        return b0 | (b1 << 1) | ((v & 1) << 2);
    }
    int b0 = legendre(unit_residue_mod, p) == -1 ? 1 : 0;
    return b0 | ((v & 1) << 1);
}

inline int square_class_code(i64 p, i128 x) {
    if (x == 0) throw std::domain_error("square class of 0");
    int v = val(x, p);
    i128 u = strip(x, p);
    i64 m = p == 2 ? 8 : p;
    return square_class_code(p, v, static_cast<i64>(((u % m) + m) % m));
}

inline i64 square_class_rep(i64 p, int code) {
    if (p == 2) {
        static const i64 units[4] = {1, 7, 5, 3};
        return units[code & 3] * ((code & 4) ? 2 : 1);
    }
    return ((code & 1) ? smallest_nonresidue(p) : 1) * ((code & 2) ? p : 1);
}

struct SquareClassGroup {
    i64 p = 2;
    std::uint32_t members = 1;   // bit c set iff the class with code c lies in the group

    bool contains(int code) const { return (members >> code) & 1u; }
    bool contains_integer(i128 x) const { return contains(square_class_code(p, x)); }
    int size() const { return __builtin_popcount(members); }
    bool all_units() const {
        for (int c = 0; c < (1 << class_bits(p)); ++c)
            if (!(c >> (class_bits(p) - 1)) && !contains(c)) return false;
        return true;
    }
    std::vector<int> codes() const {
        std::vector<int> out;
        for (int c = 0; c < (1 << class_bits(p)); ++c)
            if (contains(c)) out.push_back(c);
        return out;
    }
    std::vector<i64> reps() const {
        std::vector<i64> out;
        for (int c : codes()) out.push_back(square_class_rep(p, c));
        std::sort(out.begin(), out.end());
        return out;
    }
    bool operator==(const SquareClassGroup& o) const { return p == o.p && members == o.members; }
};

inline SquareClassGroup group_generated(i64 p, const std::vector<int>& gens) {
    SquareClassGroup g;
    g.p = p;
    g.members = 1;
    for (int x : gens) {
        std::uint32_t add = 0;
        for (int c = 0; c < 32; ++c)
            if ((g.members >> c) & 1u) add |= 1u << (c ^ x);
        g.members |= add;
    }
    return g;
}

// Spinor norms of symmetries in O(L_p): the set of square classes of Q(x) over anisotropic
// x with tau_x(L_p) = L_p (using q = 2Q throughout; only products of pairs matter).
inline std::vector<int> symmetry_norm_classes(const TernaryForm& f, i64 p) {
    auto raw = raw_jordan(f, p);
    std::vector<int> out;
    auto add = [&](int c) {
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    };
    if (p != 2) {
        // Kneser: p^s times the units represented by each constituent
        std::map<int, std::vector<i64>> by_scale;
        for (const RawBlock& b : raw) by_scale[b.scale].push_back(unit_residue(b.e[0][0], p, p));
        for (auto& [s, us] : by_scale) {
            if (us.size() >= 2) {
                add(square_class_code(p, s, 1));
                add(square_class_code(p, s, smallest_nonresidue(p)));
            } else {
                add(square_class_code(p, s, us[0]));
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    // p = 2: exhaustive search over x = sum 2^{e_j} w_j with w_j primitive in block j,
    // e_j in {0,1,2,3} or x_j = 0.  Residues of each block value mod 16 determine the class.
    auto res = [](const Rational& x, i64 m) {
        i64 n = static_cast<i64>(((x.num % m) + m) % m);
        i64 d = static_cast<i64>(((x.den % m) + m) % m);
        return static_cast<i64>(static_cast<i128>(n) * inv_mod(d, m) % m);
    };
    struct Option {
        int e;
        i64 value;   // block value divided by 2^{scale}, mod 16
    };
    std::vector<std::vector<Option>> opts;
    std::vector<int> scales;
    for (const RawBlock& b : raw) {
        std::vector<i64> vals;
        if (b.size == 1) {
            i64 u = res(b.e[0][0] / Rational(static_cast<i128>(1) << b.scale), 16);
            vals = {u % 16, (9 * u) % 16};
        } else {
            Rational s2 = Rational(static_cast<i128>(1) << (b.scale + 1));
            i64 a = res(b.e[0][0] / s2, 8), bb = res(b.e[0][1] / Rational(static_cast<i128>(1) << b.scale), 8),
                c = res(b.e[1][1] / s2, 8);
            for (i64 y = 0; y < 8; ++y)
                for (i64 z = 0; z < 8; ++z) {
                    if (y % 2 == 0 && z % 2 == 0) continue;
                    i64 v = mod(2 * (a * y * y + bb * y * z + c * z * z), 16);
                    if (std::find(vals.begin(), vals.end(), v) == vals.end()) vals.push_back(v);
                }
        }
        std::vector<Option> o;
        o.push_back({-1, 0});
        for (int e = 0; e <= 3; ++e)
            for (i64 v : vals) o.push_back({e, v});
        opts.push_back(o);
        scales.push_back(b.scale);
    }
    std::size_t nb = opts.size();
    std::vector<std::size_t> idx(nb, 0);
    for (;;) {
        bool any0 = false, any = false;
        int P = 1 << 20;
        i128 sum = 0;
        for (std::size_t j = 0; j < nb; ++j) {
            const Option& o = opts[j][idx[j]];
            if (o.e < 0) continue;
            any = true;
            if (o.e == 0) any0 = true;
            int sh = scales[j] + 2 * o.e;
            sum += static_cast<i128>(o.value) << sh;
            P = std::min(P, sh + 4);
        }
        if (any && any0) {
            i128 m = static_cast<i128>(1) << P;
            i128 s = ((sum % m) + m) % m;
            if (s != 0) {
                int t = val(s, 2);
                bool ok = t + 3 <= P;
                for (std::size_t j = 0; j < nb && ok; ++j) {
                    const Option& o = opts[j][idx[j]];
                    if (o.e >= 0 && t > 1 + scales[j] + o.e) ok = false;
                }
                if (ok) add(square_class_code(2, t, static_cast<i64>((s >> t) % 8)));
            }
        }
        std::size_t j = 0;
        while (j < nb && ++idx[j] == opts[j].size()) idx[j++] = 0;
        if (j == nb) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// theta(O+(L_p)): generated by products of two symmetry norms
inline SquareClassGroup spinor_norm_group(const TernaryForm& f, i64 p) {
    auto n = symmetry_norm_classes(f, p);
    std::vector<int> prods;
    for (int x : n)
        for (int y : n) prods.push_back(x ^ y);
    return group_generated(p, prods);
}

// Finite model of J_Q / P_D J^L.  Coordinates: the square classes at each p in S (the primes
// dividing 2 * 4d), packed into one bit vector.
struct IdeleClassGroup {
    std::vector<i64> primes;
    std::vector<int> offset;
    std::vector<SquareClassGroup> theta;
    std::vector<std::uint64_t> basis;   // echelon basis of the subgroup, distinct leading bits
    int dim = 0;
    int rank = 0;

    int log2_order() const { return dim - rank; }
    i64 order() const { return i64{1} << log2_order(); }

    std::uint64_t reduce(std::uint64_t v) const {
        for (std::uint64_t b : basis) {
            int lead = 63 - __builtin_clzll(b);
            if ((v >> lead) & 1u) v ^= b;
        }
        return v;
    }
    // diagonal image of a positive rational integer x
    std::uint64_t global(i64 x) const {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < primes.size(); ++i)
            v |= static_cast<std::uint64_t>(square_class_code(primes[i], x)) << offset[i];
        return v;
    }
    // class of the prime idele j(q): q at the place q, 1 elsewhere
    std::uint64_t j(i64 q) const {
        for (std::size_t i = 0; i < primes.size(); ++i)
            if (primes[i] == q) return reduce(static_cast<std::uint64_t>(square_class_code(q, q)) << offset[i]);
        return reduce(global(q));
    }
    bool j_trivial(i64 q) const { return j(q) == 0; }
};

inline void insert_echelon(std::vector<std::uint64_t>& basis, std::uint64_t v) {
    for (std::uint64_t b : basis) {
        int lead = 63 - __builtin_clzll(b);
        if ((v >> lead) & 1u) v ^= b;
    }
    if (v == 0) return;
    int lead = 63 - __builtin_clzll(v);
    for (std::uint64_t& b : basis)
        if ((b >> lead) & 1u) b ^= v;
    basis.push_back(v);
    std::sort(basis.begin(), basis.end(), std::greater<>());
}

inline IdeleClassGroup idele_class_group(const TernaryForm& f) {
    IdeleClassGroup G;
    G.primes = prime_divisors(2 * f.four_disc());
    for (i64 p : G.primes) {
        G.offset.push_back(G.dim);
        G.dim += class_bits(p);
        G.theta.push_back(spinor_norm_group(f, p));
    }
    for (std::size_t i = 0; i < G.primes.size(); ++i)
        for (int c : G.theta[i].codes()) insert_echelon(G.basis, static_cast<std::uint64_t>(c) << G.offset[i]);
    for (i64 l : G.primes) insert_echelon(G.basis, G.global(l));
    G.rank = static_cast<int>(G.basis.size());
    return G;
}

}  // namespace ternary
