#pragma once

#include <map>
#include <string>
#include <vector>

#include "form.hpp"

namespace ternary {

// One orthogonal summand of a p-adic splitting of the doubled Gram matrix A.  size 1 or 2;
// 2x2 summands only occur at p = 2 (even blocks).
struct RawBlock {
    int scale = 0;                  // ord_p of the scale of the A-block
    int size = 1;
    std::array<std::array<Rational, 2>, 2> e{};
};

inline std::vector<RawBlock> raw_jordan(const TernaryForm& f, i64 p) {
    using RMat = std::vector<std::vector<Rational>>;
    Mat3 A0 = f.A();
    RMat M(3, std::vector<Rational>(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M[i][j] = Rational(A0[i][j]);
    std::vector<RawBlock> out;
    while (!M.empty()) {
        int n = static_cast<int>(M.size());
        int v = 1 << 20;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!M[i][j].is_zero()) v = std::min(v, val(M[i][j], p));
        int di = -1;
        for (int i = 0; i < n && di < 0; ++i)
            if (!M[i][i].is_zero() && val(M[i][i], p) == v) di = i;
        int oi = -1, oj = -1;
        if (di < 0) {
            for (int i = 0; i < n && oi < 0; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (!M[i][j].is_zero() && val(M[i][j], p) == v) {
                        oi = i;
                        oj = j;
                        break;
                    }
            if (p != 2) {
                // e_i <- e_i + e_j makes the diagonal entry minimal
                for (int k = 0; k < n; ++k) M[oi][k] = M[oi][k] + M[oj][k];
                for (int k = 0; k < n; ++k) M[k][oi] = M[k][oi] + M[k][oj];
                di = oi;
            }
        }
        std::vector<int> piv = di >= 0 ? std::vector<int>{di} : std::vector<int>{oi, oj};
        std::vector<int> rest;
        for (int k = 0; k < n; ++k)
            if (std::find(piv.begin(), piv.end(), k) == piv.end()) rest.push_back(k);
        RawBlock blk;
        blk.scale = v;
        blk.size = static_cast<int>(piv.size());
        for (int a = 0; a < blk.size; ++a)
            for (int b = 0; b < blk.size; ++b) blk.e[a][b] = M[piv[a]][piv[b]];
        RMat S(rest.size(), std::vector<Rational>(rest.size()));
        if (blk.size == 1) {
            Rational inv = Rational(1) / M[di][di];
            for (std::size_t a = 0; a < rest.size(); ++a)
                for (std::size_t b = 0; b < rest.size(); ++b)
                    S[a][b] = M[rest[a]][rest[b]] - M[rest[a]][di] * inv * M[di][rest[b]];
        } else {
            Rational b00 = M[oi][oi], b01 = M[oi][oj], b11 = M[oj][oj];
            Rational dt = b00 * b11 - b01 * b01;
            Rational i00 = b11 / dt, i01 = -b01 / dt, i11 = b00 / dt;
            for (std::size_t a = 0; a < rest.size(); ++a)
                for (std::size_t b = 0; b < rest.size(); ++b) {
                    Rational ca0 = M[rest[a]][oi], ca1 = M[rest[a]][oj];
                    Rational c0b = M[oi][rest[b]], c1b = M[oj][rest[b]];
                    Rational corr = ca0 * (i00 * c0b + i01 * c1b) + ca1 * (i01 * c0b + i11 * c1b);
                    S[a][b] = M[rest[a]][rest[b]] - corr;
                }
        }
        out.push_back(blk);
        M = S;
    }
    std::stable_sort(out.begin(), out.end(), [](const RawBlock& x, const RawBlock& y) { return x.scale < y.scale; });
    return out;
}

// A Jordan constituent, normalized to the Gram matrix: at p = 2 the scale exponent is that of
// the Gram matrix (so the even unimodular part of A has exponent -1).
struct JordanBlock {
    int scale = 0;
    int rank = 0;
    int det_unit = 1;        // odd p: +1/-1 square class of the unit determinant; p = 2: residue mod 8
    bool odd_type = true;    // p = 2 only; always true at odd p
    int oddity = 0;          // p = 2, sum of diagonal units mod 8 (0 for even constituents)
    std::vector<int> units;  // odd p: +-1 classes of a diagonalization; p = 2: residues mod 8 of the 1x1 pieces
};

inline int block_det_unit_mod8(const RawBlock& b) {
    if (b.size == 1) return static_cast<int>(unit_residue(b.e[0][0], 2, 8));
    Rational d = b.e[0][0] * b.e[1][1] - b.e[0][1] * b.e[0][1];
    return static_cast<int>(unit_residue(d, 2, 8));
}

inline std::vector<JordanBlock> jordan(const TernaryForm& f, i64 p) {
    auto raw = raw_jordan(f, p);
    std::vector<JordanBlock> out;
    for (const RawBlock& rb : raw) {
        int sc = p == 2 ? rb.scale - 1 : rb.scale;
        if (out.empty() || out.back().scale != sc) {
            JordanBlock jb;
            jb.scale = sc;
            jb.rank = 0;
            jb.det_unit = 1;
            jb.odd_type = p != 2 ? true : false;
            out.push_back(jb);
        }
        JordanBlock& jb = out.back();
        jb.rank += rb.size;
        if (p == 2) {
            int du = block_det_unit_mod8(rb);
            jb.det_unit = (jb.det_unit * du) % 8;
            if (rb.size == 1) {
                jb.odd_type = true;
                jb.oddity = (jb.oddity + du) % 8;
                jb.units.push_back(du);
            }
        } else {
            // Gram entry is the A entry divided by 2
            i64 u = unit_residue(rb.e[0][0], p, p);
            int cls = legendre(u * inv_mod(2, p), p);
            jb.det_unit *= cls;
            jb.units.push_back(cls);
        }
    }
    return out;
}

// Canonical 2-adic symbol: oddity fusion over compartments and sign walking along trains.
struct SymbolEntry {
    int scale, rank, sign, odd, oddity;
    auto operator<=>(const SymbolEntry&) const = default;
};

inline std::vector<SymbolEntry> canonical_2adic(const std::vector<JordanBlock>& blocks) {
    std::vector<SymbolEntry> s;
    for (const auto& b : blocks) {
        int du = b.det_unit % 8;
        int sign = (du == 1 || du == 7) ? 1 : -1;
        s.push_back({b.scale, b.rank, sign, b.odd_type ? 1 : 0, b.odd_type ? b.oddity : 0});
    }
    int n = static_cast<int>(s.size());
    // compartments: maximal runs of odd constituents with consecutive scales
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int i = 0; i < n; ++i) {
        if (!s[i].odd) continue;
        if (i > 0 && s[i - 1].odd && s[i - 1].scale + 1 == s[i].scale)
            comp[i] = comp[i - 1];
        else
            comp[i] = ncomp++;
    }
    std::vector<int> codd(ncomp, 0);
    for (int i = 0; i < n; ++i)
        if (comp[i] >= 0) codd[comp[i]] = (codd[comp[i]] + s[i].oddity) % 8;
    // trains
    std::vector<int> train(n, 0);
    for (int i = 1; i < n; ++i) {
        int gap = s[i].scale - s[i - 1].scale;
        bool linked = (gap == 1 && (s[i].odd || s[i - 1].odd)) || (gap == 2 && s[i].odd && s[i - 1].odd);
        train[i] = linked ? train[i - 1] : train[i - 1] + 1;
    }
    for (int i = n - 1; i >= 1; --i) {
        if (train[i] != train[i - 1] || s[i].sign == 1) continue;
        s[i].sign = 1;
        s[i - 1].sign = -s[i - 1].sign;
        if (comp[i] >= 0) codd[comp[i]] = (codd[comp[i]] + 4) % 8;
        if (comp[i - 1] >= 0 && comp[i - 1] != comp[i]) codd[comp[i - 1]] = (codd[comp[i - 1]] + 4) % 8;
    }
    for (int i = 0; i < n; ++i) {
        bool first = comp[i] >= 0 && (i == 0 || comp[i - 1] != comp[i]);
        s[i].oddity = first ? codd[comp[i]] : 0;
    }
    return s;
}

struct LocalSymbol {
    i64 p = 0;
    std::vector<JordanBlock> blocks;
    std::vector<SymbolEntry> key;   // canonical comparison data

    bool operator==(const LocalSymbol& o) const { return p == o.p && key == o.key; }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < key.size(); ++i) {
            const SymbolEntry& e = key[i];
            if (i) s += ' ';
            s += std::to_string(e.scale) + ":" + std::to_string(e.rank) + ":" + (e.sign > 0 ? "+" : "-");
            if (p == 2) {
                s += e.odd ? "I" : "II";
                if (e.odd && (i == 0 || key[i - 1].odd == 0 || key[i - 1].scale + 1 != e.scale))
                    s += std::to_string(e.oddity);
            }
        }
        return s;
    }
};

inline LocalSymbol local_symbol(const TernaryForm& f, i64 p) {
    LocalSymbol ls;
    ls.p = p;
    ls.blocks = jordan(f, p);
    if (p == 2) {
        ls.key = canonical_2adic(ls.blocks);
    } else {
        for (const auto& b : ls.blocks) ls.key.push_back({b.scale, b.rank, b.det_unit, 1, 0});
    }
    return ls;
}

inline std::vector<i64> symbol_primes(const TernaryForm& f) {
    std::vector<i64> ps = prime_divisors(2 * f.four_disc());
    return ps;
}

// local symbols at every prime dividing 2 * 4d, keyed by prime
inline std::map<i64, LocalSymbol> genus_symbols(const TernaryForm& f) {
    std::map<i64, LocalSymbol> out;
    for (i64 p : symbol_primes(f)) out.emplace(p, local_symbol(f, p));
    return out;
}

inline bool same_genus(const TernaryForm& f, const TernaryForm& g) {
    if (f.four_disc() != g.four_disc()) return false;
    for (i64 p : symbol_primes(f))
        if (!(local_symbol(f, p) == local_symbol(g, p))) return false;
    return true;
}

}  // namespace ternary
