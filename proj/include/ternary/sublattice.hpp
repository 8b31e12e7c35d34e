#pragma once

#include <vector>

#include "form.hpp"

namespace ternary {

struct Sublattice {
    TernaryForm parent;
    Mat3 basis;   // columns, in parent coordinates; upper triangular Hermite normal form
    i64 index = 1;

    TernaryForm form() const { return transform(parent, basis); }
};

// Upper triangular column Hermite normal form of the full-rank lattice spanned by gens.
inline Mat3 hnf_basis(const std::vector<Vec3>& gens) {
    std::vector<std::array<i128, 3>> cols;
    for (auto& g : gens) cols.push_back({g[0], g[1], g[2]});
    std::array<std::array<i128, 3>, 3> H{};
    std::size_t live = cols.size();
    for (int row = 2; row >= 0; --row) {
        // gcd-combine the entries of this row over the live columns into column live-1
        for (;;) {
            std::size_t piv = live;
            for (std::size_t j = 0; j < live; ++j)
                if (cols[j][row] != 0 && (piv == live || (cols[j][row] < 0 ? -cols[j][row] : cols[j][row]) <
                                                            (cols[piv][row] < 0 ? -cols[piv][row] : cols[piv][row])))
                    piv = j;
            if (piv == live) throw std::domain_error("hnf_basis: generators are not of full rank");
            bool done = true;
            for (std::size_t j = 0; j < live; ++j) {
                if (j == piv || cols[j][row] == 0) continue;
                i128 m = cols[j][row] / cols[piv][row];
                for (int i = 0; i < 3; ++i) cols[j][i] -= m * cols[piv][i];
                if (cols[j][row] != 0) done = false;
            }
            if (done) {
                std::swap(cols[piv], cols[live - 1]);
                break;
            }
        }
        if (cols[live - 1][row] < 0)
            for (int i = 0; i < 3; ++i) cols[live - 1][i] = -cols[live - 1][i];
        for (int i = 0; i < 3; ++i) H[i][row] = cols[live - 1][i];
        --live;
    }
    for (int j = 1; j < 3; ++j)
        for (int i = j - 1; i >= 0; --i) {
            i128 d = H[i][i], x = H[i][j];
            i128 m = x / d;
            if (x - m * d < 0) --m;
            for (int k = 0; k <= i; ++k) H[k][j] -= m * H[k][i];
        }
    Mat3 out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out[i][j] = narrow(H[i][j]);
    return out;
}

namespace detail {

template <class Visit>
void for_hnf_of_index(i64 n, Visit&& visit) {
    for (i64 d1 = 1; d1 <= n; ++d1) {
        if (n % d1) continue;
        for (i64 d2 = 1; d2 <= n / d1; ++d2) {
            if ((n / d1) % d2) continue;
            i64 d3 = n / d1 / d2;
            for (i64 b12 = 0; b12 < d1; ++b12)
                for (i64 b13 = 0; b13 < d1; ++b13)
                    for (i64 b23 = 0; b23 < d2; ++b23) visit(Mat3{{{d1, b12, b13}, {0, d2, b23}, {0, 0, d3}}});
        }
    }
}

}  // namespace detail

inline std::vector<Sublattice> sublattices_of_index(const TernaryForm& f, i64 n) {
    if (!is_squarefree(n)) throw NotSquareFree(std::to_string(n) + " is not square free");
    std::vector<Sublattice> out;
    detail::for_hnf_of_index(n, [&](const Mat3& B) { out.push_back({f, B, n}); });
    return out;
}

struct SmithForm {
    Mat3 L, R;           // unimodular, L * M * R = D
    std::array<i64, 3> d;
};

inline SmithForm smith(const Mat3& M) {
    std::array<std::array<i128, 3>, 3> A{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) A[i][j] = M[i][j];
    std::array<std::array<i128, 3>, 3> L{}, R{};
    for (int i = 0; i < 3; ++i) L[i][i] = R[i][i] = 1;
    auto absl = [](i128 x) { return x < 0 ? -x : x; };
    auto row_op = [&](int dst, int src, i128 m) {   // row dst -= m row src
        for (int j = 0; j < 3; ++j) {
            A[dst][j] -= m * A[src][j];
            L[dst][j] -= m * L[src][j];
        }
    };
    auto col_op = [&](int dst, int src, i128 m) {
        for (int i = 0; i < 3; ++i) {
            A[i][dst] -= m * A[i][src];
            R[i][dst] -= m * R[i][src];
        }
    };
    auto swap_rows = [&](int x, int y) {
        std::swap(A[x], A[y]);
        std::swap(L[x], L[y]);
    };
    auto swap_cols = [&](int x, int y) {
        for (int i = 0; i < 3; ++i) {
            std::swap(A[i][x], A[i][y]);
            std::swap(R[i][x], R[i][y]);
        }
    };
    for (int t = 0; t < 3; ++t) {
        for (;;) {
            int pi = -1, pj = -1;
            for (int i = t; i < 3; ++i)
                for (int j = t; j < 3; ++j)
                    if (A[i][j] != 0 && (pi < 0 || absl(A[i][j]) < absl(A[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) break;
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool clean = true;
            for (int i = t + 1; i < 3; ++i) {
                row_op(i, t, A[i][t] / A[t][t]);
                if (A[i][t] != 0) clean = false;
            }
            for (int j = t + 1; j < 3; ++j) {
                col_op(j, t, A[t][j] / A[t][t]);
                if (A[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            int bad = -1;
            for (int i = t + 1; i < 3 && bad < 0; ++i)
                for (int j = t + 1; j < 3; ++j)
                    if (A[i][j] % A[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            for (int j = 0; j < 3; ++j) {
                A[t][j] += A[bad][j];
                L[t][j] += L[bad][j];
            }
        }
        if (A[t][t] < 0)
            for (int j = 0; j < 3; ++j) {
                A[t][j] = -A[t][j];
                L[t][j] = -L[t][j];
            }
    }
    SmithForm s;
    for (int i = 0; i < 3; ++i) {
        s.d[i] = narrow(A[i][i]);
        for (int j = 0; j < 3; ++j) {
            s.L[i][j] = narrow(L[i][j]);
            s.R[i][j] = narrow(R[i][j]);
        }
    }
    return s;
}

// For a sublattice K of Z^3 with cyclic quotient of order n, a basis x1, x2, x3 of Z^3
// (columns) with K = Z x1 + Z x2 + Z n x3.
inline Mat3 adapted_basis(const Mat3& K) {
    SmithForm s = smith(K);
    if (s.d[0] != 1 || s.d[1] != 1) throw std::domain_error("adapted_basis: quotient is not cyclic");
    return inverse_unimodular(s.L);
}

}  // namespace ternary
