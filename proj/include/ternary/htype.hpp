#pragma once

#include <optional>
#include <string>

#include "watson.hpp"

namespace ternary {

struct TableRow {
    int table = 1;        // 1: odd p, 2: p = 2
    int alpha = 0, beta = 0;
    i64 eps1 = 1, eps2 = 1, eta = 1;
    std::string row;      // the row as printed, e.g. "(2,4) e1=1 (4)"
};

namespace detail {

// t in Q(<x, 2y>) over Z_2 for odd t
inline bool rep_x_2y(i64 x, i64 y, i64 t) {
    for (i64 u = 1; u < 8; u += 2)
        for (i64 v = 0; v < 8; ++v)
            if (mod(x * u * u + 2 * y * v * v - t, 8) == 0) return true;
    return false;
}

inline std::optional<std::string> table1_row(int a, int b, bool d1, bool d2) {
    if (a == 1 && b == 2 && !d2) return d1 ? "(1,2) (D,1)" : "(1,2) (1,1)";
    if (a == 2 && b >= 3 && !d1 && !d2) return "(2,k) (1,1)";
    if (a == 2 && b >= 3 && b % 2 == 1 && !d1 && d2) return "(2,2k+1) (1,D)";
    return std::nullopt;
}

inline std::optional<std::string> table2_row(int a, int b, i64 e1, i64 e2) {
    auto m4 = [](i64 x) { return mod(x, 4); };
    auto m8 = [](i64 x) { return mod(x, 8); };
    if (a == 0 && b == 4 && m4(e1) == 1 && m4(e2) == 1) return "(0,4)";
    if (a == 1 && b == 6 && rep_x_2y(1, e1, e2)) return "(1,6)";
    if (a == 2 && b == 2 && m8(e1) == 1 && m4(e2) == 3) return "(2,2)";
    if (a == 2 && b == 4 && m4(e1) == 1) return "(2,4)";
    if (a == 2 && b == 6 && m4(e1) == 1) return "(2,6)";
    if (a == 2 && b >= 7 && b % 2 == 1 && m8(e1) == m8(2 * e2 + 3)) return "(2,2k-1)";
    if (a == 2 && b >= 8 && b % 2 == 0 && m4(e1) == 1) return "(2,2k)";
    if (a == 3 && b == 6 && m8(e2) == 1) return "(3,6)";
    if (a == 4 && b == 4 && m4(e1) == 1 && m4(e2) == 1) return "(4,4)";
    if (a == 5 && b == 5 && m8(e2) == m8(3 * e1 + 6)) return "(5,5)";
    if (a == 5 && b == 6 && rep_x_2y(1, e1, 2 * e1 + e2)) return "(5,6)";
    if (a == 5 && b == 7 && m4(e1 * e2) == 1) return "(5,7)";
    if (a == 5 && b == 8 && m8(e2) == m8(2 * e1 + 5)) return "(5,8)";
    if (a == 5 && b == 9 && m4(e1 * e2) == 1) return "(5,9)";
    if (a == 5 && b >= 10 && b % 2 == 0 && m8(1 + 2 * e1) != m8(e2)) return "(5,2k)";
    if (a == 5 && b >= 11 && b % 2 == 1 && m8(1 + 2 * e1) != m8(e1 * e2)) return "(5,2k+1)";
    if (a == 6 && b == 7 && !rep_x_2y(e1, e2, 5)) return "(6,7)";
    if (a == 6 && b == 9 && !rep_x_2y(e1, e2, 5)) return "(6,9)";
    if (a == 6 && b >= 11 && b % 2 == 1 && m8(e1) != 5) return "(6,2k-1)";
    if (a == 6 && b >= 12 && b % 2 == 0 && m8(e1) != 5 && m8(e2) != 5 &&
        (m8(e1) == m8(e2) || m8(e1) == 1 || m8(e2) == 1))
        return "(6,2k)";
    return std::nullopt;
}

}  // namespace detail

// Scans every unit rescaling eta and every diagonal shape <1, p^alpha e1, p^beta e2> locally
// isometric to F^eta, returning the first table row that applies.
inline std::optional<TableRow> h_type_table_match(const TernaryForm& f, i64 p) {
    if (!f.primitive()) throw NotPrimitive(emit(f) + " is not primitive");
    auto blocks = jordan(f, p);
    std::vector<int> scales;
    for (const JordanBlock& b : blocks) {
        if (!b.odd_type) return std::nullopt;   // not diagonalizable over Z_2
        for (int i = 0; i < b.rank; ++i) scales.push_back(b.scale);
    }
    if (scales[0] != 0) return std::nullopt;
    int alpha = scales[1], beta = scales[2];
    auto units = detail::unit_classes(p);
    for (i64 eta : units) {
        LocalSymbol s = local_symbol(rescale(f, eta), p);
        for (i64 e1 : units)
            for (i64 e2 : units) {
                TernaryForm d{1, e1 * ipow(p, alpha), e2 * ipow(p, beta), 0, 0, 0};
                if (!(local_symbol(d, p) == s)) continue;
                std::optional<std::string> row;
                if (p == 2)
                    row = detail::table2_row(alpha, beta, e1, e2);
                else
                    row = detail::table1_row(alpha, beta, e1 != 1, e2 != 1);
                if (row) return TableRow{p == 2 ? 2 : 1, alpha, beta, e1, e2, eta, *row};
            }
    }
    return std::nullopt;
}

}  // namespace ternary
