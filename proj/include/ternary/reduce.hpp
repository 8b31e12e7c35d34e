#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "form.hpp"

namespace ternary {

namespace detail {

using ld = long double;

struct Cholesky {
    ld q11, q12, q13, q22, q23, q33;
};

inline Cholesky cholesky(const TernaryForm& f) {
    Cholesky ch{};
    ld a = f.a, b = f.b, c = f.c, s = f.p / 2.0L, t = f.q / 2.0L, u = f.r / 2.0L;
    ch.q11 = a;
    ch.q12 = u / a;
    ch.q13 = t / a;
    ch.q22 = b - u * u / a;
    ch.q23 = (s - u * t / a) / ch.q22;
    ch.q33 = c - t * t / a - ch.q22 * ch.q23 * ch.q23;
    return ch;
}

inline std::pair<i64, i64> int_range(ld center, ld radius2, ld coef) {
    if (radius2 < 0) radius2 = 0;
    ld w = std::sqrt(radius2 / coef);
    ld eps = 1e-7L * (1 + std::fabs(center) + w);
    return {static_cast<i64>(std::ceil(center - w - eps)), static_cast<i64>(std::floor(center + w + eps))};
}

}  // namespace detail

// Calls visit(v, Q(v)) for every nonzero v with Q(v) <= bound (both signs).  visit returns
// true to stop early.
template <class Visit>
bool for_short_vectors(const TernaryForm& f, i64 bound, Visit&& visit) {
    if (bound <= 0) return false;
    using detail::ld;
    auto ch = detail::cholesky(f);
    ld B = static_cast<ld>(bound);
    ld slack = 1e-6L * (1 + B);
    auto [z0, z1] = detail::int_range(0, B + slack, ch.q33);
    for (i64 z = z0; z <= z1; ++z) {
        ld t3 = B + slack - ch.q33 * z * z;
        if (t3 < 0) continue;
        ld cy = -ch.q23 * z;
        auto [y0, y1] = detail::int_range(cy, t3, ch.q22);
        for (i64 y = y0; y <= y1; ++y) {
            ld dy = y - cy;
            ld t2 = t3 - ch.q22 * dy * dy;
            if (t2 < 0) continue;
            ld cx = -(ch.q12 * y + ch.q13 * z);
            auto [x0, x1] = detail::int_range(cx, t2, ch.q11);
            for (i64 x = x0; x <= x1; ++x) {
                if (x == 0 && y == 0 && z == 0) continue;
                Vec3 v{x, y, z};
                i64 qv = f.Q(v);
                if (qv <= bound && visit(v, qv)) return true;
            }
        }
    }
    return false;
}

struct ShortVector {
    Vec3 v;
    i64 value;
};

// one vector per +- pair (first nonzero coordinate positive); sorted by value, then
// lexicographically descending, which puts unit vectors e1, e2, e3 in their natural order
inline std::vector<ShortVector> short_vectors(const TernaryForm& f, i64 bound) {
    std::vector<ShortVector> out;
    for_short_vectors(f, bound, [&](const Vec3& v, i64 qv) {
        int lead = v[0] != 0 ? 0 : (v[1] != 0 ? 1 : 2);
        if (v[lead] > 0) out.push_back({v, qv});
        return false;
    });
    std::sort(out.begin(), out.end(), [](const ShortVector& x, const ShortVector& y) {
        if (x.value != y.value) return x.value < y.value;
        return x.v > y.v;
    });
    return out;
}

inline bool represents_integer(const TernaryForm& f, i64 k, bool primitive_only = false) {
    if (k < 0) return false;
    if (k == 0) return !primitive_only;
    return for_short_vectors(f, k, [&](const Vec3& v, i64 qv) {
        return qv == k && (!primitive_only || vgcd(v) == 1);
    });
}

namespace detail {

// all (x, y) with Q(t - x u1 - y u2) <= bound
template <class Visit>
void coset_points(const TernaryForm& f, const Vec3& t, const Vec3& u1, const Vec3& u2, i64 bound,
                  Visit&& visit) {
    i64 Q1 = f.Q(u1), Q2 = f.Q(u2), h = f.b2(u1, u2);
    i64 su = f.b2(t, u1), sv = f.b2(t, u2);
    ld D = 4.0L * Q1 * Q2 - static_cast<ld>(h) * h;
    ld xs = (2.0L * Q2 * su - static_cast<ld>(h) * sv) / D;
    ld ys = (2.0L * Q1 * sv - static_cast<ld>(h) * su) / D;
    ld realmin = f.Q(t) - (xs * su + ys * sv) / 2.0L;
    ld R = bound - realmin;
    R += 1e-9L * (std::fabs(static_cast<ld>(f.Q(t))) + bound) + 1e-6L;
    if (R < 0) return;
    // Q2(dx,dy) = Q1 dx^2 + h dx dy + Q2 dy^2 >= (D / (4 Q1)) dy^2
    auto [y0, y1] = int_range(ys, R, D / (4.0L * Q1));
    for (i64 y = y0; y <= y1; ++y) {
        ld dy = y - ys;
        ld rem = R - (D / (4.0L * Q1)) * dy * dy;
        ld cx = xs - (h * dy) / (2.0L * Q1);
        auto [x0, x1] = int_range(cx, rem, static_cast<ld>(Q1));
        for (i64 x = x0; x <= x1; ++x) {
            Vec3 w{t[0] - x * u1[0] - y * u2[0], t[1] - x * u1[1] - y * u2[1], t[2] - x * u1[2] - y * u2[2]};
            i64 qw = f.Q(w);
            if (qw <= bound) visit(w, qw);
        }
    }
}

inline Vec3 sub(const Vec3& x, const Vec3& y, i64 m = 1) {
    return {x[0] - m * y[0], x[1] - m * y[1], x[2] - m * y[2]};
}

inline Vec3 neg(const Vec3& v) { return {-v[0], -v[1], -v[2]}; }

inline Vec3 cross(const Vec3& u, const Vec3& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

inline i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    i64 x1, y1;
    i64 g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// w with n . w = 1 for primitive n
inline Vec3 dual_unit(const Vec3& n) {
    i64 x0, y0, x1, y1;
    i64 g01 = ext_gcd(n[0], n[1], x0, y0);
    i64 g = ext_gcd(g01, n[2], x1, y1);
    if (g != 1) throw std::domain_error("dual_unit: vector not primitive");
    return {x1 * x0, x1 * y0, y1};
}

}  // namespace detail

// Greedy (Minkowski) reduction: returns T with columns a reduced basis, Q(b1) <= Q(b2) <= Q(b3)
// equal to the successive minima.
inline Mat3 greedy_basis(const TernaryForm& f) {
    using detail::sub;
    std::array<Vec3, 3> b{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
    auto byQ = [&](const Vec3& x, const Vec3& y) { return f.Q(x) < f.Q(y); };
    for (int guard = 0; guard < 100000; ++guard) {
        std::stable_sort(b.begin(), b.end(), byQ);
        i64 q0 = f.Q(b[0]);
        i64 n = f.b2(b[1], b[0]);
        i64 m = floor_div(n + q0, 2 * q0);
        b[1] = sub(b[1], b[0], m);
        if (f.Q(b[1]) < q0) continue;
        i64 best = f.Q(b[2]);
        Vec3 bestv = b[2];
        detail::coset_points(f, b[2], b[0], b[1], best, [&](const Vec3& w, i64 qw) {
            if (qw < best || (qw == best && w < bestv)) {
                best = qw;
                bestv = w;
            }
        });
        b[2] = bestv;
        if (best < f.Q(b[1])) continue;
        return from_columns(b[0], b[1], b[2]);
    }
    throw std::logic_error("greedy_basis did not terminate");
}

struct Canonical {
    TernaryForm form;
    Mat3 basis;                 // columns, in the coordinates of the input form
    std::vector<Mat3> bases;    // every basis realizing form (in input coordinates)
};

namespace detail {

inline Canonical canonicalize(const TernaryForm& f, bool collect) {
    Mat3 R = greedy_basis(f);
    TernaryForm g = transform(f, R);
    i64 a = g.a, b = g.b, c = g.c;
    std::vector<Vec3> S1, S2;
    for_short_vectors(g, b, [&](const Vec3& v, i64 qv) {
        if (qv == a) S1.push_back(v);
        if (qv == b) S2.push_back(v);
        return false;
    });
    std::array<i64, 3> best{INT64_MAX, INT64_MAX, INT64_MAX};
    std::vector<Mat3> hits;
    for (const Vec3& v1 : S1)
        for (const Vec3& v2 : S2) {
            Vec3 n = cross(v1, v2);
            if (n == Vec3{0, 0, 0} || vgcd(n) != 1) continue;
            i64 r = g.b2(v1, v2);
            Vec3 w = dual_unit(n);
            coset_points(g, w, v1, v2, c, [&](const Vec3& v3, i64 q3) {
                if (q3 != c) return;
                for (int sgn = 1; sgn >= -1; sgn -= 2) {
                    Vec3 u = sgn == 1 ? v3 : neg(v3);
                    std::array<i64, 3> key{g.b2(v2, u), g.b2(v1, u), r};
                    if (key < best) {
                        best = key;
                        hits.clear();
                    }
                    if (key == best && (collect || hits.empty())) hits.push_back(from_columns(v1, v2, u));
                }
            });
        }
    Canonical out;
    out.form = TernaryForm{a, b, c, best[0], best[1], best[2]};
    out.basis = mul(R, hits.front());
    if (collect)
        for (auto& H : hits) out.bases.push_back(mul(R, H));
    return out;
}

}  // namespace detail

inline TernaryForm reduce(const TernaryForm& f) { return detail::canonicalize(f, false).form; }

inline Canonical canonical(const TernaryForm& f) { return detail::canonicalize(f, true); }

// full orthogonal group O(L), sorted
inline std::vector<Mat3> automorphisms(const TernaryForm& f) {
    Canonical cf = canonical(f);
    Mat3 inv0 = inverse_unimodular(cf.basis);
    std::vector<Mat3> out;
    for (const Mat3& B : cf.bases) out.push_back(mul(B, inv0));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Backtracking isometry search: returns U with transform(G, U) == F, if any.
inline std::optional<Mat3> isometry(const TernaryForm& F, const TernaryForm& G) {
    if (F.four_disc() != G.four_disc()) return std::nullopt;
    Mat3 RF = greedy_basis(F), RG = greedy_basis(G);
    TernaryForm f = transform(F, RF), g = transform(G, RG);
    if (f.a != g.a || f.b != g.b || f.c != g.c) return std::nullopt;
    std::vector<std::vector<Vec3>> cand(3);
    std::array<i64, 3> norms{f.a, f.b, f.c};
    for_short_vectors(g, f.c, [&](const Vec3& v, i64 qv) {
        for (int i = 0; i < 3; ++i)
            if (qv == norms[i]) cand[i].push_back(v);
        return false;
    });
    for (auto& c : cand) std::sort(c.begin(), c.end());
    Mat3 fa = f.A();
    for (const Vec3& w1 : cand[0])
        for (const Vec3& w2 : cand[1]) {
            if (g.b2(w1, w2) != fa[0][1]) continue;
            for (const Vec3& w3 : cand[2]) {
                if (g.b2(w1, w3) != fa[0][2] || g.b2(w2, w3) != fa[1][2]) continue;
                Mat3 W = from_columns(w1, w2, w3);
                i128 d = det(W);
                if (d != 1 && d != -1) continue;
                return mul(mul(RG, W), inverse_unimodular(RF));
            }
        }
    return std::nullopt;
}

inline bool isometric(const TernaryForm& F, const TernaryForm& G) { return isometry(F, G).has_value(); }

}  // namespace ternary
