#pragma once

#include <array>
#include <compare>
#include <sstream>
#include <string>

#include "arith.hpp"

namespace ternary {

using Vec3 = std::array<i64, 3>;
// Mat3[i][j] is row i, column j; a basis is stored as the columns
using Mat3 = std::array<std::array<i64, 3>, 3>;

inline Mat3 identity3() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

inline Vec3 column(const Mat3& M, int j) { return {M[0][j], M[1][j], M[2][j]}; }

inline Mat3 from_columns(const Vec3& u, const Vec3& v, const Vec3& w) {
    return {{{u[0], v[0], w[0]}, {u[1], v[1], w[1]}, {u[2], v[2], w[2]}}};
}

inline Mat3 mul(const Mat3& X, const Mat3& Y) {
    Mat3 Z{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            i128 s = 0;
            for (int k = 0; k < 3; ++k) s += static_cast<i128>(X[i][k]) * Y[k][j];
            Z[i][j] = narrow(s);
        }
    return Z;
}

inline Vec3 mul(const Mat3& X, const Vec3& v) {
    Vec3 w{};
    for (int i = 0; i < 3; ++i) {
        i128 s = 0;
        for (int k = 0; k < 3; ++k) s += static_cast<i128>(X[i][k]) * v[k];
        w[i] = narrow(s);
    }
    return w;
}

inline Mat3 transpose(const Mat3& X) {
    Mat3 T{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) T[i][j] = X[j][i];
    return T;
}

inline i128 det(const Mat3& M) {
    auto m = [&](int i, int j) { return static_cast<i128>(M[i][j]); };
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

inline Mat3 adjugate(const Mat3& M) {
    Mat3 C{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
            C[i][j] = narrow(static_cast<i128>(M[r0][c0]) * M[r1][c1] -
                             static_cast<i128>(M[r0][c1]) * M[r1][c0]);
        }
    return C;
}

// inverse of a unimodular matrix
inline Mat3 inverse_unimodular(const Mat3& M) {
    i128 d = det(M);
    if (d != 1 && d != -1) throw std::domain_error("inverse_unimodular: det != +-1");
    Mat3 C = adjugate(M);
    if (d == -1)
        for (auto& row : C)
            for (auto& x : row) x = -x;
    return C;
}

inline i64 vgcd(const Vec3& v) { return gcd(gcd(v[0], v[1]), v[2]); }

using GramMatrix = std::array<std::array<Rational, 3>, 3>;

struct Discriminant {
    Rational d;   // det of the Gram matrix
    i64 four_d;   // 4 d, always an integer
};

// f = a x^2 + b y^2 + c z^2 + p yz + q zx + r xy
struct TernaryForm {
    i64 a = 0, b = 0, c = 0, p = 0, q = 0, r = 0;

    auto operator<=>(const TernaryForm&) const = default;

    // doubled Gram matrix: the matrix of the bilinear form Q(x+y)-Q(x)-Q(y)
    Mat3 A() const { return {{{2 * a, r, q}, {r, 2 * b, p}, {q, p, 2 * c}}}; }

    i64 Q(const Vec3& v) const {
        i128 x = v[0], y = v[1], z = v[2];
        return narrow(a * x * x + b * y * y + c * z * z + p * y * z + q * z * x + r * x * y);
    }
    // Q(x+y) - Q(x) - Q(y), i.e. 2 B(x,y)
    i64 b2(const Vec3& u, const Vec3& v) const {
        i128 s = 2 * static_cast<i128>(a) * u[0] * v[0] + 2 * static_cast<i128>(b) * u[1] * v[1] +
                 2 * static_cast<i128>(c) * u[2] * v[2] +
                 static_cast<i128>(r) * (u[0] * static_cast<i128>(v[1]) + u[1] * static_cast<i128>(v[0])) +
                 static_cast<i128>(q) * (u[0] * static_cast<i128>(v[2]) + u[2] * static_cast<i128>(v[0])) +
                 static_cast<i128>(p) * (u[1] * static_cast<i128>(v[2]) + u[2] * static_cast<i128>(v[1]));
        return narrow(s);
    }

    // 4 dL = det(A) / 2
    i64 four_disc() const {
        i128 v = 4 * static_cast<i128>(a) * b * c - static_cast<i128>(a) * p * p -
                 static_cast<i128>(b) * q * q - static_cast<i128>(c) * r * r +
                 static_cast<i128>(p) * q * r;
        return narrow(v);
    }

    i64 content() const { return gcd(gcd(gcd(a, b), gcd(c, p)), gcd(q, r)); }
    bool primitive() const { return content() == 1; }

    bool positive_definite() const {
        return a > 0 && 4 * static_cast<i128>(a) * b - static_cast<i128>(r) * r > 0 && four_disc() > 0;
    }

    std::array<i64, 6> coeffs() const { return {a, b, c, p, q, r}; }
};

inline TernaryForm make_form(i64 a, i64 b, i64 c, i64 p = 0, i64 q = 0, i64 r = 0) {
    TernaryForm f{a, b, c, p, q, r};
    if (!f.positive_definite()) throw NotPositiveDefinite("form is not positive definite");
    return f;
}

// <a,b,c,s,t,u> given by Gram entries: s, t, u are the off-diagonal B-values
inline TernaryForm gram_form(i64 a, i64 b, i64 c, i64 s = 0, i64 t = 0, i64 u = 0) {
    return make_form(a, b, c, 2 * s, 2 * t, 2 * u);
}

inline TernaryForm from_doubled_gram(const Mat3& A) {
    for (int i = 0; i < 3; ++i)
        if (A[i][i] % 2 != 0) throw NonIntegralResult("odd diagonal entry in doubled Gram matrix");
    return TernaryForm{A[0][0] / 2, A[1][1] / 2, A[2][2] / 2, A[1][2], A[0][2], A[0][1]};
}

// form of the lattice spanned by the columns of T
inline TernaryForm transform(const TernaryForm& f, const Mat3& T) {
    Mat3 A = f.A();
    std::array<std::array<i128, 3>, 3> AT{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            i128 s = 0;
            for (int k = 0; k < 3; ++k) s += static_cast<i128>(A[i][k]) * T[k][j];
            AT[i][j] = s;
        }
    Mat3 R{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            i128 s = 0;
            for (int k = 0; k < 3; ++k) s += static_cast<i128>(T[k][i]) * AT[k][j];
            R[i][j] = narrow(s);
        }
    return from_doubled_gram(R);
}

inline GramMatrix gram(const TernaryForm& f) {
    GramMatrix G;
    G[0][0] = Rational(f.a);
    G[1][1] = Rational(f.b);
    G[2][2] = Rational(f.c);
    G[0][1] = G[1][0] = Rational(f.r, 2);
    G[0][2] = G[2][0] = Rational(f.q, 2);
    G[1][2] = G[2][1] = Rational(f.p, 2);
    return G;
}

inline TernaryForm form_from_gram(const GramMatrix& G) {
    auto twice = [](const Rational& x) {
        Rational y = x * Rational(2);
        if (!y.is_integer()) throw NonIntegralResult("Gram entry is not a half-integer");
        return static_cast<i64>(y.num);
    };
    for (int i = 0; i < 3; ++i)
        if (!G[i][i].is_integer()) throw NonIntegralResult("Gram diagonal is not integral");
    return make_form(static_cast<i64>(G[0][0].num), static_cast<i64>(G[1][1].num),
                     static_cast<i64>(G[2][2].num), twice(G[1][2]), twice(G[0][2]), twice(G[0][1]));
}

inline Discriminant discriminant(const TernaryForm& f) {
    i64 fd = f.four_disc();
    return {Rational(fd, 4), fd};
}

inline TernaryForm rescale(const TernaryForm& f, const Rational& s) {
    if (!(s > Rational(0))) throw NonIntegralResult("scaling factor must be positive");
    std::array<i64, 6> out{};
    auto in = f.coeffs();
    for (int i = 0; i < 6; ++i) {
        Rational x = Rational(in[i]) * s;
        if (!x.is_integer()) throw NonIntegralResult("rescaled form is not integral");
        out[i] = narrow(x.num);
    }
    return TernaryForm{out[0], out[1], out[2], out[3], out[4], out[5]};
}

inline TernaryForm rescale(const TernaryForm& f, i64 num, i64 den = 1) { return rescale(f, Rational(num, den)); }

inline TernaryForm primitive_part(const TernaryForm& f) { return rescale(f, 1, f.content()); }

inline std::string emit(const TernaryForm& f) {
    std::ostringstream os;
    os << f.a << ',' << f.b << ',' << f.c << ',' << f.p << ',' << f.q << ',' << f.r;
    return os.str();
}

namespace detail {

// parses an integer or a half-integer ending in .5; returns twice the value
inline i64 parse_twice(const std::string& tok) {
    std::string t = tok;
    while (!t.empty() && t.front() == ' ') t.erase(t.begin());
    while (!t.empty() && t.back() == ' ') t.pop_back();
    if (t.empty()) throw ParseError("empty entry");
    bool neg = false;
    std::size_t i = 0;
    if (t[0] == '-' || t[0] == '+') {
        neg = t[0] == '-';
        i = 1;
    }
    i128 whole = 0;
    bool digits = false;
    for (; i < t.size() && t[i] != '.'; ++i) {
        if (t[i] < '0' || t[i] > '9') throw ParseError("bad number '" + tok + "'");
        whole = whole * 10 + (t[i] - '0');
        digits = true;
        if (whole > (static_cast<i128>(1) << 60)) throw ParseError("number too large");
    }
    i128 twice = 2 * whole;
    if (i < t.size()) {
        std::string frac = t.substr(i + 1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (frac == "5")
            twice += 1;
        else if (!frac.empty())
            throw NonIntegralResult("entry '" + tok + "' is not a multiple of 1/2");
    }
    if (!digits) throw ParseError("bad number '" + tok + "'");
    return static_cast<i64>(neg ? -twice : twice);
}

}  // namespace detail

inline TernaryForm parse_form(const std::string& text) {
    std::string body = text;
    bool gram_syntax = false;
    if (body.rfind("gram:", 0) == 0) {
        gram_syntax = true;
        body = body.substr(5);
    }
    std::vector<i64> v;
    std::string tok;
    std::istringstream is(body);
    while (std::getline(is, tok, ',')) v.push_back(detail::parse_twice(tok));
    if (v.size() != 6) throw ParseError("expected six comma-separated entries");
    for (int i = 0; i < 3; ++i)
        if (v[i] % 2 != 0) throw NonIntegralResult("diagonal entries must be integers");
    if (!gram_syntax)
        for (int i = 3; i < 6; ++i)
            if (v[i] % 2 != 0) throw NonIntegralResult("polynomial coefficients must be integers");
    TernaryForm f{v[0] / 2, v[1] / 2, v[2] / 2, v[3], v[4], v[5]};
    if (!gram_syntax) f = TernaryForm{v[0] / 2, v[1] / 2, v[2] / 2, v[3] / 2, v[4] / 2, v[5] / 2};
    if (!f.positive_definite()) throw NotPositiveDefinite("form is not positive definite");
    return f;
}

}  // namespace ternary
