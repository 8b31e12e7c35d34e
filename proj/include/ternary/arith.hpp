#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ternary {

using i64 = std::int64_t;
using i128 = __int128;

struct Error : std::runtime_error {
    std::string kind;
    Error(std::string k, const std::string& msg) : std::runtime_error(msg), kind(std::move(k)) {}
};

#define TERNARY_ERROR(Name)                                                   \
    struct Name : Error {                                                     \
        explicit Name(const std::string& m) : Error(#Name, m) {}              \
    }

TERNARY_ERROR(ParseError);
TERNARY_ERROR(NonIntegralResult);
TERNARY_ERROR(NotPositiveDefinite);
TERNARY_ERROR(NotSquareFree);
TERNARY_ERROR(NotPrimitive);
TERNARY_ERROR(BadPrime);
TERNARY_ERROR(NotHyperbolicAtP);
TERNARY_ERROR(DiscriminantMismatch);
TERNARY_ERROR(NotRepresentable);
TERNARY_ERROR(HypothesisFailure);
TERNARY_ERROR(NoMatching);
TERNARY_ERROR(Overflow);

#undef TERNARY_ERROR

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

inline i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline i64 narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw Overflow("integer overflow in exact arithmetic");
    return static_cast<i64>(v);
}

// floor division, valid for negative numerators
inline i64 floor_div(i64 a, i64 b) {
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 isqrt(i64 n) {
    if (n <= 0) return 0;
    i64 r = static_cast<i64>(__builtin_sqrtl(static_cast<long double>(n)));
    while (r > 0 && static_cast<i128>(r) * r > n) --r;
    while (static_cast<i128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square(i64 n) {
    if (n < 0) return false;
    i64 r = isqrt(n);
    return r * r == n;
}

// p-adic valuation; v_p(0) is reported as a large sentinel
inline int val(i128 n, i64 p) {
    if (n == 0) return 1 << 20;
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline i128 strip(i128 n, i64 p) {
    if (n == 0) return 0;
    while (n % p == 0) n /= p;
    return n;
}

inline std::vector<std::pair<i64, int>> factor(i64 n) {
    std::vector<std::pair<i64, int>> out;
    if (n < 0) n = -n;
    for (i64 d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline std::vector<i64> prime_divisors(i64 n) {
    std::vector<i64> out;
    for (auto& [p, e] : factor(n)) out.push_back(p);
    return out;
}

inline bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline bool is_squarefree(i64 n) {
    if (n <= 0) return false;
    for (auto& [p, e] : factor(n))
        if (e > 1) return false;
    return true;
}

inline i64 powmod(i64 b, i64 e, i64 m) {
    i128 r = 1, x = mod(b, m);
    while (e > 0) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<i64>(r);
}

// Legendre symbol (a/p) for odd prime p
inline int legendre(i64 a, i64 p) {
    a = mod(a, p);
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

inline i64 inv_mod(i64 a, i64 m) {
    i64 g = m, x = 0, x1 = 1, b = mod(a, m);
    while (b != 0) {
        i64 q = g / b;
        std::tie(g, b) = std::make_pair(b, g - q * b);
        std::tie(x, x1) = std::make_pair(x1, x - q * x1);
    }
    if (g != 1) throw std::domain_error("inv_mod: not invertible");
    return mod(x, m);
}

inline i64 smallest_nonresidue(i64 p) {
    for (i64 a = 2;; ++a)
        if (legendre(a, p) == -1) return a;
}

inline i64 ipow(i64 b, int e) {
    i128 r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return narrow(r);
}

// exact rational with 128-bit parts, always normalized (den > 0, coprime)
struct Rational {
    i128 num = 0, den = 1;

    Rational() = default;
    Rational(i128 n) : num(n), den(1) {}
    Rational(i128 n, i128 d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        i128 g = gcd128(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    friend Rational operator+(const Rational& a, const Rational& b) {
        return {a.num * b.den + b.num * a.den, a.den * b.den};
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return {a.num * b.den - b.num * a.den, a.den * b.den};
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        i128 g1 = gcd128(a.num, b.den), g2 = gcd128(b.num, a.den);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        return {(a.num / g1) * (b.num / g2), (a.den / g2) * (b.den / g1)};
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        return a * Rational(b.den, b.num);
    }
    Rational operator-() const { return {-num, den}; }
    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return a.num * b.den < b.num * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
};

inline int val(const Rational& x, i64 p) {
    if (x.num == 0) return 1 << 20;
    return val(x.num, p) - val(x.den, p);
}

// unit part of x at p reduced modulo m (m a power of p); requires v_p(x) handled by caller
inline i64 unit_residue(const Rational& x, i64 p, i64 m) {
    i128 n = strip(x.num, p), d = strip(x.den, p);
    i64 nm = static_cast<i64>(((n % m) + m) % m);
    i64 dm = static_cast<i64>(((d % m) + m) % m);
    return static_cast<i64>(static_cast<i128>(nm) * inv_mod(dm, m) % m);
}

inline std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    std::string s;
    while (v != 0) {
        int d = static_cast<int>(v % 10);
        s.push_back(static_cast<char>('0' + (d < 0 ? -d : d)));
        v /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

inline std::string to_string(const Rational& r) {
    if (r.den == 1) return to_string(r.num);
    return to_string(r.num) + "/" + to_string(r.den);
}

}  // namespace ternary
