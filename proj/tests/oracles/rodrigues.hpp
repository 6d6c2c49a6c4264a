// Test-only oracle: Jacobi polynomials by symbolic differentiation of the
// Rodrigues product, in exact rational arithmetic.  Valid for integer
// alpha, beta and small degree (int64 fractions, n <= 6 stays tiny).
// Independent of the recurrence used by the library.
#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace oracle {

struct Rational {
    std::int64_t num = 0, den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den == 0) throw std::runtime_error("rational: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
    Rational operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
    Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
    Rational operator/(const Rational& o) const { return Rational(num * o.den, den * o.num); }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    double value() const { return double(num) / double(den); }
};

inline Rational rational_pow(Rational x, int n) {
    if (n < 0) {
        x = Rational(x.den, x.num);
        n = -n;
    }
    Rational acc(1);
    for (int i = 0; i < n; ++i) acc = acc * x;
    return acc;
}

// Linear combination of terms (1-z)^a (1+z)^b with rational coefficients.
using TwoFactorPoly = std::map<std::pair<int, int>, Rational>;

inline TwoFactorPoly derivative(const TwoFactorPoly& p) {
    TwoFactorPoly d;
    for (const auto& [ab, c] : p) {
        const auto [a, b] = ab;
        if (a != 0) {
            auto& slot = d[{a - 1, b}];
            slot = slot - c * Rational(a);
        }
        if (b != 0) {
            auto& slot = d[{a, b - 1}];
            slot = slot + c * Rational(b);
        }
    }
    return d;
}

/// P_n^{(alpha,beta)} evaluated at the rational point z, exactly.
inline Rational jacobi_rodrigues(int n, int alpha, int beta, const Rational& z) {
    if (n < 0 || alpha < -n || beta < -n) throw std::runtime_error("rodrigues oracle: bad arguments");
    TwoFactorPoly p;
    p[{n + alpha, n + beta}] = Rational(1);
    for (int k = 0; k < n; ++k) p = derivative(p);
    // prefactor (-1)^n / (2^n n!) (1-z)^{-alpha} (1+z)^{-beta}
    std::int64_t nfact = 1;
    for (int k = 2; k <= n; ++k) nfact *= k;
    Rational pref(n % 2 == 0 ? 1 : -1, (std::int64_t(1) << n) * nfact);
    const Rational one_m = Rational(1) - z, one_p = Rational(1) + z;
    Rational acc(0);
    for (const auto& [ab, c] : p) {
        const auto [a, b] = ab;
        acc = acc + c * rational_pow(one_m, a - alpha) * rational_pow(one_p, b - beta);
    }
    return pref * acc;
}

} // namespace oracle
