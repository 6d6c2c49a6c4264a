#include "nilie/numeric.hpp"

#include <array>
#include <string>

namespace nilie {

double factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial: negative argument");
    static const std::array<double, 171> table = [] {
        std::array<double, 171> t{};
        t[0] = 1.0;
        for (int k = 1; k <= 170; ++k) t[k] = t[k - 1] * k;
        return t;
    }();
    if (n > 170) throw std::invalid_argument("factorial: overflow");
    return table[n];
}

double log_factorial(int n) {
    if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
    return std::lgamma(double(n) + 1.0);
}

double wrap_2pi(double a) {
    double r = std::fmod(a, two_pi);
    if (r < 0) r += two_pi;
    // fmod can return two_pi after rounding when a is a tiny negative number
    if (r >= two_pi) r -= two_pi;
    return r;
}

Quadrature1D gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    Quadrature1D q;
    q.nodes.resize(n);
    q.weights.resize(n);
    // Newton iteration on P_n, symmetric nodes.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p = 1.0, pm1 = 0.0;
            for (int k = 0; k < n; ++k) {
                double pm2 = pm1;
                pm1 = p;
                p = ((2.0 * k + 1.0) * x * pm1 - k * pm2) / (k + 1.0);
            }
            dp = n * (x * p - pm1) / (x * x - 1.0);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        q.nodes[i] = -x;
        q.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        q.weights[i] = w;
        q.weights[n - 1 - i] = w;
    }
    return q;
}

Quadrature1D periodic_trapezoid(int n) {
    if (n < 1) throw std::invalid_argument("periodic_trapezoid: n must be >= 1");
    Quadrature1D q;
    q.nodes.resize(n);
    q.weights.assign(n, two_pi / n);
    for (int i = 0; i < n; ++i) q.nodes[i] = two_pi * i / n;
    return q;
}

std::uint64_t seed_mix(std::uint64_t seed, const std::string& label) {
    // FNV-1a over the label, then splitmix64 round with the base seed folded in.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : label) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull + h;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace nilie
