#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nilie {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// x^n for integer n >= 0 by squaring; exact association, no pow() branch cuts.
template <typename T>
T ipow(T x, int n) {
    if (n < 0) throw std::invalid_argument("ipow: negative exponent");
    T acc = T(1);
    while (n > 0) {
        if (n & 1) acc *= x;
        x *= x;
        n >>= 1;
    }
    return acc;
}

/// n! as double, n <= 170.
double factorial(int n);

/// log(n!)
double log_factorial(int n);

/// Wrap an angle into [0, 2*pi).
double wrap_2pi(double a);

struct Quadrature1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1].
Quadrature1D gauss_legendre(int n);

/// Periodic trapezoidal rule on [0, 2*pi): n equispaced nodes, weight 2*pi/n.
Quadrature1D periodic_trapezoid(int n);

/// Deterministic 64-bit mix for deriving per-check RNG seeds from a base seed
/// and a label, independent of evaluation order.
std::uint64_t seed_mix(std::uint64_t seed, const std::string& label);

} // namespace nilie
