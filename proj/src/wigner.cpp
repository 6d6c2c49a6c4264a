#include "nilie/wigner.hpp"

namespace nilie {

namespace {

// Generalized binomial C(m, k) for integer k >= 0, real m.
double binom(double m, int k) {
    double p = 1.0;
    for (int i = 1; i <= k; ++i) p *= (m - k + i) / i;
    return p;
}

double jacobi_sum(int n, double alpha, double beta, double z) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k)
        s += binom(n + alpha, k) * binom(n + beta, n - k) * ipow((z - 1.0) / 2.0, n - k) *
             ipow((z + 1.0) / 2.0, k);
    return s;
}

int parity(int k) { return (k % 2 + 2) % 2 == 0 ? 1 : -1; }

} // namespace

double jacobi_poly(int n, double alpha, double beta, double z) {
    if (n < 0) throw std::invalid_argument("jacobi_poly: degree must be non-negative");
    if (n == 0) return 1.0;
    const double ab = alpha + beta;
    double ym1 = 1.0;
    double y = (alpha + 1.0) + (ab + 2.0) * (z - 1.0) / 2.0;
    for (int k = 2; k <= n; ++k) {
        const double den = 2.0 * k * (k + ab) * (2.0 * k + ab - 2.0);
        if (std::abs(den) < 1e-300) return jacobi_sum(n, alpha, beta, z);
        const double c1 =
            (2.0 * k + ab - 1.0) * ((2.0 * k + ab) * (2.0 * k + ab - 2.0) * z + alpha * alpha - beta * beta);
        const double c0 = -2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * (2.0 * k + ab);
        const double yk = (c1 * y + c0 * ym1) / den;
        ym1 = y;
        y = yk;
    }
    return y;
}

double small_d(const WignerIndex& idx, double theta) {
    const int j = idx.j;
    int m = idx.m, n = idx.n;
    int sign = 1;
    if (m < n) {
        sign = parity(m - n);
        std::swap(m, n);
    }
    if (m + n < 0) {
        const int m2 = -n, n2 = -m;
        m = m2;
        n = n2;
    }
    // now m >= |n|: both sine and cosine exponents are non-negative
    const double half = theta / 2.0;
    const double pref = parity(m - n) *
                        std::sqrt(factorial(j + m) * factorial(j - m) /
                                  (factorial(j + n) * factorial(j - n)));
    return sign * pref * ipow(std::sin(half), m - n) * ipow(std::cos(half), m + n) *
           jacobi_poly(j - m, m - n, m + n, std::cos(theta));
}

cplx wigner_D(const WignerIndex& idx, const GroupElement& g) {
    return std::polar(1.0, idx.m * g.phi + idx.n * g.psi) * small_d(idx, g.theta);
}

EulerZYZ zyz_euler(const SU2Pair& m) {
    const double ca = std::abs(m.alpha), sb = std::abs(m.beta);
    EulerZYZ e{};
    e.beta = 2.0 * std::atan2(sb, ca);
    if (sb < 1e-14) { // beta = 0: only alpha + gamma determined
        e.alpha = wrap_2pi(-2.0 * std::arg(m.alpha));
        e.gamma = 0.0;
        return e;
    }
    if (ca < 1e-14) { // beta = pi: only alpha - gamma determined
        e.alpha = wrap_2pi(-2.0 * std::arg(-m.beta));
        e.gamma = 0.0;
        return e;
    }
    const double apc = -2.0 * std::arg(m.alpha);
    const double amc = -2.0 * std::arg(-m.beta);
    e.alpha = wrap_2pi((apc + amc) / 2.0);
    e.gamma = wrap_2pi((apc - amc) / 2.0);
    return e;
}

Eigen::MatrixXcd wigner_matrix(int j, const GroupElement& g) {
    if (j < 0) throw std::invalid_argument("wigner_matrix: j must be non-negative");
    const EulerZYZ e = zyz_euler(lift(g));
    const int d = 2 * j + 1;
    Eigen::MatrixXcd W(d, d);
    for (int m = -j; m <= j; ++m)
        for (int n = -j; n <= j; ++n)
            W(m + j, n + j) =
                std::polar(1.0, m * e.alpha + n * e.gamma) * small_d(WignerIndex(j, m, n), e.beta);
    return W;
}

cplx spherical_Y(int j, int m, const SpherePoint& x) {
    if (j < 0 || std::abs(m) > j) throw std::invalid_argument("spherical_Y: need |m| <= j");
    return std::sqrt((2.0 * j + 1.0) / (4.0 * pi)) * std::polar(1.0, m * x.phi) *
           small_d(WignerIndex(j, m, 0), x.theta);
}

} // namespace nilie
