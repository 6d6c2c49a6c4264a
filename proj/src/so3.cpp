#include "nilie/so3.hpp"

#include <algorithm>
#include <array>

namespace nilie {

namespace {

constexpr double kPoleTol = 1e-6; // theta distance to {0, pi} below which cot/1/sin formulas blow up

void require_regular_theta(double theta) {
    if (std::abs(std::sin(theta)) < kPoleTol)
        throw ChartSingularityError("vector-field coefficients singular at theta near {0, pi}");
}

} // namespace

GroupElement identity() { return GroupElement{0.0, pi / 2.0, 0.0}; }

GroupElement canonicalized(const GroupElement& g) {
    // theta is periodic with period 2*pi; theta in (pi, 2*pi) folds back onto
    // (0, pi) with phi and psi advanced by pi (the lift changes sign only).
    GroupElement r = g;
    r.theta = std::fmod(r.theta, two_pi);
    if (r.theta < 0) r.theta += two_pi;
    if (r.theta > pi) {
        r.theta = two_pi - r.theta;
        r.phi += pi;
        r.psi += pi;
    }
    r.phi = wrap_2pi(r.phi);
    r.psi = wrap_2pi(r.psi);
    return r;
}

SU2Pair to_su2(double phi, double theta, double psi) {
    const double cp = std::cos(psi / 2), sp = std::sin(psi / 2);
    const double ct = std::cos(theta / 2), st = std::sin(theta / 2);
    const cplx ephi = std::polar(1.0, phi / 2);
    SU2Pair m;
    m.alpha = cplx(cp * ct, -sp * st) * ephi;
    m.beta = cplx(-sp * ct, cp * st) / ephi;
    return m;
}

SU2Pair lift(const GroupElement& g) { return to_su2(g.phi, g.theta - pi / 2.0, g.psi); }

SU2Pair su2_mul(const SU2Pair& a, const SU2Pair& b) {
    SU2Pair m;
    m.alpha = a.alpha * b.alpha - a.beta * std::conj(b.beta);
    m.beta = a.alpha * b.beta + a.beta * std::conj(b.alpha);
    return m;
}

SU2Pair su2_inverse(const SU2Pair& a) { return SU2Pair{std::conj(a.alpha), -a.beta}; }

bool su2_at_chart_singularity(const SU2Pair& m, double tol) {
    const double s = std::imag(2.0 * m.alpha * m.beta); // sin(theta - pi/2)
    return 1.0 - std::abs(s) < tol;
}

GroupElement from_su2(const SU2Pair& m) {
    const cplx ab = m.alpha * m.beta;
    double s = std::clamp(std::imag(2.0 * ab), -1.0, 1.0); // sin(theta')
    GroupElement g;
    if (su2_at_chart_singularity(m)) {
        // Only phi - psi (theta = pi) or phi + psi (theta = 0) is determined;
        // resolve by psi := 0, after which phi = 2 arg(alpha) in both cases.
        g.theta = s > 0 ? pi : 0.0;
        g.psi = 0.0;
        g.phi = wrap_2pi(2.0 * std::arg(m.alpha));
        return g;
    }
    const double theta_p = std::asin(s);
    g.theta = theta_p + pi / 2.0;
    g.psi = std::atan2(-std::real(2.0 * ab), std::norm(m.alpha) - std::norm(m.beta));
    // phi from whichever entry is better conditioned:
    //   alpha = (a - i b) e^{i phi/2},  beta = (i c - d) e^{-i phi/2}
    const double a = std::cos(g.psi / 2) * std::cos(theta_p / 2);
    const double b = std::sin(g.psi / 2) * std::sin(theta_p / 2);
    const double c = std::cos(g.psi / 2) * std::sin(theta_p / 2);
    const double d = std::sin(g.psi / 2) * std::cos(theta_p / 2);
    if (std::abs(m.alpha) >= std::abs(m.beta))
        g.phi = 2.0 * (std::arg(m.alpha) - std::arg(cplx(a, -b)));
    else
        g.phi = -2.0 * (std::arg(m.beta) - std::arg(cplx(-d, c)));
    g.phi = wrap_2pi(g.phi);
    g.psi = wrap_2pi(g.psi);
    return g;
}

GroupElement compose(const GroupElement& g1, const GroupElement& g2) {
    return from_su2(su2_mul(lift(g1), lift(g2)));
}

GroupElement inverse(const GroupElement& g) { return from_su2(su2_inverse(lift(g))); }

Eigen::Matrix3d adjoint_matrix(const GroupElement& g) {
    auto rot = [](int axis, double t) {
        Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
        const int u = (axis + 1) % 3, v = (axis + 2) % 3;
        r(u, u) = std::cos(t);
        r(v, v) = std::cos(t);
        r(v, u) = std::sin(t);
        r(u, v) = -std::sin(t);
        return r;
    };
    return rot(2, g.psi) * rot(1, g.theta - pi / 2.0) * rot(0, g.phi);
}

namespace {

// Coefficient rows (c_phi, c_theta, c_psi) of the invariant fields.
using Coeff = std::array<double, 3>;

Coeff xi_coeff(int axis, const GroupElement& g) {
    const double ct = 1.0 / std::tan(g.theta), is = 1.0 / std::sin(g.theta);
    const double cf = std::cos(g.phi), sf = std::sin(g.phi);
    switch (axis) {
        case 1: return {1.0, 0.0, 0.0};
        case 2: return {-ct * sf, cf, sf * is};
        case 3: return {-ct * cf, -sf, cf * is};
    }
    throw std::invalid_argument("xi: axis must be 1, 2 or 3");
}

Coeff eta_coeff(int axis, const GroupElement& g) {
    const double ct = 1.0 / std::tan(g.theta), is = 1.0 / std::sin(g.theta);
    const double cp = std::cos(g.psi), sp = std::sin(g.psi);
    switch (axis) {
        case 1: return {-cp * is, sp, cp * ct};
        case 2: return {-sp * is, -cp, sp * ct};
        case 3: return {0.0, 0.0, -1.0};
    }
    throw std::invalid_argument("eta: axis must be 1, 2 or 3");
}

cplx directional_fd(const Coeff& c, const GroupField& F, const GroupElement& g, double h) {
    cplx out = 0.0;
    if (c[0] != 0.0) {
        GroupElement p = g, m = g;
        p.phi += h;
        m.phi -= h;
        out += c[0] * (F(p) - F(m)) / (2.0 * h);
    }
    if (c[1] != 0.0) {
        GroupElement p = g, m = g;
        p.theta += h;
        m.theta -= h;
        out += c[1] * (F(p) - F(m)) / (2.0 * h);
    }
    if (c[2] != 0.0) {
        GroupElement p = g, m = g;
        p.psi += h;
        m.psi -= h;
        out += c[2] * (F(p) - F(m)) / (2.0 * h);
    }
    return out;
}

} // namespace

cplx left_field_apply(int axis, const GroupField& F, const GroupElement& g, double h) {
    if (axis != 1) require_regular_theta(g.theta);
    return directional_fd(xi_coeff(axis, g), F, g, h);
}

cplx right_field_apply(int axis, const GroupField& F, const GroupElement& g, double h) {
    if (axis != 3) require_regular_theta(g.theta);
    return directional_fd(eta_coeff(axis, g), F, g, h);
}

cplx sphere_generator_apply(int axis, const SphereField& F, const SpherePoint& x, double h) {
    if (axis != 1) require_regular_theta(x.theta);
    const double ct = 1.0 / std::tan(x.theta);
    const double cf = std::cos(x.phi), sf = std::sin(x.phi);
    Coeff c{};
    switch (axis) {
        case 1: c = {1.0, 0.0, 0.0}; break;
        case 2: c = {-ct * sf, cf, 0.0}; break;
        case 3: c = {-ct * cf, -sf, 0.0}; break;
        default: throw std::invalid_argument("sphere generator: axis must be 1, 2 or 3");
    }
    cplx out = 0.0;
    if (c[0] != 0.0) {
        SpherePoint p = x, m = x;
        p.phi += h;
        m.phi -= h;
        out += c[0] * (F(p) - F(m)) / (2.0 * h);
    }
    if (c[1] != 0.0) {
        SpherePoint p = x, m = x;
        p.theta += h;
        m.theta -= h;
        out += c[1] * (F(p) - F(m)) / (2.0 * h);
    }
    return out;
}

QuadratureGrid haar_grid(int n_theta, int n_phi, int n_psi) {
    if (n_theta < 2) throw std::invalid_argument("haar_grid: n_theta must be >= 2");
    if (n_phi < 1 || n_psi < 1) throw std::invalid_argument("haar_grid: grid sizes must be positive");
    const auto gl = gauss_legendre(n_theta); // in u = cos(theta)
    const auto qphi = periodic_trapezoid(n_phi);
    const auto qpsi = periodic_trapezoid(n_psi);
    QuadratureGrid grid;
    grid.nodes.reserve(std::size_t(n_theta) * n_phi * n_psi);
    grid.weights.reserve(grid.nodes.capacity());
    for (int it = 0; it < n_theta; ++it) {
        const double theta = std::acos(gl.nodes[it]);
        const double wt = gl.weights[it] / 2.0;
        for (int ip = 0; ip < n_phi; ++ip)
            for (int is = 0; is < n_psi; ++is) {
                grid.nodes.push_back(GroupElement{qphi.nodes[ip], theta, qpsi.nodes[is]});
                grid.weights.push_back(wt * (qphi.weights[ip] / two_pi) * (qpsi.weights[is] / two_pi));
            }
    }
    return grid;
}

GroupElement section(const SpherePoint& x) { return GroupElement{x.phi, x.theta, 0.0}; }

SpherePoint sphere_action(const SpherePoint& x, const GroupElement& g) {
    const GroupElement c = compose(section(x), g);
    return SpherePoint{c.phi, c.theta};
}

double h_factor(const SpherePoint& x, const GroupElement& g) {
    // s(x) g in chart coordinates is exactly h(psi) s(x') because the psi
    // factor of the chart is the left SO(2) factor.
    const GroupElement c = compose(section(x), g);
    return c.psi;
}

cplx q_action(cplx q, const GroupElement& g) {
    const SU2Pair m = lift(g);
    // Projective transform of t = tan(q/2) = u/v.
    cplx u = std::sin(q / 2.0), v = std::cos(q / 2.0);
    const double scale = std::max(std::abs(u), std::abs(v));
    u /= scale;
    v /= scale;
    const cplx up = m.alpha * u + m.beta * v;
    const cplx vp = -std::conj(m.beta) * u + std::conj(m.alpha) * v;
    if (std::abs(vp) <= 1e-12 * std::max(1.0, std::abs(up)))
        throw MobiusPoleError("q_action: image at the point at infinity of the q-chart");
    // q' = 2 atan(u'/v') without forming the tangent: atan(z) = -i/2 log((1+iz)/(1-iz))
    const cplx num = vp + cplx(0, 1) * up;
    const cplx den = vp - cplx(0, 1) * up;
    return cplx(0, -1) * std::log(num / den);
}

} // namespace nilie
