#include "nilie/coherent.hpp"

namespace nilie {

namespace {

const std::array<SpherePoint, 6> kSphereProbes = {
    SpherePoint{0.73, 1.21}, SpherePoint{2.11, 0.64}, SpherePoint{4.02, 2.35},
    SpherePoint{5.31, 1.77}, SpherePoint{1.57, 0.95}, SpherePoint{3.49, 1.38}};

} // namespace

Eigen::VectorXcd cs_coeffs(const CSLabel& label) {
    const int j = label.j;
    Eigen::VectorXcd u(2 * j + 1);
    const double norm = std::pow(1.0 + std::norm(label.zeta), -double(j));
    for (int m = -j; m <= j; ++m) {
        const double binom =
            std::sqrt(factorial(2 * j) / (factorial(j + m) * factorial(j - m)));
        u[m + j] = norm * binom * ipow(label.zeta, j + m);
    }
    return u;
}

cplx cs_wavefunction(const CSLabel& label, const SpherePoint& x) {
    const int j = label.j;
    const cplx z = label.zeta;
    const double st = std::sin(x.theta), ct = std::cos(x.theta);
    const cplx eif = std::polar(1.0, x.phi);
    const cplx bracket = 2.0 * eif * ct * z + st - eif * eif * st * z * z;
    const double pref = std::sqrt((2.0 * j + 1.0) / (4.0 * pi)) * std::sqrt(factorial(2 * j)) /
                        (ipow(2.0, j) * factorial(j));
    return pref * std::pow(1.0 + std::norm(z), -double(j)) * std::polar(1.0, -j * x.phi) *
           ipow(bracket, j);
}

cplx ni_state(const NIStateLabel& label, const SpherePoint& x) {
    const cplx I(0, 1);
    const double st = std::sin(x.theta), ct = std::cos(x.theta);
    const double cf = std::cos(x.phi), sf = std::sin(x.phi);
    const cplx bracket = -I * ct * std::sin(label.q) + (cf - I * std::cos(label.q) * sf) * st;
    return ipow(bracket, label.j);
}

cplx overlap_qm(int j, cplx q, int m, int denominator_exponent) {
    if (std::abs(m) > j) throw std::invalid_argument("overlap_qm: need |m| <= j");
    const int e = denominator_exponent < 0 ? j : denominator_exponent;
    const cplx zb = cplx(0, 1) * std::tan(std::conj(q) / 2.0); // i tan(qb/2) = conj(zeta)
    const double pref = std::sqrt((2.0 * j + 1.0) / (4.0 * pi)) * ipow(2.0, j) * factorial(j) /
                        std::sqrt(factorial(j - m) * factorial(j + m));
    return pref * ipow(zb, j + m) / ipow(1.0 - zb * zb, e);
}

cplx eigenfunction_F(int j, int m, cplx q) {
    // tan^m sin^j with negative m handled through cot powers
    const cplx t = std::tan(q / 2.0);
    const cplx s = std::sin(q);
    if (m >= 0) return ipow(t, m) * ipow(s, j);
    return ipow(s, j) / ipow(t, -m);
}

cplx rel1_constant(int j, int m, int n) {
    return std::polar(1.0, pi / 2.0 * (j + m)) * factorial(j) * factorial(j) /
           std::sqrt(factorial(j + m) * factorial(j - m) * factorial(j + n) * factorial(j - n));
}

cplx rel1_reconstruct(int j, int m, int n, const GroupElement& g, const QPlaneGrid& grid) {
    if (std::abs(m) > j || std::abs(n) > j)
        throw std::invalid_argument("rel1_reconstruct: need |m|, |n| <= j");
    return rel1_reconstruct_matrix(j, g, grid)(m + j, n + j);
}

Eigen::MatrixXcd rel1_reconstruct_matrix(int j, const GroupElement& g, const QPlaneGrid& grid) {
    if (grid.j != j) throw std::invalid_argument("rel1_reconstruct: grid built for a different j");
    const std::size_t N = grid.q_nodes.size();
    const int d = 2 * j + 1;
    // inner integrals over q' for every outer node and every n, sharing the
    // kernel evaluation across the basis
    Eigen::MatrixXcd basis(N, d); // e^{-i n q'} w(q')
    for (std::size_t b = 0; b < N; ++b)
        for (int n = -j; n <= j; ++n)
            basis(b, n + j) = std::exp(cplx(0, -double(n)) * grid.q_nodes[b]) * grid.weights[b];
    Eigen::MatrixXcd inner = Eigen::MatrixXcd::Zero(N, d);
    Eigen::VectorXcd row(N);
    for (std::size_t a = 0; a < N; ++a) {
        const cplx qa = grid.q_nodes[a];
        for (std::size_t b = 0; b < N; ++b)
            row[b] = kernel_display(j, qa, std::conj(grid.q_nodes[b]), g.phi, g.theta, g.psi);
        inner.row(a) = row.transpose() * basis;
    }
    Eigen::MatrixXcd out(d, d);
    Eigen::VectorXcd fbar(N);
    for (int m = -j; m <= j; ++m) {
        for (std::size_t a = 0; a < N; ++a)
            fbar[a] = std::conj(eigenfunction_F(j, m, grid.q_nodes[a])) * grid.weights[a];
        const Eigen::RowVectorXcd sums = fbar.transpose() * inner;
        for (int n = -j; n <= j; ++n) out(m + j, n + j) = rel1_constant(j, m, n) * sums(n + j);
    }
    return out;
}

NiToCs ni_to_cs(const NIStateLabel& label) {
    const int j = label.j;
    const cplx zeta = cplx(0, -1) * std::tan(label.q / 2.0);
    const cplx denom = 1.0 - zeta * zeta;
    if (std::abs(denom) < 1e-12)
        throw std::invalid_argument("ni_to_cs: scale pole at zeta^2 = 1");
    const double pref =
        std::sqrt(4.0 * pi / (2.0 * j + 1.0)) * ipow(2.0, j) * factorial(j) / std::sqrt(factorial(2 * j));
    const cplx scale = pref * ipow((1.0 + std::norm(zeta)) / denom, j);
    return NiToCs{scale, CSLabel(j, zeta)};
}

cplx zeta_action(cplx zeta, const GroupElement& g) {
    const SU2Pair m = lift(g);
    const cplx iz = cplx(0, 1) * zeta;
    const cplx den = -std::conj(m.beta) * iz + std::conj(m.alpha);
    if (std::abs(den) <= 1e-12 * std::max(1.0, std::abs(iz)))
        throw MobiusPoleError("zeta_action: image at the point at infinity");
    return cplx(0, -1) * (m.alpha * iz + m.beta) / den;
}

CsPhase cs_phase(const CSLabel& label, const GroupElement& g) {
    const CSLabel moved(label.j, zeta_action(label.zeta, g));
    CsPhase out{0.0, 0.0, 0.0};
    bool have_ref = false;
    cplx ref = 0.0;
    for (const SpherePoint& x : kSphereProbes) {
        const cplx den = cs_wavefunction(moved, x);
        if (std::abs(den) < 1e-8) continue;
        const cplx r = cs_wavefunction(label, sphere_action(x, g)) / den;
        if (!have_ref) {
            ref = r;
            have_ref = true;
            out.phase = std::arg(r) / label.j;
        }
        out.modulus_defect = std::max(out.modulus_defect, std::abs(std::abs(r) - 1.0));
        out.probe_spread = std::max(out.probe_spread, std::abs(r - ref));
    }
    if (!have_ref) throw std::runtime_error("cs_phase: all probe points hit zeros");
    return out;
}

NiTransport ni_transport(const NIStateLabel& label, const GroupElement& g) {
    NiTransport out{};
    out.factor = ni_state(label, SpherePoint{g.phi, g.theta});
    const NIStateLabel moved(label.j, q_action(label.q, g));
    for (const SpherePoint& x : kSphereProbes) {
        const cplx lhs = ni_state(label, sphere_action(x, g));
        const cplx rhs = out.factor * ni_state(moved, x);
        out.pointwise_residual = std::max(out.pointwise_residual, std::abs(lhs - rhs));
    }
    return out;
}

double rel4_regenerate_residual(const NIStateLabel& label) {
    // g with 0 o g = q:  the action by g is the Moebius map of g^{-1}, so pick
    // alpha, beta with -beta/alpha = tan(q/2).
    const cplx t = std::tan(label.q / 2.0);
    const double s = 1.0 / std::sqrt(1.0 + std::norm(t));
    const SU2Pair m{s, -t * s};
    const GroupElement g = from_su2(m);
    const GroupElement gi = inverse(g);
    const NIStateLabel base(label.j, 0.0);
    // Specializing the transport law to the base state:
    //   D_{q0}(pi(g^{-1})) * D_q(x) = D_{q0}(x o g^{-1})
    const cplx factor = ni_state(base, SpherePoint{gi.phi, gi.theta});
    double res = 0.0;
    for (const SpherePoint& x : kSphereProbes) {
        const cplx lhs = factor * ni_state(label, x);
        const cplx rhs = ni_state(base, sphere_action(x, gi));
        res = std::max(res, std::abs(lhs - rhs));
    }
    return res;
}

} // namespace nilie
