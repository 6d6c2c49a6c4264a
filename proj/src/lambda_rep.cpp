#include "nilie/lambda_rep.hpp"

#include <random>

#include "nilie/wigner.hpp"

namespace nilie {

namespace {

double kernel_norm_const(int j) { return ipow(2.0, j) * factorial(j) * factorial(j) / factorial(2 * j); }

struct KernelParts {
    // B = x0 + cos(psi + qb') * y + sin(psi + qb') * z with
    // x0, y, z functions of (phi, theta, q)
    cplx x0, y, z;
};

KernelParts kernel_parts(cplx q, double phi, double theta) {
    const cplx cq = std::cos(q), sq = std::sin(q);
    const double st = std::sin(theta), ct = std::cos(theta);
    const double cf = std::cos(phi), sf = std::sin(phi);
    const cplx I(0, 1);
    KernelParts p;
    p.x0 = st * cf - I * st * cq * sf - I * ct * sq;
    p.y = cq * cf - I * sf;
    p.z = -I * ct * cf - ct * cq * sf + st * sq;
    return p;
}

} // namespace

Eigen::MatrixXcd ell_matrix(int axis, OrbitLabel label) {
    const int j = label.j, d = 2 * j + 1;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    const cplx I(0, 1);
    for (int n = -j; n <= j; ++n) {
        const int col = n + j;
        switch (axis) {
            case 1:
                if (n - 1 >= -j) m(col - 1, col) = I * 0.5 * double(j + n);
                if (n + 1 <= j) m(col + 1, col) = I * 0.5 * double(j - n);
                break;
            case 2:
                if (n - 1 >= -j) m(col - 1, col) = -0.5 * double(j + n);
                if (n + 1 <= j) m(col + 1, col) = 0.5 * double(j - n);
                break;
            case 3:
                m(col, col) = -I * double(n);
                break;
            default:
                throw std::invalid_argument("ell_matrix: axis must be 1, 2 or 3");
        }
    }
    return m;
}

Eigen::MatrixXcd casimir_lambda(OrbitLabel label) {
    const int d = 2 * label.j + 1;
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(d, d);
    const cplx I(0, 1);
    for (int a = 1; a <= 3; ++a) {
        const Eigen::MatrixXcd A = -I * ell_matrix(a, label);
        k += A * A;
    }
    return k;
}

cplx delta_j(cplx q, cplx qbar_prime, int j) {
    return kernel_norm_const(j) * ipow(1.0 + std::cos(q - qbar_prime), j);
}

cplx kernel_display(int j, cplx q, cplx qbar_prime, double phi, double theta, double psi) {
    const KernelParts p = kernel_parts(q, phi, theta);
    const cplx w = psi + qbar_prime;
    const cplx B = p.x0 + std::cos(w) * p.y + std::sin(w) * p.z;
    return kernel_norm_const(j) * ipow(B, j);
}

cplx kernel_display_dq(int j, cplx q, cplx qbar_prime, double phi, double theta, double psi) {
    const cplx cq = std::cos(q), sq = std::sin(q);
    const double st = std::sin(theta), ct = std::cos(theta);
    const double cf = std::cos(phi), sf = std::sin(phi);
    const cplx I(0, 1);
    const cplx w = psi + qbar_prime;
    const KernelParts p = kernel_parts(q, phi, theta);
    const cplx B = p.x0 + std::cos(w) * p.y + std::sin(w) * p.z;
    // dB/dq: replace cos q -> -sin q, sin q -> cos q in the q-carrying terms
    const cplx dx0 = I * st * sq * sf - I * ct * cq;
    const cplx dy = -sq * cf;
    const cplx dz = ct * sq * sf + st * cq;
    const cplx dB = dx0 + std::cos(w) * dy + std::sin(w) * dz;
    return kernel_norm_const(j) * double(j) * ipow(B, j - 1) * dB;
}

cplx kernel_display_dqb(int j, cplx q, cplx qbar_prime, double phi, double theta, double psi) {
    const KernelParts p = kernel_parts(q, phi, theta);
    const cplx w = psi + qbar_prime;
    const cplx B = p.x0 + std::cos(w) * p.y + std::sin(w) * p.z;
    const cplx dB = -std::sin(w) * p.y + std::cos(w) * p.z;
    return kernel_norm_const(j) * double(j) * ipow(B, j - 1) * dB;
}

cplx kernel_D(cplx q, cplx qbar_prime, const GroupElement& g, int j) {
    const GroupElement gi = inverse(g);
    return kernel_display(j, q, qbar_prime, gi.phi, gi.theta, gi.psi);
}

QPlaneGrid q_plane_grid(OrbitLabel label, int n_r, int n_ang) {
    if (n_r < 8) throw std::invalid_argument("q_plane_grid: n_r must be >= 8");
    if (n_ang < 4) throw std::invalid_argument("q_plane_grid: n_ang must be >= 4");
    const int j = label.j;
    const auto gl = gauss_legendre(n_r);
    const auto ang = periodic_trapezoid(n_ang);
    QPlaneGrid grid;
    grid.j = j;
    grid.q_nodes.reserve(std::size_t(n_r) * n_ang);
    grid.zeta_nodes.reserve(grid.q_nodes.capacity());
    grid.weights.reserve(grid.q_nodes.capacity());
    // density of the measure in the zeta plane
    const double K = factorial(2 * j + 1) / (pi * ipow(4.0, j) * factorial(j) * factorial(j));
    for (int ir = 0; ir < n_r; ++ir) {
        const double u = pi * (gl.nodes[ir] + 1.0) / 2.0; // u in (0, pi)
        const double wu = gl.weights[ir] * pi / 2.0;
        const double r = std::tan(u / 2.0);
        const double sec = 1.0 / std::cos(u / 2.0);
        const double dr = 0.5 * sec * sec;
        for (int ia = 0; ia < n_ang; ++ia) {
            const cplx zeta = std::polar(r, ang.nodes[ia]);
            const cplx one_m_z2 = 1.0 - zeta * zeta;
            const double z2 = std::norm(zeta);
            const double density =
                K * ipow(std::abs(one_m_z2), 2 * j) / ipow(1.0 + z2, 2 * j + 2);
            const cplx q = 2.0 * std::atan(cplx(0, 1) * zeta);
            grid.q_nodes.push_back(q);
            grid.zeta_nodes.push_back(zeta);
            grid.weights.push_back(density * r * dr * wu * ang.weights[ia]);
        }
    }
    return grid;
}

Eigen::MatrixXcd QPlaneGrid::gram() const {
    const int d = 2 * j + 1;
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(d, d);
    // basis values from the rational form e^{-iq} = (1+zeta)/(1-zeta)
    Eigen::VectorXcd basis(d);
    for (std::size_t i = 0; i < q_nodes.size(); ++i) {
        const cplx em = (1.0 + zeta_nodes[i]) / (1.0 - zeta_nodes[i]); // e^{-iq}
        basis[j] = 1.0;
        for (int n = 1; n <= j; ++n) {
            basis[j + n] = basis[j + n - 1] * em;
            basis[j - n] = basis[j - n + 1] / em;
        }
        G.noalias() += weights[i] * basis.conjugate() * basis.transpose();
    }
    return G;
}

Eigen::MatrixXcd gram_closed_form(OrbitLabel label) {
    const int j = label.j, d = 2 * j + 1;
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(d, d);
    for (int n = -j; n <= j; ++n)
        G(n + j, n + j) = factorial(j + n) * factorial(j - n) / (factorial(j) * factorial(j));
    return G;
}

QMeasure::QMeasure(OrbitLabel label, Eigen::MatrixXcd g) : j(label.j), gram(std::move(g)) {
    const int d = 2 * j + 1;
    if (gram.rows() != d || gram.cols() != d)
        throw std::invalid_argument("QMeasure: gram must be (2j+1) x (2j+1)");
    if ((gram - gram.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("QMeasure: gram must be Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    if (es.eigenvalues().minCoeff() <= 0.0)
        throw std::invalid_argument("QMeasure: gram must be positive definite");
}

QMeasure QMeasure::from_grid(const QPlaneGrid& grid) {
    return QMeasure(OrbitLabel(grid.j), grid.gram());
}

QMeasure QMeasure::closed_form(OrbitLabel label) {
    return QMeasure(label, gram_closed_form(label));
}

KernelPdeResidual kernel_pde_residual(cplx q, cplx qbar_prime, const GroupElement& g, int j,
                                      double h) {
    // f(g) = D(g^{-1}) = kernel_display at the coordinates of g
    const GroupField f = [&](const GroupElement& x) {
        return kernel_display(j, q, qbar_prime, x.phi, x.theta, x.psi);
    };
    const cplx I(0, 1);
    const cplx cq = std::cos(q), sq = std::sin(q);
    const cplx cqb = std::cos(qbar_prime), sqb = std::sin(qbar_prime);
    const cplx dq = kernel_display_dq(j, q, qbar_prime, g.phi, g.theta, g.psi);
    const cplx dqb = kernel_display_dqb(j, q, qbar_prime, g.phi, g.theta, g.psi);
    const cplx val = kernel_display(j, q, qbar_prime, g.phi, g.theta, g.psi);
    // ell_a acting in q:  ell_1 = -i(sin q d/dq - j cos q), ell_2 = -i(cos q d/dq + j sin q),
    // ell_3 = d/dq; conjugated operators act in qb'.
    const std::array<cplx, 3> ell = {-I * (sq * dq - double(j) * cq * val),
                                     -I * (cq * dq + double(j) * sq * val), dq};
    const std::array<cplx, 3> ell_conj = {I * (sqb * dqb - double(j) * cqb * val),
                                          I * (cqb * dqb + double(j) * sqb * val), dqb};
    KernelPdeResidual r;
    for (int a = 1; a <= 3; ++a) {
        const cplx xi = left_field_apply(a, f, g, h);
        const cplx eta = right_field_apply(a, f, g, h);
        r.xi_residual = std::max(r.xi_residual, std::abs(xi + ell[a - 1]));
        r.eta_residual = std::max(r.eta_residual, std::abs(eta + ell_conj[a - 1]));
    }
    return r;
}

namespace {

const std::array<cplx, 10> kFactorProbes = {
    cplx(0.0, 0.0),  cplx(0.9, 0.1),  cplx(1.7, -0.3), cplx(2.6, 0.2),  cplx(-1.2, 0.4),
    cplx(0.5, -0.6), cplx(-2.1, 0.1), cplx(3.0, 0.5),  cplx(-0.7, -0.2), cplx(1.1, 0.8)};

} // namespace

KernelFactorization factor_kernel(cplx q, const GroupElement& g, OrbitLabel label) {
    const int j = label.j;
    const cplx q_moved = q_action(q, g);
    for (const cplx& probe : kFactorProbes) {
        const cplx den = delta_j(q_moved, probe, j);
        if (std::abs(den) > 1e-6) {
            const cplx num = kernel_display(j, q, probe, g.phi, g.theta, g.psi);
            return KernelFactorization{num / den, q_moved};
        }
    }
    throw FactorizationDegenerateError("factor_kernel: all probes hit zeros of delta_j");
}

double factor_kernel_probe_spread(cplx q, const GroupElement& g, OrbitLabel label) {
    const int j = label.j;
    const cplx q_moved = q_action(q, g);
    std::vector<cplx> values;
    for (const cplx& probe : kFactorProbes) {
        const cplx den = delta_j(q_moved, probe, j);
        if (std::abs(den) > 1e-3)
            values.push_back(kernel_display(j, q, probe, g.phi, g.theta, g.psi) / den);
    }
    if (values.size() < 2) throw FactorizationDegenerateError("factor_kernel: not enough valid probes");
    double spread = 0.0;
    for (const cplx& v : values) spread = std::max(spread, std::abs(v - values.front()));
    return spread;
}

double CompletenessReport::max_orthogonality_residual() const {
    double r = 0.0;
    for (const auto& s : orthogonality) r = std::max(r, s.residual);
    return r;
}

CompletenessReport completeness_check(int j_max, int sample_count, std::uint64_t seed, int haar_n,
                                      int q_n) {
    if (j_max > 4) throw std::invalid_argument("completeness_check: j_max is capped at 4 for cost");
    CompletenessReport report;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-2.5, 2.5), im(-0.7, 0.7), ang(0.3, 2.8);

    const QuadratureGrid haar = haar_grid(haar_n, haar_n, haar_n);
    // Group-orthogonality at sampled labels: the Haar integral of
    // conj(D_{A,B}(g)) D_{C,D}(g) equals delta_{j jt}/(2j+1) * delta_j(C, conj(A)) * delta_j(conj(B), D).
    for (int s = 0; s < sample_count; ++s) {
        const cplx A(re(rng), im(rng)), B(re(rng), im(rng)), C(re(rng), im(rng)), D(re(rng), im(rng));
        for (int j = 1; j <= j_max; ++j)
            for (int jt = j; jt <= std::min(j_max, j + 1); ++jt) {
                cplx integral = 0.0;
                for (std::size_t i = 0; i < haar.nodes.size(); ++i) {
                    const GroupElement& gg = haar.nodes[i];
                    integral += std::conj(kernel_display(jt, A, B, gg.phi, gg.theta, gg.psi)) *
                                kernel_display(j, C, D, gg.phi, gg.theta, gg.psi) * haar.weights[i];
                }
                const cplx expected = (j == jt)
                                          ? delta_j(C, std::conj(A), j) * delta_j(std::conj(B), D, j) /
                                                double(2 * j + 1)
                                          : cplx(0.0);
                report.orthogonality.push_back({j, jt, std::abs(integral - expected)});
            }
    }

    // Double-Q trace term of the completeness sum; equals the character of
    // g~^{-1} g (Peter-Weyl), which is the Wigner-matrix trace oracle.
    const auto trace_term = [&](int j, const GroupElement& gt, const GroupElement& gg) {
        const QPlaneGrid grid = q_plane_grid(OrbitLabel(j), q_n, q_n);
        const std::size_t N = grid.q_nodes.size();
        const GroupElement gti = inverse(gt), ggi = inverse(gg);
        cplx t = 0.0;
        for (std::size_t a = 0; a < N; ++a) {
            cplx row = 0.0;
            for (std::size_t b = 0; b < N; ++b) {
                const cplx qb = std::conj(grid.q_nodes[b]);
                const cplx kt =
                    kernel_display(j, grid.q_nodes[a], qb, gti.phi, gti.theta, gti.psi);
                const cplx kg =
                    kernel_display(j, grid.q_nodes[a], qb, ggi.phi, ggi.theta, ggi.psi);
                row += std::conj(kt) * kg * grid.weights[b];
            }
            t += row * grid.weights[a];
        }
        return t;
    };

    const GroupElement g{ang(rng), ang(rng), ang(rng)};
    const GroupElement gt{ang(rng), ang(rng), ang(rng)};
    double running = 0.0;
    double char_res = 0.0;
    for (int j = 0; j <= j_max; ++j) {
        double term;
        if (j == 0) {
            term = 1.0; // trivial representation
        } else {
            term = std::real(trace_term(j, g, g));
            char_res = std::max(char_res, std::abs(term - double(2 * j + 1)));
            if (j <= 2) {
                const cplx off = trace_term(j, gt, g);
                const cplx chi = wigner_matrix(j, compose(inverse(gt), g)).trace();
                char_res = std::max(char_res, std::abs(off - chi));
            }
        }
        running += (2.0 * j + 1.0) * term;
        report.partial_sums.push_back(running);
    }
    report.character_residual = char_res;
    return report;
}

} // namespace nilie
