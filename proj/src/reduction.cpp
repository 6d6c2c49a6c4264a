#include "nilie/reduction.hpp"

#include <algorithm>

#include <json.hpp>

#include "nilie/wigner.hpp"

namespace nilie {

HamiltonianSpec HamiltonianSpec::from_json(const std::string& text) {
    auto doc = nlohmann::json::parse(text);
    HamiltonianSpec s;
    const auto& m = doc.at("cAB");
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) s.cAB(r, c) = m.at(r).at(c).get<double>();
    if (doc.contains("cA"))
        for (int r = 0; r < 3; ++r) s.cA(r) = doc.at("cA").at(r).get<double>();
    s.require_symmetric();
    return s;
}

std::string HamiltonianSpec::to_json() const {
    nlohmann::json doc;
    doc["cAB"] = {{cAB(0, 0), cAB(0, 1), cAB(0, 2)},
                  {cAB(1, 0), cAB(1, 1), cAB(1, 2)},
                  {cAB(2, 0), cAB(2, 1), cAB(2, 2)}};
    doc["cA"] = {cA(0), cA(1), cA(2)};
    return doc.dump(2);
}

Eigen::MatrixXcd reduced_operator(const HamiltonianSpec& spec, OrbitLabel j) {
    spec.require_symmetric();
    const int d = 2 * j.j + 1;
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(d, d);
    std::array<Eigen::MatrixXcd, 3> ell;
    for (int a = 0; a < 3; ++a) ell[a] = ell_matrix(a + 1, j);
    for (int A = 0; A < 3; ++A) {
        for (int B = 0; B < 3; ++B)
            if (spec.cAB(A, B) != 0.0) H += spec.cAB(A, B) * ell[A] * ell[B];
        if (spec.cA(A) != 0.0) H += spec.cA(A) * ell[A];
    }
    return H;
}

ReducedSpectrum reduced_spectrum(const HamiltonianSpec& spec, OrbitLabel j) {
    if (j.j > 20) throw std::invalid_argument("reduced_spectrum: j is capped at 20");
    const int d = 2 * j.j + 1;
    const Eigen::MatrixXcd H = reduced_operator(spec, j);
    const Eigen::MatrixXcd G = gram_closed_form(j);
    ReducedSpectrum out;
    out.hermiticity_defect = (G * H - H.adjoint() * G).cwiseAbs().maxCoeff();

    // G is diagonal positive; transform to the metric-orthonormal basis.
    Eigen::VectorXd s(d), si(d);
    for (int k = 0; k < d; ++k) {
        s[k] = std::sqrt(G(k, k).real());
        si[k] = 1.0 / s[k];
    }
    const Eigen::MatrixXcd Hp = s.asDiagonal() * H * si.asDiagonal();

    std::vector<std::pair<double, Eigen::VectorXcd>> pairs;
    if (out.hermiticity_defect < 1e-9 * std::max(1.0, H.cwiseAbs().maxCoeff())) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Hp);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("reduced_spectrum: eigen-solver failed");
        for (int k = 0; k < d; ++k)
            pairs.emplace_back(es.eigenvalues()[k], si.asDiagonal() * es.eigenvectors().col(k));
    } else {
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Hp);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("reduced_spectrum: eigen-solver failed");
        for (int k = 0; k < d; ++k) {
            out.max_imag_energy = std::max(out.max_imag_energy, std::abs(es.eigenvalues()[k].imag()));
            pairs.emplace_back(es.eigenvalues()[k].real(), si.asDiagonal() * es.eigenvectors().col(k));
        }
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [e, v] : pairs) {
        const cplx vGv = (v.adjoint() * G * v)(0);
        const double norm = std::sqrt(vGv.real());
        out.solutions.push_back(ReducedSolution{j.j, e, QFunction(j, v / norm)});
    }
    return out;
}

namespace {

// eta_a from the three coordinate partials at a point (coefficients as in the
// right-invariant field display).
std::array<cplx, 3> eta_all_from_partials(const GroupElement& g, cplx fphi, cplx ftheta,
                                          cplx fpsi) {
    const double ct = 1.0 / std::tan(g.theta), is = 1.0 / std::sin(g.theta);
    const double cp = std::cos(g.psi), sp = std::sin(g.psi);
    return {-cp * is * fphi + sp * ftheta + cp * ct * fpsi,
            -sp * is * fphi - cp * ftheta + sp * ct * fpsi, -fpsi};
}

// fourth-order central differences: the nested application keeps the
// truncation below the 1e-6 spectrum gate at j = 3
std::array<cplx, 3> partials_fd(const GroupField& F, const GroupElement& g, double h) {
    const auto d1 = [&](auto shift) {
        GroupElement p2 = g, p1 = g, m1 = g, m2 = g;
        shift(p2, 2.0 * h);
        shift(p1, h);
        shift(m1, -h);
        shift(m2, -2.0 * h);
        return (-F(p2) + 8.0 * F(p1) - 8.0 * F(m1) + F(m2)) / (12.0 * h);
    };
    return {d1([](GroupElement& e, double d) { e.phi += d; }),
            d1([](GroupElement& e, double d) { e.theta += d; }),
            d1([](GroupElement& e, double d) { e.psi += d; })};
}

std::array<cplx, 3> eta_all(const GroupField& F, const GroupElement& g, double h) {
    const auto p = partials_fd(F, g, h);
    return eta_all_from_partials(g, p[0], p[1], p[2]);
}

} // namespace

WignerBasisSpectrum wigner_basis_spectrum(const HamiltonianSpec& spec, int j, int n_theta,
                                          int n_angle, double fd_step) {
    spec.require_symmetric();
    if (j < 1) throw std::invalid_argument("wigner_basis_spectrum: j must be positive");
    if (n_angle <= 0) n_angle = 4 * j + 4;
    const int d = 2 * j + 1, D = d * d;
    const double h = fd_step;

    // Projection grid: Gauss-Legendre in theta itself (the integrands are
    // entire in theta), periodic trapezoid in phi and psi.
    const auto glt = gauss_legendre(n_theta);
    const auto ang = periodic_trapezoid(n_angle);
    std::vector<GroupElement> nodes;
    std::vector<double> weights;
    for (int it = 0; it < n_theta; ++it) {
        const double theta = pi * (glt.nodes[it] + 1.0) / 2.0;
        const double wt = glt.weights[it] * pi / 2.0 * std::sin(theta) / 2.0;
        for (int ip = 0; ip < n_angle; ++ip)
            for (int is = 0; is < n_angle; ++is) {
                nodes.push_back(GroupElement{ang.nodes[ip], theta, ang.nodes[is]});
                weights.push_back(wt * (ang.weights[ip] / two_pi) * (ang.weights[is] / two_pi));
            }
    }
    const std::size_t N = nodes.size();

    const std::array<bool, 3> need_quad = {spec.cAB.row(0).cwiseAbs().sum() != 0.0,
                                           spec.cAB.row(1).cwiseAbs().sum() != 0.0,
                                           spec.cAB.row(2).cwiseAbs().sum() != 0.0};

    // H F at a point: linear part from one partial stencil; quadratic part
    // from the partial stencils of eta_B F (shared across A).
    const auto apply_H = [&](const GroupField& F, const GroupElement& g) {
        cplx acc = 0.0;
        if (spec.cA.cwiseAbs().sum() != 0.0) {
            const auto e = eta_all(F, g, h);
            for (int A = 0; A < 3; ++A) acc += spec.cA(A) * e[A];
        }
        for (int B = 0; B < 3; ++B) {
            if (!(need_quad[0] || need_quad[1] || need_quad[2])) break;
            bool used = false;
            for (int A = 0; A < 3; ++A) used = used || spec.cAB(A, B) != 0.0;
            if (!used) continue;
            const GroupField GB = [&](const GroupElement& y) { return eta_all(F, y, h)[B]; };
            const auto eAB = eta_all(GB, g, h); // eta_A (eta_B F) for all A
            for (int A = 0; A < 3; ++A) acc += spec.cAB(A, B) * eAB[A];
        }
        return acc;
    };

    // Row values at every node, then one GEMM for the projection.
    Eigen::MatrixXcd R(N, D);
    for (std::size_t i = 0; i < N; ++i)
        for (int mp = -j; mp <= j; ++mp)
            for (int np = -j; np <= j; ++np)
                R(i, (mp + j) * d + (np + j)) = wigner_D(WignerIndex(j, mp, np), nodes[i]);

    Eigen::MatrixXcd HF(N, D);
    for (int m = -j; m <= j; ++m)
        for (int n = -j; n <= j; ++n) {
            const int col = (m + j) * d + (n + j);
            const GroupField F = [&](const GroupElement& g) {
                return wigner_D(WignerIndex(j, m, n), g);
            };
            for (std::size_t i = 0; i < N; ++i) HF(i, col) = weights[i] * apply_H(F, nodes[i]);
        }
    const Eigen::MatrixXcd M = double(d) * R.adjoint() * HF;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("wigner_basis_spectrum: eigen-solver failed");
    WignerBasisSpectrum out;
    for (int k = 0; k < D; ++k) {
        out.energies.push_back(es.eigenvalues()[k].real());
        out.max_imag = std::max(out.max_imag, std::abs(es.eigenvalues()[k].imag()));
    }
    std::sort(out.energies.begin(), out.energies.end());
    return out;
}

cplx reconstruct_solution(const QFunction& psi, cplx q, const GroupElement& g,
                          const QPlaneGrid& grid) {
    if (grid.j != psi.j) throw std::invalid_argument("reconstruct_solution: grid/psi mismatch");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < grid.q_nodes.size(); ++i)
        acc += psi.evaluate(grid.q_nodes[i]) *
               kernel_display(psi.j, q, std::conj(grid.q_nodes[i]), g.phi, g.theta, g.psi) *
               grid.weights[i];
    return acc;
}

cplx reconstruct_solution_factorized(const QFunction& psi, cplx q, const GroupElement& g) {
    const auto f = factor_kernel(q, g, OrbitLabel(psi.j));
    return f.U * psi.evaluate(f.q_moved);
}

double casimir_eigen_residual(const QFunction& psi, cplx q, const GroupElement& g,
                              const QPlaneGrid& grid, double h) {
    const GroupField F = [&](const GroupElement& y) {
        return reconstruct_solution(psi, q, y, grid);
    };
    cplx acc = 0.0;
    for (int a = 1; a <= 3; ++a) {
        const GroupField xaF = [&](const GroupElement& y) { return left_field_apply(a, F, y, h); };
        acc += -left_field_apply(a, xaF, g, h); // K(-i xi) = -sum_a xi_a xi_a
    }
    const double jj = double(psi.j) * (psi.j + 1);
    return std::abs(acc - jj * F(g));
}

double coherence_criterion(OrbitLabel j, cplx q, const GroupElement& g) {
    return std::abs(factor_kernel(q, g, j).U);
}

} // namespace nilie
