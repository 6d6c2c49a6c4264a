#include "nilie/verify.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <random>

#include <json.hpp>

#include "nilie/coherent.hpp"
#include "nilie/lambda_rep.hpp"
#include "nilie/lie_core.hpp"
#include "nilie/numeric.hpp"
#include "nilie/reduction.hpp"
#include "nilie/so3.hpp"
#include "nilie/wigner.hpp"

namespace nilie {

namespace {

struct CheckDef {
    std::string suite;
    std::string name;
    std::map<std::string, std::string> params;
    double tolerance;
    // returns the residual; rng is seeded from (seed, name)
    std::function<double(const VerifyOptions&, std::mt19937_64&)> run;
};

GroupElement random_element(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> full(0.0, two_pi), mid(0.25, pi - 0.25);
    return GroupElement{full(rng), mid(rng), full(rng)};
}

SpherePoint random_sphere_point(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> full(0.0, two_pi), mid(0.25, pi - 0.25);
    return SpherePoint{full(rng), mid(rng)};
}

cplx random_q(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(-2.5, 2.5), im(-0.6, 0.6);
    return cplx(re(rng), im(rng));
}

double su2_distance_up_to_sign(const SU2Pair& a, const SU2Pair& b) {
    const double d1 = std::abs(a.alpha - b.alpha) + std::abs(a.beta - b.beta);
    const double d2 = std::abs(a.alpha + b.alpha) + std::abs(a.beta + b.beta);
    return std::min(d1, d2);
}

// ---------------------------------------------------------------- lie checks

double check_poisson_cyclic(const VerifyOptions&, std::mt19937_64& rng) {
    const auto sc = StructureConstants::so3();
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        Covector f(3);
        f << U(rng), U(rng), U(rng);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                Eigen::VectorXd ga = Eigen::VectorXd::Zero(3), gb = Eigen::VectorXd::Zero(3);
                ga[a] = 1.0;
                gb[b] = 1.0;
                double want = 0.0;
                for (int c = 0; c < 3; ++c) want += sc.at(a, b, c) * f[c];
                worst = std::max(worst, std::abs(poisson_lie_bracket(sc, ga, gb, f) - want));
            }
        // Casimir commutes with coordinates: grad K = 2f
        Eigen::VectorXd gK = 2.0 * f, g2 = Eigen::VectorXd::Zero(3);
        g2[1] = 1.0;
        worst = std::max(worst, std::abs(poisson_lie_bracket(sc, gK, g2, f)));
    }
    return worst;
}

double check_casimir_coadjoint(const VerifyOptions&, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const GroupElement g = random_element(rng);
        Covector f(3);
        f << U(rng), U(rng), U(rng);
        const Covector moved = coadjoint_apply(adjoint_matrix(g), f);
        worst = std::max(worst, std::abs(casimir_value(moved) - casimir_value(f)));
    }
    return worst;
}

double check_validate_structure(const VerifyOptions&, std::mt19937_64& rng) {
    const auto so3 = validate_structure(StructureConstants::so3());
    if (!so3.pass() || so3.antisymmetry_residual != 0.0 || so3.jacobi_residual != 0.0) return 1.0;
    if (!validate_structure(StructureConstants(3)).pass()) return 1.0; // abelian
    std::uniform_int_distribution<int> idx(0, 2);
    std::uniform_real_distribution<double> mag(0.1, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        StructureConstants sc = StructureConstants::so3();
        // break either antisymmetry or the Jacobi identity
        const int A = idx(rng), B = idx(rng), C = idx(rng);
        sc.at(A, B, C) += mag(rng);
        if (validate_structure(sc).pass()) return 1.0;
    }
    return 0.0;
}

// ----------------------------------------------------------- geometry checks

double check_su2_homomorphism(const VerifyOptions&, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const GroupElement g1 = random_element(rng), g2 = random_element(rng);
        worst = std::max(worst, su2_distance_up_to_sign(lift(compose(g1, g2)),
                                                        su2_mul(lift(g1), lift(g2))));
    }
    return worst;
}

double check_left_right_commute(const VerifyOptions&, std::mt19937_64& rng) {
    const GroupField F = [](const GroupElement& g) {
        return cplx(std::sin(g.phi) * std::cos(g.theta) + 0.2 * std::sin(g.psi),
                    std::cos(2.0 * g.psi) + 0.3 * std::sin(g.theta) * std::cos(g.phi));
    };
    const double h = 1e-4;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const GroupElement g = random_element(rng);
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b) {
                const GroupField ebF = [&](const GroupElement& y) {
                    return right_field_apply(b, F, y, h);
                };
                const GroupField xaF = [&](const GroupElement& y) {
                    return left_field_apply(a, F, y, h);
                };
                const cplx comm = left_field_apply(a, ebF, g, h) - right_field_apply(b, xaF, g, h);
                worst = std::max(worst, std::abs(comm));
            }
    }
    return worst;
}

double check_haar_quadrature(const VerifyOptions&, std::mt19937_64&) {
    const QuadratureGrid grid = haar_grid(64, 64, 64);
    double mass = 0.0;
    for (double w : grid.weights) mass += w;
    double cos_int = 0.0, dvig = 0.0;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        cos_int += std::cos(grid.nodes[i].theta) * grid.weights[i];
        const double v = std::abs(wigner_D(WignerIndex(1, 0, 0), grid.nodes[i]));
        dvig += v * v * grid.weights[i];
    }
    return std::max({std::abs(mass - 1.0), std::abs(cos_int), std::abs(dvig - 1.0 / 3.0)});
}

double check_sphere_transitivity(const VerifyOptions&, std::mt19937_64& rng) {
    const SpherePoint x0{0.0, pi / 2.0};
    double worst = 0.0;
    std::uniform_real_distribution<double> full(0.0, two_pi), mid(0.1, pi - 0.1);
    for (int trial = 0; trial < 40; ++trial) {
        const SpherePoint target{full(rng), mid(rng)};
        const GroupElement g = compose(inverse(section(x0)), section(target));
        const SpherePoint got = sphere_action(x0, g);
        const Eigen::Vector3d a(std::sin(got.theta) * std::cos(got.phi),
                                std::sin(got.theta) * std::sin(got.phi), std::cos(got.theta));
        const Eigen::Vector3d b(std::sin(target.theta) * std::cos(target.phi),
                                std::sin(target.theta) * std::sin(target.phi),
                                std::cos(target.theta));
        worst = std::max(worst, (a - b).norm());
    }
    return worst;
}

// ------------------------------------------------------------- lambda checks

double check_ell_commutators(const VerifyOptions& opts, std::mt19937_64&) {
    double worst = 0.0;
    for (int j = 1; j <= std::max(5, opts.jmax); ++j) {
        const OrbitLabel L(j);
        const auto l1 = ell_matrix(1, L), l2 = ell_matrix(2, L), l3 = ell_matrix(3, L);
        worst = std::max(worst, ((l1 * l2 - l2 * l1) - l3).cwiseAbs().maxCoeff());
        worst = std::max(worst, ((l2 * l3 - l3 * l2) - l1).cwiseAbs().maxCoeff());
        worst = std::max(worst, ((l3 * l1 - l1 * l3) - l2).cwiseAbs().maxCoeff());
    }
    return worst;
}

double check_casimir_identity(const VerifyOptions&, std::mt19937_64&) {
    double worst = 0.0;
    for (int j = 1; j <= 10; ++j) {
        const int d = 2 * j + 1;
        worst = std::max(worst, (casimir_lambda(OrbitLabel(j)) -
                                 double(j) * (j + 1.0) * Eigen::MatrixXcd::Identity(d, d))
                                    .cwiseAbs()
                                    .maxCoeff());
    }
    return worst;
}

double check_self_adjointness(const VerifyOptions& opts, std::mt19937_64&) {
    double worst = 0.0;
    for (int j = 1; j <= 5; ++j) {
        const auto G = q_plane_grid(OrbitLabel(j), std::max(48, opts.grid), std::max(48, opts.grid)).gram();
        for (int a = 1; a <= 3; ++a) {
            const Eigen::MatrixXcd A = cplx(0, -1) * ell_matrix(a, OrbitLabel(j));
            worst = std::max(worst, (G * A - A.adjoint() * G).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

double check_kernel_condD(const VerifyOptions& opts, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int j = 1; j <= std::min(3, opts.jmax); ++j) {
        const QPlaneGrid grid = q_plane_grid(OrbitLabel(j), 40, 40);
        for (int s = 0; s < 20; ++s) {
            const GroupElement g1 = random_element(rng), g2 = random_element(rng);
            const cplx q = random_q(rng), qb = random_q(rng);
            const cplx conv = grid.integrate([&](cplx qpp) {
                return kernel_D(q, std::conj(qpp), g1, j) * kernel_D(qpp, qb, g2, j);
            });
            worst = std::max(worst, std::abs(conv - kernel_D(q, qb, compose(g1, g2), j)));
            worst = std::max(worst, std::abs(kernel_D(q, std::conj(qb), g1, j) -
                                             std::conj(kernel_D(qb, std::conj(q), inverse(g1), j))));
            worst = std::max(worst, std::abs(kernel_D(q, qb, identity(), j) - delta_j(q, qb, j)));
        }
    }
    return worst;
}

double check_kernel_pde(int j, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int s = 0; s < 15; ++s)
        worst = std::max(
            worst, kernel_pde_residual(random_q(rng), random_q(rng), random_element(rng), j).max());
    return worst;
}

double check_factor_cocycle(const VerifyOptions&, std::mt19937_64& rng) {
    // U(q, g2 g1) = U(q, g1) U(q o g1^{-1}, g2): the kernel action q o g^{-1}
    // composes as a left action, fixing the product order.
    double worst = 0.0;
    for (int j = 1; j <= 2; ++j) {
        const OrbitLabel L(j);
        for (int s = 0; s < 15; ++s) {
            const GroupElement g1 = random_element(rng), g2 = random_element(rng);
            const cplx q = random_q(rng);
            const auto whole = factor_kernel(q, compose(g2, g1), L);
            const auto u1 = factor_kernel(q, g1, L);
            const auto u2 = factor_kernel(q_action(q, g1), g2, L);
            worst = std::max(worst, std::abs(whole.U - u1.U * u2.U));
            worst = std::max(worst, factor_kernel_probe_spread(q, g1, L));
        }
    }
    return worst;
}

double check_completeness(const VerifyOptions& opts, std::mt19937_64&) {
    const auto rep = completeness_check(std::min(2, opts.jmax), 2, opts.seed, 16, 32);
    double worst = std::max(rep.max_orthogonality_residual(), rep.character_residual);
    for (std::size_t k = 1; k < rep.partial_sums.size(); ++k)
        if (rep.partial_sums[k] <= rep.partial_sums[k - 1]) worst = std::max(worst, 1.0);
    return worst;
}

// ------------------------------------------------------------- wigner checks

double check_wigner_unitarity(const VerifyOptions&, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const GroupElement g = random_element(rng);
        for (int j = 1; j <= 5; ++j) {
            Eigen::MatrixXcd D(2 * j + 1, 2 * j + 1);
            for (int m = -j; m <= j; ++m)
                for (int n = -j; n <= j; ++n) D(m + j, n + j) = wigner_D(WignerIndex(j, m, n), g);
            worst = std::max(worst, (D * D.adjoint() -
                                     Eigen::MatrixXcd::Identity(2 * j + 1, 2 * j + 1))
                                        .cwiseAbs()
                                        .maxCoeff());
        }
    }
    return worst;
}

double check_wigner_orthogonality(const VerifyOptions&, std::mt19937_64&) {
    // Full Gram of all (j,m,n), j <= 3, on a (64,64,64) grid, batched.
    const QuadratureGrid grid = haar_grid(64, 64, 64);
    struct Idx {
        int j, m, n;
    };
    std::vector<Idx> idx;
    for (int j = 1; j <= 3; ++j)
        for (int m = -j; m <= j; ++m)
            for (int n = -j; n <= j; ++n) idx.push_back({j, m, n});
    const int F = int(idx.size());
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(F, F);
    const std::size_t batch = 8192;
    Eigen::MatrixXcd vals(batch, F);
    Eigen::VectorXd w(batch);
    std::size_t fill = 0;
    auto flush = [&](std::size_t count) {
        if (count == 0) return;
        const auto V = vals.topRows(count);
        G.noalias() += V.adjoint() * (w.head(count).asDiagonal() * V);
    };
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        for (int f = 0; f < F; ++f)
            vals(fill, f) = wigner_D(WignerIndex(idx[f].j, idx[f].m, idx[f].n), grid.nodes[i]);
        w[fill] = grid.weights[i];
        if (++fill == batch) {
            flush(fill);
            fill = 0;
        }
    }
    flush(fill);
    double worst = 0.0;
    for (int a = 0; a < F; ++a)
        for (int b = 0; b < F; ++b) {
            const double want = (a == b) ? 1.0 / (2.0 * idx[a].j + 1.0) : 0.0;
            worst = std::max(worst, std::abs(G(a, b) - want));
        }
    return worst;
}

double check_wigner_homomorphism(const VerifyOptions& opts, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int j = 1; j <= std::min(3, opts.jmax); ++j)
        for (int trial = 0; trial < 20; ++trial) {
            const GroupElement g1 = random_element(rng), g2 = random_element(rng);
            const Eigen::MatrixXcd lhs = wigner_matrix(j, compose(g1, g2));
            const Eigen::MatrixXcd rhs = wigner_matrix(j, g1) * wigner_matrix(j, g2);
            worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
        }
    return worst;
}

double check_small_d_symmetry(const VerifyOptions&, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> th(0.0, pi);
    double worst = 0.0;
    for (int j = 1; j <= 5; ++j)
        for (int m = -j; m <= j; ++m)
            for (int n = -j; n <= j; ++n) {
                const double theta = th(rng);
                const int sign = ((m - n) % 2 + 2) % 2 == 0 ? 1 : -1;
                const double direct = small_d(WignerIndex(j, m, n), theta);
                const double swapped = sign * small_d(WignerIndex(j, n, m), theta);
                worst = std::max(worst, std::abs(direct - swapped));
            }
    return worst;
}

// ------------------------------------------------------------- bridge checks

double check_cs_norm(const VerifyOptions& opts, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-2.0, 2.0);
    double worst = 0.0;
    for (int j = 1; j <= std::max(3, opts.jmax); ++j)
        for (int s = 0; s < 20; ++s) {
            const auto u = cs_coeffs(CSLabel(j, cplx(U(rng), U(rng))));
            worst = std::max(worst, std::abs(u.squaredNorm() - 1.0));
        }
    return worst;
}

double check_rel3_pointwise(const VerifyOptions&, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int j = 1; j <= 3; ++j)
        for (int s = 0; s < 20; ++s) {
            const NIStateLabel label(j, random_q(rng));
            const auto n2c = ni_to_cs(label);
            const SpherePoint x = random_sphere_point(rng);
            worst = std::max(worst, std::abs(ni_state(label, x) -
                                             n2c.scale * cs_wavefunction(n2c.cs, x)));
        }
    return worst;
}

double check_r0_phase(const VerifyOptions&, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.5, 1.5);
    double worst = 0.0;
    for (int j = 1; j <= 3; ++j)
        for (int s = 0; s < 17; ++s) {
            const auto cp = cs_phase(CSLabel(j, cplx(U(rng), U(rng))), random_element(rng));
            worst = std::max({worst, cp.modulus_defect, cp.probe_spread});
        }
    return worst;
}

double check_r1_transport(const VerifyOptions&, std::mt19937_64& rng) {
    double worst = 0.0;
    bool saw_nonunit = false;
    for (int j = 1; j <= 3; ++j)
        for (int s = 0; s < 17; ++s) {
            const NIStateLabel label(j, random_q(rng));
            const GroupElement g = random_element(rng);
            const auto tr = ni_transport(label, g);
            worst = std::max(worst, tr.pointwise_residual);
            worst = std::max(worst, rel4_regenerate_residual(label));
            if (std::abs(std::abs(tr.factor) - 1.0) > 1e-3) saw_nonunit = true;
        }
    if (!saw_nonunit) worst = std::max(worst, 1.0); // the factor must not be a pure phase
    return worst;
}

double check_rel_convergence(const VerifyOptions&, std::mt19937_64& rng) {
    // rel1 and rel2 reconstruction errors must not grow under grid refinement
    // and must reach the target at the finest level.
    const int j = 2;
    const GroupElement g = random_element(rng);
    const SpherePoint x = random_sphere_point(rng);
    std::vector<double> e1, e2;
    for (int n : {8, 12, 16}) {
        const QPlaneGrid grid = q_plane_grid(OrbitLabel(j), n, n);
        const Eigen::MatrixXcd got = rel1_reconstruct_matrix(j, g, grid);
        double worst1 = 0.0;
        for (int m = -j; m <= j; ++m)
            for (int nn = -j; nn <= j; ++nn)
                worst1 = std::max(worst1, std::abs(got(m + j, nn + j) -
                                                   wigner_D(WignerIndex(j, m, nn), g)));
        e1.push_back(worst1);
        double worst2 = 0.0;
        for (int m = -j; m <= j; ++m) {
            const cplx got = grid.integrate([&](cplx q) {
                return overlap_qm(j, q, m) * ni_state(NIStateLabel(j, q), x);
            });
            worst2 = std::max(worst2, std::abs(got - spherical_Y(j, m, x)));
        }
        e2.push_back(worst2);
    }
    double worst = std::max(e1.back() > 1e-6 ? 1.0 : 0.0, e2.back() > 1e-6 ? 1.0 : 0.0);
    worst = std::max({worst, e1[1] - e1[0], e1[2] - e1[1], e2[1] - e2[0], e2[2] - e2[1]});
    return std::max(worst, 0.0);
}

// ---------------------------------------------------------- reduction checks

std::vector<HamiltonianSpec> reduction_specs(std::mt19937_64& rng, int n_random) {
    std::vector<HamiltonianSpec> specs;
    specs.push_back(HamiltonianSpec::symmetric_top(1.0, 2.0));
    specs.push_back(HamiltonianSpec::symmetric_top(0.5, 0.5));
    std::normal_distribution<double> N(0.0, 1.0);
    for (int s = 0; s < n_random; ++s) {
        Eigen::Matrix3d A;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) A(r, c) = N(rng);
        HamiltonianSpec spec;
        spec.cAB = -(A * A.transpose() + 0.3 * Eigen::Matrix3d::Identity());
        specs.push_back(spec);
    }
    return specs;
}

double spectrum_vs_oracle(const HamiltonianSpec& spec, int j) {
    const auto red = reduced_spectrum(spec, OrbitLabel(j));
    const auto ora = wigner_basis_spectrum(spec, j);
    std::vector<double> expect;
    for (const auto& s : red.solutions)
        for (int k = 0; k < 2 * j + 1; ++k) expect.push_back(s.energy);
    std::sort(expect.begin(), expect.end());
    double worst = ora.max_imag;
    for (std::size_t k = 0; k < expect.size(); ++k)
        worst = std::max(worst, std::abs(expect[k] - ora.energies[k]));
    return worst;
}

double check_spectrum_oracle(const VerifyOptions& opts, std::mt19937_64& rng) {
    double worst = 0.0;
    const auto specs = reduction_specs(rng, 2);
    for (const auto& spec : specs)
        for (int j = 1; j <= std::min(3, opts.jmax); ++j)
            worst = std::max(worst, spectrum_vs_oracle(spec, j));
    return worst;
}

double check_reconstruction_linearity(const VerifyOptions&, std::mt19937_64& rng) {
    const int j = 2;
    const OrbitLabel L(j);
    const QPlaneGrid grid = q_plane_grid(L, 32, 32);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < 5; ++s) {
        Eigen::VectorXcd c1(2 * j + 1), c2(2 * j + 1);
        for (int k = 0; k < 2 * j + 1; ++k) {
            c1[k] = cplx(U(rng), U(rng));
            c2[k] = cplx(U(rng), U(rng));
        }
        const cplx a(U(rng), U(rng)), b(U(rng), U(rng));
        const QFunction p1(L, c1), p2(L, c2), pc(L, a * c1 + b * c2);
        const cplx q = random_q(rng);
        const GroupElement g = random_element(rng);
        const cplx lhs = reconstruct_solution(pc, q, g, grid);
        const cplx rhs = a * reconstruct_solution(p1, q, g, grid) +
                         b * reconstruct_solution(p2, q, g, grid);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double check_sol_g_routes(const VerifyOptions&, std::mt19937_64& rng) {
    double worst = 0.0;
    for (int j = 1; j <= 2; ++j) {
        const OrbitLabel L(j);
        const QPlaneGrid grid = q_plane_grid(L, 40, 40);
        const auto red = reduced_spectrum(HamiltonianSpec::symmetric_top(1.0, 2.0), L);
        for (int s = 0; s < 10; ++s) {
            const auto& psi = red.solutions[s % red.solutions.size()].psi;
            const cplx q = random_q(rng);
            const GroupElement g = random_element(rng);
            worst = std::max(worst, std::abs(reconstruct_solution(psi, q, g, grid) -
                                             reconstruct_solution_factorized(psi, q, g)));
        }
    }
    return worst;
}

double check_energy_reality(const VerifyOptions&, std::mt19937_64& rng) {
    std::normal_distribution<double> N(0.0, 1.0);
    double worst = 0.0;
    for (int s = 0; s < 5; ++s) {
        HamiltonianSpec spec;
        Eigen::Matrix3d A;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) A(r, c) = N(rng);
        spec.cAB = -0.5 * (A + A.transpose()); // real symmetric, indefinite allowed
        for (int j = 1; j <= 3; ++j) {
            const auto red = reduced_spectrum(spec, OrbitLabel(j));
            worst = std::max({worst, red.hermiticity_defect, red.max_imag_energy});
        }
    }
    return worst;
}

// ----------------------------------------------------------------- registry

std::vector<CheckDef> registry() {
    std::vector<CheckDef> defs;
    auto add = [&](std::string suite, std::string name,
                   std::map<std::string, std::string> params, double tol, auto fn) {
        defs.push_back(CheckDef{std::move(suite), std::move(name), std::move(params), tol,
                                std::function<double(const VerifyOptions&, std::mt19937_64&)>(fn)});
    };

    add("lie", "lie.poisson_cyclic", {{"trials", "20"}}, 1e-12, check_poisson_cyclic);
    add("lie", "lie.casimir_coadjoint_invariance", {{"trials", "100"}}, 1e-12,
        check_casimir_coadjoint);
    add("lie", "lie.validate_structure_randomized", {{"perturbations", "20"}}, 0.5,
        check_validate_structure);

    add("geometry", "geometry.su2_homomorphism", {{"trials", "100"}}, 1e-12,
        check_su2_homomorphism);
    add("geometry", "geometry.left_right_commute", {{"fd_step", "1e-4"}}, 1e-4,
        check_left_right_commute);
    add("geometry", "geometry.haar_quadrature", {{"grid", "64x64x64"}}, 1e-10,
        check_haar_quadrature);
    add("geometry", "geometry.sphere_transitivity", {{"targets", "40"}}, 1e-10,
        check_sphere_transitivity);

    add("lambda", "lambda.ell_commutators", {{"jmax", "5"}}, 1e-12, check_ell_commutators);
    add("lambda", "lambda.casimir_identity", {{"jmax", "10"}}, 1e-12, check_casimir_identity);
    add("lambda", "lambda.self_adjointness", {{"jmax", "5"}}, 1e-8, check_self_adjointness);
    add("lambda", "lambda.kernel_condD", {{"jmax", "3"}, {"samples", "20"}}, 1e-7,
        check_kernel_condD);
    add("lambda", "lambda.kernel_pde_j1", {{"j", "1"}}, 1e-5,
        [](const VerifyOptions&, std::mt19937_64& rng) { return check_kernel_pde(1, rng); });
    add("lambda", "lambda.kernel_pde_j3", {{"j", "3"}}, 1e-4,
        [](const VerifyOptions&, std::mt19937_64& rng) { return check_kernel_pde(3, rng); });
    add("lambda", "lambda.factor_cocycle", {{"jmax", "2"}}, 1e-8, check_factor_cocycle);
    add("lambda", "lambda.completeness", {{"jmax", "2"}}, 1e-7, check_completeness);

    add("wigner", "wigner.unitarity", {{"jmax", "5"}, {"trials", "100"}}, 1e-12,
        check_wigner_unitarity);
    add("wigner", "wigner.orthogonality", {{"jmax", "3"}, {"grid", "64x64x64"}}, 1e-10,
        check_wigner_orthogonality);
    add("wigner", "wigner.homomorphism", {{"jmax", "3"}}, 1e-9, check_wigner_homomorphism);
    add("wigner", "wigner.small_d_symmetry", {{"jmax", "5"}}, 0.0, check_small_d_symmetry);

    add("bridge", "bridge.cs_norm", {{"jmax", "3"}}, 1e-14, check_cs_norm);
    add("bridge", "bridge.rel3_pointwise", {{"jmax", "3"}}, 1e-10, check_rel3_pointwise);
    add("bridge", "bridge.r0_phase", {{"jmax", "3"}}, 1e-8, check_r0_phase);
    add("bridge", "bridge.r1_transport", {{"jmax", "3"}}, 1e-9, check_r1_transport);
    add("bridge", "bridge.rel_convergence", {{"j", "2"}}, 1e-9, check_rel_convergence);

    add("reduction", "reduction.spectrum_oracle", {{"jmax", "3"}, {"specs", "4"}}, 1e-6,
        check_spectrum_oracle);
    add("reduction", "reduction.reconstruction_linearity", {{"j", "2"}}, 1e-12,
        check_reconstruction_linearity);
    add("reduction", "reduction.sol_g_routes", {{"jmax", "2"}}, 1e-7, check_sol_g_routes);
    add("reduction", "reduction.energy_reality", {{"jmax", "3"}}, 1e-10, check_energy_reality);

    return defs;
}

} // namespace

std::vector<std::string> verify_suites() {
    return {"lie", "geometry", "lambda", "wigner", "bridge", "reduction", "all"};
}

bool is_verify_suite(const std::string& name) {
    for (const auto& s : verify_suites())
        if (s == name) return true;
    return false;
}

std::vector<VerificationReport> run_suite(const std::string& suite, const VerifyOptions& opts) {
    if (!is_verify_suite(suite)) throw std::invalid_argument("unknown suite: " + suite);
    std::vector<CheckDef> defs;
    for (auto& d : registry())
        if (suite == "all" || d.suite == suite) defs.push_back(std::move(d));

    std::vector<std::future<VerificationReport>> futures;
    futures.reserve(defs.size());
    for (const auto& d : defs)
        futures.push_back(std::async(std::launch::async, [d, &opts]() {
            const auto t0 = std::chrono::steady_clock::now();
            std::mt19937_64 rng(seed_mix(opts.seed, d.name));
            VerificationReport r;
            r.check = d.name;
            r.parameters = d.params;
            r.tolerance = d.tolerance * opts.tol_scale;
            r.residual = d.run(opts, rng);
            r.pass = r.residual <= r.tolerance;
            r.runtime_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
            return r;
        }));

    std::vector<VerificationReport> reports;
    reports.reserve(futures.size());
    for (auto& f : futures) reports.push_back(f.get());
    std::sort(reports.begin(), reports.end(),
              [](const auto& a, const auto& b) { return a.check < b.check; });
    return reports;
}

std::string report_to_json(const std::string& suite, const VerifyOptions& opts,
                           const std::vector<VerificationReport>& reports, bool include_timings) {
    nlohmann::json doc;
    doc["suite"] = suite;
    doc["seed"] = opts.seed;
    doc["tol_scale"] = opts.tol_scale;
    doc["all_pass"] = all_pass(reports);
    auto checks = nlohmann::json::array();
    for (const auto& r : reports) {
        nlohmann::json c;
        c["check"] = r.check;
        c["parameters"] = r.parameters;
        c["residual"] = r.residual;
        c["tolerance"] = r.tolerance;
        c["pass"] = r.pass;
        if (include_timings) c["runtime_ms"] = r.runtime_ms;
        checks.push_back(c);
    }
    doc["checks"] = checks;
    return doc.dump(2) + "\n";
}

bool all_pass(const std::vector<VerificationReport>& reports) {
    for (const auto& r : reports)
        if (!r.pass) return false;
    return true;
}

} // namespace nilie
