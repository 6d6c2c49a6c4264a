#include <doctest.h>

#include <random>

#include "nilie/reduction.hpp"
#include "nilie/wigner.hpp"

using namespace nilie;

namespace {

GroupElement random_element(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> full(0.0, two_pi), mid(0.25, pi - 0.25);
    return GroupElement{full(rng), mid(rng), full(rng)};
}

cplx random_q(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> re(-2.0, 2.0), im(-0.5, 0.5);
    return cplx(re(rng), im(rng));
}

double oracle_multiset_residual(const HamiltonianSpec& spec, int j) {
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

} // namespace

TEST_CASE("spherical top: reduced operator is a multiple of the identity") {
    // c^{AB} = -1/2 delta: H = -(1/2) sum ell_a^2 = j(j+1)/2 * I
    const auto spec = HamiltonianSpec::symmetric_top(0.5, 0.5);
    for (int j = 1; j <= 3; ++j) {
        const int d = 2 * j + 1;
        const auto H = reduced_operator(spec, OrbitLabel(j));
        CHECK((H - 0.5 * double(j) * (j + 1.0) * Eigen::MatrixXcd::Identity(d, d))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
}

TEST_CASE("linear term alone is the diagonal derivative matrix") {
    HamiltonianSpec spec;
    spec.cA = Eigen::Vector3d(0.0, 0.0, 0.7);
    const auto H = reduced_operator(spec, OrbitLabel(2));
    for (int n = -2; n <= 2; ++n)
        for (int np = -2; np <= 2; ++np)
            CHECK(std::abs(H(np + 2, n + 2) - (np == n ? 0.7 * cplx(0, -double(n)) : cplx(0))) <
                  1e-15);
}

TEST_CASE("metric self-adjointness of the quadratic part; linear part is anti-self-adjoint") {
    std::mt19937_64 rng(61);
    std::normal_distribution<double> N(0.0, 1.0);
    const Eigen::MatrixXcd G = gram_closed_form(OrbitLabel(2));
    for (int s = 0; s < 10; ++s) {
        HamiltonianSpec spec;
        Eigen::Matrix3d A;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) A(r, c) = N(rng);
        spec.cAB = 0.5 * (A + A.transpose());
        const auto H = reduced_operator(spec, OrbitLabel(2));
        CHECK((G * H - H.adjoint() * G).cwiseAbs().maxCoeff() < 1e-8);

        HamiltonianSpec lin;
        lin.cA = Eigen::Vector3d(N(rng), N(rng), N(rng));
        const auto L = reduced_operator(lin, OrbitLabel(2));
        CHECK((G * L + L.adjoint() * G).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("symmetric top energies: a j(j+1) + (b-a) n^2") {
    const auto spec = HamiltonianSpec::symmetric_top(1.0, 2.0);
    for (int j = 1; j <= 3; ++j) {
        const auto red = reduced_spectrum(spec, OrbitLabel(j));
        std::vector<double> want;
        for (int n = -j; n <= j; ++n) want.push_back(1.0 * j * (j + 1.0) + 1.0 * n * n);
        std::sort(want.begin(), want.end());
        REQUIRE(int(red.solutions.size()) == 2 * j + 1);
        for (std::size_t k = 0; k < want.size(); ++k)
            CHECK(red.solutions[k].energy == doctest::Approx(want[k]).epsilon(1e-12));
        CHECK(red.hermiticity_defect < 1e-12);
    }
    const auto redj1 = reduced_spectrum(spec, OrbitLabel(1));
    CHECK(redj1.solutions[0].energy == doctest::Approx(2.0));
    CHECK(redj1.solutions[1].energy == doctest::Approx(3.0));
    CHECK(redj1.solutions[2].energy == doctest::Approx(3.0));
}

TEST_CASE("eigenvectors are normalized in the carrier metric") {
    const auto spec = HamiltonianSpec::symmetric_top(1.0, 3.0);
    const Eigen::MatrixXcd G = gram_closed_form(OrbitLabel(2));
    for (const auto& s : reduced_spectrum(spec, OrbitLabel(2)).solutions) {
        const cplx n = (s.psi.coeffs.adjoint() * G * s.psi.coeffs)(0);
        CHECK(std::abs(n - 1.0) < 1e-12);
    }
}

TEST_CASE("reduced spectra match the group-side oracle with multiplicity 2j+1") {
    for (int j = 1; j <= 2; ++j)
        CHECK(oracle_multiset_residual(HamiltonianSpec::symmetric_top(1.0, 2.0), j) < 1e-6);
    CHECK(oracle_multiset_residual(HamiltonianSpec::symmetric_top(0.5, 0.5), 2) < 1e-6);

    std::mt19937_64 rng(62);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int s = 0; s < 2; ++s) {
        HamiltonianSpec spec;
        Eigen::Matrix3d A;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) A(r, c) = N(rng);
        spec.cAB = -(A * A.transpose() + 0.3 * Eigen::Matrix3d::Identity());
        CHECK(oracle_multiset_residual(spec, 2) < 1e-6);
    }
}

TEST_CASE("energy reality for real symmetric quadratic coefficients") {
    std::mt19937_64 rng(63);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int s = 0; s < 5; ++s) {
        HamiltonianSpec spec;
        Eigen::Matrix3d A;
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) A(r, c) = N(rng);
        spec.cAB = 0.5 * (A + A.transpose());
        for (int j = 1; j <= 3; ++j) {
            const auto red = reduced_spectrum(spec, OrbitLabel(j));
            CHECK(red.hermiticity_defect < 1e-10);
            CHECK(red.max_imag_energy == 0.0);
        }
    }
}

TEST_CASE("asymmetric cAB is rejected") {
    HamiltonianSpec spec;
    spec.cAB(0, 1) = 1.0;
    CHECK_THROWS_AS(reduced_operator(spec, OrbitLabel(1)), std::invalid_argument);
}

TEST_CASE("reconstruction: reproducing at the identity and linearity") {
    std::mt19937_64 rng(64);
    const OrbitLabel L(2);
    const QPlaneGrid grid = q_plane_grid(L, 40, 40);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int s = 0; s < 5; ++s) {
        Eigen::VectorXcd c1(5), c2(5);
        for (int k = 0; k < 5; ++k) {
            c1[k] = cplx(U(rng), U(rng));
            c2[k] = cplx(U(rng), U(rng));
        }
        const QFunction p1(L, c1), p2(L, c2);
        const cplx q = random_q(rng);
        CHECK(std::abs(reconstruct_solution(p1, q, identity(), grid) - p1.evaluate(q)) < 1e-8);

        const cplx a(U(rng), U(rng)), b(U(rng), U(rng));
        const QFunction pc(L, a * c1 + b * c2);
        const GroupElement g = random_element(rng);
        const cplx lhs = reconstruct_solution(pc, q, g, grid);
        const cplx rhs =
            a * reconstruct_solution(p1, q, g, grid) + b * reconstruct_solution(p2, q, g, grid);
        CHECK(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("quadrature and factorized reconstruction routes agree") {
    std::mt19937_64 rng(65);
    for (int j = 1; j <= 2; ++j) {
        const OrbitLabel L(j);
        const QPlaneGrid grid = q_plane_grid(L, 40, 40);
        const auto red = reduced_spectrum(HamiltonianSpec::symmetric_top(1.0, 2.0), L);
        for (int s = 0; s < 10; ++s) {
            const auto& psi = red.solutions[s % red.solutions.size()].psi;
            const cplx q = random_q(rng);
            const GroupElement g = random_element(rng);
            CHECK(std::abs(reconstruct_solution(psi, q, g, grid) -
                           reconstruct_solution_factorized(psi, q, g)) < 1e-7);
        }
    }
}

TEST_CASE("reconstructed solutions satisfy the group-side equation") {
    std::mt19937_64 rng(66);
    const auto spec = HamiltonianSpec::symmetric_top(1.0, 2.0);
    const double h = 1e-4;
    for (int j = 1; j <= 2; ++j) {
        const OrbitLabel L(j);
        const QPlaneGrid grid = q_plane_grid(L, 40, 40);
        const auto red = reduced_spectrum(spec, L);
        for (int s = 0; s < 3; ++s) {
            const auto& sol = red.solutions[s % red.solutions.size()];
            const cplx q = random_q(rng);
            const GroupElement g = random_element(rng);
            const GroupField F = [&](const GroupElement& y) {
                return reconstruct_solution(sol.psi, q, y, grid);
            };
            cplx HF = 0.0;
            for (int A = 1; A <= 3; ++A)
                for (int B = 1; B <= 3; ++B) {
                    const double c = spec.cAB(A - 1, B - 1);
                    if (c == 0.0) continue;
                    const GroupField inner = [&](const GroupElement& y) {
                        return right_field_apply(B, F, y, h);
                    };
                    HF += c * right_field_apply(A, inner, g, h);
                }
            CHECK(std::abs(HF - sol.energy * F(g)) < 1e-4);
        }
    }
}

TEST_CASE("intertwining: eta through the integral equals ell on the density") {
    std::mt19937_64 rng(67);
    const OrbitLabel L(1);
    const QPlaneGrid grid = q_plane_grid(L, 40, 40);
    const auto red = reduced_spectrum(HamiltonianSpec::symmetric_top(1.0, 2.0), L);
    for (int s = 0; s < 4; ++s) {
        const auto& psi = red.solutions[s % red.solutions.size()].psi;
        const cplx q = random_q(rng);
        const GroupElement g = random_element(rng);
        const GroupField F = [&](const GroupElement& y) {
            return reconstruct_solution(psi, q, y, grid);
        };
        for (int a = 1; a <= 3; ++a) {
            const cplx lhs = right_field_apply(a, F, g);
            const QFunction lpsi(L, ell_matrix(a, L) * psi.coeffs);
            const cplx rhs = reconstruct_solution(lpsi, q, g, grid);
            CHECK(std::abs(lhs - rhs) < 1e-6);
        }
    }
}

TEST_CASE("Casimir eigen-equation on reconstructed solutions") {
    std::mt19937_64 rng(68);
    const auto spec = HamiltonianSpec::symmetric_top(1.0, 2.0);
    {
        const OrbitLabel L(1);
        const QPlaneGrid grid = q_plane_grid(L, 36, 36);
        const auto red = reduced_spectrum(spec, L);
        for (int s = 0; s < 3; ++s)
            CHECK(casimir_eigen_residual(red.solutions[s].psi, random_q(rng),
                                         random_element(rng), grid) < 1e-4);
    }
    {
        const OrbitLabel L(2);
        const QPlaneGrid grid = q_plane_grid(L, 36, 36);
        const auto red = reduced_spectrum(spec, L);
        for (int s = 0; s < 2; ++s)
            CHECK(casimir_eigen_residual(red.solutions[s].psi, random_q(rng),
                                         random_element(rng), grid) < 1e-3);
    }
}

TEST_CASE("coherence criterion: unit at the identity, broken for generic g") {
    std::mt19937_64 rng(69);
    const OrbitLabel L(1);
    CHECK(std::abs(coherence_criterion(L, cplx(0.4, 0.2), identity()) - 1.0) < 1e-12);

    const GroupElement g{1.2, 0.9, 2.0};
    CHECK(std::abs(coherence_criterion(L, cplx(0.4, 0.2), g) - 1.0) > 1e-3);

    // cocycle consistency of the factor across composed elements
    for (int s = 0; s < 10; ++s) {
        const GroupElement g1 = random_element(rng), g2 = random_element(rng);
        const cplx q = random_q(rng);
        const cplx whole = factor_kernel(q, compose(g2, g1), L).U;
        const cplx split =
            factor_kernel(q, g1, L).U * factor_kernel(q_action(q, g1), g2, L).U;
        CHECK(std::abs(whole - split) < 1e-8);
    }
}

TEST_CASE("Hamiltonian JSON round trip") {
    const auto spec = HamiltonianSpec::symmetric_top(1.0, 2.0);
    const auto back = HamiltonianSpec::from_json(spec.to_json());
    CHECK((back.cAB - spec.cAB).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back.cA - spec.cA).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS(HamiltonianSpec::from_json("{\"cAB\": [[1,2,3],[0,1,0],[0,0,1]]}"));
}
