#include <doctest.h>

#include <random>

#include "nilie/so3.hpp"
#include "nilie/wigner.hpp"

using namespace nilie;

namespace {

std::mt19937_64 fresh_rng(std::uint64_t s) { return std::mt19937_64(s); }

GroupElement random_element(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> full(0.0, two_pi), mid(0.25, pi - 0.25);
    return GroupElement{full(rng), mid(rng), full(rng)};
}

double su2_dist_sign(const SU2Pair& a, const SU2Pair& b) {
    return std::min(std::abs(a.alpha - b.alpha) + std::abs(a.beta - b.beta),
                    std::abs(a.alpha + b.alpha) + std::abs(a.beta + b.beta));
}

} // namespace

TEST_CASE("chart matrix at special arguments") {
    const SU2Pair e = to_su2(0.0, 0.0, 0.0);
    CHECK(std::abs(e.alpha - 1.0) == 0.0);
    CHECK(std::abs(e.beta) == 0.0);

    // (phi, 0, 0) -> (e^{i phi/2}, 0), by direct 2x2 product
    for (double phi : {0.3, 1.7, 4.4}) {
        const SU2Pair m = to_su2(phi, 0.0, 0.0);
        CHECK(std::abs(m.alpha - std::polar(1.0, phi / 2)) < 1e-15);
        CHECK(std::abs(m.beta) == 0.0);
    }
}

TEST_CASE("unitarity of the lift for 1000 random triples") {
    auto rng = fresh_rng(1);
    std::uniform_real_distribution<double> U(-8.0, 8.0);
    for (int k = 0; k < 1000; ++k) {
        const SU2Pair m = to_su2(U(rng), U(rng), U(rng));
        CHECK(m.unitarity_defect() < 1e-14);
    }
}

TEST_CASE("identity element sits at (0, pi/2, 0) and lifts to (1, 0)") {
    const GroupElement e = identity();
    CHECK(e.phi == 0.0);
    CHECK(e.theta == pi / 2.0);
    CHECK(e.psi == 0.0);
    const SU2Pair m = lift(e);
    CHECK(std::abs(m.alpha - 1.0) == 0.0);
    CHECK(std::abs(m.beta) == 0.0);
    const GroupElement ee = compose(e, e);
    CHECK(su2_dist_sign(lift(ee), m) < 1e-15);
}

TEST_CASE("compose obeys the group axioms") {
    auto rng = fresh_rng(2);
    for (int k = 0; k < 200; ++k) {
        const GroupElement g = random_element(rng);
        const GroupElement r = compose(g, identity());
        const GroupElement l = compose(identity(), g);
        CHECK(su2_dist_sign(lift(r), lift(g)) < 1e-12);
        CHECK(su2_dist_sign(lift(l), lift(g)) < 1e-12);
        // SU(2) product oracle for g g^{-1}
        const SU2Pair prod = su2_mul(lift(g), lift(inverse(g)));
        CHECK(std::abs(std::abs(prod.alpha) - 1.0) < 1e-12);
        CHECK(std::abs(prod.beta) < 1e-12);
        const GroupElement gi = compose(g, inverse(g));
        CHECK(su2_dist_sign(lift(gi), SU2Pair{}) < 1e-10);
    }
}

TEST_CASE("lift is a homomorphism up to global sign") {
    auto rng = fresh_rng(3);
    for (int k = 0; k < 200; ++k) {
        const GroupElement g1 = random_element(rng), g2 = random_element(rng);
        CHECK(su2_dist_sign(lift(compose(g1, g2)), su2_mul(lift(g1), lift(g2))) < 1e-12);
    }
}

TEST_CASE("associativity within 1e-10") {
    auto rng = fresh_rng(4);
    for (int k = 0; k < 100; ++k) {
        const GroupElement a = random_element(rng), b = random_element(rng),
                           c = random_element(rng);
        CHECK(su2_dist_sign(lift(compose(compose(a, b), c)), lift(compose(a, compose(b, c)))) <
              1e-10);
    }
}

TEST_CASE("extraction at the chart degeneracy resolves psi := 0") {
    // theta' = pi/2 <-> theta = pi: only phi - psi is determined
    const GroupElement g{1.3, pi, 0.7};
    const GroupElement back = from_su2(lift(g));
    CHECK(back.psi == 0.0);
    CHECK(back.theta == doctest::Approx(pi));
    CHECK(back.phi == doctest::Approx(wrap_2pi(1.3 - 0.7)));
    CHECK(su2_at_chart_singularity(lift(g)));
    CHECK_FALSE(su2_at_chart_singularity(lift(identity())));
}

TEST_CASE("left fields: xi_1 phi = 1 and eta_3 psi = -1") {
    auto rng = fresh_rng(5);
    const GroupField Fphi = [](const GroupElement& g) { return cplx(g.phi, 0.0); };
    const GroupField Fpsi = [](const GroupElement& g) { return cplx(g.psi, 0.0); };
    for (int k = 0; k < 10; ++k) {
        const GroupElement g = random_element(rng);
        CHECK(left_field_apply(1, Fphi, g).real() == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::abs(left_field_apply(1, Fphi, g).imag()) < 1e-12);
        CHECK(right_field_apply(3, Fpsi, g).real() == doctest::Approx(-1.0).epsilon(1e-9));
    }
}

TEST_CASE("commutator [xi1, xi2] = xi3 by nested finite differences") {
    auto rng = fresh_rng(6);
    const GroupField F = [](const GroupElement& g) {
        return cplx(std::sin(g.phi) * std::cos(g.theta), std::cos(g.psi) + 0.3 * std::sin(g.theta));
    };
    const double h = 1e-4;
    for (int k = 0; k < 50; ++k) {
        const GroupElement g = random_element(rng);
        const GroupField x2F = [&](const GroupElement& y) { return left_field_apply(2, F, y, h); };
        const GroupField x1F = [&](const GroupElement& y) { return left_field_apply(1, F, y, h); };
        const cplx comm = left_field_apply(1, x2F, g, h) - left_field_apply(2, x1F, g, h);
        CHECK(std::abs(comm - left_field_apply(3, F, g, h)) < 1e-4);
    }
}

TEST_CASE("left and right fields commute") {
    auto rng = fresh_rng(7);
    const GroupField F = [](const GroupElement& g) {
        return cplx(std::cos(g.phi) * std::sin(2.0 * g.theta), std::sin(g.psi + g.phi));
    };
    const double h = 1e-4;
    for (int k = 0; k < 10; ++k) {
        const GroupElement g = random_element(rng);
        for (int a = 1; a <= 3; ++a)
            for (int b = 1; b <= 3; ++b) {
                const GroupField ebF = [&](const GroupElement& y) {
                    return right_field_apply(b, F, y, h);
                };
                const GroupField xaF = [&](const GroupElement& y) {
                    return left_field_apply(a, F, y, h);
                };
                const cplx comm =
                    left_field_apply(a, ebF, g, h) - right_field_apply(b, xaF, g, h);
                CHECK(std::abs(comm) < 1e-4);
            }
    }
}

TEST_CASE("fields reject the chart poles") {
    const GroupField F = [](const GroupElement& g) { return cplx(g.theta, 0.0); };
    CHECK_THROWS_AS(left_field_apply(2, F, GroupElement{1.0, 1e-8, 1.0}), ChartSingularityError);
    CHECK_THROWS_AS(right_field_apply(1, F, GroupElement{1.0, pi - 1e-8, 1.0}),
                    ChartSingularityError);
}

TEST_CASE("Haar grid: normalization and exactness") {
    const QuadratureGrid grid = haar_grid(64, 64, 64);
    double mass = 0.0, cos_int = 0.0, dvig = 0.0;
    for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
        mass += grid.weights[i];
        cos_int += std::cos(grid.nodes[i].theta) * grid.weights[i];
        const double v = std::abs(wigner_D(WignerIndex(1, 0, 0), grid.nodes[i]));
        dvig += v * v * grid.weights[i];
    }
    CHECK(std::abs(mass - 1.0) < 1e-12);
    CHECK(std::abs(cos_int) < 1e-14);
    CHECK(std::abs(dvig - 1.0 / 3.0) < 1e-10);
    CHECK_THROWS_AS(haar_grid(1, 4, 4), std::invalid_argument);
}

TEST_CASE("sphere action: identity, composition, phi shift") {
    auto rng = fresh_rng(8);
    std::uniform_real_distribution<double> full(0.0, two_pi), mid(0.2, pi - 0.2);
    for (int k = 0; k < 50; ++k) {
        const SpherePoint x{full(rng), mid(rng)};
        const SpherePoint same = sphere_action(x, identity());
        CHECK(std::abs(same.phi - x.phi) < 1e-12);
        CHECK(std::abs(same.theta - x.theta) < 1e-12);

        const GroupElement g1 = random_element(rng), g2 = random_element(rng);
        const SpherePoint a = sphere_action(sphere_action(x, g1), g2);
        const SpherePoint b = sphere_action(x, compose(g1, g2));
        CHECK(std::abs(a.phi - b.phi) < 1e-9);
        CHECK(std::abs(a.theta - b.theta) < 1e-9);

        // the one-parameter subgroup generating d/dphi on the sphere
        const double phi0 = full(rng);
        const SpherePoint shifted = sphere_action(x, GroupElement{phi0, pi / 2.0, 0.0});
        CHECK(std::abs(std::remainder(shifted.phi - x.phi - phi0, two_pi)) < 1e-10);
        CHECK(std::abs(shifted.theta - x.theta) < 1e-10);
    }
}

TEST_CASE("h_factor: identity, recomposition, cocycle") {
    auto rng = fresh_rng(9);
    std::uniform_real_distribution<double> full(0.0, two_pi), mid(0.2, pi - 0.2);
    for (int k = 0; k < 50; ++k) {
        const SpherePoint x{full(rng), mid(rng)};
        CHECK(std::abs(h_factor(x, identity())) < 1e-12);

        const GroupElement g = random_element(rng);
        const double psih = h_factor(x, g);
        const GroupElement lhs = compose(section(x), g);
        const GroupElement rhs = compose(GroupElement{0.0, pi / 2.0, psih},
                                         section(sphere_action(x, g)));
        CHECK(su2_dist_sign(lift(lhs), lift(rhs)) < 1e-10);

        const GroupElement g2 = random_element(rng);
        const double whole = h_factor(x, compose(g, g2));
        const double split = h_factor(x, g) + h_factor(sphere_action(x, g), g2);
        CHECK(std::abs(std::remainder(whole - split, two_pi)) < 1e-9);
    }
}

TEST_CASE("q_action: identity, composition, diagonal subgroup") {
    auto rng = fresh_rng(10);
    std::uniform_real_distribution<double> re(-2.5, 2.5), im(-0.7, 0.7), full(0.0, two_pi);
    for (int k = 0; k < 100; ++k) {
        const cplx q(re(rng), im(rng));
        CHECK(std::abs(q_action(q, identity()) - q) < 1e-13);

        const GroupElement g1 = random_element(rng), g2 = random_element(rng);
        const cplx a = q_action(q_action(q, g1), g2);
        const cplx b = q_action(q, compose(g2, g1));
        // compare modulo the 2 pi period of the chart
        CHECK(std::abs(std::exp(cplx(0, 1) * a) - std::exp(cplx(0, 1) * b)) < 1e-9);

        // exp(psi0 e3) translates real q by -psi0
        const double psi0 = full(rng);
        const cplx moved = q_action(cplx(re(rng), 0.0), GroupElement{0.0, pi / 2.0, psi0});
        CHECK(std::abs(moved.imag()) < 1e-12);
    }
    const double psi0 = 1.1;
    const cplx moved = q_action(cplx(0.4, 0.0), GroupElement{0.0, pi / 2.0, psi0});
    CHECK(std::abs(std::remainder(moved.real() - (0.4 - psi0), two_pi)) < 1e-12);
}

TEST_CASE("q_action reports the point at infinity") {
    // theta' = pi/2 rotation sends tan(q/2) = i cot(...)-type points to infinity;
    // construct the pole directly: v' = 0 when tan(q/2) = conj(alpha)/conj(beta).
    const GroupElement g{1.1, 2.0, 0.4};
    const SU2Pair m = lift(g);
    const cplx t_pole = std::conj(m.alpha) / std::conj(m.beta);
    const cplx q_pole = 2.0 * std::atan(t_pole);
    CHECK_THROWS_AS(q_action(q_pole, g), MobiusPoleError);
}

TEST_CASE("sphere generators on coordinate fields") {
    auto rng = fresh_rng(11);
    std::uniform_real_distribution<double> full(0.0, two_pi), mid(0.3, pi - 0.3);
    const SphereField Fphi = [](const SpherePoint& x) { return cplx(x.phi, 0.0); };
    for (int k = 0; k < 10; ++k) {
        const SpherePoint x{full(rng), mid(rng)};
        CHECK(sphere_generator_apply(1, Fphi, x).real() == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(sphere_generator_apply(2, Fphi, SpherePoint{1.0, 1e-8}),
                    ChartSingularityError);
}

TEST_CASE("sphere transitivity from the base point") {
    const SpherePoint x0{0.0, pi / 2.0};
    auto rng = fresh_rng(12);
    std::uniform_real_distribution<double> full(0.0, two_pi), mid(0.1, pi - 0.1);
    for (int k = 0; k < 50; ++k) {
        const SpherePoint target{full(rng), mid(rng)};
        const GroupElement g = compose(inverse(section(x0)), section(target));
        const SpherePoint got = sphere_action(x0, g);
        CHECK(std::abs(std::remainder(got.phi - target.phi, two_pi)) < 1e-10);
        CHECK(std::abs(got.theta - target.theta) < 1e-10);
    }
}

TEST_CASE("canonicalization folds any real triple into range") {
    auto rng = fresh_rng(14);
    std::uniform_real_distribution<double> wide(-15.0, 15.0);
    for (int k = 0; k < 200; ++k) {
        const GroupElement raw{wide(rng), wide(rng), wide(rng)};
        const GroupElement c = canonicalized(raw);
        CHECK(c.phi >= 0.0);
        CHECK(c.phi < two_pi);
        CHECK(c.theta >= 0.0);
        CHECK(c.theta <= pi);
        CHECK(c.psi >= 0.0);
        CHECK(c.psi < two_pi);
        CHECK(su2_dist_sign(lift(raw), lift(c)) < 1e-12);
    }
}

TEST_CASE("adjoint matrix is orthogonal and compatible with compose") {
    auto rng = fresh_rng(13);
    for (int k = 0; k < 50; ++k) {
        const GroupElement g = random_element(rng);
        const Eigen::Matrix3d A = adjoint_matrix(g);
        CHECK((A * A.transpose() - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-13);
        const GroupElement g2 = random_element(rng);
        CHECK((adjoint_matrix(compose(g, g2)) - A * adjoint_matrix(g2)).cwiseAbs().maxCoeff() <
              1e-12);
    }
}
