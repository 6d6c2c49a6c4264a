#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <vector>

#include "nilie/numeric.hpp"

namespace nilie {

/// Rotation in second-kind canonical coordinates.  The chart identity is
/// (0, pi/2, 0): the middle exponential carries theta - pi/2, so all three
/// exponents vanish there.
struct GroupElement {
    double phi = 0.0;
    double theta = pi / 2.0;
    double psi = 0.0;
};

/// Cayley-Klein pair of the 2x2 unitary lift [[alpha, beta], [-conj(beta), conj(alpha)]].
struct SU2Pair {
    cplx alpha{1.0, 0.0};
    cplx beta{0.0, 0.0};

    double unitarity_defect() const { return std::abs(std::norm(alpha) + std::norm(beta) - 1.0); }
};

struct SpherePoint {
    double phi = 0.0;
    double theta = pi / 2.0;
};

struct ChartSingularityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MobiusPoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

GroupElement identity();
GroupElement canonicalized(const GroupElement& g);

/// Chart matrix entries alpha(phi,theta,psi), beta(phi,theta,psi) of the
/// three-factor 2x2 product; no theta shift applied here.
SU2Pair to_su2(double phi, double theta, double psi);

/// Unitary lift of a group element: to_su2(phi, theta - pi/2, psi).
SU2Pair lift(const GroupElement& g);

SU2Pair su2_mul(const SU2Pair& a, const SU2Pair& b);
SU2Pair su2_inverse(const SU2Pair& a);

/// True when the coordinate extraction for this pair sits at the theta in
/// {0, pi} chart degeneracy (only phi -+ psi is determined there).
bool su2_at_chart_singularity(const SU2Pair& m, double tol = 1e-9);

/// Invert the lift.  At the chart degeneracy the psi := 0 fallback is used.
/// Sign of the double cover does not affect the result.
GroupElement from_su2(const SU2Pair& m);

GroupElement compose(const GroupElement& g1, const GroupElement& g2);
GroupElement inverse(const GroupElement& g);

/// Adjoint matrix of g on so(3) coordinates (a rotation matrix).
Eigen::Matrix3d adjoint_matrix(const GroupElement& g);

using GroupField = std::function<cplx(const GroupElement&)>;
using SphereField = std::function<cplx(const SpherePoint&)>;

/// Left-invariant field xi_a applied to F at g, central differences with step h.
cplx left_field_apply(int axis, const GroupField& F, const GroupElement& g, double h = 1e-5);

/// Right-invariant field eta_a applied to F at g.
cplx right_field_apply(int axis, const GroupField& F, const GroupElement& g, double h = 1e-5);

/// Generator X_a of the sphere action applied to F at x.
cplx sphere_generator_apply(int axis, const SphereField& F, const SpherePoint& x, double h = 1e-5);

struct QuadratureGrid {
    std::vector<GroupElement> nodes;
    std::vector<double> weights; // sum to 1

    template <typename F>
    auto integrate(F&& f) const {
        using R = decltype(f(nodes[0]) * 1.0);
        R acc{};
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += f(nodes[i]) * weights[i];
        return acc;
    }
};

/// Normalized Haar quadrature: Gauss-Legendre in cos(theta), periodic
/// trapezoid in phi and psi.
QuadratureGrid haar_grid(int n_theta, int n_phi, int n_psi);

/// Section s(x) = g(phi, theta, 0) of the sphere bundle.
GroupElement section(const SpherePoint& x);

/// Right action of the group on the sphere: pi[s(x) g].
SpherePoint sphere_action(const SpherePoint& x, const GroupElement& g);

/// SO(2) angle psi_h with s(x) g = h(psi_h) s(x o g), h(psi) = exp(psi e3).
double h_factor(const SpherePoint& x, const GroupElement& g);

/// Moebius right action q o g^{-1} on the complex q-plane.
cplx q_action(cplx q, const GroupElement& g);

} // namespace nilie
