#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nilie/lie_core.hpp"
#include "nilie/numeric.hpp"
#include "nilie/so3.hpp"

namespace nilie {

struct FactorizationDegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Element of the 2j+1 dimensional carrier space, stored as coefficients of
/// the basis e_n(q) = exp(-i n q), n = -j..j (index n + j).
struct QFunction {
    int j = 1;
    Eigen::VectorXcd coeffs;

    QFunction() = default;
    QFunction(OrbitLabel label, Eigen::VectorXcd c) : j(label.j), coeffs(std::move(c)) {
        if (coeffs.size() != 2 * j + 1)
            throw std::invalid_argument("QFunction: coefficient vector must have length 2j+1");
    }

    cplx evaluate(cplx q) const {
        cplx s = 0.0;
        for (int n = -j; n <= j; ++n) s += coeffs[n + j] * std::exp(cplx(0, -double(n)) * q);
        return s;
    }
};

/// Matrix of ell_a on the basis e_n(q), a in {1,2,3}; rows/columns indexed by
/// n + j.  ell_3 = d/dq is diagonal, ell_1 and ell_2 shift n by +-1.
Eigen::MatrixXcd ell_matrix(int axis, OrbitLabel j);

/// Sum of (-i ell_a)^2; equals j(j+1) I.
Eigen::MatrixXcd casimir_lambda(OrbitLabel j);

/// Reproducing kernel of the carrier space: N_j [1 + cos(q - qb')]^j with
/// N_j = 2^j (j!)^2 / (2j)!.  The exponent j (rather than 1) is forced by the
/// identity kernel_D(..., e) = delta_j.
cplx delta_j(cplx q, cplx qbar_prime, int j);

/// The closed-form kernel expression as a function of chart coordinates; this
/// is the kernel of the representation evaluated at the inverse element,
/// i.e. kernel_display(coords of g) = kernel_D(inverse(g)).
cplx kernel_display(int j, cplx q, cplx qbar_prime, double phi, double theta, double psi);

/// d/dq and d/dqb' of kernel_display (closed form).
cplx kernel_display_dq(int j, cplx q, cplx qbar_prime, double phi, double theta, double psi);
cplx kernel_display_dqb(int j, cplx q, cplx qbar_prime, double phi, double theta, double psi);

/// Representation kernel D^j_{q qb'}(g); satisfies the convolution law
/// D(g1 g2) = int D(g1) D(g2) dmu and D(e) = delta_j.
cplx kernel_D(cplx q, cplx qbar_prime, const GroupElement& g, int j);

/// Quadrature over the q-plane realizing the carrier-space measure.  Nodes are
/// placed in the stereographic variable zeta = -i tan(q/2): Gauss-Legendre in
/// the compactified radius r = tan(u/2), uniform in angle.  Weights carry the
/// chart Jacobian and the normalization that makes <1, 1> = 1 (equivalently,
/// the reproducing property of delta_j holds).
struct QPlaneGrid {
    int j = 1;
    std::vector<cplx> q_nodes;
    std::vector<cplx> zeta_nodes;
    std::vector<double> weights;

    /// Sum of f(q_i) * w_i; barred kernel slots take conj(q_i) at call sites.
    template <typename F>
    cplx integrate(F&& f) const {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < q_nodes.size(); ++i) acc += f(q_nodes[i]) * weights[i];
        return acc;
    }

    /// Gram matrix G_{nm} = <e_n, e_m>; diagonal (j+n)!(j-n)!/(j!)^2 in exact
    /// arithmetic.
    Eigen::MatrixXcd gram() const;
};

QPlaneGrid q_plane_grid(OrbitLabel j, int n_r, int n_ang);

/// Gram matrix of the basis in closed form (quadrature-free oracle for tests
/// and the default metric of the reduction pipeline).
Eigen::MatrixXcd gram_closed_form(OrbitLabel j);

/// Carrier-space metric; construction checks Hermiticity and positive
/// definiteness.
struct QMeasure {
    int j;
    Eigen::MatrixXcd gram;

    QMeasure(OrbitLabel label, Eigen::MatrixXcd g);
    static QMeasure from_grid(const QPlaneGrid& grid);
    static QMeasure closed_form(OrbitLabel label);
};

struct KernelPdeResidual {
    double xi_residual = 0.0;  // max_a |[xi_a(g) + ell_a(q)] D(g^{-1})|
    double eta_residual = 0.0; // max_a |[eta_a(g) + conj(ell_a(q'))] D(g^{-1})|
    double max() const { return std::max(xi_residual, eta_residual); }
};

KernelPdeResidual kernel_pde_residual(cplx q, cplx qbar_prime, const GroupElement& g, int j,
                                      double h = 1e-5);

struct KernelFactorization {
    cplx U;       // one-dimensional factor
    cplx q_moved; // q o g^{-1}
};

/// Split the kernel at g^{-1} into the one-dimensional factor times the moved
/// delta: kernel_display(q, qb', g) = U * delta_j(q o g^{-1}, qb').  The probe
/// qb' is chosen internally away from zeros of delta_j.
KernelFactorization factor_kernel(cplx q, const GroupElement& g, OrbitLabel j);

/// Spread of U over several probes (diagnostic for the probe independence).
double factor_kernel_probe_spread(cplx q, const GroupElement& g, OrbitLabel j);

struct CompletenessSample {
    int j, j_tilde;
    double residual;
};

struct CompletenessReport {
    std::vector<CompletenessSample> orthogonality; // group integral vs closed form
    std::vector<double> partial_sums;              // Dful2 partial sums at g~ = g
    double character_residual = 0.0;               // double-Q integral vs character oracle
    double max_orthogonality_residual() const;
};

/// Verify the group-orthogonality of the kernels by Haar quadrature and the
/// completeness partial sums by Q-plane quadrature.
CompletenessReport completeness_check(int j_max, int sample_count, std::uint64_t seed = 42,
                                      int haar_n = 20, int q_n = 40);

} // namespace nilie
