#pragma once

#include <Eigen/Dense>

#include "nilie/lambda_rep.hpp"
#include "nilie/so3.hpp"
#include "nilie/wigner.hpp"

namespace nilie {

/// Spin coherent state label: stereographic coordinate zeta of a sphere point.
struct CSLabel {
    int j;
    cplx zeta;
    CSLabel(int j_, cplx z) : j(j_), zeta(z) {
        if (j < 1) throw std::invalid_argument("CSLabel: j must be a positive integer");
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw std::invalid_argument("CSLabel: zeta must be finite");
    }
};

/// Label of a state produced by the integral ansatz on the sphere.
struct NIStateLabel {
    int j;
    cplx q;
    NIStateLabel(int j_, cplx q_) : j(j_), q(q_) {
        if (j < 1) throw std::invalid_argument("NIStateLabel: j must be a positive integer");
    }
};

/// Expansion coefficients u_m, m = -j..j (index m + j):
/// u_m = (1+|zeta|^2)^{-j} sqrt((2j)!/((j+m)!(j-m)!)) zeta^{j+m}.
Eigen::VectorXcd cs_coeffs(const CSLabel& label);

/// Coordinate wavefunction of the spin coherent state; equals
/// sum_m u_m Y^j_m(x).
cplx cs_wavefunction(const CSLabel& label, const SpherePoint& x);

/// [-i cos(theta) sin(q) + (cos(phi) - i cos(q) sin(phi)) sin(theta)]^j.
cplx ni_state(const NIStateLabel& label, const SpherePoint& x);

/// Overlap <q,j | j,m>.  The power on the 1 - (i tan(qb/2))^2 denominator is
/// resolved to j by the spherical-harmonic reconstruction; the printed
/// power-1 variant is exposed through the exponent parameter for the
/// discriminating test.
cplx overlap_qm(int j, cplx q, int m, int denominator_exponent = -1);

/// Wigner function reconstructed from the kernel by double Q-plane quadrature:
/// C^j_mn  int int conj(F^j_m(q)) e^{-i n q'} D^j_{q qb'}(phi,theta,psi) dmu dmu
/// with F^j_m(q) = tan^m(q/2) sin^j(q).
cplx rel1_reconstruct(int j, int m, int n, const GroupElement& g, const QPlaneGrid& grid);

/// All (m, n) entries from one pass over the product grid (rows m+j, cols n+j).
Eigen::MatrixXcd rel1_reconstruct_matrix(int j, const GroupElement& g, const QPlaneGrid& grid);

/// Normalization constant of the reconstruction.
cplx rel1_constant(int j, int m, int n);

/// F^j_m(q) = tan^m(q/2) sin^j(q)  (an eigenfunction of i ell_1).
cplx eigenfunction_F(int j, int m, cplx q);

struct NiToCs {
    cplx scale;
    CSLabel cs;
};

/// Identity ni_state(q, x) = scale * cs_wavefunction(zeta, x) with
/// zeta = -i tan(q/2) and
/// scale = sqrt(4pi/(2j+1)) 2^j j!/sqrt((2j)!) [(1+|zeta|^2)/(1-zeta^2)]^j.
NiToCs ni_to_cs(const NIStateLabel& label);

/// Moebius action zeta o g^{-1} through the same unitary lift as q_action.
cplx zeta_action(cplx zeta, const GroupElement& g);

/// Phase of the coherent-state transport: checks |r| = 1 and x-independence of
/// r(x) = psi_zeta(x o g) / psi_{zeta o g^{-1}}(x), returns arg(r)/j.
struct CsPhase {
    double phase;              // arg(r)/j
    double modulus_defect;     // max | |r| - 1 | over probes
    double probe_spread;       // max |r(x_i) - r(x_0)|
};
CsPhase cs_phase(const CSLabel& label, const GroupElement& g);

/// Transport factor of the integral-ansatz states:
/// ni_state(q, x o g) = factor * ni_state(q o g^{-1}, x) with
/// factor = ni_state(q, pi(g)).
struct NiTransport {
    cplx factor;
    double pointwise_residual; // max over probes of |lhs - factor * rhs|
};
NiTransport ni_transport(const NIStateLabel& label, const GroupElement& g);

/// Regeneration of |q, j> from q0 = 0 by group transport: returns the max
/// residual of ni_state(q, x) = ni_state(0, pi(g^{-1})) * ni_state(0, x o g^{-1})
/// over probe points, where g is constructed so that 0 o g = q.
double rel4_regenerate_residual(const NIStateLabel& label);

} // namespace nilie
