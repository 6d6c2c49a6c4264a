#pragma once

#include <Eigen/Dense>

#include "nilie/numeric.hpp"
#include "nilie/so3.hpp"

namespace nilie {

struct WignerIndex {
    int j, m, n;
    WignerIndex(int j_, int m_, int n_) : j(j_), m(m_), n(n_) {
        if (j < 0 || std::abs(m) > j || std::abs(n) > j)
            throw std::invalid_argument("WignerIndex: need |m| <= j and |n| <= j");
    }
};

/// P_n^{(alpha,beta)}(z) by the three-term recurrence.  Degenerate recurrence
/// coefficients (possible for negative integer alpha+beta) fall back to the
/// explicit binomial sum, which is valid for alpha, beta >= -n.
double jacobi_poly(int n, double alpha, double beta, double z);

/// Rotation matrix element d^j_{mn}(theta).  Outside the m >= |n| wedge the
/// value is obtained from d_{mn} = (-1)^{m-n} d_{nm} = d_{-n,-m}.
double small_d(const WignerIndex& idx, double theta);

/// e^{i m phi + i n psi} d^j_{mn}(theta) at the coordinates of g.
cplx wigner_D(const WignerIndex& idx, const GroupElement& g);

/// z-y-z Euler angles of an SU(2) element  S = e^{-i a s3/2} e^{-i b s2/2} e^{-i c s3/2}.
struct EulerZYZ {
    double alpha, beta, gamma;
};
EulerZYZ zyz_euler(const SU2Pair& m);

/// The (2j+1)x(2j+1) representation matrix of the rotation carried by g:
/// wigner_D evaluated at the z-y-z Euler angles of the unitary lift.  Rows and
/// columns are ordered m, n = -j..j.  Satisfies W(g1 g2) = W(g1) W(g2) and
/// W(e) = I.
Eigen::MatrixXcd wigner_matrix(int j, const GroupElement& g);

/// Y^j_m(phi, theta) = sqrt((2j+1)/4pi) e^{i m phi} d^j_{m0}(theta).
cplx spherical_Y(int j, int m, const SpherePoint& x);

} // namespace nilie
