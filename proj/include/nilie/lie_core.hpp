#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "nilie/numeric.hpp"

namespace nilie {

/// Structure-constant tensor C^C_AB of an n-dimensional Lie algebra,
/// indexed c(A,B,C) with 0-based indices.
struct StructureConstants {
    int dim = 0;
    std::vector<double> c;

    StructureConstants() = default;
    explicit StructureConstants(int n) : dim(n), c(std::size_t(n) * n * n, 0.0) {}

    double& at(int A, int B, int C) { return c[(std::size_t(A) * dim + B) * dim + C]; }
    double at(int A, int B, int C) const { return c[(std::size_t(A) * dim + B) * dim + C]; }

    /// so(3): C^c_ab = epsilon_abc.
    static StructureConstants so3();

    /// Parse { "dim": n, "entries": [[A,B,C,value],...] }, zero-omitted, 0-based.
    static StructureConstants from_json(const std::string& text);
    std::string to_json() const;
};

struct StructureValidity {
    double antisymmetry_residual = 0.0;
    double jacobi_residual = 0.0;
    bool antisymmetry_ok = false;
    bool jacobi_ok = false;
    bool pass() const { return antisymmetry_ok && jacobi_ok; }
};

/// Check antisymmetry C^C_AB = -C^C_BA and the Jacobi identity; residuals are
/// max-norm over all index combinations.
StructureValidity validate_structure(const StructureConstants& sc, double tol = 1e-12);

using Covector = Eigen::VectorXd;

/// Integer coadjoint-orbit label; the carrier dimension is 2j+1.
struct OrbitLabel {
    int j;
    explicit OrbitLabel(int j_) : j(j_) {
        if (j < 1) throw std::invalid_argument("OrbitLabel: j must be a positive integer");
    }
};

/// Poisson-Lie bracket C^C_AB f_C (grad1)_A (grad2)_B at the point f.
double poisson_lie_bracket(const StructureConstants& sc, const Eigen::VectorXd& grad1,
                           const Eigen::VectorXd& grad2, const Covector& f);

/// Coadjoint action determined by <Ad*_g f, X> = <f, Ad_{g^-1} X>:
/// given the adjoint matrix of g (column-vector convention on algebra
/// coordinates), returns ad^{-T} * f.
Covector coadjoint_apply(const Eigen::MatrixXd& ad_matrix, const Covector& f);

/// so(3) Casimir K(f) = f.f  (requires dim 3).
double casimir_value(const Covector& f);

/// Central-difference gradient helper for bracket arguments without an
/// analytic gradient.
Eigen::VectorXd numeric_gradient(const std::function<double(const Eigen::VectorXd&)>& fn,
                                 const Eigen::VectorXd& f, double h = 1e-6);

} // namespace nilie
