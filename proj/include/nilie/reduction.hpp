#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nilie/lambda_rep.hpp"
#include "nilie/so3.hpp"

namespace nilie {

/// Hamiltonian built from right-invariant fields:
/// H = c^{AB} eta_A eta_B + c^A eta_A.
struct HamiltonianSpec {
    Eigen::Matrix3d cAB = Eigen::Matrix3d::Zero();
    Eigen::Vector3d cA = Eigen::Vector3d::Zero();

    void require_symmetric(double tol = 1e-12) const {
        if ((cAB - cAB.transpose()).cwiseAbs().maxCoeff() > tol)
            throw std::invalid_argument("HamiltonianSpec: cAB must be symmetric");
    }

    /// Symmetric top with c^{AB} = -diag(a, a, b): reduced energies are
    /// a j(j+1) + (b-a) n^2.
    static HamiltonianSpec symmetric_top(double a, double b) {
        HamiltonianSpec s;
        s.cAB = -Eigen::Vector3d(a, a, b).asDiagonal().toDenseMatrix();
        return s;
    }

    static HamiltonianSpec from_json(const std::string& text);
    std::string to_json() const;
};

/// Reduced operator on the carrier space: c^{AB} ell_A ell_B + c^A ell_A.
Eigen::MatrixXcd reduced_operator(const HamiltonianSpec& spec, OrbitLabel j);

struct ReducedSolution {
    int j;
    double energy;
    QFunction psi; // unit norm in the carrier-space metric
};

struct ReducedSpectrum {
    std::vector<ReducedSolution> solutions; // energies ascending
    double hermiticity_defect = 0.0;        // |G H - H^dag G| (metric self-adjointness)
    double max_imag_energy = 0.0;           // nonzero only off the self-adjoint path
};

/// Eigen-solve of the generalized problem (H, G) with the closed-form Gram
/// metric; eigenvectors are G-orthonormalized.
ReducedSpectrum reduced_spectrum(const HamiltonianSpec& spec, OrbitLabel j);

/// Ground-truth spectrum of H on the group side: project
/// c^{AB} eta_A eta_B + c^A eta_A onto the (2j+1)^2-dimensional block spanned
/// by the literal Wigner functions, with finite-difference eta action and
/// quadrature projection.  Independent of ell_matrix and the carrier metric.
struct WignerBasisSpectrum {
    std::vector<double> energies; // (2j+1)^2 values, ascending (real parts)
    double max_imag = 0.0;
};
/// n_angle <= 0 selects 4j+4 (the integrands carry angular modes up to 4j).
WignerBasisSpectrum wigner_basis_spectrum(const HamiltonianSpec& spec, int j, int n_theta = 16,
                                          int n_angle = 0, double fd_step = 2e-3);

/// phi^lambda_q(g^{-1}) = int psi(q') D^j_{q qb'}(g^{-1}) dmu_j(q') by Q-plane
/// quadrature.
cplx reconstruct_solution(const QFunction& psi, cplx q, const GroupElement& g,
                          const QPlaneGrid& grid);

/// Factorized route of the same value: U(q, g) psi(q o g^{-1}).
cplx reconstruct_solution_factorized(const QFunction& psi, cplx q, const GroupElement& g);

/// |K(-i xi) phi - j(j+1) phi| at g for the reconstructed solution, by nested
/// finite differences.
double casimir_eigen_residual(const QFunction& psi, cplx q, const GroupElement& g,
                              const QPlaneGrid& grid, double h = 1e-4);

/// |U| of the kernel factorization at (q, g); equals 1 exactly at g = e and
/// deviates from 1 for generic g (the complex-polarization obstruction).
double coherence_criterion(OrbitLabel j, cplx q, const GroupElement& g);

} // namespace nilie
