#pragma once

#include <optional>

#include "rankleap/matrix.hpp"

namespace rankleap {

// ---------------------------------------------------------------------------
// Schur decomposition
// ---------------------------------------------------------------------------

struct SchurResult {
    Matrix q;  ///< unitary
    Matrix t;  ///< upper triangular, eigenvalues on the diagonal
};

/// Complex Schur form A = Q T Q*, by Householder reduction to Hessenberg
/// form followed by Wilkinson-shifted QR iteration. Throws ConvergenceError
/// after max_qr_iters shifted steps (0 means the default 100 * n).
SchurResult schur(const Matrix& a, std::size_t max_qr_iters = 0);

// ---------------------------------------------------------------------------
// Spectrum and diagonalizability
// ---------------------------------------------------------------------------

struct SpectrumReport {
    std::vector<Cx> eigenvalues;  ///< with algebraic multiplicity, Schur order
    double min_gap = 0;           ///< minimum pairwise distance (inf for order 1)
    bool simple = false;          ///< min_gap > gap_tol
    double residual = 0;          ///< max_i ||A v_i - lambda_i v_i||_inf
    double gap_tol = 0;           ///< the absolute threshold that was applied
};

/// Eigenvalues from the Schur diagonal; simple iff all pairwise gaps
/// exceed gap_tol (absolute). The one-argument overload applies the
/// default relative threshold 1e-8 * ||A||_1.
SpectrumReport spectrum(const Matrix& a, double gap_tol);
SpectrumReport spectrum(const Matrix& a);

struct DefectWitness {
    Cx eigenvalue;
    std::size_t algebraic = 0;
    std::size_t geometric = 0;
};

struct DiagReport {
    bool diagonalizable = false;
    std::optional<Matrix> basis;  ///< P with A = P D P^{-1}
    std::optional<Matrix> diag;   ///< D
    std::optional<DefectWitness> defect_witness;
};

/// Diagonalizability with explicit thresholds (absolute). Simple spectrum
/// takes the eigenvector-basis path; otherwise eigenvalues are clustered at
/// distance gap_tol and each cluster's geometric multiplicity is measured
/// as order minus the numerical rank of (A - lambda E) at rank_tol.
DiagReport diagonalize(const Matrix& a, double gap_tol, double rank_tol);
DiagReport diagonalize(const Matrix& a);

// ---------------------------------------------------------------------------
// Simultaneous diagonalization
// ---------------------------------------------------------------------------

struct SimDiagReport {
    bool simultaneous = false;
    std::optional<Matrix> basis;
    /// Diagonal of P^{-1} C_i P per family member (set when simultaneous).
    std::vector<std::vector<Cx>> member_diagonals;

    enum class Obstruction { none, commutator, non_diagonalizable };
    Obstruction obstruction = Obstruction::none;
    std::size_t member_i = 0;  ///< indices of the offending pair / member
    std::size_t member_j = 0;
    double commutator_norm = 0;
    std::optional<DefectWitness> defect_witness;

    int tries_used = 0;
};

/// Decides whether one invertible basis diagonalizes every member.
///
/// A pairwise commutator above comm_tol, or a non-diagonalizable member,
/// settles the question negatively. Otherwise a random real combination
/// C = sum c_i C_i is drawn from the seed; a simple-spectrum combination
/// provides the candidate basis, accepted when every conjugated member has
/// off-diagonal l1 mass within sim_tol * ||C_i||_1. Singleton families are
/// decided directly by diagonalize. Throws InconclusiveError after
/// tol.max_tries combinations.
SimDiagReport simultaneously_diagonalizable(const std::vector<Matrix>& members,
                                            const Tolerances& tol, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Singular values (one-sided Jacobi)
// ---------------------------------------------------------------------------

struct SvdResult {
    std::vector<double> singular_values;  ///< descending
    Matrix v;                             ///< right singular vectors, columns
};

SvdResult jacobi_svd(const Matrix& a);

/// Number of singular values above tol (absolute).
std::size_t numerical_rank(const Matrix& a, double tol);

/// Orthonormal basis of the numerical nullspace at threshold tol.
std::vector<Vector> nullspace(const Matrix& a, double tol);

}  // namespace rankleap
