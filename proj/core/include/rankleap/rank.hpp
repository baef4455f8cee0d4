#pragma once

#include <string>

#include "rankleap/group_action.hpp"
#include "rankleap/spectra.hpp"
#include "rankleap/tensor.hpp"

namespace rankleap {

enum class RankVerdict {
    rank_equals_m,   ///< rank certified equal to the slice order m
    rank_exceeds_m,  ///< rank certified different from m, hence > m
    inconclusive,    ///< no verdict at the configured tolerances
};

std::string to_string(RankVerdict v);

/// Machine-checkable outcome of the simultaneous-diagonalization rank test.
///
/// A positive verdict carries the diagonalizing basis and the derived
/// m-term CP decomposition of the *input* tensor (mixing undone), plus the
/// measured re-evaluation error. A negative verdict carries the obstruction:
/// either a non-diagonalizable slice ratio or a commutator violation.
/// Tolerances and seed are always recorded; preprocessing holds the
/// third-mode mixing matrix when one was applied.
struct RankCertificate {
    RankVerdict verdict = RankVerdict::inconclusive;
    std::size_t m = 0;

    std::optional<Matrix> basis;
    std::optional<CPDecomposition> decomposition;
    double reeval_error = 0;

    SimDiagReport::Obstruction obstruction = SimDiagReport::Obstruction::none;
    std::size_t obstruction_slice_i = 0;  ///< 1-based slice indices
    std::size_t obstruction_slice_j = 0;
    double commutator_norm = 0;
    std::optional<DefectWitness> defect_witness;

    std::string justification;
    Tolerances tolerances;
    std::uint64_t seed = 0;
    std::optional<Matrix> preprocessing;  ///< mixing matrix, absent if identity
};

/// Rank certification for square-type tensors A in C^{m x m x n}, n >= 2.
///
/// After ensuring an invertible first slice (mix_first_slice), forms the
/// slice ratios C_r = A_r A_1^{-1} and decides their simultaneous
/// diagonalizability. Simultaneous: rank equals m, with the explicit CP
/// decomposition read off the basis. Not simultaneous: rank exceeds m
/// (the invertible slice already forces rank >= m). Inconclusive
/// otherwise. Throws SliceMixingError when no invertible slice
/// combination is found.
RankCertificate bi_rank_check(const Tensor3& a, const Tolerances& tol = {},
                              std::uint64_t seed = 20240915);

/// Rank-preserving preprocessing: returns a tensor in the same orbit whose
/// first slice is invertible, together with the third-mode mixing matrix
/// applied (identity when the first slice already was invertible). Throws
/// SliceMixingError after max_tries random draws.
std::pair<Tensor3, Matrix> mix_first_slice(const Tensor3& a, std::uint64_t seed,
                                           int max_tries = 32,
                                           double sing_tol_rel = Tolerances{}.sing_tol_rel);

/// Largest tensor rank on C^{n x n x 2}: n + floor(n/2).
std::size_t max_rank_value(std::size_t n);

}  // namespace rankleap
