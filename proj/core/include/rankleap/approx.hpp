#pragma once

#include "rankleap/rank.hpp"

namespace rankleap {

/// Result of the randomized simple-spectrum perturbation. The three
/// spectrum reports are recomputed from the returned matrices, not taken
/// from the search loop.
struct PerturbationOutcome {
    Matrix a_eps, b_eps;
    double dev_a = 0, dev_b = 0;  ///< l1 deviations from the inputs
    SpectrumReport spec_a, spec_b, spec_product;
    int attempts = 0;
    std::uint64_t seed = 0;
};

/// Finds invertible A_eps, B_eps within l1 distance eps of A, B such that
/// A_eps, B_eps and the product A_eps B_eps^{-1} all have simple spectra.
///
/// Rejection sampling: entrywise complex perturbations at scale s
/// (initially eps / (4 n^2), halved every 8 failures), candidates verified
/// for invertibility, the three simple spectra and the deviation budget.
/// Success is generic, so exhausting tol.max_attempts signals a tolerance
/// misconfiguration; throws PerturbationError in that case.
PerturbationOutcome perturb_simple_pair(const Matrix& a, const Matrix& b, double eps,
                                        std::uint64_t seed, const Tolerances& tol = {});

struct RankNApproxResult {
    Tensor3 approximation;
    RankCertificate certificate;
    double deviation = 0;  ///< l1 distance to the input, < eps
    int attempts = 0;
    std::uint64_t seed = 0;
};

/// Rank-n approximation of an arbitrary tensor in C^{n x n x 2}: both
/// slices are perturbed within eps/2 so that B_2 B_1^{-1} has a simple
/// spectrum, which certifies rank exactly n. The deviation splits across
/// slices, so it stays below eps.
RankNApproxResult rank_n_approximate(const Tensor3& a, double eps, std::uint64_t seed,
                                     const Tolerances& tol = {});

/// Explicit witness that the tensor rank can leap: a tensor A in
/// C^{2n x 2n x 2} of rank 3n together with members A_k of rank 2n at l1
/// distance exactly n/k.
///
/// A = [E | J] with J a direct sum of n Jordan blocks with distinct
/// eigenvalues; member(k) replaces each block's lower-right entry mu by
/// mu + 1/k. Eigenvalues are drawn purely imaginary with gaps >= 0.3, so
/// the real-part shift by 1/k never collides across blocks and the
/// member-to-limit l1 distance is exactly n * (1.0 / k) in double
/// arithmetic.
struct LeapFamily {
    std::size_t n = 0;
    Tensor3 limit;                ///< the rank-3n tensor A
    std::vector<Cx> eigenvalues;  ///< block eigenvalues mu_1..mu_n
    std::uint64_t seed = 0;

    Tensor3 member(std::uint64_t k) const;  ///< A_k, rank 2n for every k >= 1
    std::size_t claimed_rank_limit() const { return 3 * n; }
    std::size_t certified_rank_member() const { return 2 * n; }
};

LeapFamily build_leap_family(std::size_t n, std::uint64_t eigenvalue_seed);

}  // namespace rankleap
