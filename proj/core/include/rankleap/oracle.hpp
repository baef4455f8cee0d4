#pragma once

#include <optional>
#include <string>

#include "rankleap/tensor.hpp"

namespace rankleap {

struct ALSOptions {
    int restarts = 50;
    int max_iters = 2000;          ///< sweeps (one update of each mode) per restart
    double oracle_tol = 1e-7;      ///< relative Frobenius residual for AtMostR
    double improve_tol = 1e-10;    ///< stop when (prev - res) / prev falls below this
    double residual_floor = 1e-14; ///< stop when the residual itself falls below this
    double norm_cap = 1e6;         ///< factor Frobenius norms beyond this flag divergence
    bool stop_on_success = true;   ///< skip remaining restarts once a converged fit <= tol exists
};

/// Brute-force CP fitting evidence for rank(A) <= target_rank at tiny sizes.
///
/// A restart counts as rank evidence only when it converged (improvement
/// criterion or residual floor) with bounded factors. Restarts that exhaust
/// the sweep budget while still improving, or whose factor norms pass
/// norm_cap, are diverging toward a border-rank limit that is not attained:
/// their residual can be made arbitrarily small and proves nothing, so they
/// are counted in diverging_restarts and excluded from the decision.
struct ALSReport {
    std::size_t target_rank = 0;
    double best_residual = 0;  ///< min over all executed restarts, raw
    /// Min over converged restarts; absent when every restart diverged.
    std::optional<double> best_stable_residual;
    int restarts = 0;       ///< requested
    int restarts_run = 0;   ///< executed (early stop on success)
    int diverging_restarts = 0;
    int iterations_used = 0;  ///< total sweeps across executed restarts
    /// Present iff a converged restart reached oracle_tol; re-evaluates to
    /// the input within that residual.
    std::optional<CPDecomposition> decomposition;
    double oracle_tol = 0;
    std::uint64_t seed = 0;
};

/// Alternating least squares over complex factors, seeded restarts.
/// Sizes are expected tiny (the oracle is documented for l, m, n <= 4).
ALSReport als_fit(const Tensor3& a, std::size_t target_rank, const ALSOptions& opts,
                  std::uint64_t seed);

enum class OracleDecision { at_most_r, no_fit_found };

std::string to_string(OracleDecision d);

/// AtMostR iff a converged restart reached oracle_tol.
OracleDecision oracle_rank_decision(const Tensor3& a, std::size_t target_rank,
                                    const ALSOptions& opts, std::uint64_t seed);

}  // namespace rankleap
