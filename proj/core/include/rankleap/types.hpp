#pragma once

#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankleap {

/// All arithmetic is complex double precision.
using Cx = std::complex<double>;
using Vector = std::vector<Cx>;

/// Overflow-safe complex modulus. Exact for purely real or purely
/// imaginary values, which the leap-family norm identities rely on.
inline double cabs(Cx z) {
    if (z.imag() == 0.0) return std::abs(z.real());
    if (z.real() == 0.0) return std::abs(z.imag());
    return std::hypot(z.real(), z.imag());
}

inline bool is_finite(Cx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Incompatible shapes passed to an operation.
struct DimensionError : Error {
    using Error::Error;
};

/// A pivot fell below the singularity threshold (matrix not invertible
/// at the requested tolerance), or a group-triple factor is singular.
struct SingularMatrixError : Error {
    using Error::Error;
};

/// QR iteration exhausted its sweep budget.
struct ConvergenceError : Error {
    using Error::Error;
};

/// The simultaneous-diagonalizability test ran out of generic
/// combinations without reaching a verdict.
struct InconclusiveError : Error {
    using Error::Error;
};

/// perturb_simple_pair exhausted its attempt budget.
struct PerturbationError : Error {
    using Error::Error;
};

/// No linear combination of slices produced an invertible first slice.
struct SliceMixingError : Error {
    using Error::Error;
};

/// Malformed tensor/matrix document.
struct ParseError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Tolerances
// ---------------------------------------------------------------------------

/// Every numerical verdict in this library is relative to a declared
/// threshold; certificates embed the values that were actually used.
/// Fields suffixed _rel are scaled by the l1 norm of the matrix they are
/// applied to; the rest are used as-is.
struct Tolerances {
    double gap_tol_rel = 1e-8;    ///< eigenvalue-gap threshold x ||A||_1
    double rank_tol_rel = 1e-8;   ///< singular-value cutoff x ||A||_1
    double sing_tol_rel = 1e-12;  ///< LU pivot threshold x ||A||_1
    double sim_tol = 1e-6;        ///< off-diagonal mass after conjugation, relative
    double comm_tol = 1e-10;      ///< commutator norm, relative to ||C_i||_1 ||C_j||_1
    double diag_tol = 1e-6;       ///< basis reconstruction check, relative
    double cert_tol = 1e-8;       ///< CP re-evaluation check, relative l1
    int max_tries = 16;           ///< generic combinations before Inconclusive
    int max_attempts = 256;       ///< perturbation redraws before failure
};

// ---------------------------------------------------------------------------
// Seeded randomness
// ---------------------------------------------------------------------------

/// Deterministic random source. Doubles are derived from raw mt19937_64
/// bits so streams are identical across platforms and library versions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Complex value with re, im uniform in [-scale, scale).
    Cx complex_box(double scale) {
        double re = uniform(-scale, scale);
        double im = uniform(-scale, scale);
        return {re, im};
    }

  private:
    std::mt19937_64 gen_;
};

/// Stable derivation of independent sub-streams from one user seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace rankleap
