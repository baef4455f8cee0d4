#include "rankleap/approx.hpp"

namespace rankleap {

PerturbationOutcome perturb_simple_pair(const Matrix& a, const Matrix& b, double eps,
                                        std::uint64_t seed, const Tolerances& tol) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
        throw DimensionError("perturb_simple_pair: need square matrices of one order");
    if (!(eps > 0)) throw DimensionError("perturb_simple_pair: eps must be positive");

    const std::size_t n = a.rows();
    Rng rng(seed);
    double scale = eps / (4.0 * static_cast<double>(n) * static_cast<double>(n));

    for (int attempt = 1; attempt <= tol.max_attempts; ++attempt) {
        Matrix a_eps = a;
        Matrix b_eps = b;
        for (auto& z : a_eps.data()) z += rng.complex_box(scale);
        for (auto& z : b_eps.data()) z += rng.complex_box(scale);

        const double dev_a = norm_l1(a_eps - a);
        const double dev_b = norm_l1(b_eps - b);
        const bool ok = dev_a < eps && dev_b < eps &&
                        is_invertible(a_eps, tol.sing_tol_rel) &&
                        is_invertible(b_eps, tol.sing_tol_rel) &&
                        spectrum(a_eps, tol.gap_tol_rel * norm_l1(a_eps)).simple &&
                        spectrum(b_eps, tol.gap_tol_rel * norm_l1(b_eps)).simple;
        if (ok) {
            const Matrix product = a_eps * inverse(b_eps, tol.sing_tol_rel);
            if (spectrum(product, tol.gap_tol_rel * norm_l1(product)).simple) {
                PerturbationOutcome out;
                out.a_eps = std::move(a_eps);
                out.b_eps = std::move(b_eps);
                out.dev_a = dev_a;
                out.dev_b = dev_b;
                // re-verify from scratch rather than trusting the loop
                out.spec_a = spectrum(out.a_eps, tol.gap_tol_rel * norm_l1(out.a_eps));
                out.spec_b = spectrum(out.b_eps, tol.gap_tol_rel * norm_l1(out.b_eps));
                const Matrix prod = out.a_eps * inverse(out.b_eps, tol.sing_tol_rel);
                out.spec_product = spectrum(prod, tol.gap_tol_rel * norm_l1(prod));
                out.attempts = attempt;
                out.seed = seed;
                return out;
            }
        }
        if (attempt % 8 == 0) scale *= 0.5;
    }
    throw PerturbationError("perturb_simple_pair: no admissible perturbation in " +
                            std::to_string(tol.max_attempts) +
                            " attempts (check gap_tol against eps)");
}

RankNApproxResult rank_n_approximate(const Tensor3& a, double eps, std::uint64_t seed,
                                     const Tolerances& tol) {
    if (a.dim_n() != 2) throw DimensionError("rank_n_approximate: tensor must have two slices");
    if (a.dim_l() != a.dim_m())
        throw DimensionError("rank_n_approximate: slices must be square");
    if (!(eps > 0)) throw DimensionError("rank_n_approximate: eps must be positive");

    // arrange roles so the product with a simple spectrum is B_2 B_1^{-1}
    const PerturbationOutcome out =
        perturb_simple_pair(a.slice(1), a.slice(0), eps / 2.0, seed, tol);

    Tensor3 approx = Tensor3::from_slices({out.b_eps, out.a_eps});
    const double deviation = norm_l1(sub(approx, a));

    RankCertificate cert = bi_rank_check(approx, tol, derive_seed(seed, 2));
    if (cert.verdict != RankVerdict::rank_equals_m)
        throw Error("rank_n_approximate: perturbed tensor failed certification (" +
                    to_string(cert.verdict) + ")");

    RankNApproxResult res;
    res.approximation = std::move(approx);
    res.certificate = std::move(cert);
    res.deviation = deviation;
    res.attempts = out.attempts;
    res.seed = seed;
    return res;
}

Tensor3 LeapFamily::member(std::uint64_t k) const {
    if (k < 1) throw DimensionError("LeapFamily::member: k must be positive");
    Tensor3 a_k = limit;
    const double delta = 1.0 / static_cast<double>(k);
    for (std::size_t block = 0; block < n; ++block) {
        const std::size_t idx = 2 * block + 1;
        a_k.at(idx, idx, 1) += delta;
    }
    return a_k;
}

LeapFamily build_leap_family(std::size_t n, std::uint64_t eigenvalue_seed) {
    if (n < 1) throw DimensionError("build_leap_family: n must be positive");

    LeapFamily fam;
    fam.n = n;
    fam.seed = eigenvalue_seed;

    // Purely imaginary eigenvalues with gaps >= 0.3: the member's real-part
    // shift by 1/k then changes each perturbed entry by exactly fl(1/k).
    Rng rng(eigenvalue_seed);
    fam.eigenvalues.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        fam.eigenvalues.push_back(Cx{0.0, 1.0 + 0.4 * static_cast<double>(i) +
                                              0.1 * rng.uniform()});

    const std::size_t order = 2 * n;
    Matrix jordan(order, order);
    for (std::size_t block = 0; block < n; ++block) {
        const std::size_t r = 2 * block;
        jordan(r, r) = fam.eigenvalues[block];
        jordan(r, r + 1) = 1.0;
        jordan(r + 1, r + 1) = fam.eigenvalues[block];
    }
    fam.limit = Tensor3::from_slices({Matrix::identity(order), std::move(jordan)});
    return fam;
}

}  // namespace rankleap
