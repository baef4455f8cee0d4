#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rankleap/oracle.hpp"
#include "rankleap/rank.hpp"
#include "rankleap/samples.hpp"

using namespace rankleap;
namespace to = testing_oracles;

namespace {

// generous budget for fits that must be found (clean fits can converge slowly)
ALSOptions definite_fit_options() {
    ALSOptions opts;
    opts.restarts = 12;
    opts.max_iters = 25000;
    return opts;
}

CPDecomposition random_cp(std::size_t rank, std::size_t l, std::size_t m, std::size_t n,
                          Rng& rng) {
    CPDecomposition d;
    for (std::size_t t = 0; t < rank; ++t) {
        CPTerm term;
        term.x.resize(l);
        term.y.resize(m);
        term.z.resize(n);
        for (auto& v : term.x) v = rng.complex_box(1.0);
        for (auto& v : term.y) v = rng.complex_box(1.0);
        for (auto& v : term.z) v = rng.complex_box(1.0);
        d.terms.push_back(std::move(term));
    }
    return d;
}

}  // namespace

TEST(AlsFit, ExactRankOne) {
    Rng rng(401);
    Vector x(3), y(2), z(2);
    for (auto& v : x) v = rng.complex_box(1.0);
    for (auto& v : y) v = rng.complex_box(1.0);
    for (auto& v : z) v = rng.complex_box(1.0);
    const Tensor3 t = outer3(x, y, z);

    const ALSReport rep = als_fit(t, 1, ALSOptions{}, 11);
    ASSERT_TRUE(rep.best_stable_residual);
    EXPECT_LT(*rep.best_stable_residual, 1e-10);
    ASSERT_TRUE(rep.decomposition);
    EXPECT_EQ(rep.decomposition->terms.size(), 1u);
    EXPECT_LE(norm_fro(sub(cp_to_tensor(*rep.decomposition, 3, 2, 2), t)),
              1e-9 * norm_fro(t));
}

TEST(AlsFit, RankTwoExampleTensor) {
    const ALSReport rep = als_fit(sample_example(), 2, ALSOptions{}, 13);
    ASSERT_TRUE(rep.best_stable_residual);
    EXPECT_LT(*rep.best_stable_residual, 1e-8);
    EXPECT_TRUE(rep.decomposition);
}

TEST(AlsFit, WTensorAtRankTwoOnlyDiverges) {
    // rank 3, border rank 2: every restart slides toward the unattained
    // infimum and never meets the convergence criterion
    ALSOptions opts;
    opts.stop_on_success = false;
    const ALSReport rep = als_fit(sample_w(), 2, opts, 20240915);
    EXPECT_EQ(rep.restarts_run, 50);
    EXPECT_EQ(rep.diverging_restarts, rep.restarts_run);
    EXPECT_FALSE(rep.best_stable_residual);
    EXPECT_FALSE(rep.decomposition);
    EXPECT_GT(rep.best_residual, 0.0);  // raw residual reported, nothing hidden
    EXPECT_EQ(oracle_rank_decision(sample_w(), 2, opts, 20240915),
              OracleDecision::no_fit_found);
}

TEST(AlsFit, WTensorFitsAtRankThree) {
    const ALSReport rep = als_fit(sample_w(), 3, ALSOptions{}, 20240915);
    ASSERT_TRUE(rep.best_stable_residual);
    EXPECT_LT(*rep.best_stable_residual, 1e-8);
    EXPECT_EQ(oracle_rank_decision(sample_w(), 3, ALSOptions{}, 20240915),
              OracleDecision::at_most_r);
}

TEST(AlsFit, DecompositionPresentExactlyWhenFitFound) {
    const ALSReport no_fit = als_fit(sample_w(), 2, ALSOptions{}, 3);
    EXPECT_FALSE(no_fit.decomposition);
    const ALSReport fit = als_fit(sample_w(), 3, ALSOptions{}, 3);
    ASSERT_TRUE(fit.best_stable_residual);
    EXPECT_EQ(fit.decomposition.has_value(), *fit.best_stable_residual <= fit.oracle_tol);
}

TEST(OracleDecisionTest, MonotoneInTheTargetRank) {
    Rng rng(419);
    const ALSOptions opts = definite_fit_options();
    for (int trial = 0; trial < 5; ++trial) {
        const Tensor3 t = cp_to_tensor(random_cp(2, 2, 2, 2, rng), 2, 2, 2);
        EXPECT_EQ(oracle_rank_decision(t, 2, opts, 100 + trial), OracleDecision::at_most_r);
        EXPECT_EQ(oracle_rank_decision(t, 3, opts, 200 + trial), OracleDecision::at_most_r);
    }
}

TEST(OracleDecisionTest, ConstructedRankTwoFits) {
    Rng rng(421);
    const ALSOptions opts = definite_fit_options();
    for (int trial = 0; trial < 5; ++trial) {
        const Tensor3 t = cp_to_tensor(random_cp(2, 2, 2, 2, rng), 2, 2, 2);
        EXPECT_EQ(oracle_rank_decision(t, 2, opts, 300 + trial), OracleDecision::at_most_r);
    }
}

TEST(OracleDecisionTest, ConcordantWithTheSliceRatioCertifier) {
    const ALSOptions opts = definite_fit_options();
    for (int t = 0; t < 20; ++t) {
        const Tensor3 a = sample_random(2, 2, 2, derive_seed(777, static_cast<std::uint64_t>(t)));
        if (!is_invertible(a.slice(0))) continue;
        const RankCertificate cert = bi_rank_check(a, Tolerances{}, 900 + t);
        const OracleDecision decision = oracle_rank_decision(a, 2, opts, 1900 + t);
        if (cert.verdict == RankVerdict::rank_equals_m)
            EXPECT_EQ(decision, OracleDecision::at_most_r) << "seed index " << t;
        if (cert.verdict == RankVerdict::rank_exceeds_m)
            EXPECT_EQ(decision, OracleDecision::no_fit_found) << "seed index " << t;
    }
}

TEST(AlsFit, ReportBookkeeping) {
    const ALSReport rep = als_fit(sample_example(), 2, ALSOptions{}, 29);
    EXPECT_EQ(rep.target_rank, 2u);
    EXPECT_EQ(rep.restarts, 50);
    EXPECT_GE(rep.restarts_run, 1);
    EXPECT_LE(rep.restarts_run, rep.restarts);
    EXPECT_GT(rep.iterations_used, 0);
    EXPECT_DOUBLE_EQ(rep.oracle_tol, 1e-7);
    EXPECT_EQ(rep.seed, 29u);
    EXPECT_THROW(als_fit(sample_example(), 0, ALSOptions{}, 1), DimensionError);
}

TEST(AlsFit, DeterministicGivenSeed) {
    const ALSReport a = als_fit(sample_example(), 2, ALSOptions{}, 31);
    const ALSReport b = als_fit(sample_example(), 2, ALSOptions{}, 31);
    EXPECT_EQ(a.best_residual, b.best_residual);
    EXPECT_EQ(a.restarts_run, b.restarts_run);
    EXPECT_EQ(a.iterations_used, b.iterations_used);
}
