#include "rankleap/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rankleap/spectra.hpp"

namespace rankleap {

std::string to_string(OracleDecision d) {
    return d == OracleDecision::at_most_r ? "at_most_r" : "no_fit_found";
}

namespace {

// Minimum-norm solution of G X = B through the Jacobi SVD; tolerant of the
// rank-deficient Grams that collinear factors produce.
Matrix pinv_solve(const Matrix& g, const Matrix& b) {
    const SvdResult svd = jacobi_svd(g);
    const std::size_t r = g.rows();
    Matrix x(r, b.cols());
    if (svd.singular_values.empty() || svd.singular_values[0] == 0.0) return x;
    const double cutoff = 1e-14 * svd.singular_values[0];
    for (std::size_t j = 0; j < r; ++j) {
        const double sigma = svd.singular_values[j];
        if (sigma <= cutoff) continue;
        const Vector vj = svd.v.col(j);
        Vector uj = mat_vec(g, vj);
        for (Cx& z : uj) z /= sigma;
        for (std::size_t col = 0; col < b.cols(); ++col) {
            Cx dot = 0;
            for (std::size_t i = 0; i < r; ++i) dot += std::conj(uj[i]) * b(i, col);
            dot /= sigma;
            for (std::size_t i = 0; i < r; ++i) x(i, col) += vj[i] * dot;
        }
    }
    return x;
}

Matrix gram(const Matrix& a) { return adjoint(a) * a; }

Matrix hadamard(const Matrix& a, const Matrix& b) {
    Matrix c = a;
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] *= b.data()[i];
    return c;
}

struct Factors {
    Matrix x, y, z;  // l x r, m x r, n x r
};

double relative_residual(const Tensor3& t, const Factors& f, std::size_t rank, double tnorm) {
    double acc = 0;
    for (std::size_t k = 0; k < t.dim_n(); ++k)
        for (std::size_t i = 0; i < t.dim_l(); ++i)
            for (std::size_t j = 0; j < t.dim_m(); ++j) {
                Cx approx = 0;
                for (std::size_t c = 0; c < rank; ++c)
                    approx += f.x(i, c) * f.y(j, c) * f.z(k, c);
                acc += std::norm(t.at(i, j, k) - approx);
            }
    return std::sqrt(acc) / tnorm;
}

void update_mode(const Tensor3& t, Factors& f, std::size_t rank, int mode) {
    const std::size_t l = t.dim_l(), m = t.dim_m(), n = t.dim_n();
    const Matrix& a = (mode == 0) ? f.y : f.x;
    const Matrix& b = (mode == 2) ? f.y : f.z;
    const Matrix g = hadamard(gram(a), gram(b));

    const std::size_t dim = (mode == 0) ? l : (mode == 1) ? m : n;
    Matrix rhs(rank, dim);
    for (std::size_t c = 0; c < rank; ++c)
        for (std::size_t i = 0; i < l; ++i)
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    const std::size_t d = (mode == 0) ? i : (mode == 1) ? j : k;
                    const Cx w = (mode == 0)   ? f.y(j, c) * f.z(k, c)
                                 : (mode == 1) ? f.x(i, c) * f.z(k, c)
                                               : f.x(i, c) * f.y(j, c);
                    rhs(c, d) += std::conj(w) * t.at(i, j, k);
                }
    const Matrix s = pinv_solve(g, rhs);
    Matrix& target = (mode == 0) ? f.x : (mode == 1) ? f.y : f.z;
    target = transpose(s);
}

}  // namespace

ALSReport als_fit(const Tensor3& a, std::size_t target_rank, const ALSOptions& opts,
                  std::uint64_t seed) {
    if (target_rank < 1) throw DimensionError("als_fit: target rank must be positive");

    const std::size_t l = a.dim_l(), m = a.dim_m(), n = a.dim_n();
    const double tnorm = std::max(norm_fro(a), std::numeric_limits<double>::min());

    ALSReport rep;
    rep.target_rank = target_rank;
    rep.restarts = opts.restarts;
    rep.oracle_tol = opts.oracle_tol;
    rep.seed = seed;
    rep.best_residual = std::numeric_limits<double>::infinity();

    std::optional<Factors> best_stable_factors;

    for (int restart = 0; restart < opts.restarts; ++restart) {
        ++rep.restarts_run;
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(restart)));
        Factors f{Matrix(l, target_rank), Matrix(m, target_rank), Matrix(n, target_rank)};
        for (auto& z : f.x.data()) z = rng.complex_box(1.0);
        for (auto& z : f.y.data()) z = rng.complex_box(1.0);
        for (auto& z : f.z.data()) z = rng.complex_box(1.0);

        double prev = std::numeric_limits<double>::infinity();
        double res = prev;
        bool converged = false;
        for (int it = 0; it < opts.max_iters; ++it) {
            update_mode(a, f, target_rank, 0);
            update_mode(a, f, target_rank, 1);
            update_mode(a, f, target_rank, 2);
            ++rep.iterations_used;
            res = relative_residual(a, f, target_rank, tnorm);
            if (res <= opts.residual_floor) {
                converged = true;
                break;
            }
            if (std::isfinite(prev) && prev - res < opts.improve_tol * prev) {
                converged = true;
                break;
            }
            prev = res;
        }

        const double max_factor =
            std::max({norm_fro(f.x), norm_fro(f.y), norm_fro(f.z)});
        const bool diverging = !converged || max_factor > opts.norm_cap;

        rep.best_residual = std::min(rep.best_residual, res);
        if (diverging) {
            ++rep.diverging_restarts;
            continue;
        }
        if (!rep.best_stable_residual || res < *rep.best_stable_residual) {
            rep.best_stable_residual = res;
            if (res <= opts.oracle_tol) best_stable_factors = f;
        }
        if (opts.stop_on_success && rep.best_stable_residual &&
            *rep.best_stable_residual <= opts.oracle_tol)
            break;
    }

    if (best_stable_factors) {
        CPDecomposition cp;
        cp.terms.reserve(target_rank);
        for (std::size_t c = 0; c < target_rank; ++c) {
            CPTerm term;
            term.x = best_stable_factors->x.col(c);
            term.y = best_stable_factors->y.col(c);
            term.z = best_stable_factors->z.col(c);
            cp.terms.push_back(std::move(term));
        }
        cp.drop_zero_terms();
        rep.decomposition = std::move(cp);
    }
    return rep;
}

OracleDecision oracle_rank_decision(const Tensor3& a, std::size_t target_rank,
                                    const ALSOptions& opts, std::uint64_t seed) {
    const ALSReport rep = als_fit(a, target_rank, opts, seed);
    const bool fit = rep.best_stable_residual && *rep.best_stable_residual <= opts.oracle_tol;
    return fit ? OracleDecision::at_most_r : OracleDecision::no_fit_found;
}

}  // namespace rankleap
