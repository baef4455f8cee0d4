#include "rankleap/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace rankleap {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Givens {
    double c = 1.0;  // real by construction
    Cx s = 0.0;
};

// Rotation with [c s; -conj(s) c] * [f; g] = [r; 0].
Givens make_givens(Cx f, Cx g) {
    Givens rot;
    const double af = cabs(f);
    const double ag = cabs(g);
    if (ag == 0.0) return rot;
    if (af == 0.0) {
        rot.c = 0.0;
        rot.s = std::conj(g) / ag;
        return rot;
    }
    const double d = std::hypot(af, ag);
    const Cx phase = f / af;
    rot.c = af / d;
    rot.s = phase * std::conj(g) / d;
    return rot;
}

void rotate_rows(Matrix& h, const Givens& g, std::size_t i, std::size_t col_begin) {
    for (std::size_t j = col_begin; j < h.cols(); ++j) {
        const Cx x = h(i, j);
        const Cx y = h(i + 1, j);
        h(i, j) = g.c * x + g.s * y;
        h(i + 1, j) = -std::conj(g.s) * x + g.c * y;
    }
}

// Right-multiplication by the adjoint rotation, columns i, i+1.
void rotate_cols(Matrix& h, const Givens& g, std::size_t i, std::size_t row_end) {
    for (std::size_t r = 0; r <= row_end; ++r) {
        const Cx x = h(r, i);
        const Cx y = h(r, i + 1);
        h(r, i) = g.c * x + std::conj(g.s) * y;
        h(r, i + 1) = -g.s * x + g.c * y;
    }
}

// Householder reduction to upper Hessenberg form; accumulates the unitary
// similarity into q (a = q h q*).
void hessenberg(Matrix& h, Matrix& q) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double colnorm = 0;
        for (std::size_t i = k + 1; i < n; ++i) colnorm = std::hypot(colnorm, cabs(h(i, k)));
        if (colnorm == 0.0) continue;

        Vector v(n - k - 1);
        for (std::size_t i = k + 1; i < n; ++i) v[i - k - 1] = h(i, k);
        const double a0 = cabs(v[0]);
        const Cx phase = a0 == 0.0 ? Cx{1.0} : v[0] / a0;
        v[0] += phase * colnorm;
        double vnorm = 0;
        for (const Cx& z : v) vnorm = std::hypot(vnorm, cabs(z));
        if (vnorm == 0.0) continue;
        for (Cx& z : v) z /= vnorm;

        // h <- P h with P = I - 2 v v* acting on rows k+1..n-1
        for (std::size_t j = k; j < n; ++j) {
            Cx dot = 0;
            for (std::size_t i = 0; i < v.size(); ++i) dot += std::conj(v[i]) * h(k + 1 + i, j);
            dot *= 2.0;
            for (std::size_t i = 0; i < v.size(); ++i) h(k + 1 + i, j) -= dot * v[i];
        }
        // h <- h P on columns k+1..n-1
        for (std::size_t r = 0; r < n; ++r) {
            Cx dot = 0;
            for (std::size_t i = 0; i < v.size(); ++i) dot += h(r, k + 1 + i) * v[i];
            dot *= 2.0;
            for (std::size_t i = 0; i < v.size(); ++i) h(r, k + 1 + i) -= dot * std::conj(v[i]);
        }
        // q <- q P
        for (std::size_t r = 0; r < n; ++r) {
            Cx dot = 0;
            for (std::size_t i = 0; i < v.size(); ++i) dot += q(r, k + 1 + i) * v[i];
            dot *= 2.0;
            for (std::size_t i = 0; i < v.size(); ++i) q(r, k + 1 + i) -= dot * std::conj(v[i]);
        }
        // entries below the subdiagonal are now zero by construction
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

Cx wilkinson_shift(const Matrix& h, std::size_t hi) {
    const Cx a = h(hi - 1, hi - 1);
    const Cx b = h(hi - 1, hi);
    const Cx c = h(hi, hi - 1);
    const Cx d = h(hi, hi);
    const Cx half = 0.5 * (a - d);
    const Cx disc = std::sqrt(half * half + b * c);
    const Cx mu1 = d + half + disc;
    const Cx mu2 = d + half - disc;
    return cabs(mu1 - d) < cabs(mu2 - d) ? mu1 : mu2;
}

}  // namespace

SchurResult schur(const Matrix& a, std::size_t max_qr_iters) {
    if (!a.is_square()) throw DimensionError("schur: matrix not square");
    const std::size_t n = a.rows();
    SchurResult out{Matrix::identity(n), a};
    if (n < 2) return out;
    if (max_qr_iters == 0) max_qr_iters = 100 * n;

    Matrix& h = out.t;
    Matrix& q = out.q;
    hessenberg(h, q);

    const double hnorm = std::max(norm_l1(h), std::numeric_limits<double>::min());
    auto negligible = [&](std::size_t i) {
        double local = cabs(h(i - 1, i - 1)) + cabs(h(i, i));
        if (local == 0.0) local = hnorm;
        return cabs(h(i, i - 1)) <= kEps * local;
    };

    std::size_t hi = n - 1;
    std::size_t iters = 0;
    std::size_t stuck = 0;
    while (true) {
        while (hi > 0 && negligible(hi)) {
            h(hi, hi - 1) = 0.0;
            --hi;
            stuck = 0;
        }
        if (hi == 0) break;

        std::size_t lo = hi;
        while (lo > 0 && !negligible(lo)) --lo;
        if (lo > 0) h(lo, lo - 1) = 0.0;

        if (++iters > max_qr_iters)
            throw ConvergenceError("schur: QR iteration did not converge within " +
                                   std::to_string(max_qr_iters) + " sweeps");
        // occasional ad-hoc shift to break symmetric stalls
        const Cx mu = (++stuck % 10 == 0) ? h(hi, hi) + 0.75 * cabs(h(hi, hi - 1))
                                          : wilkinson_shift(h, hi);

        for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= mu;
        std::vector<Givens> rots;
        rots.reserve(hi - lo);
        for (std::size_t i = lo; i < hi; ++i) {
            Givens g = make_givens(h(i, i), h(i + 1, i));
            rotate_rows(h, g, i, i);
            h(i + 1, i) = 0.0;
            rots.push_back(g);
        }
        for (std::size_t i = lo; i < hi; ++i) {
            const Givens& g = rots[i - lo];
            rotate_cols(h, g, i, std::min(i + 2, hi));
            rotate_cols(q, g, i, n - 1);
        }
        for (std::size_t i = lo; i <= hi; ++i) h(i, i) += mu;
    }
    return out;
}

namespace {

// Eigenvectors of a = q t q* by back-substitution on the triangular factor.
Matrix eigenvectors_from_schur(const SchurResult& s) {
    const Matrix& t = s.t;
    const std::size_t n = t.rows();
    const double smallnum = std::max(kEps * norm_l1(t), std::numeric_limits<double>::min());

    Matrix y(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        y(k, k) = 1.0;
        for (std::size_t jj = k; jj-- > 0;) {
            Cx acc = 0;
            for (std::size_t i = jj + 1; i <= k; ++i) acc += t(jj, i) * y(i, k);
            Cx den = t(jj, jj) - t(k, k);
            if (cabs(den) < smallnum) den = smallnum;
            y(jj, k) = -acc / den;
        }
    }
    Matrix v = s.q * y;
    // normalize; phase convention: largest-modulus entry real positive
    for (std::size_t k = 0; k < n; ++k) {
        double norm2 = 0;
        std::size_t imax = 0;
        double amax = -1;
        for (std::size_t i = 0; i < n; ++i) {
            const double m = cabs(v(i, k));
            norm2 += m * m;
            if (m > amax) {
                amax = m;
                imax = i;
            }
        }
        const double nrm = std::sqrt(norm2);
        if (nrm == 0.0) continue;
        Cx scale = 1.0 / nrm;
        if (amax > 0) scale *= std::conj(v(imax, k)) / amax;
        for (std::size_t i = 0; i < n; ++i) v(i, k) *= scale;
    }
    return v;
}

double min_pairwise_gap(const std::vector<Cx>& vals) {
    if (vals.size() < 2) return std::numeric_limits<double>::infinity();
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vals.size(); ++i)
        for (std::size_t j = i + 1; j < vals.size(); ++j)
            g = std::min(g, cabs(vals[i] - vals[j]));
    return g;
}

}  // namespace

SpectrumReport spectrum(const Matrix& a, double gap_tol) {
    const SchurResult s = schur(a);
    const std::size_t n = a.rows();
    SpectrumReport rep;
    rep.gap_tol = gap_tol;
    rep.eigenvalues.reserve(n);
    for (std::size_t i = 0; i < n; ++i) rep.eigenvalues.push_back(s.t(i, i));
    rep.min_gap = min_pairwise_gap(rep.eigenvalues);
    rep.simple = rep.min_gap > gap_tol;

    const Matrix v = eigenvectors_from_schur(s);
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double entry = 0;
        for (std::size_t i = 0; i < n; ++i) {
            Cx r = -rep.eigenvalues[k] * v(i, k);
            for (std::size_t j = 0; j < n; ++j) r += a(i, j) * v(j, k);
            entry = std::max(entry, cabs(r));
        }
        worst = std::max(worst, entry);
    }
    rep.residual = worst;
    return rep;
}

SpectrumReport spectrum(const Matrix& a) {
    return spectrum(a, Tolerances{}.gap_tol_rel * norm_l1(a));
}

DiagReport diagonalize(const Matrix& a, double gap_tol, double rank_tol) {
    if (!a.is_square()) throw DimensionError("diagonalize: matrix not square");
    const std::size_t n = a.rows();
    const SchurResult s = schur(a);

    std::vector<Cx> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = s.t(i, i);

    DiagReport rep;
    if (min_pairwise_gap(vals) > gap_tol) {
        rep.diagonalizable = true;
        rep.basis = eigenvectors_from_schur(s);
        Matrix d(n, n);
        for (std::size_t i = 0; i < n; ++i) d(i, i) = vals[i];
        rep.diag = d;
        return rep;
    }

    // single-linkage clusters at distance gap_tol
    std::vector<std::size_t> cluster(n);
    std::iota(cluster.begin(), cluster.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (cluster[x] != x) x = cluster[x] = cluster[cluster[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (cabs(vals[i] - vals[j]) <= gap_tol) cluster[find(i)] = find(j);

    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::size_t> root_of;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        auto it = std::find(root_of.begin(), root_of.end(), r);
        if (it == root_of.end()) {
            root_of.push_back(r);
            groups.push_back({i});
        } else {
            groups[static_cast<std::size_t>(it - root_of.begin())].push_back(i);
        }
    }

    Matrix basis(n, n);
    Matrix d(n, n);
    std::size_t next_col = 0;
    for (const auto& grp : groups) {
        Cx mean = 0;
        for (std::size_t idx : grp) mean += vals[idx];
        mean /= static_cast<double>(grp.size());

        Matrix shifted = a;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= mean;
        const auto null_basis = nullspace(shifted, rank_tol);
        const std::size_t geometric = null_basis.size();
        if (geometric < grp.size()) {
            rep.diagonalizable = false;
            rep.defect_witness = DefectWitness{mean, grp.size(), geometric};
            return rep;
        }
        // geometric > algebraic only when rank_tol swallowed another cluster;
        // keep the first alg vectors so the basis stays square
        for (std::size_t c = 0; c < grp.size(); ++c) {
            for (std::size_t i = 0; i < n; ++i) basis(i, next_col) = null_basis[c][i];
            d(next_col, next_col) = mean;
            ++next_col;
        }
    }
    rep.diagonalizable = true;
    rep.basis = basis;
    rep.diag = d;
    return rep;
}

DiagReport diagonalize(const Matrix& a) {
    const double scale = norm_l1(a);
    const Tolerances tol;
    return diagonalize(a, tol.gap_tol_rel * scale, tol.rank_tol_rel * scale);
}

SimDiagReport simultaneously_diagonalizable(const std::vector<Matrix>& members,
                                            const Tolerances& tol, std::uint64_t seed) {
    if (members.empty()) throw DimensionError("simultaneously_diagonalizable: empty family");
    const std::size_t n = members.front().rows();
    for (const Matrix& c : members)
        if (!c.is_square() || c.rows() != n)
            throw DimensionError("simultaneously_diagonalizable: members must share one order");

    SimDiagReport rep;
    std::vector<double> norms;
    norms.reserve(members.size());
    for (const Matrix& c : members) norms.push_back(norm_l1(c));

    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            const double comm = norm_l1(members[i] * members[j] - members[j] * members[i]);
            if (comm > tol.comm_tol * norms[i] * norms[j]) {
                rep.simultaneous = false;
                rep.obstruction = SimDiagReport::Obstruction::commutator;
                rep.member_i = i;
                rep.member_j = j;
                rep.commutator_norm = comm;
                return rep;
            }
        }
    }

    std::vector<DiagReport> diags;
    diags.reserve(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        diags.push_back(
            diagonalize(members[i], tol.gap_tol_rel * norms[i], tol.rank_tol_rel * norms[i]));
        if (!diags.back().diagonalizable) {
            rep.simultaneous = false;
            rep.obstruction = SimDiagReport::Obstruction::non_diagonalizable;
            rep.member_i = i;
            rep.defect_witness = diags.back().defect_witness;
            return rep;
        }
    }

    auto accept_basis = [&](const Matrix& p) -> bool {
        std::vector<std::vector<Cx>> diagonals;
        for (std::size_t i = 0; i < members.size(); ++i) {
            const Matrix conj = solve(p, members[i] * p, tol.sing_tol_rel);
            if (offdiag_l1(conj) > tol.sim_tol * norms[i]) return false;
            std::vector<Cx> d(n);
            for (std::size_t k = 0; k < n; ++k) d[k] = conj(k, k);
            diagonals.push_back(std::move(d));
        }
        rep.simultaneous = true;
        rep.basis = p;
        rep.member_diagonals = std::move(diagonals);
        return true;
    };

    // a single diagonalizable member is its own certificate
    if (members.size() == 1) {
        rep.tries_used = 0;
        if (accept_basis(*diags.front().basis)) return rep;
        throw InconclusiveError(
            "simultaneously_diagonalizable: basis of the single member failed validation");
    }

    Rng rng(seed);
    for (int attempt = 0; attempt < tol.max_tries; ++attempt) {
        rep.tries_used = attempt + 1;
        Matrix combo(n, n);
        for (const Matrix& c : members) {
            const double coeff = rng.uniform(-1.0, 1.0);
            for (std::size_t idx = 0; idx < combo.data().size(); ++idx)
                combo.data()[idx] += coeff * c.data()[idx];
        }
        const double combo_norm = norm_l1(combo);
        if (!spectrum(combo, tol.gap_tol_rel * combo_norm).simple) continue;
        const DiagReport combo_diag =
            diagonalize(combo, tol.gap_tol_rel * combo_norm, tol.rank_tol_rel * combo_norm);
        if (!combo_diag.diagonalizable || !combo_diag.basis) continue;
        if (accept_basis(*combo_diag.basis)) return rep;
    }
    throw InconclusiveError("simultaneously_diagonalizable: no generic combination settled the "
                            "family within " +
                            std::to_string(tol.max_tries) + " tries");
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD
// ---------------------------------------------------------------------------

SvdResult jacobi_svd(const Matrix& a) {
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    Matrix b = a;
    Matrix v = Matrix::identity(cols);

    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                double app = 0, aqq = 0;
                Cx apq = 0;
                for (std::size_t i = 0; i < rows; ++i) {
                    app += std::norm(b(i, p));
                    aqq += std::norm(b(i, q));
                    apq += std::conj(b(i, p)) * b(i, q);
                }
                const double mag = cabs(apq);
                if (mag <= 1e-15 * std::sqrt(app * aqq)) continue;
                rotated = true;

                const Cx alpha_bar = std::conj(apq / mag);
                const double tau = (aqq - app) / (2.0 * mag);
                const double t =
                    (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t i = 0; i < rows; ++i) {
                    const Cx x = b(i, p);
                    const Cx y = b(i, q);
                    b(i, p) = c * x - alpha_bar * s * y;
                    b(i, q) = s * x + alpha_bar * c * y;
                }
                for (std::size_t i = 0; i < cols; ++i) {
                    const Cx x = v(i, p);
                    const Cx y = v(i, q);
                    v(i, p) = c * x - alpha_bar * s * y;
                    v(i, q) = s * x + alpha_bar * c * y;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        double s = 0;
        for (std::size_t i = 0; i < rows; ++i) s += std::norm(b(i, j));
        sigma[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(cols);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SvdResult out;
    out.singular_values.resize(cols);
    out.v = Matrix(cols, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        out.singular_values[j] = sigma[order[j]];
        for (std::size_t i = 0; i < cols; ++i) out.v(i, j) = v(i, order[j]);
    }
    return out;
}

std::size_t numerical_rank(const Matrix& a, double tol) {
    const SvdResult svd = jacobi_svd(a);
    std::size_t r = 0;
    for (double s : svd.singular_values)
        if (s > tol) ++r;
    return r;
}

std::vector<Vector> nullspace(const Matrix& a, double tol) {
    const SvdResult svd = jacobi_svd(a);
    std::vector<Vector> basis;
    for (std::size_t j = 0; j < svd.singular_values.size(); ++j)
        if (svd.singular_values[j] <= tol) basis.push_back(svd.v.col(j));
    return basis;
}

}  // namespace rankleap
