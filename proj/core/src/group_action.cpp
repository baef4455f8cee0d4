#include "rankleap/group_action.hpp"

#include <algorithm>

namespace rankleap {

GLTriple::GLTriple(Matrix l, Matrix m, Matrix n, double sing_tol_rel)
    : l_(std::move(l)), m_(std::move(m)), n_(std::move(n)) {
    const Matrix* factors[] = {&l_, &m_, &n_};
    const char* names[] = {"L", "M", "N"};
    for (int i = 0; i < 3; ++i) {
        if (!factors[i]->is_square())
            throw DimensionError(std::string("GLTriple: factor ") + names[i] + " not square");
        if (!is_invertible(*factors[i], sing_tol_rel))
            throw SingularMatrixError(std::string("GLTriple: factor ") + names[i] +
                                      " not invertible at the requested tolerance");
    }
}

GLTriple GLTriple::identity(std::size_t l, std::size_t m, std::size_t n) {
    return {Matrix::identity(l), Matrix::identity(m), Matrix::identity(n)};
}

Tensor3 mode_product(const Tensor3& a, const Matrix& factor, int mode) {
    switch (mode) {
        case 1: {
            if (factor.cols() != a.dim_l()) throw DimensionError("mode 1 product: shape mismatch");
            if (is_exact_identity(factor)) return a;
            std::vector<Matrix> slices;
            slices.reserve(a.dim_n());
            for (std::size_t r = 0; r < a.dim_n(); ++r) slices.push_back(factor * a.slice(r));
            return Tensor3::from_slices(std::move(slices));
        }
        case 2: {
            if (factor.cols() != a.dim_m()) throw DimensionError("mode 2 product: shape mismatch");
            if (is_exact_identity(factor)) return a;
            const Matrix ft = transpose(factor);
            std::vector<Matrix> slices;
            slices.reserve(a.dim_n());
            for (std::size_t r = 0; r < a.dim_n(); ++r) slices.push_back(a.slice(r) * ft);
            return Tensor3::from_slices(std::move(slices));
        }
        case 3: {
            if (factor.cols() != a.dim_n()) throw DimensionError("mode 3 product: shape mismatch");
            if (is_exact_identity(factor)) return a;
            std::vector<Matrix> slices(factor.rows(), Matrix(a.dim_l(), a.dim_m()));
            for (std::size_t r = 0; r < factor.rows(); ++r)
                for (std::size_t k = 0; k < a.dim_n(); ++k) {
                    const Cx nu = factor(r, k);
                    if (nu == Cx{}) continue;
                    const Matrix& src = a.slice(k);
                    Matrix& dst = slices[r];
                    for (std::size_t idx = 0; idx < dst.data().size(); ++idx)
                        dst.data()[idx] += nu * src.data()[idx];
                }
            return Tensor3::from_slices(std::move(slices));
        }
        default:
            throw DimensionError("mode_product: mode must be 1, 2 or 3");
    }
}

Tensor3 act(const GLTriple& g, const Tensor3& a) {
    if (g.l().cols() != a.dim_l() || g.m().cols() != a.dim_m() || g.n().cols() != a.dim_n())
        throw DimensionError("act: triple does not match tensor dimensions");
    return mode_product(mode_product(mode_product(a, g.l(), 1), g.m(), 2), g.n(), 3);
}

GLTriple compose(const GLTriple& g, const GLTriple& h) {
    return {g.l() * h.l(), g.m() * h.m(), g.n() * h.n()};
}

GLTriple inverse(const GLTriple& g, double sing_tol_rel) {
    return {inverse(g.l(), sing_tol_rel), inverse(g.m(), sing_tol_rel),
            inverse(g.n(), sing_tol_rel)};
}

double continuity_bound(const GLTriple& g, const GLTriple& g2, const Tensor3& a,
                        const Tensor3& a2) {
    const double m1 = std::max(norm_sup(g.l()), norm_sup(g2.l()));
    const double m2 = std::max(norm_sup(g.m()), norm_sup(g2.m()));
    const double m3 = std::max(norm_sup(g.n()), norm_sup(g2.n()));
    const double m4 = std::max(norm_sup(a), norm_sup(a2));

    const double dev = std::max({norm_sup(g.l() - g2.l()), norm_sup(g.m() - g2.m()),
                                 norm_sup(g.n() - g2.n()), norm_sup(sub(a, a2))});

    const double size = static_cast<double>(a.dim_l()) * static_cast<double>(a.dim_m()) *
                        static_cast<double>(a.dim_n());
    // telescoping the product of four factors gives four terms, each the
    // deviation of one argument times sup bounds of the other three
    const double bound =
        size * dev * (m2 * m3 * m4 + m1 * m3 * m4 + m1 * m2 * m4 + m1 * m2 * m3);

    const double actual = norm_sup(sub(act(g, a), act(g2, a2)));
    if (actual > bound)
        throw Error("continuity_bound: computed bound does not dominate the deviation");
    return bound;
}

}  // namespace rankleap
