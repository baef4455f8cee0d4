#include "rankleap/tensor.hpp"

#include <algorithm>
#include <cmath>

namespace rankleap {

Tensor3 Tensor3::from_slices(std::vector<Matrix> slices) {
    if (slices.empty()) throw DimensionError("Tensor3: need at least one slice");
    const std::size_t l = slices.front().rows();
    const std::size_t m = slices.front().cols();
    for (const Matrix& s : slices)
        if (s.rows() != l || s.cols() != m)
            throw DimensionError("Tensor3: slices must share one shape");
    Tensor3 t;
    t.l_ = l;
    t.m_ = m;
    t.n_ = slices.size();
    t.slices_ = std::move(slices);
    return t;
}

bool Tensor3::all_finite() const {
    return std::all_of(slices_.begin(), slices_.end(),
                       [](const Matrix& s) { return s.all_finite(); });
}

void CPDecomposition::drop_zero_terms() {
    auto is_zero = [](const Vector& v) {
        return std::all_of(v.begin(), v.end(), [](Cx z) { return z == Cx{}; });
    };
    std::erase_if(terms, [&](const CPTerm& t) {
        return is_zero(t.x) || is_zero(t.y) || is_zero(t.z);
    });
}

Tensor3 outer3(const Vector& x, const Vector& y, const Vector& z) {
    Tensor3 t(x.size(), y.size(), z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
        Matrix& s = t.slice(k);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const Cx xz = x[i] * z[k];
            for (std::size_t j = 0; j < y.size(); ++j) s(i, j) = xz * y[j];
        }
    }
    return t;
}

Matrix outer2(const Vector& x, const Vector& y) {
    Matrix m(x.size(), y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j) m(i, j) = x[i] * y[j];
    return m;
}

Tensor3 cp_to_tensor(const CPDecomposition& d, std::size_t l, std::size_t m, std::size_t n) {
    Tensor3 t(l, m, n);
    for (const CPTerm& term : d.terms) {
        if (term.x.size() != l || term.y.size() != m || term.z.size() != n)
            throw DimensionError("cp_to_tensor: term does not match requested dimensions");
        for (std::size_t k = 0; k < n; ++k) {
            Matrix& s = t.slice(k);
            for (std::size_t i = 0; i < l; ++i) {
                const Cx xz = term.x[i] * term.z[k];
                for (std::size_t j = 0; j < m; ++j) s(i, j) += xz * term.y[j];
            }
        }
    }
    return t;
}

namespace {

Tensor3 zip(const Tensor3& a, const Tensor3& b, bool minus) {
    if (a.dim_l() != b.dim_l() || a.dim_m() != b.dim_m() || a.dim_n() != b.dim_n())
        throw DimensionError("tensor add/sub: shape mismatch");
    std::vector<Matrix> slices;
    slices.reserve(a.dim_n());
    for (std::size_t r = 0; r < a.dim_n(); ++r)
        slices.push_back(minus ? a.slice(r) - b.slice(r) : a.slice(r) + b.slice(r));
    return Tensor3::from_slices(std::move(slices));
}

}  // namespace

Tensor3 add(const Tensor3& a, const Tensor3& b) { return zip(a, b, false); }
Tensor3 sub(const Tensor3& a, const Tensor3& b) { return zip(a, b, true); }

Tensor3 scale(Cx s, const Tensor3& a) {
    std::vector<Matrix> slices;
    slices.reserve(a.dim_n());
    for (std::size_t r = 0; r < a.dim_n(); ++r) slices.push_back(s * a.slice(r));
    return Tensor3::from_slices(std::move(slices));
}

double norm_l1(const Tensor3& a) {
    double s = 0;
    for (std::size_t r = 0; r < a.dim_n(); ++r) s += norm_l1(a.slice(r));
    return s;
}

double norm_fro(const Tensor3& a) {
    double s = 0;
    for (std::size_t r = 0; r < a.dim_n(); ++r) {
        const double f = norm_fro(a.slice(r));
        s += f * f;
    }
    return std::sqrt(s);
}

double norm_sup(const Tensor3& a) {
    double s = 0;
    for (std::size_t r = 0; r < a.dim_n(); ++r) s = std::max(s, norm_sup(a.slice(r)));
    return s;
}

}  // namespace rankleap
