#include "rankleap/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace rankleap {

Matrix::Matrix(std::initializer_list<std::initializer_list<Cx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw DimensionError("ragged initializer for Matrix");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix e(n, n);
    for (std::size_t i = 0; i < n; ++i) e(i, i) = 1.0;
    return e;
}

Vector Matrix::col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

Vector Matrix::row(std::size_t i) const {
    Vector v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
}

bool Matrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](Cx z) { return is_finite(z); });
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix add: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("matrix sub: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
    return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix mul: inner dimension mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Cx aik = a(i, k);
            if (aik == Cx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Matrix operator*(Cx s, const Matrix& a) {
    Matrix c = a;
    for (auto& z : c.data()) z *= s;
    return c;
}

Matrix adjoint(const Matrix& a) {
    Matrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = std::conj(a(i, j));
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(j, i) = a(i, j);
    return c;
}

double norm_l1(const Matrix& a) {
    double s = 0;
    for (const Cx& z : a.data()) s += cabs(z);
    return s;
}

double norm_sup(const Matrix& a) {
    double s = 0;
    for (const Cx& z : a.data()) s = std::max(s, cabs(z));
    return s;
}

double norm_fro(const Matrix& a) {
    double s = 0;
    for (const Cx& z : a.data()) s += std::norm(z);
    return std::sqrt(s);
}

Vector mat_vec(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) throw DimensionError("mat_vec: dimension mismatch");
    Vector y(a.rows(), Cx{});
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

double offdiag_l1(const Matrix& a) {
    double s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) s += cabs(a(i, j));
    return s;
}

bool is_exact_identity(const Matrix& a) {
    if (!a.is_square()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            Cx z = a(i, j);
            if (i == j ? (z.real() != 1.0 || z.imag() != 0.0)
                       : (z.real() != 0.0 || z.imag() != 0.0))
                return false;
        }
    return true;
}

namespace {

// In-place row-pivoted elimination of [A | B] -> [E | A^{-1}B].
Matrix eliminate(Matrix a, Matrix b, double sing_tol_rel) {
    if (!a.is_square()) throw DimensionError("inverse/solve: matrix not square");
    if (a.rows() != b.rows()) throw DimensionError("solve: right-hand side shape mismatch");
    const std::size_t n = a.rows();
    const double pivot_floor = sing_tol_rel * norm_l1(a);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = cabs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            double m = cabs(a(i, k));
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (!(best > pivot_floor))
            throw SingularMatrixError("singular matrix: pivot " + std::to_string(k) +
                                      " below threshold");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(piv, j));
        }
        const Cx inv_piv = 1.0 / a(k, k);
        for (std::size_t j = 0; j < n; ++j) a(k, j) *= inv_piv;
        for (std::size_t j = 0; j < b.cols(); ++j) b(k, j) *= inv_piv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const Cx f = a(i, k);
            if (f == Cx{}) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
        }
    }
    return b;
}

}  // namespace

Matrix inverse(const Matrix& a, double sing_tol_rel) {
    return eliminate(a, Matrix::identity(a.rows()), sing_tol_rel);
}

Matrix solve(const Matrix& a, const Matrix& b, double sing_tol_rel) {
    return eliminate(a, b, sing_tol_rel);
}

bool is_invertible(const Matrix& a, double sing_tol_rel) {
    if (!a.is_square() || a.rows() == 0) return false;
    try {
        (void)eliminate(a, Matrix(a.rows(), 0), sing_tol_rel);
        return true;
    } catch (const SingularMatrixError&) {
        return false;
    }
}

}  // namespace rankleap
