#pragma once

#include <cstddef>
#include <initializer_list>

#include "rankleap/types.hpp"

namespace rankleap {

/// Dense complex matrix, row-major. Plain value type: copy/move freely.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Cx{}) {}

    /// Row-by-row construction, e.g. Matrix{{a, b}, {c, d}}.
    Matrix(std::initializer_list<std::initializer_list<Cx>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Cx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    Cx operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Cx>& data() const { return data_; }
    std::vector<Cx>& data() { return data_; }

    Vector col(std::size_t j) const;
    Vector row(std::size_t i) const;

    bool all_finite() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Cx> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Cx s, const Matrix& a);

/// Conjugate transpose.
Matrix adjoint(const Matrix& a);
/// Plain transpose, no conjugation.
Matrix transpose(const Matrix& a);

/// Sum of complex moduli of all entries.
double norm_l1(const Matrix& a);
/// Largest complex modulus of an entry.
double norm_sup(const Matrix& a);
double norm_fro(const Matrix& a);

/// Matrix-vector product.
Vector mat_vec(const Matrix& a, const Vector& x);

/// l1 mass of the off-diagonal part.
double offdiag_l1(const Matrix& a);

/// True when the matrix is bitwise the identity (exact 1.0 / 0.0 entries).
bool is_exact_identity(const Matrix& a);

/// Row-pivoted LU inverse. Throws SingularMatrixError when a pivot
/// magnitude falls below sing_tol_rel * ||A||_1.
Matrix inverse(const Matrix& a, double sing_tol_rel = Tolerances{}.sing_tol_rel);

/// Solve A X = B by the same elimination.
Matrix solve(const Matrix& a, const Matrix& b, double sing_tol_rel = Tolerances{}.sing_tol_rel);

/// Pivot test only; never throws.
bool is_invertible(const Matrix& a, double sing_tol_rel = Tolerances{}.sing_tol_rel);

}  // namespace rankleap
