#pragma once

#include "rankleap/matrix.hpp"

namespace rankleap {

/// Third-order complex tensor stored as n frontal slices of size l x m;
/// slice r holds the entries with third index r.
class Tensor3 {
  public:
    Tensor3() = default;
    Tensor3(std::size_t l, std::size_t m, std::size_t n)
        : l_(l), m_(m), n_(n), slices_(n, Matrix(l, m)) {}

    /// Takes ownership of the given slices; all must share one shape.
    static Tensor3 from_slices(std::vector<Matrix> slices);

    std::size_t dim_l() const { return l_; }
    std::size_t dim_m() const { return m_; }
    std::size_t dim_n() const { return n_; }

    const Matrix& slice(std::size_t r) const { return slices_[r]; }
    Matrix& slice(std::size_t r) { return slices_[r]; }
    const std::vector<Matrix>& slices() const { return slices_; }

    Cx at(std::size_t i, std::size_t j, std::size_t k) const { return slices_[k](i, j); }
    Cx& at(std::size_t i, std::size_t j, std::size_t k) { return slices_[k](i, j); }

    bool all_finite() const;

    friend bool operator==(const Tensor3&, const Tensor3&) = default;

  private:
    std::size_t l_ = 0, m_ = 0, n_ = 0;
    std::vector<Matrix> slices_;
};

/// One rank-one term x (x) y (x) z.
struct CPTerm {
    Vector x, y, z;
};

/// Explicit sum of rank-one terms; a witness that rank <= terms.size().
/// Terms with a zero factor contribute nothing and are dropped by
/// drop_zero_terms (the constructors used by this library never emit them).
struct CPDecomposition {
    std::vector<CPTerm> terms;

    std::size_t rank_bound() const { return terms.size(); }
    void drop_zero_terms();
};

/// Entry (i,j,k) = x_i y_j z_k.
Tensor3 outer3(const Vector& x, const Vector& y, const Vector& z);
/// Entry (i,j) = x_i y_j.
Matrix outer2(const Vector& x, const Vector& y);

/// Evaluates the term sum into a dense tensor of the given dimensions.
Tensor3 cp_to_tensor(const CPDecomposition& d, std::size_t l, std::size_t m, std::size_t n);

Tensor3 add(const Tensor3& a, const Tensor3& b);
Tensor3 sub(const Tensor3& a, const Tensor3& b);
Tensor3 scale(Cx s, const Tensor3& a);

/// Sum of complex moduli of all entries; additive across slices.
double norm_l1(const Tensor3& a);
double norm_fro(const Tensor3& a);
/// Largest complex modulus of an entry.
double norm_sup(const Tensor3& a);

}  // namespace rankleap
