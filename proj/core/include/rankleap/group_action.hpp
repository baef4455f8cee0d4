#pragma once

#include "rankleap/tensor.hpp"

namespace rankleap {

/// Element of GL_l x GL_m x GL_n acting on l x m x n tensors. Invertibility
/// of each factor is checked at construction (pivot test), so a constructed
/// triple is always a group element.
class GLTriple {
  public:
    GLTriple(Matrix l, Matrix m, Matrix n,
             double sing_tol_rel = Tolerances{}.sing_tol_rel);

    static GLTriple identity(std::size_t l, std::size_t m, std::size_t n);

    const Matrix& l() const { return l_; }
    const Matrix& m() const { return m_; }
    const Matrix& n() const { return n_; }

  private:
    Matrix l_, m_, n_;
};

/// Multilinear matrix multiplication: entry (p,q,r) of the result is
/// sum_{i,j,k} L(p,i) M(q,j) N(r,k) A(i,j,k), computed as three successive
/// mode products.
Tensor3 act(const GLTriple& g, const Tensor3& a);

/// Factorwise product; act(compose(g,h), a) == act(g, act(h, a)).
GLTriple compose(const GLTriple& g, const GLTriple& h);
GLTriple inverse(const GLTriple& g, double sing_tol_rel = Tolerances{}.sing_tol_rel);

/// Constructive continuity estimate for the action: an upper bound on the
/// entrywise deviation between act(g, a) and act(g2, a2) in terms of the
/// sup norms of the four arguments and their entrywise deviations. Both
/// actions are evaluated and domination is checked before returning.
double continuity_bound(const GLTriple& g, const GLTriple& g2, const Tensor3& a,
                        const Tensor3& a2);

/// Single mode product, exposed for tests and reuse: mode 1 multiplies
/// slices by the matrix on the left, mode 2 on the right by its transpose,
/// mode 3 mixes slices by rows of the matrix.
Tensor3 mode_product(const Tensor3& a, const Matrix& factor, int mode);

}  // namespace rankleap
