#pragma once

#include "rankleap/tensor.hpp"

namespace rankleap {

/// The classic 2x2x2 tensor [[1,0; 0,-1] | [0,-1; -1,0]]: complex rank 2
/// (its slice ratio is diagonalizable over C) while its real rank is 3.
Tensor3 sample_example();

/// [E_2 | [[0,1],[0,0]]]: rank 3, with rank-2 tensors arbitrarily close.
Tensor3 sample_w();

/// Dense tensor with entries drawn from the unit complex box.
Tensor3 sample_random(std::size_t l, std::size_t m, std::size_t n, std::uint64_t seed);

}  // namespace rankleap
