#include "rankleap/samples.hpp"

namespace rankleap {

Tensor3 sample_example() {
    return Tensor3::from_slices({Matrix{{1.0, 0.0}, {0.0, -1.0}},
                                 Matrix{{0.0, -1.0}, {-1.0, 0.0}}});
}

Tensor3 sample_w() {
    return Tensor3::from_slices({Matrix::identity(2), Matrix{{0.0, 1.0}, {0.0, 0.0}}});
}

Tensor3 sample_random(std::size_t l, std::size_t m, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Tensor3 t(l, m, n);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < l; ++i)
            for (std::size_t j = 0; j < m; ++j) t.at(i, j, k) = rng.complex_box(1.0);
    return t;
}

}  // namespace rankleap
