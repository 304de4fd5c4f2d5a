#ifndef FLAGROCK_EXACTLIN_HPP
#define FLAGROCK_EXACTLIN_HPP

// Rank computations by Gaussian elimination over an exact field (Quad or
// QuadC).  Matrices here are small (a few dozen rows), so no pivoting
// strategy beyond "first nonzero" is needed.

#include <vector>

namespace flagrock {

template <class F>
using DenseMat = std::vector<std::vector<F>>;

template <class F>
int exact_rank(DenseMat<F> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c].is_zero()) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        F inv = m[r][c].inverse();
        for (std::size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            F f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

}  // namespace flagrock

#endif
