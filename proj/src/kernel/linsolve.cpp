#include "mastercount/kernel/linsolve.hpp"

#include <utility>

namespace mastercount::kernel {

namespace {

// In-place reduced row echelon form; returns the pivot column of each pivot row.
std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c].is_zero()) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        RatFunc inv = RatFunc(1) / m[r][c];
        for (auto& e : m[r]) e *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            RatFunc f = m[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::vector<std::vector<RatFunc>> nullspace(RatMatrix m) {
    std::vector<std::vector<RatFunc>> basis;
    if (m.empty()) return basis;
    const std::size_t cols = m[0].size();
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<RatFunc> v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

int rank(RatMatrix m) { return static_cast<int>(rref(m).size()); }

}  // namespace mastercount::kernel
