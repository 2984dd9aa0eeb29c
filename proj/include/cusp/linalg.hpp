#ifndef CUSP_LINALG_HPP
#define CUSP_LINALG_HPP

#include <optional>
#include <vector>

#include "cusp/rational.hpp"

namespace cusp {

// Exact Gaussian elimination for M x = rhs.  Returns the particular solution
// with free variables set to 0, or nullopt when the system is inconsistent.
inline std::optional<std::vector<Rat>> solve_exact(std::vector<std::vector<Rat>> mat,
                                                   std::vector<Rat> rhs)
{
    const size_t nrows = mat.size();
    const size_t ncols = nrows ? mat[0].size() : 0;
    std::vector<std::pair<size_t, size_t>> pivots;
    size_t rank = 0;
    for (size_t c = 0; c < ncols && rank < nrows; ++c) {
        size_t pr = rank;
        while (pr < nrows && mat[pr][c] == 0)
            ++pr;
        if (pr == nrows)
            continue;
        std::swap(mat[pr], mat[rank]);
        std::swap(rhs[pr], rhs[rank]);
        for (size_t r = 0; r < nrows; ++r) {
            if (r == rank || mat[r][c] == 0)
                continue;
            Rat factor = mat[r][c] / mat[rank][c];
            for (size_t c2 = c; c2 < ncols; ++c2)
                mat[r][c2] -= factor * mat[rank][c2];
            rhs[r] -= factor * rhs[rank];
        }
        pivots.emplace_back(rank, c);
        ++rank;
    }
    for (size_t r = rank; r < nrows; ++r)
        if (rhs[r] != 0)
            return std::nullopt;
    std::vector<Rat> sol(ncols, Rat(0));
    for (auto [r, c] : pivots)
        sol[c] = rhs[r] / mat[r][c];
    return sol;
}

} // namespace cusp

#endif
