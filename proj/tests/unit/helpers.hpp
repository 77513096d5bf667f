#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "cxcur/matrix.hpp"
#include "cxcur/synth.hpp"

namespace testutil {

inline std::vector<double> to_vec(const cxcur::DenseMatrix& a) {
    return std::vector<double>(a.data(), a.data() + a.size());
}

inline cxcur::DenseMatrix low_rank(std::size_t m, std::size_t n, std::size_t rank,
                                   std::uint64_t seed) {
    return cxcur::gaussian_matrix(m, rank, seed) * cxcur::gaussian_matrix(rank, n, seed + 7919);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testutil
