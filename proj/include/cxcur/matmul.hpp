#pragma once

#include <cstdint>
#include <optional>

#include "cxcur/matrix.hpp"
#include "cxcur/sampling.hpp"

namespace cxcur {

/// Sampled approximation AB ~ CR. C and R come from one plan.
struct MatmulResult {
    DenseMatrix c;        ///< m x c' rescaled columns of A
    DenseMatrix r;        ///< c' x p rescaled rows of B
    DenseMatrix product;  ///< C R
    SamplingPlan plan;
    /// ||AB - CR||_F, filled only when the exact product was requested.
    std::optional<double> abs_error_frob;
    /// (1 / sqrt(beta c)) ||A||_F ||B||_F
    double bound = 0.0;
};

/// p_i proportional to ||A^(i)|| ||B_(i)||.
SubspaceProbs optimal_product_probs(const DenseMatrix& a, const DenseMatrix& b);

/// p_i proportional to ||A^(i)||^2.
SubspaceProbs column_norm_probs(const DenseMatrix& a);

/// Expected-error bound (1 / sqrt(beta c)) ||A||_F ||B||_F.
double product_error_bound(const DenseMatrix& a, const DenseMatrix& b, std::size_t c, double beta);

/// Monte-Carlo product. `with_exact_error` forms AB to fill abs_error_frob.
MatmulResult approx_multiply(const DenseMatrix& a, const DenseMatrix& b, std::size_t c,
                             const SubspaceProbs& probs, SamplingMethod method, std::uint64_t seed,
                             bool with_exact_error = false);

}  // namespace cxcur
