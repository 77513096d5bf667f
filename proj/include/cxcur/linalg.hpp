#pragma once

#include <cstddef>

#include "cxcur/matrix.hpp"

namespace cxcur {

/// Relative cutoff (against sigma_1) below which singular values count as zero.
inline constexpr double kDefaultRankTol = 1e-12;

/// Rank-k SVD factors together with the whole singular spectrum.
///
/// `u_k` is m x k and `v_k` is n x k. `sigma` holds all min(m, n) singular
/// values in nonincreasing order, so the tail error ||A - A_k||_F can be read
/// off without refactoring. `effective_rank` counts the leading values above
/// `tol * sigma_1`, capped at k.
struct TruncatedSVD {
    std::size_t k = 0;
    std::size_t effective_rank = 0;
    DenseMatrix u_k;
    Vector sigma;
    DenseMatrix v_k;
    double tol = kDefaultRankTol;

    /// ||A - A_k||_F computed from the spectrum tail.
    [[nodiscard]] double tail_error() const;
    /// U_k diag(sigma_1..sigma_k) V_k^T.
    [[nodiscard]] DenseMatrix reconstruct() const;
    /// Number of singular values above tol * sigma_1 over the whole spectrum.
    [[nodiscard]] std::size_t numerical_rank() const;
};

/// Deterministic full SVD of `a`, truncated to rank k.
/// Requires 1 <= k <= min(rows, cols) and tol in [0, 1).
TruncatedSVD svd_truncated(const DenseMatrix& a, std::size_t k, double tol = kDefaultRankTol);

/// All min(m, n) singular values, nonincreasing.
Vector singular_values(const DenseMatrix& a);

/// Moore-Penrose pseudoinverse; singular values <= tol * sigma_1 are dropped.
DenseMatrix pseudoinverse(const DenseMatrix& a, double tol = kDefaultRankTol);

/// {D1, D2}-weighted generalized inverse
/// D2^{-1/2} (D1^{1/2} A D2^{-1/2})^+ D1^{1/2}, with d1 (length m) and d2
/// (length n) the strictly positive diagonals.
DenseMatrix weighted_pseudoinverse(const DenseMatrix& a, const Vector& d1, const Vector& d2,
                                   double tol = kDefaultRankTol);

/// Orthonormal basis for the column space of `c` (singular vectors above tol).
DenseMatrix column_basis(const DenseMatrix& c, double tol = kDefaultRankTol);

/// C C^+ A, the projection of A's columns onto span(C).
DenseMatrix project_onto_span(const DenseMatrix& c, const DenseMatrix& a,
                              double tol = kDefaultRankTol);

double frobenius_norm(const DenseMatrix& a);
double spectral_norm(const DenseMatrix& a);

/// Number of singular values above tol * sigma_1 (0 for the zero matrix).
std::size_t numerical_rank(const DenseMatrix& a, double tol = kDefaultRankTol);

}  // namespace cxcur
