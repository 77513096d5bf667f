#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cxcur/linalg.hpp"
#include "cxcur/matrix.hpp"
#include "cxcur/sampling.hpp"

namespace cxcur {

/// Solution of min_X ||B - A X||_F, exact or from a row sample.
struct RegressionSolution {
    DenseMatrix x;                       ///< n x p coefficients
    double residual_frob = 0.0;          ///< ||B - A X||_F on the original problem
    double sampled_residual_frob = 0.0;  ///< ||DS^T B - DS^T A X||_F on the sampled problem
    std::optional<SamplingPlan> plan;    ///< empty for the exact solve
    /// rank(D S^T U_k); below k means the sample lost part of span(A).
    std::size_t sampled_rank = 0;
    bool rank_collapsed = false;
    std::vector<std::string> warnings;
};

/// Quantities entering the coefficient-error bounds for a sampled solve.
struct RegressionDiagnostics {
    double gamma = 1.0;  ///< ||U_k U_k^T B||_F / ||B||_F
    bool gamma_undefined = false;  ///< B = 0; gamma reported as 1
    double kappa = 1.0;            ///< sigma_max(A_k) / sigma_min(A_k)
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double optimal_residual = 0.0;  ///< Z = ||B - A X_opt||_F
    double coefficient_error = 0.0;  ///< ||X_opt - X~||_F
    double x_opt_norm = 0.0;
    double epsilon = 0.0;
    double bound_result2 = 0.0;  ///< (1 + eps) Z, bound on the sampled residual
    double bound_result3 = 0.0;  ///< eps Z / sigma_min
    double bound_result4 = 0.0;  ///< eps kappa sqrt(gamma^-2 - 1) ||X_opt||_F
};

/// Rows needed for accuracy eps with Exactly sampling: 3200 k^2 / (beta eps^2).
double rows_for_epsilon(std::size_t k, double epsilon, double beta = 1.0);
/// Inverse of rows_for_epsilon: the eps guaranteed by r rows.
double epsilon_for_rows(std::size_t r, std::size_t k, double beta = 1.0);

/// X_opt = A^+ B, the minimum-norm least-squares solution.
RegressionSolution exact_regression(const DenseMatrix& a, const DenseMatrix& b,
                                    double tol = kDefaultRankTol);

/// Solve the row-sampled problem with caller-supplied probabilities over rows.
RegressionSolution sampled_regression_with_probs(const DenseMatrix& a, const DenseMatrix& b,
                                                 const SubspaceProbs& probs, std::size_t r,
                                                 SamplingMethod method, std::uint64_t seed,
                                                 double tol = kDefaultRankTol);

/// Sampled least squares with row probabilities p_i = ||(U_k)_(i)||^2 / k.
/// A is expected to have rank <= k; larger numerical rank adds a warning.
RegressionSolution sampled_regression(const DenseMatrix& a, const DenseMatrix& b, std::size_t k,
                                      std::size_t r, SamplingMethod method, std::uint64_t seed,
                                      double tol = kDefaultRankTol);

RegressionDiagnostics diagnostics(const DenseMatrix& a, const DenseMatrix& b, std::size_t k,
                                  const RegressionSolution& solution, double epsilon,
                                  double tol = kDefaultRankTol);

}  // namespace cxcur
