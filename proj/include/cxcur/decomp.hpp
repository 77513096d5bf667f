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

/// A together with its rank-k SVD and A_k, shared by every trial on A.
struct LowRankContext {
    DenseMatrix a;
    TruncatedSVD svd;
    DenseMatrix a_k;
    double best_rank_k_error = 0.0;  ///< ||A - A_k||_F
    double a_norm = 0.0;
    SubspaceProbs column_probs;
    std::vector<std::string> warnings;
};

/// Validates A and k (1 <= k <= min(m, n)) and precomputes the SVD and
/// column leverage probabilities. When k exceeds the effective rank a
/// warning is recorded and the effective rank is used.
LowRankContext prepare(const DenseMatrix& a, std::size_t k, double tol = kDefaultRankTol);

/// Error ratio against ||A - A_k||_F. When that denominator vanishes (A has
/// rank <= k) the ratio is 0 for a vanishing numerator and +inf otherwise,
/// and `zero_denominator` is set.
struct ThetaRatio {
    double value = 0.0;
    bool zero_denominator = false;
};

ThetaRatio theta_ratio(double numerator, const LowRankContext& ctx);

/// Column-based approximation A ~ C C^+ A.
struct CXResult {
    SamplingPlan plan;
    DenseMatrix c;
    double error_frob = 0.0;  ///< ||A - C C^+ A||_F
    /// ||A - C (P_k C)^+ P_k A||_F, filled by cx_rank_k.
    std::optional<double> error_rank_k_frob;
    double projected_rank_k_error = 0.0;  ///< ||A - C C^+ A_k||_F
    double best_rank_k_error = 0.0;       ///< ||A - A_k||_F
    ThetaRatio theta1;                    ///< error_frob / best
    ThetaRatio theta2;                    ///< projected_rank_k_error / best
    std::vector<std::string> warnings;
};

/// A ~ C U R with U = W^+ and W the sampled rows of C.
struct CURResult {
    CXResult columns;
    SamplingPlan row_plan;
    DenseMatrix r;
    DenseMatrix w;
    DenseMatrix u;
    double error_frob = 0.0;  ///< ||A - C U R||_F
    ThetaRatio theta3;
};

/// c = 3200 k^2 / eps^2 columns.
double columns_for_epsilon(std::size_t k, double epsilon);
/// r = 3200 c^2 / eps^2 rows.
double cur_rows_for_epsilon(std::size_t c, double epsilon);
/// ceil(ln(1 / delta)) independent CX runs.
std::size_t boost_trials(double delta);
/// ceil(ln(2 / delta)) runs for each of the two CUR stages.
std::size_t cur_boost_trials(double delta);

CXResult cx_decompose(const LowRankContext& ctx, std::size_t c, SamplingMethod method,
                      std::uint64_t seed);
CXResult cx_decompose(const DenseMatrix& a, std::size_t k, std::size_t c, SamplingMethod method,
                      std::uint64_t seed, double tol = kDefaultRankTol);

/// C (P_k C)^+ P_k A with P_k = U_k U_k^T; has rank at most k.
DenseMatrix rank_k_approximation(const LowRankContext& ctx, const DenseMatrix& c);

/// cx_decompose plus the rank-restricted error.
CXResult cx_rank_k(const LowRankContext& ctx, std::size_t c, SamplingMethod method,
                   std::uint64_t seed);
CXResult cx_rank_k(const DenseMatrix& a, std::size_t k, std::size_t c, SamplingMethod method,
                   std::uint64_t seed, double tol = kDefaultRankTol);

/// Row stage only: sample r rows using leverage scores of the given C.
CURResult cur_from_columns(const LowRankContext& ctx, CXResult columns, std::size_t r,
                           SamplingMethod method, std::uint64_t seed);

CURResult cur_decompose(const LowRankContext& ctx, std::size_t c, std::size_t r,
                        SamplingMethod method, std::uint64_t seed);
CURResult cur_decompose(const DenseMatrix& a, std::size_t k, std::size_t c, std::size_t r,
                        SamplingMethod method, std::uint64_t seed, double tol = kDefaultRankTol);

template <typename Result>
struct Boosted {
    Result best;
    std::size_t best_trial = 0;
    std::size_t column_trials = 0;
    std::size_t row_trials = 0;  ///< 0 for CX
    std::vector<double> column_errors;
    std::vector<double> row_errors;
};

/// Best of boost_trials(delta) independent CX runs (lowest index wins ties).
Boosted<CXResult> boosted_cx(const LowRankContext& ctx, std::size_t c, SamplingMethod method,
                             double delta, std::uint64_t seed);

/// Best C over cur_boost_trials(delta) CX runs, then best (U, R) over as many
/// row-stage runs on that C.
Boosted<CURResult> boosted_cur(const LowRankContext& ctx, std::size_t c, std::size_t r,
                               SamplingMethod method, double delta, std::uint64_t seed);

}  // namespace cxcur
