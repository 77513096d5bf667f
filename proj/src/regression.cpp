#include "cxcur/regression.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cxcur/errors.hpp"

namespace cxcur {

namespace {

void require_system(const DenseMatrix& a, const DenseMatrix& b) {
    require_valid(a, "A");
    require_valid(b, "B");
    require_dim(static_cast<std::size_t>(b.rows()), static_cast<std::size_t>(a.rows()),
                "rows of B against rows of A");
}

void require_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InputError("epsilon must be positive and finite");
    }
}

}  // namespace

double rows_for_epsilon(std::size_t k, double epsilon, double beta) {
    require_epsilon(epsilon);
    const double kd = static_cast<double>(k);
    return 3200.0 * kd * kd / (beta * epsilon * epsilon);
}

double epsilon_for_rows(std::size_t r, std::size_t k, double beta) {
    if (r < 1) {
        throw InputError("row count must be at least 1");
    }
    const double kd = static_cast<double>(k);
    return std::sqrt(3200.0 * kd * kd / (beta * static_cast<double>(r)));
}

RegressionSolution exact_regression(const DenseMatrix& a, const DenseMatrix& b, double tol) {
    require_system(a, b);
    RegressionSolution out;
    out.x = pseudoinverse(a, tol) * b;
    out.residual_frob = (b - a * out.x).norm();
    out.sampled_residual_frob = out.residual_frob;
    out.sampled_rank = numerical_rank(a, tol);
    return out;
}

RegressionSolution sampled_regression_with_probs(const DenseMatrix& a, const DenseMatrix& b,
                                                 const SubspaceProbs& probs, std::size_t r,
                                                 SamplingMethod method, std::uint64_t seed,
                                                 double tol) {
    require_system(a, b);
    require_dim(probs.probs.size(), static_cast<std::size_t>(a.rows()),
                "probabilities against rows of A");
    if (r < 1) {
        throw InputError("row sample size r must be at least 1");
    }

    RegressionSolution out;
    SamplingPlan plan = sample(probs, r, method, seed);
    const DenseMatrix sa = apply_row_sample(a, plan);
    const DenseMatrix sb = apply_row_sample(b, plan);

    out.x = pseudoinverse(sa, tol) * sb;
    out.residual_frob = (b - a * out.x).norm();
    out.sampled_residual_frob = (sb - sa * out.x).norm();

    // rank(DS^T A) = rank(DS^T U_k) when rank(A) = k.
    const std::size_t full_rank = numerical_rank(a, tol);
    out.sampled_rank = numerical_rank(sa, tol);
    if (out.sampled_rank < full_rank) {
        out.rank_collapsed = true;
        out.warnings.push_back("row sample has rank " + std::to_string(out.sampled_rank) +
                               " but A has rank " + std::to_string(full_rank) +
                               "; solution quality is degraded");
    }
    out.plan = std::move(plan);
    return out;
}

RegressionSolution sampled_regression(const DenseMatrix& a, const DenseMatrix& b, std::size_t k,
                                      std::size_t r, SamplingMethod method, std::uint64_t seed,
                                      double tol) {
    require_system(a, b);
    const TruncatedSVD svd = svd_truncated(a, k, tol);
    const SubspaceProbs probs = row_subspace_probs_from_svd(svd);

    RegressionSolution out = sampled_regression_with_probs(a, b, probs, r, method, seed, tol);
    const std::size_t rank = svd.numerical_rank();
    if (rank > k) {
        out.warnings.insert(out.warnings.begin(),
                            "A has numerical rank " + std::to_string(rank) + " > k = " +
                                std::to_string(k) + "; sampled solve assumes rank(A) <= k");
    }
    if (svd.effective_rank < k) {
        out.warnings.insert(out.warnings.begin(),
                            "k = " + std::to_string(k) + " exceeds the effective rank " +
                                std::to_string(svd.effective_rank) + "; using the effective rank");
    }
    return out;
}

RegressionDiagnostics diagnostics(const DenseMatrix& a, const DenseMatrix& b, std::size_t k,
                                  const RegressionSolution& solution, double epsilon,
                                  double tol) {
    require_system(a, b);
    require_epsilon(epsilon);
    require_dim(static_cast<std::size_t>(solution.x.rows()), static_cast<std::size_t>(a.cols()),
                "rows of X against columns of A");
    require_dim(static_cast<std::size_t>(solution.x.cols()), static_cast<std::size_t>(b.cols()),
                "columns of X against columns of B");

    const TruncatedSVD svd = svd_truncated(a, k, tol);
    if (svd.effective_rank == 0) {
        throw InputError("diagnostics need a nonzero A");
    }
    const auto keff = static_cast<Eigen::Index>(svd.effective_rank);
    const DenseMatrix uk = svd.u_k.leftCols(keff);

    RegressionDiagnostics d;
    d.epsilon = epsilon;
    d.sigma_max = svd.sigma(0);
    d.sigma_min = svd.sigma(keff - 1);
    d.kappa = d.sigma_max / d.sigma_min;

    // gamma^-2 - 1 = ||(I - P_k) B||^2 / ||P_k B||^2
    const DenseMatrix inside = uk * (uk.transpose() * b);
    const double in_norm = inside.norm();
    const double out_norm = (b - inside).norm();
    double excess = 0.0;
    if (b.norm() == 0.0) {
        d.gamma = 1.0;
        d.gamma_undefined = true;
    } else if (in_norm == 0.0) {
        d.gamma = 0.0;
        excess = std::numeric_limits<double>::infinity();
    } else {
        d.gamma = std::min(1.0, in_norm / std::hypot(in_norm, out_norm));
        excess = (out_norm / in_norm) * (out_norm / in_norm);
    }

    const RegressionSolution opt = exact_regression(a, b, tol);
    d.optimal_residual = opt.residual_frob;
    d.x_opt_norm = opt.x.norm();
    d.coefficient_error = (opt.x - solution.x).norm();
    d.bound_result2 = (1.0 + epsilon) * d.optimal_residual;
    d.bound_result3 = epsilon * d.optimal_residual / d.sigma_min;
    d.bound_result4 = epsilon * d.kappa * std::sqrt(excess) * d.x_opt_norm;
    return d;
}

}  // namespace cxcur
