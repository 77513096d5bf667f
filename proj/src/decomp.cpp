#include "cxcur/decomp.hpp"

#include <cmath>
#include <limits>

#include "cxcur/errors.hpp"
#include "cxcur/parallel.hpp"
#include "cxcur/rng.hpp"

namespace cxcur {

namespace {

// Relative thresholds (against ||A||_F) for treating an error as zero.
constexpr double kZeroTail = 1e-12;
constexpr double kZeroError = 1e-8;

void require_samples(std::size_t c, const char* what) {
    if (c < 1) {
        throw InputError(std::string(what) + " must be at least 1");
    }
}

void require_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw InputError("delta must lie in (0, 1)");
    }
}

// Index of the smallest error; the earliest index wins ties.
std::size_t argmin(const std::vector<double>& errors) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < errors.size(); ++i) {
        if (errors[i] < errors[best]) {
            best = i;
        }
    }
    return best;
}

}  // namespace

LowRankContext prepare(const DenseMatrix& a, std::size_t k, double tol) {
    LowRankContext ctx;
    ctx.svd = svd_truncated(a, k, tol);
    if (ctx.svd.effective_rank == 0) {
        throw InputError("A is the zero matrix");
    }
    ctx.a = a;
    ctx.a_norm = a.norm();
    if (ctx.svd.effective_rank < k) {
        ctx.warnings.push_back("k = " + std::to_string(k) + " exceeds the effective rank " +
                               std::to_string(ctx.svd.effective_rank) +
                               "; proceeding with the effective rank");
    }
    ctx.a_k = ctx.svd.reconstruct();
    ctx.best_rank_k_error = ctx.svd.tail_error();
    ctx.column_probs = column_subspace_probs(ctx.svd);
    return ctx;
}

ThetaRatio theta_ratio(double numerator, const LowRankContext& ctx) {
    if (ctx.best_rank_k_error > kZeroTail * ctx.a_norm) {
        return {numerator / ctx.best_rank_k_error, false};
    }
    const bool vanishes = numerator <= kZeroError * ctx.a_norm;
    return {vanishes ? 0.0 : std::numeric_limits<double>::infinity(), true};
}

double columns_for_epsilon(std::size_t k, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw InputError("epsilon must be positive");
    }
    const double kd = static_cast<double>(k);
    return 3200.0 * kd * kd / (epsilon * epsilon);
}

double cur_rows_for_epsilon(std::size_t c, double epsilon) {
    return columns_for_epsilon(c, epsilon);
}

std::size_t boost_trials(double delta) {
    require_delta(delta);
    return static_cast<std::size_t>(std::ceil(std::log(1.0 / delta)));
}

std::size_t cur_boost_trials(double delta) {
    require_delta(delta);
    return static_cast<std::size_t>(std::ceil(std::log(2.0 / delta)));
}

CXResult cx_decompose(const LowRankContext& ctx, std::size_t c, SamplingMethod method,
                      std::uint64_t seed) {
    require_samples(c, "column count c");
    CXResult out;
    out.warnings = ctx.warnings;
    out.plan = sample(ctx.column_probs, c, method, derive_seed(seed, kColumnStream));
    out.c = apply_column_sample(ctx.a, out.plan);

    const DenseMatrix q = column_basis(out.c, ctx.svd.tol);
    out.error_frob = (ctx.a - q * (q.transpose() * ctx.a)).norm();
    out.projected_rank_k_error = (ctx.a - q * (q.transpose() * ctx.a_k)).norm();
    out.best_rank_k_error = ctx.best_rank_k_error;
    out.theta1 = theta_ratio(out.error_frob, ctx);
    out.theta2 = theta_ratio(out.projected_rank_k_error, ctx);
    return out;
}

CXResult cx_decompose(const DenseMatrix& a, std::size_t k, std::size_t c, SamplingMethod method,
                      std::uint64_t seed, double tol) {
    return cx_decompose(prepare(a, k, tol), c, method, seed);
}

DenseMatrix rank_k_approximation(const LowRankContext& ctx, const DenseMatrix& c) {
    require_dim(static_cast<std::size_t>(c.rows()), static_cast<std::size_t>(ctx.a.rows()),
                "rows of C against rows of A");
    const DenseMatrix uk = ctx.svd.u_k.leftCols(static_cast<Eigen::Index>(ctx.svd.effective_rank));
    const DenseMatrix projected_c = uk * (uk.transpose() * c);
    // P_k A = A_k
    return c * (pseudoinverse(projected_c, ctx.svd.tol) * ctx.a_k);
}

CXResult cx_rank_k(const LowRankContext& ctx, std::size_t c, SamplingMethod method,
                   std::uint64_t seed) {
    CXResult out = cx_decompose(ctx, c, method, seed);
    out.error_rank_k_frob = (ctx.a - rank_k_approximation(ctx, out.c)).norm();
    return out;
}

CXResult cx_rank_k(const DenseMatrix& a, std::size_t k, std::size_t c, SamplingMethod method,
                   std::uint64_t seed, double tol) {
    return cx_rank_k(prepare(a, k, tol), c, method, seed);
}

CURResult cur_from_columns(const LowRankContext& ctx, CXResult columns, std::size_t r,
                           SamplingMethod method, std::uint64_t seed) {
    require_samples(r, "row count r");
    CURResult out;
    const SubspaceProbs row_probs = row_subspace_probs(columns.c, ctx.svd.tol);
    out.row_plan = sample(row_probs, r, method, derive_seed(seed, kRowStream));
    out.r = apply_row_sample(ctx.a, out.row_plan);
    out.w = apply_row_sample(columns.c, out.row_plan);
    out.u = pseudoinverse(out.w, ctx.svd.tol);
    out.error_frob = (ctx.a - columns.c * (out.u * out.r)).norm();
    out.theta3 = theta_ratio(out.error_frob, ctx);
    out.columns = std::move(columns);
    return out;
}

CURResult cur_decompose(const LowRankContext& ctx, std::size_t c, std::size_t r,
                        SamplingMethod method, std::uint64_t seed) {
    return cur_from_columns(ctx, cx_decompose(ctx, c, method, seed), r, method, seed);
}

CURResult cur_decompose(const DenseMatrix& a, std::size_t k, std::size_t c, std::size_t r,
                        SamplingMethod method, std::uint64_t seed, double tol) {
    return cur_decompose(prepare(a, k, tol), c, r, method, seed);
}

Boosted<CXResult> boosted_cx(const LowRankContext& ctx, std::size_t c, SamplingMethod method,
                             double delta, std::uint64_t seed) {
    const std::size_t trials = boost_trials(delta);
    auto runs = run_trials(trials, [&](std::size_t t) {
        return cx_decompose(ctx, c, method, derive_seed(seed, t));
    });

    Boosted<CXResult> out;
    out.column_trials = trials;
    for (const auto& run : runs) {
        out.column_errors.push_back(run.error_frob);
    }
    out.best_trial = argmin(out.column_errors);
    out.best = std::move(runs[out.best_trial]);
    return out;
}

Boosted<CURResult> boosted_cur(const LowRankContext& ctx, std::size_t c, std::size_t r,
                               SamplingMethod method, double delta, std::uint64_t seed) {
    const std::size_t trials = cur_boost_trials(delta);
    auto column_runs = run_trials(trials, [&](std::size_t t) {
        return cx_decompose(ctx, c, method, derive_seed(seed, t));
    });

    Boosted<CURResult> out;
    out.column_trials = trials;
    out.row_trials = trials;
    for (const auto& run : column_runs) {
        out.column_errors.push_back(run.error_frob);
    }
    const CXResult& best_columns = column_runs[argmin(out.column_errors)];

    auto row_runs = run_trials(trials, [&](std::size_t t) {
        return cur_from_columns(ctx, best_columns, r, method, derive_seed(seed, trials + t));
    });
    for (const auto& run : row_runs) {
        out.row_errors.push_back(run.error_frob);
    }
    out.best_trial = argmin(out.row_errors);
    out.best = std::move(row_runs[out.best_trial]);
    return out;
}

}  // namespace cxcur
