#include "cxcur/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cxcur/errors.hpp"
#include "cxcur/rng.hpp"

namespace cxcur {

namespace {

SubspaceProbs leverage_probs(const DenseMatrix& basis) {
    const auto rank = static_cast<std::size_t>(basis.cols());
    std::vector<double> w(static_cast<std::size_t>(basis.rows()));
    for (Eigen::Index i = 0; i < basis.rows(); ++i) {
        w[static_cast<std::size_t>(i)] = basis.row(i).squaredNorm();
    }
    return SubspaceProbs::from_weights(std::move(w), rank, 1.0);
}

void require_count(std::size_t c) {
    if (c < 1) {
        throw InputError("sample size must be at least 1");
    }
}

}  // namespace

std::string_view to_string(SamplingMethod method) {
    return method == SamplingMethod::Exactly ? "exactly" : "expected";
}

SamplingMethod parse_method(std::string_view name) {
    if (name == "exactly") {
        return SamplingMethod::Exactly;
    }
    if (name == "expected") {
        return SamplingMethod::Expected;
    }
    throw InputError("unknown sampling method '" + std::string(name) +
                     "' (expected 'exactly' or 'expected')");
}

SubspaceProbs SubspaceProbs::from_weights(std::vector<double> weights, std::size_t k, double beta) {
    if (weights.empty()) {
        throw InputError("probability vector is empty");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw InputError("sampling weights must be finite and nonnegative");
        }
        total += w;
    }
    if (total <= 0.0) {
        throw InputError("sampling weights are all zero");
    }
    for (double& w : weights) {
        w /= total;
    }
    return SubspaceProbs{std::move(weights), k, beta};
}

void validate(const SubspaceProbs& p) {
    if (p.probs.empty()) {
        throw InputError("probability vector is empty");
    }
    double total = 0.0;
    for (double v : p.probs) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InputError("probabilities must be finite and nonnegative");
        }
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw InputError("probabilities sum to " + std::to_string(total) + ", not 1");
    }
    if (!(p.beta > 0.0 && p.beta <= 1.0)) {
        throw InputError("beta must lie in (0, 1]");
    }
}

SubspaceProbs column_subspace_probs(const TruncatedSVD& svd) {
    if (svd.effective_rank == 0) {
        throw InputError("zero matrix has no leverage distribution");
    }
    return leverage_probs(svd.v_k.leftCols(static_cast<Eigen::Index>(svd.effective_rank)));
}

SubspaceProbs row_subspace_probs_from_svd(const TruncatedSVD& svd) {
    if (svd.effective_rank == 0) {
        throw InputError("zero matrix has no leverage distribution");
    }
    return leverage_probs(svd.u_k.leftCols(static_cast<Eigen::Index>(svd.effective_rank)));
}

SubspaceProbs row_subspace_probs(const DenseMatrix& c, double tol) {
    const DenseMatrix basis = column_basis(c, tol);
    if (basis.cols() == 0) {
        throw InputError("zero matrix has no leverage distribution");
    }
    return leverage_probs(basis);
}

SamplingPlan sample_exactly(const SubspaceProbs& probs, std::size_t c, std::uint64_t seed) {
    validate(probs);
    require_count(c);

    // Zero-probability entries never enter the table, so every scale is finite.
    std::vector<std::size_t> support;
    std::vector<double> cdf;
    double running = 0.0;
    for (std::size_t i = 0; i < probs.probs.size(); ++i) {
        if (probs.probs[i] > 0.0) {
            running += probs.probs[i];
            support.push_back(i);
            cdf.push_back(running);
        }
    }

    SamplingPlan plan;
    plan.method = SamplingMethod::Exactly;
    plan.source_dim = probs.probs.size();
    plan.c_requested = c;
    plan.seed = seed;
    plan.indices.reserve(c);
    plan.scales.reserve(c);

    Rng rng(seed);
    const double cd = static_cast<double>(c);
    for (std::size_t t = 0; t < c; ++t) {
        const double u = rng.uniform() * running;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) {
            --it;
        }
        const std::size_t idx = support[static_cast<std::size_t>(it - cdf.begin())];
        plan.indices.push_back(idx);
        plan.scales.push_back(1.0 / std::sqrt(cd * probs.probs[idx]));
    }
    return plan;
}

SamplingPlan sample_expected(const SubspaceProbs& probs, std::size_t c, std::uint64_t seed) {
    validate(probs);
    require_count(c);

    SamplingPlan plan;
    plan.method = SamplingMethod::Expected;
    plan.source_dim = probs.probs.size();
    plan.c_requested = c;
    plan.seed = seed;

    const double cd = static_cast<double>(c);
    for (std::size_t attempt = 0; attempt < kExpectedMaxAttempts; ++attempt) {
        Rng rng(seed, attempt);
        plan.indices.clear();
        plan.scales.clear();
        for (std::size_t j = 0; j < probs.probs.size(); ++j) {
            const double p = probs.probs[j];
            if (p <= 0.0) {
                continue;
            }
            const double keep = std::min(1.0, cd * p);
            if (rng.uniform() < keep) {
                plan.indices.push_back(j);
                plan.scales.push_back(1.0 / std::min(1.0, std::sqrt(cd * p)));
            }
        }
        if (!plan.indices.empty()) {
            plan.attempts = attempt + 1;
            return plan;
        }
    }
    throw EmptySampleError("Expected(" + std::to_string(c) + ") selected nothing in " +
                           std::to_string(kExpectedMaxAttempts) + " attempts");
}

SamplingPlan sample(const SubspaceProbs& probs, std::size_t c, SamplingMethod method,
                    std::uint64_t seed) {
    return method == SamplingMethod::Exactly ? sample_exactly(probs, c, seed)
                                             : sample_expected(probs, c, seed);
}

DenseMatrix apply_column_sample(const DenseMatrix& a, const SamplingPlan& plan) {
    require_dim(static_cast<std::size_t>(a.cols()), plan.source_dim, "columns of A against plan");
    DenseMatrix out(a.rows(), static_cast<Eigen::Index>(plan.size()));
    for (std::size_t t = 0; t < plan.size(); ++t) {
        out.col(static_cast<Eigen::Index>(t)) =
            plan.scales[t] * a.col(static_cast<Eigen::Index>(plan.indices[t]));
    }
    return out;
}

DenseMatrix apply_row_sample(const DenseMatrix& a, const SamplingPlan& plan) {
    require_dim(static_cast<std::size_t>(a.rows()), plan.source_dim, "rows of A against plan");
    DenseMatrix out(static_cast<Eigen::Index>(plan.size()), a.cols());
    for (std::size_t t = 0; t < plan.size(); ++t) {
        out.row(static_cast<Eigen::Index>(t)) =
            plan.scales[t] * a.row(static_cast<Eigen::Index>(plan.indices[t]));
    }
    return out;
}

}  // namespace cxcur
