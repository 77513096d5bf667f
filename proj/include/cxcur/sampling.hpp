#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "cxcur/linalg.hpp"
#include "cxcur/matrix.hpp"

namespace cxcur {

/// Exactly: c i.i.d. draws with replacement.
/// Expected: independent inclusion of index j with probability min{1, c p_j}.
enum class SamplingMethod { Exactly, Expected };

std::string_view to_string(SamplingMethod method);
/// Accepts "exactly" or "expected" (case-sensitive); throws InputError otherwise.
SamplingMethod parse_method(std::string_view name);

/// Probability distribution over the columns (or rows) of a matrix.
///
/// `k` is the rank the distribution was built for (leverage scores sum to k
/// before normalization); norm-based distributions for matrix products leave
/// it at 0. `beta` is the quality factor relative to exact leverage scores.
struct SubspaceProbs {
    std::vector<double> probs;
    std::size_t k = 0;
    double beta = 1.0;

    /// Normalize nonnegative weights into a distribution. Throws InputError
    /// when any weight is negative or non-finite, or all are zero.
    static SubspaceProbs from_weights(std::vector<double> weights, std::size_t k = 0,
                                      double beta = 1.0);
};

/// Throws InputError unless probs is a nonempty distribution (sum within 1e-9
/// of one) and beta lies in (0, 1].
void validate(const SubspaceProbs& p);

/// The (S, D) pair: chosen source indices and the matching rescale factors.
struct SamplingPlan {
    SamplingMethod method = SamplingMethod::Expected;
    std::size_t source_dim = 0;
    std::size_t c_requested = 0;
    std::vector<std::size_t> indices;
    std::vector<double> scales;
    std::uint64_t seed = 0;
    /// Expected(c) draws made before a nonempty sample came up (1 when the first succeeded).
    std::size_t attempts = 1;

    [[nodiscard]] std::size_t size() const { return indices.size(); }
};

/// Maximum Expected(c) draws before EmptySampleError.
inline constexpr std::size_t kExpectedMaxAttempts = 16;

/// p_i = ||(V_k)_(i)||^2 / k over the columns of A. When the SVD's effective
/// rank is below k, the leading effective_rank vectors are used and k is
/// lowered to match. Throws InputError for a zero matrix.
SubspaceProbs column_subspace_probs(const TruncatedSVD& svd);

/// Same construction over rows, from the left singular vectors: p_i = ||(U_k)_(i)||^2 / k.
SubspaceProbs row_subspace_probs_from_svd(const TruncatedSVD& svd);

/// p_i = ||(U_C)_(i)||^2 / rank(C) over the rows of C, with U_C the left
/// singular vectors of C for nonzero singular values.
SubspaceProbs row_subspace_probs(const DenseMatrix& c, double tol = kDefaultRankTol);

SamplingPlan sample_exactly(const SubspaceProbs& probs, std::size_t c, std::uint64_t seed);

/// Retries on fresh substreams when the selection comes back empty; throws
/// EmptySampleError after kExpectedMaxAttempts tries.
SamplingPlan sample_expected(const SubspaceProbs& probs, std::size_t c, std::uint64_t seed);

SamplingPlan sample(const SubspaceProbs& probs, std::size_t c, SamplingMethod method,
                    std::uint64_t seed);

/// A S D: column t is scales[t] * A^(indices[t]).
DenseMatrix apply_column_sample(const DenseMatrix& a, const SamplingPlan& plan);

/// D S^T A: row t is scales[t] * A_(indices[t]).
DenseMatrix apply_row_sample(const DenseMatrix& a, const SamplingPlan& plan);

}  // namespace cxcur
