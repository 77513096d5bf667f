#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cxcur/decomp.hpp"
#include "cxcur/json.hpp"
#include "cxcur/matrix.hpp"
#include "cxcur/sampling.hpp"

namespace cxcur {

inline constexpr int kReportSchemaVersion = 1;

struct MatrixDescriptor {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::string source;
    double frobenius_norm = 0.0;
    double best_rank_k_error = 0.0;
    std::size_t numerical_rank = 0;
    /// Leading singular values (at most 2k of them).
    std::vector<double> leading_singular_values;

    bool operator==(const MatrixDescriptor&) const = default;
};

/// Aggregate over trial groups. Values are +inf when an error ratio had a
/// zero denominator and a nonzero numerator.
struct ThetaStats {
    double mean = 0.0;
    double median = 0.0;
    double min = 0.0;

    bool operator==(const ThetaStats&) const = default;
};

struct SweepRow {
    std::size_t c = 0;
    std::size_t r = 0;
    SamplingMethod method = SamplingMethod::Expected;
    std::size_t trials = 0;  ///< runs per group (min taken within a group)
    std::size_t groups = 0;  ///< groups aggregated by mean/median/min
    ThetaStats theta1;
    ThetaStats theta2;
    ThetaStats theta3;
    bool zero_denominator = false;

    bool operator==(const SweepRow&) const = default;
};

struct EvalParams {
    std::size_t k = 0;
    std::vector<std::size_t> c_values;
    std::size_t trials = 5;
    std::size_t groups = 10;
    SamplingMethod method = SamplingMethod::Expected;
    double r_multiplier = 2.0;
    std::uint64_t seed = 0;
    double tol = kDefaultRankTol;
    /// Wall-clock times make reports non-reproducible, so they are opt-in.
    bool record_timing = false;

    bool operator==(const EvalParams&) const = default;
};

struct EvalTiming {
    double total_seconds = 0.0;
    std::vector<double> row_seconds;

    bool operator==(const EvalTiming&) const = default;
};

struct EvalReport {
    int schema_version = kReportSchemaVersion;
    MatrixDescriptor input;
    EvalParams params;
    std::vector<SweepRow> sweep;  ///< sorted by c
    std::optional<EvalTiming> timing;

    bool operator==(const EvalReport&) const = default;
};

/// Row count used for CUR at a given c: max(1, round(multiplier * c)).
std::size_t rows_for_columns(std::size_t c, double multiplier);

/// Reconstruction-error sweep: for every c, `groups` groups of `trials` CUR
/// runs; each group keeps the minimum of theta1, theta2 and theta3, and the
/// group minima are summarized by mean, median and min.
EvalReport run_eval(const DenseMatrix& a, const EvalParams& params,
                    const std::string& source = "<memory>");

Json to_json(const EvalReport& report);
EvalReport report_from_json(const Json& j);

/// One line per sweep row: c,r,method,trials,groups,theta1_mean,...
std::string sweep_to_csv(const EvalReport& report);

}  // namespace cxcur
