#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "cxcur/decomp.hpp"
#include "cxcur/matmul.hpp"
#include "cxcur/regression.hpp"
#include "cxcur/sampling.hpp"

namespace cxcur {

/// Insertion-ordered JSON document.
using Json = nlohmann::ordered_json;

/// Serializes with every floating-point number printed as %.17g and
/// non-finite numbers as null. indent < 0 gives a single line.
std::string dump_json(const Json& j, int indent = 2);

/// {method, seed, source_dim, c_requested, attempts, indices, scales}
Json plan_to_json(const SamplingPlan& plan);
SamplingPlan plan_from_json(const Json& j);

/// Summaries for command output; matrices are not embedded.
Json to_json(const CXResult& result);
Json to_json(const CURResult& result);
Json to_json(const RegressionSolution& solution);
Json to_json(const RegressionDiagnostics& diag);
Json to_json(const MatmulResult& result);

}  // namespace cxcur
