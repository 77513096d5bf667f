#include "cxcur/json.hpp"

#include <cmath>

#include "cxcur/errors.hpp"
#include "cxcur/io.hpp"

namespace cxcur {

namespace {

void emit(std::string& out, const Json& j, int indent, int depth) {
    const bool pretty = indent >= 0;
    const auto newline = [&](int level) {
        if (pretty) {
            out += '\n';
            out.append(static_cast<std::size_t>(indent * level), ' ');
        }
    };

    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) {
                    out += ',';
                }
                first = false;
                newline(depth + 1);
                out += Json(key).dump();
                out += pretty ? ": " : ":";
                emit(out, value, indent, depth + 1);
            }
            newline(depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& value : j) {
                if (!first) {
                    out += ',';
                }
                first = false;
                newline(depth + 1);
                emit(out, value, indent, depth + 1);
            }
            newline(depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_real(v) : "null";
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

Json nullable(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json theta_json(const ThetaRatio& t) {
    return Json{{"value", nullable(t.value)}, {"zero_denominator", t.zero_denominator}};
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
    std::string out;
    emit(out, j, indent, 0);
    out += '\n';
    return out;
}

Json plan_to_json(const SamplingPlan& plan) {
    Json j;
    j["method"] = std::string(to_string(plan.method));
    j["seed"] = plan.seed;
    j["source_dim"] = plan.source_dim;
    j["c_requested"] = plan.c_requested;
    j["attempts"] = plan.attempts;
    j["indices"] = plan.indices;
    j["scales"] = plan.scales;
    return j;
}

SamplingPlan plan_from_json(const Json& j) {
    try {
        SamplingPlan plan;
        plan.method = parse_method(j.at("method").get<std::string>());
        plan.seed = j.at("seed").get<std::uint64_t>();
        plan.source_dim = j.at("source_dim").get<std::size_t>();
        plan.c_requested = j.at("c_requested").get<std::size_t>();
        plan.attempts = j.value("attempts", std::size_t{1});
        plan.indices = j.at("indices").get<std::vector<std::size_t>>();
        plan.scales = j.at("scales").get<std::vector<double>>();
        if (plan.indices.size() != plan.scales.size()) {
            throw InputError("plan has " + std::to_string(plan.indices.size()) + " indices but " +
                             std::to_string(plan.scales.size()) + " scales");
        }
        for (std::size_t t = 0; t < plan.size(); ++t) {
            if (plan.indices[t] >= plan.source_dim || !(plan.scales[t] > 0.0) ||
                !std::isfinite(plan.scales[t])) {
                throw InputError("plan entry " + std::to_string(t) + " is out of range");
            }
        }
        return plan;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed sampling plan: ") + e.what());
    }
}

Json to_json(const CXResult& result) {
    Json j;
    j["rows"] = result.c.rows();
    j["columns_selected"] = result.c.cols();
    j["error_frob"] = result.error_frob;
    j["error_rank_k_frob"] =
        result.error_rank_k_frob ? Json(*result.error_rank_k_frob) : Json(nullptr);
    j["projected_rank_k_error"] = result.projected_rank_k_error;
    j["best_rank_k_error"] = result.best_rank_k_error;
    j["theta1"] = theta_json(result.theta1);
    j["theta2"] = theta_json(result.theta2);
    j["plan"] = plan_to_json(result.plan);
    j["warnings"] = result.warnings;
    return j;
}

Json to_json(const CURResult& result) {
    Json j;
    j["columns"] = to_json(result.columns);
    j["rows_selected"] = result.r.rows();
    j["error_frob"] = result.error_frob;
    j["theta3"] = theta_json(result.theta3);
    j["row_plan"] = plan_to_json(result.row_plan);
    return j;
}

Json to_json(const RegressionSolution& solution) {
    Json j;
    j["residual_frob"] = solution.residual_frob;
    j["sampled_residual_frob"] = solution.sampled_residual_frob;
    j["sampled_rank"] = solution.sampled_rank;
    j["rank_collapsed"] = solution.rank_collapsed;
    j["plan"] = solution.plan ? plan_to_json(*solution.plan) : Json(nullptr);
    j["warnings"] = solution.warnings;
    return j;
}

Json to_json(const RegressionDiagnostics& diag) {
    Json j;
    j["gamma"] = diag.gamma;
    j["gamma_undefined"] = diag.gamma_undefined;
    j["kappa"] = nullable(diag.kappa);
    j["sigma_min"] = diag.sigma_min;
    j["sigma_max"] = diag.sigma_max;
    j["optimal_residual"] = diag.optimal_residual;
    j["coefficient_error"] = diag.coefficient_error;
    j["x_opt_norm"] = diag.x_opt_norm;
    j["epsilon"] = diag.epsilon;
    j["bound_result2"] = nullable(diag.bound_result2);
    j["bound_result3"] = nullable(diag.bound_result3);
    j["bound_result4"] = nullable(diag.bound_result4);
    return j;
}

Json to_json(const MatmulResult& result) {
    Json j;
    j["shape"] = {result.product.rows(), result.product.cols()};
    j["pairs_selected"] = result.plan.size();
    j["abs_error_frob"] = result.abs_error_frob ? Json(*result.abs_error_frob) : Json(nullptr);
    j["bound"] = result.bound;
    j["plan"] = plan_to_json(result.plan);
    return j;
}

}  // namespace cxcur
