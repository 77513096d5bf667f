#include "cxcur/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cxcur/errors.hpp"
#include "cxcur/io.hpp"
#include "cxcur/parallel.hpp"
#include "cxcur/rng.hpp"

namespace cxcur {

namespace {

using Clock = std::chrono::steady_clock;

ThetaStats summarize(std::vector<double> values) {
    ThetaStats s;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    s.min = values.front();
    s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
    return s;
}

struct RunThetas {
    double theta1;
    double theta2;
    double theta3;
    bool zero_denominator;
};

Json stats_json(const ThetaStats& s) {
    const auto num = [](double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); };
    return Json{{"mean", num(s.mean)}, {"median", num(s.median)}, {"min", num(s.min)}};
}

double number_or_inf(const Json& j) {
    return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

ThetaStats stats_from_json(const Json& j) {
    return ThetaStats{number_or_inf(j.at("mean")), number_or_inf(j.at("median")),
                      number_or_inf(j.at("min"))};
}

void validate(const EvalParams& p) {
    if (p.c_values.empty()) {
        throw InputError("evaluation needs at least one column count");
    }
    if (p.trials < 1 || p.groups < 1) {
        throw InputError("trials and groups must be at least 1");
    }
    if (!(p.r_multiplier > 0.0) || !std::isfinite(p.r_multiplier)) {
        throw InputError("row multiplier must be positive");
    }
    for (std::size_t c : p.c_values) {
        if (c < 1) {
            throw InputError("column counts must be at least 1");
        }
    }
}

}  // namespace

std::size_t rows_for_columns(std::size_t c, double multiplier) {
    const auto r = static_cast<std::size_t>(std::llround(multiplier * static_cast<double>(c)));
    return std::max<std::size_t>(1, r);
}

EvalReport run_eval(const DenseMatrix& a, const EvalParams& params, const std::string& source) {
    validate(params);
    const auto started = Clock::now();
    const LowRankContext ctx = prepare(a, params.k, params.tol);

    EvalReport report;
    report.params = params;
    std::sort(report.params.c_values.begin(), report.params.c_values.end());
    report.params.c_values.erase(
        std::unique(report.params.c_values.begin(), report.params.c_values.end()),
        report.params.c_values.end());

    MatrixDescriptor& in = report.input;
    in.rows = static_cast<std::size_t>(a.rows());
    in.cols = static_cast<std::size_t>(a.cols());
    in.source = source;
    in.frobenius_norm = ctx.a_norm;
    in.best_rank_k_error = ctx.best_rank_k_error;
    in.numerical_rank = ctx.svd.numerical_rank();
    const auto lead = std::min<Eigen::Index>(ctx.svd.sigma.size(),
                                             static_cast<Eigen::Index>(2 * params.k));
    in.leading_singular_values.assign(ctx.svd.sigma.data(), ctx.svd.sigma.data() + lead);

    EvalTiming timing;
    for (std::size_t c : report.params.c_values) {
        const auto row_started = Clock::now();
        const std::size_t r = rows_for_columns(c, params.r_multiplier);
        const std::uint64_t c_seed = derive_seed(params.seed, c);
        const std::size_t runs = params.trials * params.groups;

        const auto thetas = run_trials(runs, [&](std::size_t i) {
            const CURResult cur = cur_decompose(ctx, c, r, params.method, derive_seed(c_seed, i));
            return RunThetas{cur.columns.theta1.value, cur.columns.theta2.value, cur.theta3.value,
                             cur.theta3.zero_denominator};
        });

        SweepRow row;
        row.c = c;
        row.r = r;
        row.method = params.method;
        row.trials = params.trials;
        row.groups = params.groups;
        std::vector<double> g1, g2, g3;
        for (std::size_t g = 0; g < params.groups; ++g) {
            double m1 = std::numeric_limits<double>::infinity();
            double m2 = m1;
            double m3 = m1;
            for (std::size_t t = 0; t < params.trials; ++t) {
                const RunThetas& run = thetas[g * params.trials + t];
                m1 = std::min(m1, run.theta1);
                m2 = std::min(m2, run.theta2);
                m3 = std::min(m3, run.theta3);
                row.zero_denominator = row.zero_denominator || run.zero_denominator;
            }
            g1.push_back(m1);
            g2.push_back(m2);
            g3.push_back(m3);
        }
        row.theta1 = summarize(std::move(g1));
        row.theta2 = summarize(std::move(g2));
        row.theta3 = summarize(std::move(g3));
        report.sweep.push_back(row);
        timing.row_seconds.push_back(
            std::chrono::duration<double>(Clock::now() - row_started).count());
    }
    if (params.record_timing) {
        timing.total_seconds = std::chrono::duration<double>(Clock::now() - started).count();
        report.timing = std::move(timing);
    }
    return report;
}

Json to_json(const EvalReport& report) {
    Json j;
    j["schema_version"] = report.schema_version;

    const MatrixDescriptor& in = report.input;
    j["input"] = Json{{"rows", in.rows},
                      {"cols", in.cols},
                      {"source", in.source},
                      {"frobenius_norm", in.frobenius_norm},
                      {"best_rank_k_error", in.best_rank_k_error},
                      {"numerical_rank", in.numerical_rank},
                      {"leading_singular_values", in.leading_singular_values}};

    const EvalParams& p = report.params;
    j["params"] = Json{{"k", p.k},
                       {"c_values", p.c_values},
                       {"trials", p.trials},
                       {"groups", p.groups},
                       {"method", std::string(to_string(p.method))},
                       {"r_multiplier", p.r_multiplier},
                       {"tol", p.tol}};

    Json sweep = Json::array();
    for (const SweepRow& row : report.sweep) {
        sweep.push_back(Json{{"c", row.c},
                             {"r", row.r},
                             {"method", std::string(to_string(row.method))},
                             {"trials", row.trials},
                             {"groups", row.groups},
                             {"theta1", stats_json(row.theta1)},
                             {"theta2", stats_json(row.theta2)},
                             {"theta3", stats_json(row.theta3)},
                             {"zero_denominator", row.zero_denominator}});
    }
    j["sweep"] = std::move(sweep);
    j["seed"] = p.seed;
    if (report.timing) {
        j["timing"] = Json{{"total_seconds", report.timing->total_seconds},
                           {"row_seconds", report.timing->row_seconds}};
    } else {
        j["timing"] = nullptr;
    }
    return j;
}

EvalReport report_from_json(const Json& j) {
    try {
        EvalReport report;
        report.schema_version = j.at("schema_version").get<int>();
        if (report.schema_version != kReportSchemaVersion) {
            throw InputError("unsupported report schema version " +
                             std::to_string(report.schema_version));
        }
        const Json& in = j.at("input");
        report.input.rows = in.at("rows").get<std::size_t>();
        report.input.cols = in.at("cols").get<std::size_t>();
        report.input.source = in.at("source").get<std::string>();
        report.input.frobenius_norm = in.at("frobenius_norm").get<double>();
        report.input.best_rank_k_error = in.at("best_rank_k_error").get<double>();
        report.input.numerical_rank = in.at("numerical_rank").get<std::size_t>();
        report.input.leading_singular_values =
            in.at("leading_singular_values").get<std::vector<double>>();

        const Json& p = j.at("params");
        report.params.k = p.at("k").get<std::size_t>();
        report.params.c_values = p.at("c_values").get<std::vector<std::size_t>>();
        report.params.trials = p.at("trials").get<std::size_t>();
        report.params.groups = p.at("groups").get<std::size_t>();
        report.params.method = parse_method(p.at("method").get<std::string>());
        report.params.r_multiplier = p.at("r_multiplier").get<double>();
        report.params.tol = p.at("tol").get<double>();
        report.params.seed = j.at("seed").get<std::uint64_t>();

        for (const Json& row : j.at("sweep")) {
            SweepRow s;
            s.c = row.at("c").get<std::size_t>();
            s.r = row.at("r").get<std::size_t>();
            s.method = parse_method(row.at("method").get<std::string>());
            s.trials = row.at("trials").get<std::size_t>();
            s.groups = row.at("groups").get<std::size_t>();
            s.theta1 = stats_from_json(row.at("theta1"));
            s.theta2 = stats_from_json(row.at("theta2"));
            s.theta3 = stats_from_json(row.at("theta3"));
            s.zero_denominator = row.at("zero_denominator").get<bool>();
            report.sweep.push_back(s);
        }

        const Json& t = j.at("timing");
        report.params.record_timing = !t.is_null();
        if (!t.is_null()) {
            report.timing = EvalTiming{t.at("total_seconds").get<double>(),
                                       t.at("row_seconds").get<std::vector<double>>()};
        }
        return report;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed evaluation report: ") + e.what());
    }
}

std::string sweep_to_csv(const EvalReport& report) {
    std::ostringstream out;
    out << "c,r,method,trials,groups,theta1_mean,theta1_median,theta1_min,"
           "theta2_mean,theta2_median,theta2_min,theta3_mean,theta3_median,theta3_min,"
           "zero_denominator\n";
    for (const SweepRow& row : report.sweep) {
        out << row.c << ',' << row.r << ',' << to_string(row.method) << ',' << row.trials << ','
            << row.groups;
        for (const ThetaStats* s : {&row.theta1, &row.theta2, &row.theta3}) {
            out << ',' << format_real(s->mean) << ',' << format_real(s->median) << ','
                << format_real(s->min);
        }
        out << ',' << (row.zero_denominator ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace cxcur
