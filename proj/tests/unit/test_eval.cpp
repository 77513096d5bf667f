#include <doctest.h>

#include <cmath>

#include "cxcur/errors.hpp"
#include "cxcur/eval.hpp"
#include "cxcur/json.hpp"
#include "cxcur/synth.hpp"
#include "unit/helpers.hpp"

using namespace cxcur;

namespace {

DenseMatrix noisy_rank10(std::uint64_t seed) {
    SynthSpec spec;
    spec.rows = 50;
    spec.cols = 40;
    spec.target_rank = 10;
    spec.noise_level = 0.01 * std::sqrt(10.0);
    spec.seed = seed;
    return synth(spec);
}

}  // namespace

TEST_CASE("rows_for_columns") {
    CHECK(rows_for_columns(10, 2.0) == 20);
    CHECK(rows_for_columns(3, 0.1) == 1);
    CHECK(rows_for_columns(5, 1.5) == 8);
}

TEST_CASE("exact rank-k input gives zero error with flags") {
    const DenseMatrix a = testutil::low_rank(20, 15, 3, 9);
    EvalParams p;
    p.k = 3;
    p.c_values = {6};
    p.trials = 2;
    p.groups = 3;
    p.seed = 4;
    const EvalReport report = run_eval(a, p);
    REQUIRE(report.sweep.size() == 1);
    const SweepRow& row = report.sweep.front();
    CHECK(row.zero_denominator);
    CHECK(row.theta1.min == 0.0);
    CHECK(report.input.numerical_rank == 3);
}

TEST_CASE("single trial and group gives one sweep row per c") {
    EvalParams p;
    p.k = 2;
    p.c_values = {8, 4, 8};
    p.trials = 1;
    p.groups = 1;
    const EvalReport report = run_eval(gaussian_matrix(12, 10, 3), p);
    REQUIRE(report.sweep.size() == 2);
    CHECK(report.sweep[0].c == 4);
    CHECK(report.sweep[1].c == 8);
    CHECK(report.sweep[0].theta1.mean == report.sweep[0].theta1.min);
    CHECK(report.params.c_values == std::vector<std::size_t>{4, 8});
    CHECK_FALSE(report.timing.has_value());
}

TEST_CASE("median theta1 decreases as c grows") {
    EvalParams p;
    p.k = 10;
    p.c_values = {10, 15, 20, 30};
    p.trials = 5;
    p.groups = 10;
    p.seed = 21;
    const EvalReport report = run_eval(noisy_rank10(20), p);
    REQUIRE(report.sweep.size() == 4);
    for (std::size_t i = 1; i < report.sweep.size(); ++i) {
        CHECK(report.sweep[i].theta1.median < report.sweep[i - 1].theta1.median);
    }
    for (const SweepRow& row : report.sweep) {
        CHECK(row.theta2.min >= 1.0 - 1e-12);
        CHECK(row.theta1.min <= row.theta1.median);
        CHECK(row.theta1.median <= row.theta2.median + 1e-12);
    }
}

TEST_CASE("reports round-trip through JSON and are byte-deterministic") {
    EvalParams p;
    p.k = 4;
    p.c_values = {6, 12};
    p.trials = 3;
    p.groups = 4;
    p.seed = 99;
    const DenseMatrix a = gaussian_matrix(25, 18, 5);
    const EvalReport report = run_eval(a, p, "gauss");
    const std::string text = dump_json(to_json(report));
    CHECK(report_from_json(Json::parse(text)) == report);
    CHECK(dump_json(to_json(run_eval(a, p, "gauss"))) == text);

    const Json j = Json::parse(text);
    std::vector<std::string> keys;
    for (const auto& [key, value] : j.items()) {
        keys.push_back(key);
    }
    CHECK(keys == std::vector<std::string>{"schema_version", "input", "params", "sweep", "seed", "timing"});
    CHECK(j.at("timing").is_null());

    p.record_timing = true;
    const EvalReport timed = run_eval(a, p, "gauss");
    REQUIRE(timed.timing.has_value());
    CHECK(timed.timing->row_seconds.size() == 2);
    CHECK(report_from_json(to_json(timed)) == timed);

    const std::string csv = sweep_to_csv(report);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("floats keep 17 significant digits") {
    const Json j = Json{{"x", 0.1}, {"y", INFINITY}, {"z", 3}};
    CHECK(dump_json(j, -1) == "{\"x\":0.10000000000000001,\"y\":null,\"z\":3}\n");
}

TEST_CASE("sampling plans round-trip") {
    const LowRankContext ctx = prepare(gaussian_matrix(10, 8, 2), 3);
    const CXResult cx = cx_decompose(ctx, 5, SamplingMethod::Exactly, 3);
    const SamplingPlan back = plan_from_json(Json::parse(dump_json(plan_to_json(cx.plan))));
    CHECK(back.indices == cx.plan.indices);
    CHECK(back.scales == cx.plan.scales);
    CHECK(back.method == cx.plan.method);
    CHECK(back.seed == cx.plan.seed);

    Json bad = plan_to_json(cx.plan);
    bad["indices"][0] = 100;
    CHECK_THROWS_AS(plan_from_json(bad), InputError);
    CHECK_THROWS_AS(plan_from_json(Json{{"method", "exactly"}}), InputError);
}

TEST_CASE("invalid evaluation parameters") {
    const DenseMatrix a = gaussian_matrix(6, 5, 1);
    EvalParams p;
    p.k = 2;
    CHECK_THROWS_AS(run_eval(a, p), InputError);
    p.c_values = {3};
    p.trials = 0;
    CHECK_THROWS_AS(run_eval(a, p), InputError);
    p.trials = 1;
    p.k = 9;
    CHECK_THROWS_AS(run_eval(a, p), InputError);
    CHECK_THROWS_AS(report_from_json(Json{{"schema_version", 7}}), InputError);
}
