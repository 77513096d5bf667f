#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cxcur/decomp.hpp"
#include "cxcur/errors.hpp"
#include "cxcur/eval.hpp"
#include "cxcur/io.hpp"
#include "cxcur/json.hpp"
#include "cxcur/matmul.hpp"
#include "cxcur/regression.hpp"
#include "cxcur/synth.hpp"

using namespace cxcur;

namespace {

enum Exit { kOk = 0, kInput = 2, kNumerical = 3, kEmptySample = 4 };

struct Common {
    std::string input;
    std::string format = "auto";
    std::string out;
    std::string method = "expected";
    std::uint64_t seed = 0;
};

struct Options {
    Common common;
    std::string b_path;
    std::size_t k = 0;
    std::size_t c = 0;
    std::size_t r = 0;
    std::vector<std::size_t> c_values;
    double epsilon = 0.0;
    double delta = 0.0;
    std::size_t trials = 5;
    std::size_t groups = 10;
    double r_multiplier = 2.0;
    bool rank_k = false;
    bool exact = false;
    bool exact_error = false;
    bool timing = false;
    std::string probs = "optimal";
    std::string csv_out;
    std::string save_c;
    std::string save_u;
    std::string save_r;
    std::string save_x;
    std::string spectrum = "flat";
    SynthSpec synth;
};

void warn(const std::vector<std::string>& warnings) {
    for (const std::string& w : warnings) {
        std::cerr << "warning: " << w << '\n';
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw InputError("cannot open " + path + " for writing");
    }
    out << text;
    if (!out) {
        throw InputError("failed writing " + path);
    }
}

DenseMatrix load(const std::string& path, const std::string& format) {
    if (path.empty()) {
        throw InputError("an input matrix is required (--input)");
    }
    return load_matrix(path, parse_format(format));
}

Json describe(const DenseMatrix& a, const std::string& source) {
    return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"source", source},
                {"frobenius_norm", a.norm()}};
}

Json report(const Json& input, Json params, const char* key, Json result, std::uint64_t seed) {
    Json j;
    j["schema_version"] = kReportSchemaVersion;
    j["input"] = input;
    j["params"] = std::move(params);
    j[key] = std::move(result);
    j["seed"] = seed;
    j["timing"] = nullptr;
    return j;
}

void maybe_save(const std::string& path, const DenseMatrix& m, const std::string& format) {
    if (!path.empty()) {
        save_matrix(path, m, format == "auto" ? MatrixFormat::Auto : parse_format(format));
    }
}

int run_cx(const Options& o) {
    const DenseMatrix a = load(o.common.input, o.common.format);
    const SamplingMethod method = parse_method(o.common.method);
    const LowRankContext ctx = prepare(a, o.k);

    Json params{{"k", o.k}, {"c", o.c}, {"method", std::string(to_string(method))},
                {"rank_k", o.rank_k}};
    if (o.epsilon > 0.0) {
        params["epsilon"] = o.epsilon;
        params["columns_for_epsilon"] = columns_for_epsilon(o.k, o.epsilon);
    }

    Json result;
    CXResult cx;
    if (o.delta > 0.0) {
        const Boosted<CXResult> boosted = boosted_cx(ctx, o.c, method, o.delta, o.common.seed);
        cx = boosted.best;
        params["delta"] = o.delta;
        result = to_json(cx);
        result["boost"] = Json{{"best_trial", boosted.best_trial},
                               {"trials", boosted.column_trials},
                               {"errors", boosted.column_errors}};
    } else {
        cx = o.rank_k ? cx_rank_k(ctx, o.c, method, o.common.seed)
                      : cx_decompose(ctx, o.c, method, o.common.seed);
        result = to_json(cx);
    }
    warn(cx.warnings);
    maybe_save(o.save_c, cx.c, o.common.format);
    write_text(o.common.out, dump_json(report(describe(a, o.common.input), params, "result",
                                              result, o.common.seed)));
    return kOk;
}

int run_cur(const Options& o) {
    const DenseMatrix a = load(o.common.input, o.common.format);
    const SamplingMethod method = parse_method(o.common.method);
    const LowRankContext ctx = prepare(a, o.k);
    const std::size_t r = o.r > 0 ? o.r : rows_for_columns(o.c, o.r_multiplier);

    Json params{{"k", o.k}, {"c", o.c}, {"r", r}, {"method", std::string(to_string(method))}};
    if (o.epsilon > 0.0) {
        params["epsilon"] = o.epsilon;
        params["columns_for_epsilon"] = columns_for_epsilon(o.k, o.epsilon);
        params["rows_for_epsilon"] = cur_rows_for_epsilon(o.c, o.epsilon);
    }

    Json result;
    CURResult cur;
    if (o.delta > 0.0) {
        const Boosted<CURResult> boosted = boosted_cur(ctx, o.c, r, method, o.delta, o.common.seed);
        cur = boosted.best;
        params["delta"] = o.delta;
        result = to_json(cur);
        result["boost"] = Json{{"best_trial", boosted.best_trial},
                               {"column_trials", boosted.column_trials},
                               {"row_trials", boosted.row_trials},
                               {"column_errors", boosted.column_errors},
                               {"row_errors", boosted.row_errors}};
    } else {
        cur = cur_decompose(ctx, o.c, r, method, o.common.seed);
        result = to_json(cur);
    }
    warn(cur.columns.warnings);
    maybe_save(o.save_c, cur.columns.c, o.common.format);
    maybe_save(o.save_u, cur.u, o.common.format);
    maybe_save(o.save_r, cur.r, o.common.format);
    write_text(o.common.out, dump_json(report(describe(a, o.common.input), params, "result",
                                              result, o.common.seed)));
    return kOk;
}

int run_regress(const Options& o) {
    const DenseMatrix a = load(o.common.input, o.common.format);
    if (o.b_path.empty()) {
        throw InputError("regress needs a right-hand side (--b)");
    }
    const DenseMatrix b = load(o.b_path, o.common.format);
    const SamplingMethod method = parse_method(o.common.method);

    Json params{{"k", o.k}, {"r", o.r}, {"method", std::string(to_string(method))},
                {"exact", o.exact}};
    const RegressionSolution s = o.exact
                                     ? exact_regression(a, b)
                                     : sampled_regression(a, b, o.k, o.r, method, o.common.seed);
    warn(s.warnings);
    Json result = to_json(s);
    if (o.k > 0) {
        const double eps = o.epsilon > 0.0 ? o.epsilon
                                           : (o.r > 0 ? epsilon_for_rows(o.r, o.k) : 1.0);
        params["epsilon"] = eps;
        params["rows_for_epsilon"] = rows_for_epsilon(o.k, eps);
        result["diagnostics"] = to_json(diagnostics(a, b, o.k, s, eps));
    }
    maybe_save(o.save_x, s.x, o.common.format);
    Json input = describe(a, o.common.input);
    input["b"] = describe(b, o.b_path);
    write_text(o.common.out, dump_json(report(input, params, "result", result, o.common.seed)));
    return kOk;
}

int run_matmul(const Options& o) {
    const DenseMatrix a = load(o.common.input, o.common.format);
    const DenseMatrix b = o.b_path.empty() ? DenseMatrix(a.transpose())
                                           : load(o.b_path, o.common.format);
    const SamplingMethod method = parse_method(o.common.method);
    SubspaceProbs probs;
    if (o.probs == "optimal") {
        probs = optimal_product_probs(a, b);
    } else if (o.probs == "column-norm") {
        probs = column_norm_probs(a);
    } else {
        throw InputError("unknown probability scheme '" + o.probs + "'");
    }
    const MatmulResult m = approx_multiply(a, b, o.c, probs, method, o.common.seed, o.exact_error);
    const Json params{{"c", o.c}, {"method", std::string(to_string(method))}, {"probs", o.probs}};
    Json input = describe(a, o.common.input);
    input["b"] = describe(b, o.b_path.empty() ? std::string("A^T") : o.b_path);
    maybe_save(o.save_c, m.product, o.common.format);
    write_text(o.common.out, dump_json(report(input, params, "result", to_json(m), o.common.seed)));
    return kOk;
}

int run_eval_cmd(const Options& o) {
    const DenseMatrix a = load(o.common.input, o.common.format);
    EvalParams p;
    p.k = o.k;
    p.c_values = o.c_values;
    p.trials = o.trials;
    p.groups = o.groups;
    p.method = parse_method(o.common.method);
    p.r_multiplier = o.r_multiplier;
    p.seed = o.common.seed;
    p.record_timing = o.timing;
    const EvalReport rep = run_eval(a, p, o.common.input);
    for (const SweepRow& row : rep.sweep) {
        if (row.zero_denominator) {
            std::cerr << "warning: c=" << row.c << ": rank(A) <= k, theta ratios are degenerate\n";
        }
    }
    if (!o.csv_out.empty()) {
        write_text(o.csv_out, sweep_to_csv(rep));
    }
    write_text(o.common.out, dump_json(to_json(rep)));
    return kOk;
}

int run_synth(Options o) {
    parse_spectrum(o.spectrum, o.synth);
    o.synth.seed = o.common.seed;
    const DenseMatrix a = synth(o.synth);
    if (o.common.out.empty() || o.common.out == "-") {
        if (parse_format(o.common.format) == MatrixFormat::Csv) {
            write_csv(std::cout, a);
        } else {
            write_matrix_market(std::cout, a);
        }
        return kOk;
    }
    save_matrix(o.common.out, a, parse_format(o.common.format));
    return kOk;
}

int run_convert(const Options& o) {
    const DenseMatrix a = load(o.common.input, "auto");
    if (o.common.out.empty()) {
        throw InputError("convert needs --out");
    }
    save_matrix(o.common.out, a, parse_format(o.common.format));
    return kOk;
}

void add_common(CLI::App* cmd, Common& c, bool with_input = true) {
    if (with_input) {
        cmd->add_option("-i,--input", c.input, "Input matrix (Matrix Market or CSV)");
    }
    cmd->add_option("--format", c.format, "Matrix format: auto, mm, csv")->capture_default_str();
    cmd->add_option("-o,--out", c.out, "Output path (stdout when omitted)");
    cmd->add_option("--method", c.method, "Sampler: exactly or expected")->capture_default_str();
    cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subspace-sampling CX/CUR decompositions, sampled regression and matrix products"};
    app.require_subcommand(1);
    Options o;

    CLI::App* cx = app.add_subcommand("cx", "Column-based approximation A ~ C C^+ A");
    add_common(cx, o.common);
    cx->add_option("--k", o.k, "Target rank")->required();
    cx->add_option("--c", o.c, "Expected number of columns")->required();
    cx->add_option("--epsilon", o.epsilon, "Report the column count the bound asks for");
    cx->add_option("--delta", o.delta, "Boost: keep the best of ceil(ln(1/delta)) runs");
    cx->add_flag("--rank-k", o.rank_k, "Also compute the rank-k restricted error");
    cx->add_option("--save-c", o.save_c, "Write the selected columns");

    CLI::App* cur = app.add_subcommand("cur", "CUR decomposition A ~ C U R");
    add_common(cur, o.common);
    cur->add_option("--k", o.k, "Target rank")->required();
    cur->add_option("--c", o.c, "Expected number of columns")->required();
    cur->add_option("--r", o.r, "Expected number of rows (default r-multiplier * c)");
    cur->add_option("--r-multiplier", o.r_multiplier, "Rows per column when --r is absent")
        ->capture_default_str();
    cur->add_option("--epsilon", o.epsilon, "Report the sample sizes the bound asks for");
    cur->add_option("--delta", o.delta, "Boost: ceil(ln(2/delta)) runs per stage");
    cur->add_option("--save-c", o.save_c, "Write C");
    cur->add_option("--save-u", o.save_u, "Write U");
    cur->add_option("--save-r", o.save_r, "Write R");

    CLI::App* regress = app.add_subcommand("regress", "Least squares min ||B - A X||_F");
    add_common(regress, o.common);
    regress->add_option("--b", o.b_path, "Right-hand side matrix")->required();
    regress->add_option("--k", o.k, "Rank used for the sampling probabilities");
    regress->add_option("--r", o.r, "Expected number of sampled rows");
    regress->add_option("--epsilon", o.epsilon, "Accuracy used for the reported bounds");
    regress->add_flag("--exact", o.exact, "Solve the full problem instead of sampling");
    regress->add_option("--save-x", o.save_x, "Write the solution X");

    CLI::App* matmul = app.add_subcommand("matmul", "Monte-Carlo approximation of A B");
    add_common(matmul, o.common);
    matmul->add_option("--b", o.b_path, "Right factor (A^T when omitted)");
    matmul->add_option("--c", o.c, "Expected number of sampled pairs")->required();
    matmul->add_option("--probs", o.probs, "optimal or column-norm")->capture_default_str();
    matmul->add_flag("--exact-error", o.exact_error, "Also form A B and report the error");
    matmul->add_option("--save-product", o.save_c, "Write the approximate product");

    CLI::App* eval = app.add_subcommand("eval", "Theta sweep over column counts");
    add_common(eval, o.common);
    eval->add_option("--k", o.k, "Target rank")->required();
    eval->add_option("--c", o.c_values, "Column counts (comma separated)")
        ->required()
        ->delimiter(',');
    eval->add_option("--trials", o.trials, "Runs per group; each group keeps its minimum")
        ->capture_default_str();
    eval->add_option("--groups", o.groups, "Groups aggregated by mean/median/min")
        ->capture_default_str();
    eval->add_option("--r-multiplier", o.r_multiplier, "r = multiplier * c")->capture_default_str();
    eval->add_flag("--timing", o.timing, "Record wall-clock times in the report");
    eval->add_option("--csv", o.csv_out, "Also write the sweep as CSV");

    CLI::App* synth_cmd = app.add_subcommand("synth", "Generate a planted low-rank matrix");
    add_common(synth_cmd, o.common, false);
    synth_cmd->add_option("--rows", o.synth.rows, "Rows")->required();
    synth_cmd->add_option("--cols", o.synth.cols, "Columns")->required();
    synth_cmd->add_option("--rank", o.synth.target_rank, "Planted rank")->required();
    synth_cmd->add_option("--spectrum", o.spectrum, "flat, geometric:<ratio> or custom:<v1>,<v2>,...")
        ->capture_default_str();
    synth_cmd->add_option("--noise", o.synth.noise_level, "Noise level (Frobenius norm of the noise)")
        ->capture_default_str();

    CLI::App* convert = app.add_subcommand("convert", "Load a matrix and save it in --format");
    add_common(convert, o.common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInput;
    }

    try {
        if (cx->parsed()) return run_cx(o);
        if (cur->parsed()) return run_cur(o);
        if (regress->parsed()) return run_regress(o);
        if (matmul->parsed()) return run_matmul(o);
        if (eval->parsed()) return run_eval_cmd(o);
        if (synth_cmd->parsed()) return run_synth(o);
        if (convert->parsed()) return run_convert(o);
    } catch (const EmptySampleError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kEmptySample;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    }
    return kInput;
}
