#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cxcur/decomp.hpp"
#include "cxcur/errors.hpp"
#include "cxcur/eval.hpp"
#include "cxcur/io.hpp"
#include "cxcur/json.hpp"
#include "cxcur/linalg.hpp"
#include "cxcur/matmul.hpp"
#include "cxcur/regression.hpp"
#include "cxcur/synth.hpp"

namespace py = pybind11;
using namespace cxcur;
using namespace pybind11::literals;

namespace {

SamplingMethod method_arg(const std::string& name) { return parse_method(name); }

SynthSpec make_spec(std::size_t rows, std::size_t cols, std::size_t rank, const std::string& spectrum,
                    double noise, std::uint64_t seed) {
    SynthSpec spec;
    spec.rows = rows;
    spec.cols = cols;
    spec.target_rank = rank;
    spec.noise_level = noise;
    spec.seed = seed;
    parse_spectrum(spectrum, spec);
    return spec;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Subspace-sampling CX/CUR decompositions, sampled regression and matrix products";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<EmptySampleError>(m, "EmptySampleError", PyExc_RuntimeError);

    py::class_<TruncatedSVD>(m, "TruncatedSVD")
        .def_readonly("k", &TruncatedSVD::k)
        .def_readonly("effective_rank", &TruncatedSVD::effective_rank)
        .def_readonly("u_k", &TruncatedSVD::u_k)
        .def_readonly("sigma", &TruncatedSVD::sigma)
        .def_readonly("v_k", &TruncatedSVD::v_k)
        .def("tail_error", &TruncatedSVD::tail_error)
        .def("reconstruct", &TruncatedSVD::reconstruct);

    m.def("svd_truncated", &svd_truncated, "a"_a, "k"_a, "tol"_a = kDefaultRankTol);
    m.def("pseudoinverse", &pseudoinverse, "a"_a, "tol"_a = kDefaultRankTol);
    m.def("weighted_pseudoinverse", &weighted_pseudoinverse, "a"_a, "d1"_a, "d2"_a,
          "tol"_a = kDefaultRankTol);
    m.def("project_onto_span", &project_onto_span, "c"_a, "a"_a, "tol"_a = kDefaultRankTol);
    m.def("numerical_rank", &numerical_rank, "a"_a, "tol"_a = kDefaultRankTol);

    py::class_<SamplingPlan>(m, "SamplingPlan")
        .def_property_readonly("method", [](const SamplingPlan& p) { return std::string(to_string(p.method)); })
        .def_readonly("indices", &SamplingPlan::indices)
        .def_readonly("scales", &SamplingPlan::scales)
        .def_readonly("seed", &SamplingPlan::seed)
        .def_readonly("attempts", &SamplingPlan::attempts)
        .def("__len__", &SamplingPlan::size);

    m.def(
        "column_subspace_probs",
        [](const DenseMatrix& a, std::size_t k) { return column_subspace_probs(svd_truncated(a, k)).probs; },
        "a"_a, "k"_a);
    m.def(
        "sample",
        [](const std::vector<double>& probs, std::size_t c, const std::string& method, std::uint64_t seed) {
            return sample(SubspaceProbs::from_weights(probs), c, method_arg(method), seed);
        },
        "probs"_a, "c"_a, "method"_a = "expected", "seed"_a = 0);

    py::class_<MatmulResult>(m, "MatmulResult")
        .def_readonly("product", &MatmulResult::product)
        .def_readonly("c", &MatmulResult::c)
        .def_readonly("r", &MatmulResult::r)
        .def_readonly("plan", &MatmulResult::plan)
        .def_readonly("abs_error_frob", &MatmulResult::abs_error_frob)
        .def_readonly("bound", &MatmulResult::bound);
    m.def(
        "approx_multiply",
        [](const DenseMatrix& a, const DenseMatrix& b, std::size_t c, const std::string& probs,
           const std::string& method, std::uint64_t seed, bool exact_error) {
            SubspaceProbs p;
            if (probs == "optimal") {
                p = optimal_product_probs(a, b);
            } else if (probs == "column-norm") {
                p = column_norm_probs(a);
            } else {
                throw InputError("unknown probability scheme '" + probs + "'");
            }
            return approx_multiply(a, b, c, p, method_arg(method), seed, exact_error);
        },
        "a"_a, "b"_a, "c"_a, "probs"_a = "optimal", "method"_a = "expected", "seed"_a = 0,
        "exact_error"_a = false);

    py::class_<RegressionSolution>(m, "RegressionSolution")
        .def_readonly("x", &RegressionSolution::x)
        .def_readonly("residual_frob", &RegressionSolution::residual_frob)
        .def_readonly("sampled_residual_frob", &RegressionSolution::sampled_residual_frob)
        .def_readonly("plan", &RegressionSolution::plan)
        .def_readonly("sampled_rank", &RegressionSolution::sampled_rank)
        .def_readonly("rank_collapsed", &RegressionSolution::rank_collapsed)
        .def_readonly("warnings", &RegressionSolution::warnings);
    m.def("exact_regression", &exact_regression, "a"_a, "b"_a, "tol"_a = kDefaultRankTol);
    m.def(
        "sampled_regression",
        [](const DenseMatrix& a, const DenseMatrix& b, std::size_t k, std::size_t r, const std::string& method,
           std::uint64_t seed) { return sampled_regression(a, b, k, r, method_arg(method), seed); },
        "a"_a, "b"_a, "k"_a, "r"_a, "method"_a = "expected", "seed"_a = 0);
    m.def("rows_for_epsilon", &rows_for_epsilon, "k"_a, "epsilon"_a, "beta"_a = 1.0);

    py::class_<CXResult>(m, "CXResult")
        .def_readonly("c", &CXResult::c)
        .def_readonly("plan", &CXResult::plan)
        .def_readonly("error_frob", &CXResult::error_frob)
        .def_readonly("error_rank_k_frob", &CXResult::error_rank_k_frob)
        .def_readonly("best_rank_k_error", &CXResult::best_rank_k_error)
        .def_property_readonly("theta1", [](const CXResult& r) { return r.theta1.value; })
        .def_property_readonly("theta2", [](const CXResult& r) { return r.theta2.value; })
        .def_property_readonly("zero_denominator", [](const CXResult& r) { return r.theta1.zero_denominator; })
        .def_readonly("warnings", &CXResult::warnings);
    py::class_<CURResult>(m, "CURResult")
        .def_readonly("columns", &CURResult::columns)
        .def_property_readonly("c", [](const CURResult& r) { return r.columns.c; })
        .def_readonly("u", &CURResult::u)
        .def_readonly("r", &CURResult::r)
        .def_readonly("w", &CURResult::w)
        .def_readonly("row_plan", &CURResult::row_plan)
        .def_readonly("error_frob", &CURResult::error_frob)
        .def_property_readonly("theta3", [](const CURResult& r) { return r.theta3.value; });

    m.def(
        "cx_decompose",
        [](const DenseMatrix& a, std::size_t k, std::size_t c, const std::string& method, std::uint64_t seed,
           bool rank_k) {
            return rank_k ? cx_rank_k(a, k, c, method_arg(method), seed)
                          : cx_decompose(a, k, c, method_arg(method), seed);
        },
        "a"_a, "k"_a, "c"_a, "method"_a = "expected", "seed"_a = 0, "rank_k"_a = false);
    m.def(
        "cur_decompose",
        [](const DenseMatrix& a, std::size_t k, std::size_t c, std::size_t r, const std::string& method,
           std::uint64_t seed) { return cur_decompose(a, k, c, r, method_arg(method), seed); },
        "a"_a, "k"_a, "c"_a, "r"_a, "method"_a = "expected", "seed"_a = 0);
    m.def("columns_for_epsilon", &columns_for_epsilon, "k"_a, "epsilon"_a);
    m.def("cur_rows_for_epsilon", &cur_rows_for_epsilon, "c"_a, "epsilon"_a);
    m.def("boost_trials", &boost_trials, "delta"_a);
    m.def("cur_boost_trials", &cur_boost_trials, "delta"_a);

    m.def(
        "synth",
        [](std::size_t rows, std::size_t cols, std::size_t rank, const std::string& spectrum, double noise,
           std::uint64_t seed) { return synth(make_spec(rows, cols, rank, spectrum, noise, seed)); },
        "rows"_a, "cols"_a, "rank"_a, "spectrum"_a = "flat", "noise"_a = 0.0, "seed"_a = 0);

    m.def(
        "_run_eval_json",
        [](const DenseMatrix& a, std::size_t k, std::vector<std::size_t> c_values, std::size_t trials,
           std::size_t groups, const std::string& method, double r_multiplier, std::uint64_t seed) {
            EvalParams p;
            p.k = k;
            p.c_values = std::move(c_values);
            p.trials = trials;
            p.groups = groups;
            p.method = method_arg(method);
            p.r_multiplier = r_multiplier;
            p.seed = seed;
            return dump_json(to_json(run_eval(a, p)));
        },
        "a"_a, "k"_a, "c_values"_a, "trials"_a = 5, "groups"_a = 10, "method"_a = "expected",
        "r_multiplier"_a = 2.0, "seed"_a = 0);

    m.def(
        "load_matrix", [](const std::string& path, const std::string& format) {
            return load_matrix(path, parse_format(format));
        },
        "path"_a, "format"_a = "auto");
    m.def(
        "save_matrix",
        [](const std::string& path, const DenseMatrix& a, const std::string& format) {
            save_matrix(path, a, parse_format(format));
        },
        "path"_a, "a"_a, "format"_a = "auto");
}
