"""Subspace-sampling CX/CUR decompositions, sampled regression and matrix products."""

import json

from ._core import (
    CURResult,
    CXResult,
    EmptySampleError,
    InputError,
    MatmulResult,
    NumericalError,
    RegressionSolution,
    SamplingPlan,
    TruncatedSVD,
    approx_multiply,
    boost_trials,
    column_subspace_probs,
    columns_for_epsilon,
    cur_boost_trials,
    cur_decompose,
    cur_rows_for_epsilon,
    cx_decompose,
    exact_regression,
    load_matrix,
    numerical_rank,
    project_onto_span,
    pseudoinverse,
    rows_for_epsilon,
    sample,
    sampled_regression,
    save_matrix,
    svd_truncated,
    synth,
    weighted_pseudoinverse,
)
from ._core import _run_eval_json


def run_eval(a, k, c_values, trials=5, groups=10, method="expected", r_multiplier=2.0, seed=0):
    """Theta sweep over column counts; returns the report as a dict."""
    return json.loads(_run_eval_json(a, k, list(c_values), trials, groups, method, r_multiplier, seed))


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
