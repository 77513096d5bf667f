#include "cxcur/matmul.hpp"

#include <cmath>

#include "cxcur/errors.hpp"

namespace cxcur {

SubspaceProbs optimal_product_probs(const DenseMatrix& a, const DenseMatrix& b) {
    require_valid(a, "A");
    require_valid(b, "B");
    require_dim(static_cast<std::size_t>(b.rows()), static_cast<std::size_t>(a.cols()),
                "rows of B against columns of A");
    std::vector<double> w(static_cast<std::size_t>(a.cols()));
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
        w[static_cast<std::size_t>(i)] = a.col(i).norm() * b.row(i).norm();
    }
    return SubspaceProbs::from_weights(std::move(w));
}

SubspaceProbs column_norm_probs(const DenseMatrix& a) {
    require_valid(a, "A");
    std::vector<double> w(static_cast<std::size_t>(a.cols()));
    for (Eigen::Index i = 0; i < a.cols(); ++i) {
        w[static_cast<std::size_t>(i)] = a.col(i).squaredNorm();
    }
    return SubspaceProbs::from_weights(std::move(w));
}

double product_error_bound(const DenseMatrix& a, const DenseMatrix& b, std::size_t c, double beta) {
    return a.norm() * b.norm() / std::sqrt(beta * static_cast<double>(c));
}

MatmulResult approx_multiply(const DenseMatrix& a, const DenseMatrix& b, std::size_t c,
                             const SubspaceProbs& probs, SamplingMethod method, std::uint64_t seed,
                             bool with_exact_error) {
    require_valid(a, "A");
    require_valid(b, "B");
    require_dim(static_cast<std::size_t>(b.rows()), static_cast<std::size_t>(a.cols()),
                "rows of B against columns of A");
    require_dim(probs.probs.size(), static_cast<std::size_t>(a.cols()),
                "probabilities against the shared dimension");

    MatmulResult out;
    out.plan = sample(probs, c, method, seed);
    out.c = apply_column_sample(a, out.plan);
    out.r = apply_row_sample(b, out.plan);
    out.product = out.c * out.r;
    out.bound = product_error_bound(a, b, c, probs.beta);
    if (with_exact_error) {
        out.abs_error_frob = (a * b - out.product).norm();
    }
    return out;
}

}  // namespace cxcur
