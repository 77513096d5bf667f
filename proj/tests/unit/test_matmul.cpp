#include <doctest.h>

#include <cmath>

#include "cxcur/errors.hpp"
#include "cxcur/linalg.hpp"
#include "cxcur/matmul.hpp"
#include "cxcur/rng.hpp"
#include "cxcur/synth.hpp"

using namespace cxcur;

namespace {

double mean_error(const DenseMatrix& a, const DenseMatrix& b, const SubspaceProbs& p,
                  std::size_t c, SamplingMethod m, std::size_t trials, std::uint64_t seed) {
    const DenseMatrix exact = a * b;
    double acc = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        acc += (exact - approx_multiply(a, b, c, p, m, derive_seed(seed, t)).product).norm();
    }
    return acc / static_cast<double>(trials);
}

}  // namespace

TEST_CASE("optimal_product_probs") {
    const SubspaceProbs id = optimal_product_probs(DenseMatrix::Identity(2, 2), DenseMatrix::Identity(2, 2));
    CHECK(id.probs[0] == doctest::Approx(0.5));
    CHECK(id.probs[1] == doctest::Approx(0.5));
    CHECK(id.beta == 1.0);

    DenseMatrix a = DenseMatrix::Zero(2, 2);
    a(0, 0) = 3.0;
    DenseMatrix b(2, 2);
    b << 1, 0, 0, 1;
    const SubspaceProbs p = optimal_product_probs(a, b);
    CHECK(p.probs[0] == doctest::Approx(1.0));
    CHECK(p.probs[1] == 0.0);

    const DenseMatrix x = gaussian_matrix(4, 6, 1);
    const DenseMatrix y = gaussian_matrix(6, 3, 2);
    const SubspaceProbs q = optimal_product_probs(x, y);
    double z = 0.0;
    for (int i = 0; i < 6; ++i) {
        z += x.col(i).norm() * y.row(i).norm();
    }
    for (int i = 0; i < 6; ++i) {
        CHECK(std::abs(q.probs[static_cast<std::size_t>(i)] - x.col(i).norm() * y.row(i).norm() / z) <= 1e-12);
    }

    CHECK_THROWS_AS(optimal_product_probs(DenseMatrix::Zero(2, 2), b), InputError);
    CHECK_THROWS_AS(optimal_product_probs(x, x), InputError);
}

TEST_CASE("column_norm_probs") {
    const SubspaceProbs u = column_norm_probs(DenseMatrix::Identity(3, 3));
    for (double v : u.probs) {
        CHECK(v == doctest::Approx(1.0 / 3.0));
    }
    DenseMatrix d = DenseMatrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 1.0;
    const SubspaceProbs p = column_norm_probs(d);
    CHECK(p.probs[0] == doctest::Approx(0.8));
    CHECK(p.probs[1] == doctest::Approx(0.2));

    const DenseMatrix a = gaussian_matrix(5, 7, 3);
    const SubspaceProbs q = column_norm_probs(a);
    double total = 0.0;
    for (int i = 0; i < 7; ++i) {
        total += q.probs[static_cast<std::size_t>(i)];
        CHECK(std::abs(q.probs[static_cast<std::size_t>(i)] * a.squaredNorm() - a.col(i).squaredNorm()) <= 1e-12 * a.squaredNorm());
    }
    CHECK(std::abs(total - 1.0) <= 1e-12);
    CHECK_THROWS_AS(column_norm_probs(DenseMatrix::Zero(2, 3)), InputError);
}

TEST_CASE("approx_multiply exact cases") {
    SUBCASE("all mass on the only contributing pair") {
        DenseMatrix a = DenseMatrix::Zero(3, 4);
        a.col(2) << 1, 2, 3;
        DenseMatrix b = DenseMatrix::Zero(4, 2);
        b.row(2) << 4, 5;
        const SubspaceProbs p{{0.0, 0.0, 1.0, 0.0}, 0, 1.0};
        for (std::size_t c : {1U, 3U, 10U}) {
            for (SamplingMethod m : {SamplingMethod::Exactly, SamplingMethod::Expected}) {
                const MatmulResult r = approx_multiply(a, b, c, p, m, 17, true);
                CHECK((r.product - a * b).norm() <= 1e-14);
                CHECK(*r.abs_error_frob <= 1e-14);
            }
        }
    }
    SUBCASE("saturated Expected sampler") {
        const DenseMatrix i2 = DenseMatrix::Identity(2, 2);
        const MatmulResult r = approx_multiply(i2, i2, 2, SubspaceProbs{{0.5, 0.5}, 0, 1.0},
                                               SamplingMethod::Expected, 3);
        CHECK(r.product == i2);
        CHECK_FALSE(r.abs_error_frob.has_value());
    }
}

TEST_CASE("approx_multiply structure") {
    const DenseMatrix a = gaussian_matrix(6, 9, 4);
    const DenseMatrix b = gaussian_matrix(9, 5, 5);
    const SubspaceProbs p = optimal_product_probs(a, b);
    const MatmulResult r = approx_multiply(a, b, 4, p, SamplingMethod::Exactly, 8, true);
    CHECK(r.product == r.c * r.r);
    CHECK(r.c.cols() == 4);
    CHECK(r.r.rows() == 4);
    CHECK(r.bound == doctest::Approx(a.norm() * b.norm() / 2.0));
    for (std::size_t t = 0; t < r.plan.size(); ++t) {
        const auto j = static_cast<Eigen::Index>(r.plan.indices[t]);
        const auto tt = static_cast<Eigen::Index>(t);
        CHECK((r.c.col(tt) - r.plan.scales[t] * a.col(j)).norm() == 0.0);
        CHECK((r.r.row(tt) - r.plan.scales[t] * b.row(j)).norm() == 0.0);
    }
    const MatmulResult again = approx_multiply(a, b, 4, p, SamplingMethod::Exactly, 8);
    CHECK(again.product == r.product);

    CHECK_THROWS_AS(approx_multiply(a, a, 2, p, SamplingMethod::Exactly, 1), InputError);
    CHECK_THROWS_AS(approx_multiply(a, b, 2, column_norm_probs(b), SamplingMethod::Exactly, 1), InputError);
}

TEST_CASE("expected Frobenius error stays under the bound") {
    const DenseMatrix a = gaussian_matrix(30, 50, 100);
    const DenseMatrix b = gaussian_matrix(50, 20, 101);
    const double bound = product_error_bound(a, b, 25, 1.0);
    for (SamplingMethod m : {SamplingMethod::Exactly, SamplingMethod::Expected}) {
        CHECK(mean_error(a, b, optimal_product_probs(a, b), 25, m, 500, 7) <= 1.05 * bound);
        CHECK(mean_error(a, b, column_norm_probs(a), 25, m, 500, 8) <= 1.05 * bound);
    }
}

TEST_CASE("CR is an unbiased estimator of AB") {
    const DenseMatrix a = gaussian_matrix(4, 12, 200);
    const DenseMatrix b = gaussian_matrix(12, 3, 201);
    const SubspaceProbs p = optimal_product_probs(a, b);
    const std::size_t trials = 4000;
    DenseMatrix sum = DenseMatrix::Zero(4, 3);
    DenseMatrix sum_sq = DenseMatrix::Zero(4, 3);
    for (std::size_t t = 0; t < trials; ++t) {
        const DenseMatrix cr = approx_multiply(a, b, 3, p, SamplingMethod::Exactly, derive_seed(9, t)).product;
        sum += cr;
        sum_sq += cr.cwiseProduct(cr);
    }
    const double n = static_cast<double>(trials);
    const DenseMatrix mean = sum / n;
    const DenseMatrix exact = a * b;
    for (Eigen::Index i = 0; i < 4; ++i) {
        for (Eigen::Index j = 0; j < 3; ++j) {
            const double var = sum_sq(i, j) / n - mean(i, j) * mean(i, j);
            const double se = std::sqrt(var / n);
            CHECK(std::abs(mean(i, j) - exact(i, j)) <= 4 * se);
        }
    }
}

TEST_CASE("doubling c shrinks the mean error by roughly sqrt(2)") {
    const DenseMatrix a = gaussian_matrix(30, 200, 300);
    const DenseMatrix b = gaussian_matrix(200, 20, 301);
    const SubspaceProbs p = optimal_product_probs(a, b);
    const double e16 = mean_error(a, b, p, 16, SamplingMethod::Exactly, 400, 1);
    const double e32 = mean_error(a, b, p, 32, SamplingMethod::Exactly, 400, 2);
    const double ratio = e16 / e32;
    CHECK(ratio >= 1.2);
    CHECK(ratio <= 1.7);
}

TEST_CASE("spectral error of C C^T decays with c") {
    const DenseMatrix a = gaussian_matrix(20, 200, 400);
    const DenseMatrix at = a.transpose();
    const DenseMatrix aat = a * at;
    const SubspaceProbs p = column_norm_probs(a);
    double previous = INFINITY;
    for (std::size_t c : {8U, 16U, 32U, 64U}) {
        double acc = 0.0;
        for (std::size_t t = 0; t < 100; ++t) {
            const MatmulResult r = approx_multiply(a, at, c, p, SamplingMethod::Expected, derive_seed(c, t));
            acc += spectral_norm(aat - r.product);
        }
        const double mean = acc / 100.0;
        CHECK(mean < previous);
        previous = mean;
    }
}
