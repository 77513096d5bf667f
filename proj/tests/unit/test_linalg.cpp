#include <doctest.h>

#include <cmath>

#include "cxcur/errors.hpp"
#include "cxcur/linalg.hpp"
#include "cxcur/synth.hpp"
#include "oracle/jacobi_svd.hpp"
#include "unit/helpers.hpp"

using namespace cxcur;
using testutil::low_rank;

namespace {

DenseMatrix diag3(double a, double b, double c) {
    DenseMatrix d = DenseMatrix::Zero(3, 3);
    d(0, 0) = a;
    d(1, 1) = b;
    d(2, 2) = c;
    return d;
}

void check_moore_penrose(const DenseMatrix& a, double tol) {
    const DenseMatrix p = pseudoinverse(a);
    CHECK((a * p * a - a).norm() <= tol * a.norm());
    CHECK((p * a * p - p).norm() <= tol * std::max(p.norm(), 1.0));
    const DenseMatrix ap = a * p;
    const DenseMatrix pa = p * a;
    CHECK((ap - ap.transpose()).norm() <= tol * std::max(ap.norm(), 1.0));
    CHECK((pa - pa.transpose()).norm() <= tol * std::max(pa.norm(), 1.0));
}

}  // namespace

TEST_CASE("svd_truncated on the identity") {
    const TruncatedSVD s = svd_truncated(DenseMatrix::Identity(3, 3), 2);
    CHECK(s.sigma.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(s.sigma(i) == doctest::Approx(1.0));
    }
    CHECK(s.effective_rank == 2);
    CHECK(s.tail_error() == doctest::Approx(1.0));
}

TEST_CASE("svd_truncated on diag(3,2,1) keeps the leading coordinate axes") {
    const TruncatedSVD s = svd_truncated(diag3(3, 2, 1), 2);
    CHECK(s.tail_error() == doctest::Approx(1.0));
    CHECK(std::abs(s.u_k(0, 0)) == doctest::Approx(1.0));
    CHECK(std::abs(s.u_k(1, 1)) == doctest::Approx(1.0));
    CHECK(std::abs(s.u_k(2, 0)) < 1e-14);
    CHECK((s.reconstruct() - diag3(3, 2, 0)).norm() < 1e-14);
}

TEST_CASE("svd_truncated matches the Jacobi oracle on a Gaussian 20x10") {
    const DenseMatrix a = gaussian_matrix(20, 10, 42);
    const TruncatedSVD s = svd_truncated(a, 5);
    const oracle::Svd o = oracle::jacobi_svd(testutil::to_vec(a), 20, 10);
    REQUIRE(o.sigma.size() == 10);
    for (int i = 0; i < 10; ++i) {
        CHECK(testutil::rel(s.sigma(i), o.sigma[static_cast<std::size_t>(i)]) < 1e-8);
    }
}

TEST_CASE("svd_truncated factor invariants hold for every k") {
    const DenseMatrix a = gaussian_matrix(15, 9, 7);
    for (std::size_t k = 1; k <= 9; ++k) {
        const TruncatedSVD s = svd_truncated(a, k);
        const auto kk = static_cast<Eigen::Index>(k);
        CHECK((s.u_k.transpose() * s.u_k - DenseMatrix::Identity(kk, kk)).norm() <= 1e-10 * k);
        CHECK((s.v_k.transpose() * s.v_k - DenseMatrix::Identity(kk, kk)).norm() <= 1e-10 * k);
        for (Eigen::Index i = 1; i < s.sigma.size(); ++i) {
            CHECK(s.sigma(i) <= s.sigma(i - 1));
        }
        const double direct = (a - s.reconstruct()).squaredNorm();
        const double tail = s.tail_error() * s.tail_error();
        CHECK(std::abs(direct - tail) <= 1e-8 * std::max(tail, 1e-12));
    }
    const TruncatedSVD full = svd_truncated(a, 9);
    CHECK((a - full.reconstruct()).norm() <= 1e-8 * a.norm());
}

TEST_CASE("svd_truncated validates its arguments") {
    const DenseMatrix a = gaussian_matrix(4, 3, 1);
    CHECK_THROWS_AS(svd_truncated(a, 0), InputError);
    CHECK_THROWS_AS(svd_truncated(a, 4), InputError);
    CHECK_THROWS_AS(svd_truncated(a, 2, 1.0), InputError);
    DenseMatrix bad = a;
    bad(1, 1) = std::nan("");
    CHECK_THROWS_AS(svd_truncated(bad, 2), InputError);
    bad(1, 1) = INFINITY;
    CHECK_THROWS_AS(pseudoinverse(bad), InputError);
}

TEST_CASE("effective rank counts values above the relative cutoff") {
    const DenseMatrix a = low_rank(8, 6, 2, 5);
    const TruncatedSVD s = svd_truncated(a, 4);
    CHECK(s.effective_rank == 2);
    CHECK(s.numerical_rank() == 2);
}

TEST_CASE("pseudoinverse closed forms") {
    DenseMatrix d(2, 2);
    d << 2, 0, 0, 0;
    DenseMatrix expected(2, 2);
    expected << 0.5, 0, 0, 0;
    CHECK((pseudoinverse(d) - expected).norm() < 1e-15);

    const DenseMatrix ones = DenseMatrix::Ones(2, 2);
    CHECK((pseudoinverse(ones) - ones / 4.0).norm() < 1e-15);

    CHECK(pseudoinverse(DenseMatrix::Zero(3, 2)).isZero());
}

TEST_CASE("pseudoinverse satisfies the Moore-Penrose conditions") {
    check_moore_penrose(low_rank(7, 4, 3, 11), 1e-8);
    check_moore_penrose(gaussian_matrix(5, 9, 12), 1e-8);
    check_moore_penrose(low_rank(30, 20, 1, 13), 1e-8);
}

TEST_CASE("weighted pseudoinverse") {
    const DenseMatrix a = gaussian_matrix(5, 3, 21);

    SUBCASE("identity weights reduce to the plain pseudoinverse") {
        const DenseMatrix w = weighted_pseudoinverse(a, Vector::Ones(5), Vector::Ones(3));
        CHECK((w - pseudoinverse(a)).norm() <= 1e-12);
    }
    SUBCASE("invertible scalar is weight invariant") {
        DenseMatrix s(1, 1);
        s << 2.0;
        const DenseMatrix w = weighted_pseudoinverse(s, Vector::Constant(1, 4.0), Vector::Constant(1, 9.0));
        CHECK(w(0, 0) == doctest::Approx(0.5));
    }
    SUBCASE("random weights match the composed formula") {
        const DenseMatrix g1 = gaussian_matrix(5, 1, 22);
        const DenseMatrix g2 = gaussian_matrix(3, 1, 23);
        const Vector d1 = g1.col(0).array().abs() + 0.5;
        const Vector d2 = g2.col(0).array().abs() + 0.5;
        DenseMatrix d1h = DenseMatrix::Zero(5, 5);
        DenseMatrix d2ih = DenseMatrix::Zero(3, 3);
        for (int i = 0; i < 5; ++i) d1h(i, i) = std::sqrt(d1(i));
        for (int i = 0; i < 3; ++i) d2ih(i, i) = 1.0 / std::sqrt(d2(i));
        const DenseMatrix expected = d2ih * pseudoinverse(d1h * a * d2ih) * d1h;
        CHECK((weighted_pseudoinverse(a, d1, d2) - expected).norm() <= 1e-12 * expected.norm());
    }
    SUBCASE("nonpositive weights are rejected") {
        Vector d1 = Vector::Ones(5);
        d1(2) = 0.0;
        CHECK_THROWS_AS(weighted_pseudoinverse(a, d1, Vector::Ones(3)), InputError);
        CHECK_THROWS_AS(weighted_pseudoinverse(a, Vector::Ones(4), Vector::Ones(3)), InputError);
    }
}

TEST_CASE("project_onto_span") {
    SUBCASE("coordinate projection") {
        DenseMatrix e1 = DenseMatrix::Zero(3, 1);
        e1(0, 0) = 1.0;
        DenseMatrix expected = DenseMatrix::Zero(3, 3);
        expected(0, 0) = 1.0;
        CHECK((project_onto_span(e1, DenseMatrix::Identity(3, 3)) - expected).norm() < 1e-15);
    }
    SUBCASE("self projection and idempotence") {
        const DenseMatrix a = gaussian_matrix(6, 4, 31);
        const DenseMatrix p = project_onto_span(a, a);
        CHECK((p - a).norm() <= 1e-10 * a.norm());
        const DenseMatrix c = gaussian_matrix(6, 2, 32);
        const DenseMatrix once = project_onto_span(c, a);
        const DenseMatrix twice = project_onto_span(c, once);
        CHECK((once - twice).norm() <= 1e-10 * once.norm());
    }
    SUBCASE("columns spanning a rank-2 matrix capture it") {
        const DenseMatrix a = low_rank(6, 5, 2, 33);
        const DenseMatrix c = a.leftCols(2);
        CHECK((a - project_onto_span(c, a)).norm() < 1e-8);
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(project_onto_span(DenseMatrix::Ones(4, 1), DenseMatrix::Ones(3, 3)), InputError);
    }
}

TEST_CASE("norms") {
    const DenseMatrix i3 = DenseMatrix::Identity(3, 3);
    CHECK(frobenius_norm(i3) == doctest::Approx(std::sqrt(3.0)));
    CHECK(spectral_norm(i3) == doctest::Approx(1.0));
    const DenseMatrix ones = DenseMatrix::Ones(2, 2);
    CHECK(frobenius_norm(ones) == doctest::Approx(2.0));
    CHECK(spectral_norm(ones) == doctest::Approx(2.0));

    const DenseMatrix a = gaussian_matrix(8, 6, 41);
    const double two = spectral_norm(a);
    CHECK(std::abs(two - svd_truncated(a, 1).sigma(0)) <= 1e-10 * two);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DenseMatrix b = low_rank(7, 5, 1 + seed % 5, seed);
        const double f = frobenius_norm(b);
        const double s = spectral_norm(b);
        CHECK(s <= f * (1 + 1e-14));
        CHECK(f <= std::sqrt(5.0) * s * (1 + 1e-14));
    }
}
