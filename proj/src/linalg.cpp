#include "cxcur/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cxcur/errors.hpp"

namespace cxcur {

namespace {

using ColMajor = Eigen::MatrixXd;

struct FullSvd {
    ColMajor u;
    Vector sigma;
    ColMajor v;
};

FullSvd thin_svd(const DenseMatrix& a, bool vectors) {
    const ColMajor work = a;
    const unsigned int opts = vectors ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0U;
    Eigen::BDCSVD<ColMajor> svd(work, opts);
    if (svd.info() != Eigen::Success) {
        throw NumericalError("SVD failed to converge on a " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " matrix");
    }
    FullSvd out;
    out.sigma = svd.singularValues();
    if (vectors) {
        out.u = svd.matrixU();
        out.v = svd.matrixV();
    }
    return out;
}

void require_tol(double tol) {
    if (!(tol >= 0.0 && tol < 1.0)) {
        throw InputError("rank tolerance must lie in [0, 1), got " + std::to_string(tol));
    }
}

std::size_t count_above(const Vector& sigma, double tol) {
    if (sigma.size() == 0 || sigma(0) <= 0.0) {
        return 0;
    }
    const double cut = tol * sigma(0);
    std::size_t n = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > cut) {
            ++n;
        }
    }
    return n;
}

}  // namespace

void require_valid(const DenseMatrix& a, std::string_view name) {
    if (a.rows() < 1 || a.cols() < 1) {
        throw InputError(std::string(name) + " must have at least one row and one column");
    }
    if (!a.allFinite()) {
        throw InputError(std::string(name) + " contains non-finite entries");
    }
}

void require_dim(std::size_t actual, std::size_t expected, std::string_view what) {
    if (actual != expected) {
        throw InputError("dimension mismatch for " + std::string(what) + ": got " +
                         std::to_string(actual) + ", expected " + std::to_string(expected));
    }
}

double TruncatedSVD::tail_error() const {
    double s = 0.0;
    for (Eigen::Index i = static_cast<Eigen::Index>(k); i < sigma.size(); ++i) {
        s += sigma(i) * sigma(i);
    }
    return std::sqrt(s);
}

DenseMatrix TruncatedSVD::reconstruct() const {
    const auto kk = static_cast<Eigen::Index>(k);
    return u_k * sigma.head(kk).asDiagonal() * v_k.transpose();
}

std::size_t TruncatedSVD::numerical_rank() const { return count_above(sigma, tol); }

TruncatedSVD svd_truncated(const DenseMatrix& a, std::size_t k, double tol) {
    require_valid(a, "A");
    require_tol(tol);
    const auto min_dim = static_cast<std::size_t>(std::min(a.rows(), a.cols()));
    if (k < 1 || k > min_dim) {
        throw InputError("rank k must satisfy 1 <= k <= " + std::to_string(min_dim) + ", got " +
                         std::to_string(k));
    }
    FullSvd f = thin_svd(a, true);
    const auto kk = static_cast<Eigen::Index>(k);

    TruncatedSVD out;
    out.k = k;
    out.tol = tol;
    out.sigma = f.sigma;
    out.u_k = f.u.leftCols(kk);
    out.v_k = f.v.leftCols(kk);
    out.effective_rank = std::min(k, count_above(f.sigma, tol));
    return out;
}

Vector singular_values(const DenseMatrix& a) {
    require_valid(a, "A");
    return thin_svd(a, false).sigma;
}

DenseMatrix pseudoinverse(const DenseMatrix& a, double tol) {
    require_valid(a, "A");
    require_tol(tol);
    const FullSvd f = thin_svd(a, true);
    const auto r = static_cast<Eigen::Index>(count_above(f.sigma, tol));
    if (r == 0) {
        return DenseMatrix::Zero(a.cols(), a.rows());
    }
    const Vector inv = f.sigma.head(r).cwiseInverse();
    return f.v.leftCols(r) * inv.asDiagonal() * f.u.leftCols(r).transpose();
}

DenseMatrix weighted_pseudoinverse(const DenseMatrix& a, const Vector& d1, const Vector& d2,
                                   double tol) {
    require_valid(a, "A");
    require_dim(static_cast<std::size_t>(d1.size()), static_cast<std::size_t>(a.rows()),
                "row weights d1");
    require_dim(static_cast<std::size_t>(d2.size()), static_cast<std::size_t>(a.cols()),
                "column weights d2");
    const auto positive = [](const Vector& d) {
        return d.allFinite() && (d.array() > 0.0).all();
    };
    if (!positive(d1) || !positive(d2)) {
        throw InputError("weighted pseudoinverse requires strictly positive diagonal weights");
    }
    const Vector d1_half = d1.cwiseSqrt();
    const Vector d2_inv_half = d2.cwiseSqrt().cwiseInverse();
    const DenseMatrix scaled = d1_half.asDiagonal() * a * d2_inv_half.asDiagonal();
    return d2_inv_half.asDiagonal() * pseudoinverse(scaled, tol) * d1_half.asDiagonal();
}

DenseMatrix column_basis(const DenseMatrix& c, double tol) {
    require_valid(c, "C");
    require_tol(tol);
    const FullSvd f = thin_svd(c, true);
    const auto r = static_cast<Eigen::Index>(count_above(f.sigma, tol));
    return f.u.leftCols(r);
}

DenseMatrix project_onto_span(const DenseMatrix& c, const DenseMatrix& a, double tol) {
    require_valid(a, "A");
    require_dim(static_cast<std::size_t>(c.rows()), static_cast<std::size_t>(a.rows()),
                "rows of C against rows of A");
    const DenseMatrix q = column_basis(c, tol);
    if (q.cols() == 0) {
        return DenseMatrix::Zero(a.rows(), a.cols());
    }
    return q * (q.transpose() * a);
}

double frobenius_norm(const DenseMatrix& a) { return a.norm(); }

double spectral_norm(const DenseMatrix& a) {
    const Vector s = singular_values(a);
    return s.size() > 0 ? s(0) : 0.0;
}

std::size_t numerical_rank(const DenseMatrix& a, double tol) {
    require_tol(tol);
    return count_above(singular_values(a), tol);
}

}  // namespace cxcur
