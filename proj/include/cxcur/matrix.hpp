#pragma once

#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace cxcur {

/// Dense real matrix, row-major. Carrier for A, B, C, R, U and W.
using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Throws InputError unless `a` is non-empty and every entry is finite.
void require_valid(const DenseMatrix& a, std::string_view name);

/// Throws InputError when `actual != expected`.
void require_dim(std::size_t actual, std::size_t expected, std::string_view what);

}  // namespace cxcur
