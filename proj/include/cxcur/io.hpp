#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "cxcur/errors.hpp"
#include "cxcur/matrix.hpp"

namespace cxcur {

enum class MatrixFormat { Auto, MatrixMarket, Csv };

/// "auto", "mm"/"matrix-market", or "csv".
MatrixFormat parse_format(std::string_view name);

/// Parse failure pointing at a 1-based line and column of the input.
class ParseError : public InputError {
public:
    ParseError(const std::string& source, std::size_t line, std::size_t column,
               const std::string& message);

    [[nodiscard]] std::size_t line() const { return line_; }
    [[nodiscard]] std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Matrix Market "array" or "coordinate" with field real|integer, general symmetry.
DenseMatrix read_matrix_market(std::istream& in, const std::string& source = "<stream>");
/// Headerless comma-separated reals, one row per line.
DenseMatrix read_csv(std::istream& in, const std::string& source = "<stream>");

/// Array layout (column-major values), 17 significant digits.
void write_matrix_market(std::ostream& out, const DenseMatrix& a);
/// Coordinate layout listing the nonzero entries.
void write_matrix_market_coordinate(std::ostream& out, const DenseMatrix& a);
void write_csv(std::ostream& out, const DenseMatrix& a);

/// Auto picks Matrix Market when the file starts with "%%MatrixMarket", CSV otherwise.
DenseMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format = MatrixFormat::Auto);

/// Auto picks CSV for a ".csv" extension and Matrix Market array otherwise.
void save_matrix(const std::filesystem::path& path, const DenseMatrix& a,
                 MatrixFormat format = MatrixFormat::Auto);

/// printf("%.17g") formatting shared by every writer.
std::string format_real(double v);

}  // namespace cxcur
