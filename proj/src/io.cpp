#include "cxcur/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace cxcur {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> split_whitespace(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        if (i > start) {
            out.push_back({line.substr(start, i - start), start + 1});
        }
    }
    return out;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

bool blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(),
                       [](unsigned char ch) { return std::isspace(ch) != 0; });
}

std::string_view trim(std::string_view s, std::size_t& column) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
        ++column;
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

class LineReader {
public:
    LineReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    bool next(std::string& line) {
        if (!std::getline(in_, line)) {
            return false;
        }
        ++line_no_;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        return true;
    }

    [[noreturn]] void fail(std::size_t column, const std::string& message) const {
        throw ParseError(source_, line_no_, column, message);
    }

    double real(const Token& tok) const {
        double v = 0.0;
        const char* first = tok.text.data();
        const char* last = first + tok.text.size();
        if (!tok.text.empty() && *first == '+') {
            ++first;
        }
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last) {
            fail(tok.column, "expected a real number, got '" + std::string(tok.text) + "'");
        }
        if (!std::isfinite(v)) {
            fail(tok.column, "non-finite value '" + std::string(tok.text) + "'");
        }
        return v;
    }

    std::size_t count(const Token& tok, bool allow_zero) const {
        std::size_t v = 0;
        const char* last = tok.text.data() + tok.text.size();
        const auto [ptr, ec] = std::from_chars(tok.text.data(), last, v);
        if (ec != std::errc() || ptr != last || (!allow_zero && v == 0)) {
            fail(tok.column, "expected a positive integer, got '" + std::string(tok.text) + "'");
        }
        return v;
    }

    [[nodiscard]] std::size_t line_no() const { return line_no_; }

private:
    std::istream& in_;
    std::string source_;
    std::size_t line_no_ = 0;
};

// Next line that is neither blank nor a '%' comment.
bool next_data_line(LineReader& reader, std::string& line) {
    while (reader.next(line)) {
        if (blank(line)) {
            continue;
        }
        const auto first = line.find_first_not_of(" \t");
        if (line[first] == '%') {
            continue;
        }
        return true;
    }
    return false;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, std::size_t column,
                       const std::string& message)
    : InputError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                 message),
      line_(line),
      column_(column) {}

MatrixFormat parse_format(std::string_view name) {
    if (name == "auto") {
        return MatrixFormat::Auto;
    }
    if (name == "mm" || name == "matrix-market" || name == "mtx") {
        return MatrixFormat::MatrixMarket;
    }
    if (name == "csv") {
        return MatrixFormat::Csv;
    }
    throw InputError("unknown matrix format '" + std::string(name) + "'");
}

std::string format_real(double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

DenseMatrix read_matrix_market(std::istream& in, const std::string& source) {
    LineReader reader(in, source);
    std::string line;
    if (!reader.next(line)) {
        throw ParseError(source, 1, 1, "empty input");
    }
    const auto header = split_whitespace(line);
    if (header.size() != 5 || header[0].text != "%%MatrixMarket") {
        reader.fail(1, "expected '%%MatrixMarket matrix <array|coordinate> real general'");
    }
    if (lower(header[1].text) != "matrix") {
        reader.fail(header[1].column, "only 'matrix' objects are supported");
    }
    const std::string layout = lower(header[2].text);
    if (layout != "array" && layout != "coordinate") {
        reader.fail(header[2].column, "layout must be 'array' or 'coordinate'");
    }
    const std::string field = lower(header[3].text);
    if (field != "real" && field != "integer" && field != "double") {
        reader.fail(header[3].column, "field must be 'real' or 'integer'");
    }
    if (lower(header[4].text) != "general") {
        reader.fail(header[4].column, "only 'general' symmetry is supported");
    }

    if (!next_data_line(reader, line)) {
        reader.fail(1, "missing size line");
    }
    const auto size = split_whitespace(line);
    const bool coordinate = layout == "coordinate";
    if (size.size() != (coordinate ? 3U : 2U)) {
        reader.fail(1, coordinate ? "size line must be 'rows cols entries'"
                                  : "size line must be 'rows cols'");
    }
    const std::size_t rows = reader.count(size[0], false);
    const std::size_t cols = reader.count(size[1], false);
    DenseMatrix a = DenseMatrix::Zero(static_cast<Eigen::Index>(rows),
                                      static_cast<Eigen::Index>(cols));

    if (!coordinate) {
        // Array entries are listed column by column.
        const std::size_t total = rows * cols;
        std::size_t seen = 0;
        while (next_data_line(reader, line)) {
            for (const Token& tok : split_whitespace(line)) {
                if (seen == total) {
                    reader.fail(tok.column, "more than " + std::to_string(total) + " entries");
                }
                const double v = reader.real(tok);
                a(static_cast<Eigen::Index>(seen % rows), static_cast<Eigen::Index>(seen / rows)) = v;
                ++seen;
            }
        }
        if (seen != total) {
            throw ParseError(source, reader.line_no(), 1,
                             "expected " + std::to_string(total) + " entries, found " +
                                 std::to_string(seen));
        }
        return a;
    }

    const std::size_t entries = reader.count(size[2], true);
    std::size_t seen = 0;
    while (next_data_line(reader, line)) {
        const auto toks = split_whitespace(line);
        if (toks.size() != 3) {
            reader.fail(1, "coordinate entry must be 'row col value'");
        }
        if (seen == entries) {
            reader.fail(1, "more than " + std::to_string(entries) + " entries");
        }
        const std::size_t i = reader.count(toks[0], false);
        const std::size_t j = reader.count(toks[1], false);
        if (i > rows) {
            reader.fail(toks[0].column, "row index out of range");
        }
        if (j > cols) {
            reader.fail(toks[1].column, "column index out of range");
        }
        a(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) = reader.real(toks[2]);
        ++seen;
    }
    if (seen != entries) {
        throw ParseError(source, reader.line_no(), 1,
                         "expected " + std::to_string(entries) + " entries, found " +
                             std::to_string(seen));
    }
    return a;
}

DenseMatrix read_csv(std::istream& in, const std::string& source) {
    LineReader reader(in, source);
    std::string line;
    std::vector<double> values;
    std::size_t cols = 0;
    std::size_t rows = 0;
    while (reader.next(line)) {
        if (blank(line)) {
            continue;
        }
        std::size_t count = 0;
        std::size_t pos = 0;
        while (true) {
            const std::size_t comma = line.find(',', pos);
            const std::size_t end = comma == std::string::npos ? line.size() : comma;
            std::size_t column = pos + 1;
            const std::string_view cell =
                trim(std::string_view(line).substr(pos, end - pos), column);
            if (cell.empty()) {
                reader.fail(column, "empty field");
            }
            values.push_back(reader.real({cell, column}));
            ++count;
            if (comma == std::string::npos) {
                break;
            }
            pos = comma + 1;
        }
        if (rows == 0) {
            cols = count;
        } else if (count != cols) {
            reader.fail(1, "row has " + std::to_string(count) + " fields, expected " +
                               std::to_string(cols));
        }
        ++rows;
    }
    if (rows == 0) {
        throw ParseError(source, reader.line_no() + 1, 1, "no data rows");
    }
    DenseMatrix a(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    std::copy(values.begin(), values.end(), a.data());
    return a;
}

void write_matrix_market(std::ostream& out, const DenseMatrix& a) {
    out << "%%MatrixMarket matrix array real general\n";
    out << a.rows() << ' ' << a.cols() << '\n';
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            out << format_real(a(i, j)) << '\n';
        }
    }
}

void write_matrix_market_coordinate(std::ostream& out, const DenseMatrix& a) {
    std::ostringstream body;
    std::size_t nnz = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            if (a(i, j) != 0.0) {
                body << (i + 1) << ' ' << (j + 1) << ' ' << format_real(a(i, j)) << '\n';
                ++nnz;
            }
        }
    }
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.rows() << ' ' << a.cols() << ' ' << nnz << '\n' << body.str();
}

void write_csv(std::ostream& out, const DenseMatrix& a) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (j > 0) {
                out << ',';
            }
            out << format_real(a(i, j));
        }
        out << '\n';
    }
}

DenseMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path.string() + "'");
    }
    if (format == MatrixFormat::Auto) {
        std::string first;
        const auto mark = in.tellg();
        std::getline(in, first);
        in.clear();
        in.seekg(mark);
        format = first.rfind("%%MatrixMarket", 0) == 0 ? MatrixFormat::MatrixMarket
                                                       : MatrixFormat::Csv;
    }
    return format == MatrixFormat::MatrixMarket ? read_matrix_market(in, path.string())
                                                : read_csv(in, path.string());
}

void save_matrix(const std::filesystem::path& path, const DenseMatrix& a, MatrixFormat format) {
    if (format == MatrixFormat::Auto) {
        format = lower(path.extension().string()) == ".csv" ? MatrixFormat::Csv
                                                            : MatrixFormat::MatrixMarket;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write '" + path.string() + "'");
    }
    if (format == MatrixFormat::Csv) {
        write_csv(out, a);
    } else {
        write_matrix_market(out, a);
    }
    if (!out) {
        throw InputError("failed writing '" + path.string() + "'");
    }
}

}  // namespace cxcur
