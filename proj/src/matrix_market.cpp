#include "srlu/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace srlu {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::ranges::transform(out, out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

template <class Number>
Number parse_number(std::string_view token, std::size_t line_no, const char* what) {
    Number value{};
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError(std::string("invalid ") + what + " '" + std::string(token) + "'", line_no);
    return value;
}

/// Line reader that tracks 1-based line numbers and skips comments and blanks.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    bool next_raw(std::string& line) {
        if (!std::getline(in_, line)) return false;
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }

    bool next_data(std::string& line) {
        while (next_raw(line)) {
            const auto first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '%') continue;
            return true;
        }
        return false;
    }

    std::size_t line_no() const noexcept { return line_no_; }

private:
    std::istream& in_;
    std::size_t line_no_ = 0;
};

template <Scalar T>
T parse_value(const std::vector<std::string_view>& tok, std::size_t first, std::size_t line_no) {
    double re = parse_number<double>(tok[first], line_no, "value");
    if constexpr (std::same_as<T, double>) {
        if (!std::isfinite(re)) throw ParseError("non-finite value", line_no);
        return re;
    } else {
        double im = parse_number<double>(tok[first + 1], line_no, "value");
        if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError("non-finite value", line_no);
        return cplx(re, im);
    }
}

template <Scalar T>
AnyMatrix read_coordinate(LineReader& reader, std::size_t rows, std::size_t cols, std::size_t nnz) {
    constexpr std::size_t width = std::same_as<T, double> ? 3 : 4;
    std::vector<Triplet<T>> entries;
    entries.reserve(nnz);
    std::string line;
    for (std::size_t e = 0; e < nnz; ++e) {
        if (!reader.next_data(line))
            throw ParseError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(e),
                             reader.line_no());
        const auto tok = split(line);
        if (tok.size() != width)
            throw ParseError("expected " + std::to_string(width) + " fields per entry", reader.line_no());
        const auto i = parse_number<std::size_t>(tok[0], reader.line_no(), "row index");
        const auto j = parse_number<std::size_t>(tok[1], reader.line_no(), "column index");
        if (i < 1 || i > rows || j < 1 || j > cols) throw ParseError("entry index out of range", reader.line_no());
        entries.push_back({i - 1, j - 1, parse_value<T>(tok, 2, reader.line_no())});
    }
    if (reader.next_data(line)) throw ParseError("trailing data after the declared entries", reader.line_no());
    return SparseMatrix<T>::from_triplets(rows, cols, std::move(entries));
}

template <Scalar T>
AnyMatrix read_array(LineReader& reader, std::size_t rows, std::size_t cols) {
    constexpr std::size_t width = std::same_as<T, double> ? 1 : 2;
    std::vector<T> values;
    values.reserve(rows * cols);
    std::string line;
    for (std::size_t e = 0; e < rows * cols; ++e) {
        if (!reader.next_data(line))
            throw ParseError("expected " + std::to_string(rows * cols) + " values, found " + std::to_string(e),
                             reader.line_no());
        const auto tok = split(line);
        if (tok.size() != width)
            throw ParseError("expected " + std::to_string(width) + " fields per value", reader.line_no());
        values.push_back(parse_value<T>(tok, 0, reader.line_no()));
    }
    if (reader.next_data(line)) throw ParseError("trailing data after the declared values", reader.line_no());
    return DenseMatrix<T>(rows, cols, std::move(values));
}

void write_value(std::ostream& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

void write_value(std::ostream& out, const cplx& v) {
    write_value(out, v.real());
    out << ' ';
    write_value(out, v.imag());
}

template <Scalar T>
void write_matrix(std::ostream& out, const DenseMatrix<T>& a) {
    out << "%%MatrixMarket matrix array " << to_string(field_of<T>) << " general\n";
    out << a.rows() << ' ' << a.cols() << '\n';
    for (const T& v : a.values()) {
        write_value(out, v);
        out << '\n';
    }
}

template <Scalar T>
void write_matrix(std::ostream& out, const SparseMatrix<T>& a) {
    out << "%%MatrixMarket matrix coordinate " << to_string(field_of<T>) << " general\n";
    out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
    for (std::size_t j = 0; j < a.cols(); ++j) {
        auto rows = a.col_rows(j);
        auto vals = a.col_values(j);
        for (std::size_t t = 0; t < rows.size(); ++t) {
            out << rows[t] + 1 << ' ' << j + 1 << ' ';
            write_value(out, vals[t]);
            out << '\n';
        }
    }
}

}  // namespace

AnyMatrix mm_read(std::istream& in) {
    LineReader reader(in);
    std::string line;
    if (!reader.next_raw(line)) throw ParseError("empty file", 0);
    const auto banner = split(line);
    if (banner.size() != 5 || banner[0] != "%%MatrixMarket" || lower(banner[1]) != "matrix")
        throw ParseError("missing '%%MatrixMarket matrix' banner", reader.line_no());
    const std::string format = lower(banner[2]);
    const std::string field = lower(banner[3]);
    const std::string symmetry = lower(banner[4]);
    if (format != "coordinate" && format != "array")
        throw ParseError("unknown format '" + format + "'", reader.line_no());
    if (field != "real" && field != "complex")
        throw ParseError("unsupported field '" + field + "' (only real and complex)", reader.line_no());
    if (symmetry != "general")
        throw ParseError("unsupported symmetry '" + symmetry + "' (only general)", reader.line_no());

    if (!reader.next_data(line)) throw ParseError("missing size line", reader.line_no());
    const auto size = split(line);
    const std::size_t expected = format == "coordinate" ? 3 : 2;
    if (size.size() != expected) throw ParseError("malformed size line", reader.line_no());
    const auto rows = parse_number<std::size_t>(size[0], reader.line_no(), "row count");
    const auto cols = parse_number<std::size_t>(size[1], reader.line_no(), "column count");
    if (rows == 0 || cols == 0) throw ParseError("matrix dimensions must be positive", reader.line_no());

    const bool complex = field == "complex";
    if (format == "coordinate") {
        const auto nnz = parse_number<std::size_t>(size[2], reader.line_no(), "entry count");
        return complex ? read_coordinate<cplx>(reader, rows, cols, nnz) : read_coordinate<double>(reader, rows, cols, nnz);
    }
    return complex ? read_array<cplx>(reader, rows, cols) : read_array<double>(reader, rows, cols);
}

AnyMatrix mm_read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    return mm_read(in);
}

void mm_write(const AnyMatrix& a, std::ostream& out) {
    std::visit([&](const auto& m) { write_matrix(out, m); }, a);
    if (!out) throw Error("write failed");
}

void mm_write(const AnyMatrix& a, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path.string() + "' for writing");
    mm_write(a, out);
}

}  // namespace srlu
