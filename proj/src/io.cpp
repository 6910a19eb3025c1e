#include "ewt/io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>

namespace ewt {

namespace {

std::vector<unsigned char> read_all(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string(), 0);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_all(const std::filesystem::path& path, const std::vector<unsigned char>& bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw FormatError("cannot open " + path.string() + " for writing", 0);
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw FormatError("write failed for " + path.string(), 0);
    }
}

class HeaderReader {
public:
    explicit HeaderReader(const std::vector<unsigned char>& bytes) : bytes_(bytes) {}

    void skip_space_and_comments()
    {
        while (pos_ < bytes_.size()) {
            if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') {
                    ++pos_;
                }
            } else if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else {
                return;
            }
        }
    }

    unsigned long number(const char* what)
    {
        skip_space_and_comments();
        const std::size_t start = pos_;
        unsigned long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > std::numeric_limits<std::uint32_t>::max()) {
                throw FormatError(std::string("PGM ") + what + " too large", start);
            }
            ++pos_;
        }
        if (pos_ == start) {
            throw FormatError(std::string("PGM header: expected ") + what, start);
        }
        return value;
    }

    std::size_t pos() const { return pos_; }
    void advance() { ++pos_; }

private:
    const std::vector<unsigned char>& bytes_;
    std::size_t pos_ = 0;
};

void put_u32(std::vector<unsigned char>& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<unsigned char>(v >> (8 * i)));
    }
}

void put_f64(std::vector<unsigned char>& out, double v)
{
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<unsigned char>(bits >> (8 * i)));
    }
}

std::uint64_t get_le(const std::vector<unsigned char>& in, std::size_t pos, int width)
{
    std::uint64_t v = 0;
    for (int i = 0; i < width; ++i) {
        v |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
    }
    return v;
}

constexpr std::size_t kHeaderBytes = 12;

struct ContainerHeader {
    std::size_t rows;
    std::size_t cols;
};

ContainerHeader parse_container(const std::vector<unsigned char>& bytes, const char magic[4],
                                std::size_t scalars_per_entry)
{
    if (bytes.size() < 4) {
        throw FormatError("truncated container: missing magic", bytes.size());
    }
    for (std::size_t i = 0; i < 4; ++i) {
        if (bytes[i] != static_cast<unsigned char>(magic[i])) {
            throw FormatError(std::string("bad magic, expected ") + std::string(magic, 4), i);
        }
    }
    if (bytes.size() < kHeaderBytes) {
        throw FormatError("truncated container header", bytes.size());
    }
    const auto rows = get_le(bytes, 4, 4);
    const auto cols = get_le(bytes, 8, 4);
    // rows, cols < 2^32 so the product fits; the byte count may not.
    const std::uint64_t count = rows * cols;
    if (count > (std::numeric_limits<std::uint64_t>::max() - kHeaderBytes) / (8 * scalars_per_entry)) {
        throw FormatError("container dimensions overflow", 4);
    }
    const std::uint64_t expected = kHeaderBytes + count * 8 * scalars_per_entry;
    if (bytes.size() < expected) {
        throw FormatError("truncated container payload", bytes.size());
    }
    if (bytes.size() > expected) {
        throw FormatError("trailing bytes after container payload", expected);
    }
    return {static_cast<std::size_t>(rows), static_cast<std::size_t>(cols)};
}

void check_dims(std::size_t rows, std::size_t cols)
{
    if (rows > std::numeric_limits<std::uint32_t>::max() || cols > std::numeric_limits<std::uint32_t>::max()) {
        throw InvalidArgument("matrix dimensions exceed the container's u32 range");
    }
}

}  // namespace

PgmImage read_pgm(const std::filesystem::path& path)
{
    const std::vector<unsigned char> bytes = read_all(path);
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
        throw FormatError("not a binary PGM (expected magic P5)", 0);
    }
    HeaderReader header(bytes);
    header.advance();
    header.advance();
    const auto cols = header.number("width");
    const auto rows = header.number("height");
    const auto maxval = header.number("maxval");
    if (maxval == 0 || maxval > 65535) {
        throw FormatError("PGM maxval out of range", header.pos());
    }
    if (header.pos() >= bytes.size() || !std::isspace(bytes[header.pos()])) {
        throw FormatError("PGM header must end with a single whitespace byte", header.pos());
    }
    header.advance();
    const std::size_t start = header.pos();
    const std::size_t depth = maxval < 256 ? 1 : 2;
    const std::size_t count = static_cast<std::size_t>(rows) * cols;
    if (bytes.size() < start + count * depth) {
        throw FormatError("truncated PGM raster", bytes.size());
    }
    std::vector<double> pixels(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t at = start + i * depth;
        pixels[i] = depth == 1 ? bytes[at] : static_cast<double>((bytes[at] << 8) | bytes[at + 1]);
    }
    return PgmImage{Image(rows, cols, std::move(pixels)), static_cast<unsigned>(maxval)};
}

void write_pgm(const RealMatrix& pixels, const std::filesystem::path& path, unsigned maxval)
{
    if (maxval == 0 || maxval > 65535) {
        throw InvalidArgument("PGM maxval must be in [1, 65535]");
    }
    const std::string header =
        "P5\n" + std::to_string(pixels.cols()) + " " + std::to_string(pixels.rows()) + "\n" + std::to_string(maxval) + "\n";
    std::vector<unsigned char> bytes(header.begin(), header.end());
    const bool wide = maxval >= 256;
    for (double v : pixels.values()) {
        const double clamped = std::clamp(std::isfinite(v) ? std::round(v) : 0.0, 0.0, static_cast<double>(maxval));
        const auto q = static_cast<unsigned>(clamped);
        if (wide) {
            bytes.push_back(static_cast<unsigned char>(q >> 8));
        }
        bytes.push_back(static_cast<unsigned char>(q & 0xFF));
    }
    write_all(path, bytes);
}

void save_matrix(const RealMatrix& m, const std::filesystem::path& path)
{
    check_dims(m.rows(), m.cols());
    if (!all_finite(m.values())) {
        throw InvalidArgument("refusing to store non-finite values in " + path.string());
    }
    std::vector<unsigned char> bytes{'E', 'W', 'T', 'M'};
    bytes.reserve(kHeaderBytes + 8 * m.size());
    put_u32(bytes, static_cast<std::uint32_t>(m.rows()));
    put_u32(bytes, static_cast<std::uint32_t>(m.cols()));
    for (double v : m.values()) {
        put_f64(bytes, v);
    }
    write_all(path, bytes);
}

RealMatrix load_matrix(const std::filesystem::path& path)
{
    const std::vector<unsigned char> bytes = read_all(path);
    const auto [rows, cols] = parse_container(bytes, "EWTM", 1);
    std::vector<double> values(rows * cols);
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = std::bit_cast<double>(get_le(bytes, kHeaderBytes + 8 * i, 8));
    }
    return RealMatrix(rows, cols, std::move(values));
}

void save_complex_matrix(const ComplexMatrix& m, const std::filesystem::path& path)
{
    check_dims(m.rows(), m.cols());
    std::vector<unsigned char> bytes{'E', 'W', 'T', 'C'};
    bytes.reserve(kHeaderBytes + 16 * m.size());
    put_u32(bytes, static_cast<std::uint32_t>(m.rows()));
    put_u32(bytes, static_cast<std::uint32_t>(m.cols()));
    for (const Complex& v : m.values()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw InvalidArgument("refusing to store non-finite values in " + path.string());
        }
        put_f64(bytes, v.real());
        put_f64(bytes, v.imag());
    }
    write_all(path, bytes);
}

ComplexMatrix load_complex_matrix(const std::filesystem::path& path)
{
    const std::vector<unsigned char> bytes = read_all(path);
    const auto [rows, cols] = parse_container(bytes, "EWTC", 2);
    std::vector<Complex> values(rows * cols);
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double re = std::bit_cast<double>(get_le(bytes, kHeaderBytes + 16 * i, 8));
        const double im = std::bit_cast<double>(get_le(bytes, kHeaderBytes + 16 * i + 8, 8));
        values[i] = {re, im};
    }
    return ComplexMatrix(rows, cols, std::move(values));
}

RealMatrix preview_scale(const RealMatrix& values)
{
    RealMatrix out(values.rows(), values.cols());
    if (values.empty()) {
        return out;
    }
    const auto [lo, hi] = std::minmax_element(values.values().begin(), values.values().end());
    const double span = *hi - *lo;
    if (span <= 0.0) {
        return out;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = 255.0 * (values[i] - *lo) / span;
    }
    return out;
}

}  // namespace ewt
