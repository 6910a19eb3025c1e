#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ewt {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Error taxonomy. The CLI maps these onto exit codes.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, std::uint64_t offset);
    std::uint64_t offset() const noexcept { return offset_; }

private:
    std::uint64_t offset_;
};

class DetectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dense row-major matrix with value semantics.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data))
    {
        if (data_.size() != rows_ * cols_) {
            throw InvalidArgument("matrix payload size does not match its shape");
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    T& operator[](std::size_t i) { return data_[i]; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    std::span<T> values() noexcept { return data_; }
    std::span<const T> values() const noexcept { return data_; }
    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    bool same_shape(const Matrix& other) const noexcept
    {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<Complex>;

/// Finite real sample sequence of length >= 2.
class Signal1D {
public:
    explicit Signal1D(std::vector<double> samples);

    std::size_t size() const noexcept { return samples_.size(); }
    std::span<const double> samples() const noexcept { return samples_; }
    double operator[](std::size_t i) const { return samples_[i]; }

private:
    std::vector<double> samples_;
};

/// Finite real image with at least four pixels.
class Image {
public:
    explicit Image(RealMatrix pixels);
    Image(std::size_t rows, std::size_t cols, std::vector<double> pixels);

    std::size_t rows() const noexcept { return pixels_.rows(); }
    std::size_t cols() const noexcept { return pixels_.cols(); }
    std::size_t size() const noexcept { return pixels_.size(); }
    double operator()(std::size_t r, std::size_t c) const { return pixels_(r, c); }
    const RealMatrix& pixels() const noexcept { return pixels_; }
    std::span<const double> values() const noexcept { return pixels_.values(); }

private:
    RealMatrix pixels_;
};

enum class FrequencyLayout { dc_at_origin, dc_centered };

/// 2D spectrum plus the bookkeeping needed to interpret it.
struct ComplexPlane {
    ComplexMatrix values;
    FrequencyLayout layout = FrequencyLayout::dc_at_origin;
    bool conjugate_symmetric = false;
};

/// Frequency in (-pi, pi] of DFT bin `k` for a transform of length `n`.
double bin_frequency(std::size_t k, std::size_t n);

/// Index of the bin that holds the negated frequency of bin `k`.
inline std::size_t mirror_bin(std::size_t k, std::size_t n) { return k == 0 ? 0 : n - k; }

bool all_finite(std::span<const double> values);

double sum_of_squares(std::span<const double> values);
double max_abs_difference(std::span<const double> a, std::span<const double> b);

}  // namespace ewt
