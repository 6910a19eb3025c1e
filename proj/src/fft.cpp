#include "ewt/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace ewt {

namespace {

// FFTW planning is not thread-safe; execution with the new-array interface
// is. Plans are created once per shape with FFTW_UNALIGNED so they can be
// reused on any buffer.
class PlanCache {
public:
    static PlanCache& instance()
    {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(std::size_t rows, std::size_t cols, int sign)
    {
        std::lock_guard lock(mutex_);
        auto key = std::make_tuple(rows, cols, sign);
        if (auto it = plans_.find(key); it != plans_.end()) {
            return it->second;
        }
        std::vector<Complex> scratch(rows * cols);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fftw_plan plan = rows == 0
            ? fftw_plan_dft_1d(static_cast<int>(cols), buf, buf, sign, flags)
            : fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), buf, buf, sign, flags);
        if (plan == nullptr) {
            throw NumericalError("FFTW failed to create a plan");
        }
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache()
    {
        for (auto& [key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

void transform_1d(std::vector<Complex>& data, int sign)
{
    fftw_plan plan = PlanCache::instance().get(0, data.size(), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

void transform_2d(ComplexMatrix& data, int sign)
{
    fftw_plan plan = PlanCache::instance().get(data.rows(), data.cols(), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.values().data());
    fftw_execute_dft(plan, buf, buf);
}

void check_imaginary_residue(std::span<const Complex> values, double tolerance)
{
    double peak = 1.0;
    double residue = 0.0;
    for (const Complex& v : values) {
        peak = std::max(peak, std::abs(v.real()));
        residue = std::max(residue, std::abs(v.imag()));
    }
    if (residue > tolerance * peak) {
        throw NumericalError("inverse transform is not real: imaginary residue " +
                             std::to_string(residue));
    }
}

}  // namespace

std::vector<Complex> dft1(std::span<const double> signal)
{
    if (signal.empty()) {
        throw InvalidArgument("dft1 of an empty sequence");
    }
    std::vector<Complex> data(signal.begin(), signal.end());
    transform_1d(data, FFTW_FORWARD);
    return data;
}

std::vector<Complex> dft1(std::span<const Complex> signal)
{
    if (signal.empty()) {
        throw InvalidArgument("dft1 of an empty sequence");
    }
    std::vector<Complex> data(signal.begin(), signal.end());
    transform_1d(data, FFTW_FORWARD);
    return data;
}

std::vector<Complex> idft1(std::span<const Complex> spectrum)
{
    if (spectrum.empty()) {
        throw InvalidArgument("idft1 of an empty sequence");
    }
    std::vector<Complex> data(spectrum.begin(), spectrum.end());
    transform_1d(data, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(data.size());
    for (Complex& v : data) {
        v *= scale;
    }
    return data;
}

std::vector<double> idft1_real(std::span<const Complex> spectrum, double tolerance)
{
    const std::vector<Complex> full = idft1(spectrum);
    check_imaginary_residue(full, tolerance);
    std::vector<double> out(full.size());
    std::transform(full.begin(), full.end(), out.begin(), [](const Complex& v) { return v.real(); });
    return out;
}

ComplexPlane dft2(const Image& image) { return dft2(image.pixels()); }

ComplexPlane dft2(const RealMatrix& values)
{
    if (values.rows() < 2 || values.cols() < 2) {
        throw InvalidArgument("dft2 needs at least 2 rows and 2 columns");
    }
    if (!all_finite(values.values())) {
        throw InvalidArgument("dft2 input contains non-finite values");
    }
    ComplexMatrix data(values.rows(), values.cols());
    std::copy(values.values().begin(), values.values().end(), data.values().begin());
    transform_2d(data, FFTW_FORWARD);
    return ComplexPlane{std::move(data), FrequencyLayout::dc_at_origin, true};
}

ComplexMatrix dft2(const ComplexMatrix& values)
{
    if (values.rows() < 2 || values.cols() < 2) {
        throw InvalidArgument("dft2 needs at least 2 rows and 2 columns");
    }
    ComplexMatrix data = values;
    transform_2d(data, FFTW_FORWARD);
    return data;
}

ComplexMatrix idft2(const ComplexMatrix& values)
{
    if (values.rows() < 2 || values.cols() < 2) {
        throw InvalidArgument("idft2 needs at least 2 rows and 2 columns");
    }
    ComplexMatrix data = values;
    transform_2d(data, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(data.size());
    for (Complex& v : data.values()) {
        v *= scale;
    }
    return data;
}

ComplexMatrix idft2(const ComplexPlane& plane)
{
    if (plane.layout == FrequencyLayout::dc_centered) {
        return idft2(fftshift(plane).values);
    }
    return idft2(plane.values);
}

RealMatrix idft2_real(const ComplexMatrix& values, double tolerance)
{
    const ComplexMatrix full = idft2(values);
    check_imaginary_residue(full.values(), tolerance);
    RealMatrix out(full.rows(), full.cols());
    for (std::size_t i = 0; i < full.size(); ++i) {
        out[i] = full[i].real();
    }
    return out;
}

ComplexPlane fftshift(const ComplexPlane& plane)
{
    const std::size_t rows = plane.values.rows();
    const std::size_t cols = plane.values.cols();
    const bool to_centered = plane.layout == FrequencyLayout::dc_at_origin;
    // Forward shift moves index k to (k + n/2) mod n; the inverse uses the
    // ceiling so odd sizes round-trip.
    const std::size_t dr = to_centered ? rows / 2 : (rows + 1) / 2;
    const std::size_t dc = to_centered ? cols / 2 : (cols + 1) / 2;
    ComplexPlane out{ComplexMatrix(rows, cols),
                     to_centered ? FrequencyLayout::dc_centered : FrequencyLayout::dc_at_origin,
                     plane.conjugate_symmetric};
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            out.values((r + dr) % rows, (c + dc) % cols) = plane.values(r, c);
        }
    }
    return out;
}

}  // namespace ewt
