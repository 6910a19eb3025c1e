#include "ewt/morphology.hpp"

#include "ewt/core.hpp"

#include <algorithm>

namespace ewt::morphology {

namespace {

void check_window(std::span<const double> f, StructuringWindow w)
{
    if (f.empty() || w.width() > f.size()) {
        throw InvalidArgument("structuring window of width " + std::to_string(w.width()) +
                              " does not fit a signal of length " + std::to_string(f.size()));
    }
}

template <typename Pick>
std::vector<double> sweep(std::span<const double> f, StructuringWindow w, Pick pick)
{
    check_window(f, w);
    const std::size_t n = f.size();
    const std::size_t h = w.half_width;
    std::vector<double> out(n);
    for (std::size_t x = 0; x < n; ++x) {
        const std::size_t lo = x >= h ? x - h : 0;
        const std::size_t hi = std::min(n - 1, x + h);
        double v = f[lo];
        for (std::size_t y = lo + 1; y <= hi; ++y) {
            v = pick(v, f[y]);
        }
        out[x] = v;
    }
    return out;
}

}  // namespace

std::vector<double> dilate(std::span<const double> f, StructuringWindow w)
{
    return sweep(f, w, [](double a, double b) { return std::max(a, b); });
}

std::vector<double> erode(std::span<const double> f, StructuringWindow w)
{
    return sweep(f, w, [](double a, double b) { return std::min(a, b); });
}

std::vector<double> opening(std::span<const double> f, StructuringWindow w)
{
    return dilate(erode(f, w), w);
}

std::vector<double> closing(std::span<const double> f, StructuringWindow w)
{
    return erode(dilate(f, w), w);
}

}  // namespace ewt::morphology
