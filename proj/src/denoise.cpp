#include "ewt/denoise.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>

namespace ewt {

Image add_gaussian_noise(const Image& image, double sigma, std::uint64_t seed)
{
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw InvalidArgument("noise level sigma must be finite and >= 0");
    }
    RealMatrix out = image.pixels();
    if (sigma == 0.0) {
        return Image(std::move(out));
    }
    std::mt19937_64 gen(seed);
    constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
    for (std::size_t k = 0; k < out.size(); k += 2) {
        const double u1 = static_cast<double>((gen() >> 11) + 1) * scale;
        const double u2 = static_cast<double>(gen() >> 11) * scale;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        out[k] += sigma * radius * std::cos(2.0 * kPi * u2);
        if (k + 1 < out.size()) {
            out[k + 1] += sigma * radius * std::sin(2.0 * kPi * u2);
        }
    }
    return Image(std::move(out));
}

double universal_threshold(double delta, std::size_t n_pixels)
{
    if (n_pixels == 0 || !(delta >= 0.0)) {
        throw InvalidArgument("universal threshold needs delta >= 0 and at least one pixel");
    }
    return delta * std::sqrt(2.0 * std::log(static_cast<double>(n_pixels)));
}

double soft_threshold(double x, double tau)
{
    const double mag = std::abs(x) - tau;
    return mag > 0.0 ? std::copysign(mag, x) : 0.0;
}

RealMatrix soft_threshold(const RealMatrix& plane, double tau)
{
    if (!(tau >= 0.0)) {
        throw InvalidArgument("threshold must be >= 0");
    }
    RealMatrix out(plane.rows(), plane.cols());
    for (std::size_t k = 0; k < plane.size(); ++k) {
        out[k] = soft_threshold(plane[k], tau);
    }
    return out;
}

SubbandSet soft_threshold(const SubbandSet& subbands, double tau, const Transform& transform)
{
    SubbandSet out;
    out.labels = subbands.labels;
    for (std::size_t b = 0; b < subbands.planes.size(); ++b) {
        out.planes.push_back(transform.is_approximation(subbands.labels[b]) ? subbands.planes[b]
                                                                            : soft_threshold(subbands.planes[b], tau));
    }
    return out;
}

double psnr(const RealMatrix& ref, const RealMatrix& test, double max_value)
{
    if (!ref.same_shape(test) || ref.empty()) {
        throw InvalidArgument("PSNR needs two non-empty images of the same shape");
    }
    double se = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) {
        const double d = ref[k] - test[k];
        se += d * d;
    }
    if (se == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    const double mse = se / static_cast<double>(ref.size());
    return 10.0 * std::log10(max_value * max_value / mse);
}

double ssim_global(const RealMatrix& ref, const RealMatrix& test, double dynamic_range)
{
    if (!ref.same_shape(test) || ref.empty()) {
        throw InvalidArgument("SSIM needs two non-empty images of the same shape");
    }
    if (!(dynamic_range > 0.0)) {
        throw InvalidArgument("SSIM dynamic range must be positive");
    }
    const auto n = static_cast<double>(ref.size());
    double mr = 0.0;
    double mt = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) {
        mr += ref[k];
        mt += test[k];
    }
    mr /= n;
    mt /= n;
    double vr = 0.0;
    double vt = 0.0;
    double cov = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) {
        const double a = ref[k] - mr;
        const double b = test[k] - mt;
        vr += a * a;
        vt += b * b;
        cov += a * b;
    }
    vr /= n;
    vt /= n;
    cov /= n;
    const double c1 = (0.01 * dynamic_range) * (0.01 * dynamic_range);
    const double c2 = (0.03 * dynamic_range) * (0.03 * dynamic_range);
    return ((2.0 * mr * mt + c1) * (2.0 * cov + c2)) / ((mr * mr + mt * mt + c1) * (vr + vt + c2));
}

std::vector<double> linear_grid(double lo, double hi, std::size_t count)
{
    if (count == 0 || !std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || hi < lo) {
        throw InvalidArgument("delta grid needs 0 <= lo <= hi and at least one point");
    }
    if (count == 1) {
        return {lo};
    }
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return g;
}

std::vector<double> parse_delta_grid(const std::string& text)
{
    const auto first = text.find(':');
    const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
    if (second == std::string::npos || text.find(':', second + 1) != std::string::npos) {
        throw InvalidArgument("delta grid must look like lo:hi:n, got '" + text + "'");
    }
    try {
        std::size_t used = 0;
        const std::string lo_s = text.substr(0, first);
        const std::string hi_s = text.substr(first + 1, second - first - 1);
        const std::string n_s = text.substr(second + 1);
        const double lo = std::stod(lo_s, &used);
        if (used != lo_s.size()) {
            throw std::invalid_argument("lo");
        }
        const double hi = std::stod(hi_s, &used);
        if (used != hi_s.size()) {
            throw std::invalid_argument("hi");
        }
        const unsigned long n = std::stoul(n_s, &used);
        if (used != n_s.size() || n_s.front() == '-') {
            throw std::invalid_argument("n");
        }
        return linear_grid(lo, hi, n);
    } catch (const InvalidArgument&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidArgument("delta grid must look like lo:hi:n, got '" + text + "'");
    }
}

std::vector<double> default_delta_grid() { return linear_grid(0.0, 4.0, 21); }

namespace {

nlohmann::json number_or_inf(double v)
{
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    return v;
}

double read_number(const nlohmann::json& j, const char* key)
{
    const auto& v = j.at(key);
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf") {
            return std::numeric_limits<double>::infinity();
        }
        if (s == "-inf") {
            return -std::numeric_limits<double>::infinity();
        }
        throw InvalidArgument(std::string("report field ") + key + " is not a number");
    }
    return v.get<double>();
}

}  // namespace

nlohmann::json to_json(const DenoiseReport& r)
{
    return nlohmann::json{{"transform", r.transform},
                          {"sigma", r.sigma},
                          {"seed", r.seed},
                          {"delta", r.delta},
                          {"tau", r.tau},
                          {"psnr_noisy", number_or_inf(r.psnr_noisy)},
                          {"psnr_denoised", number_or_inf(r.psnr_denoised)},
                          {"ssim_noisy", r.ssim_noisy},
                          {"ssim_denoised", r.ssim_denoised},
                          {"runtime_ms", r.runtime_ms}};
}

DenoiseReport report_from_json(const nlohmann::json& j)
{
    try {
        DenoiseReport r;
        r.transform = j.at("transform").get<std::string>();
        r.sigma = read_number(j, "sigma");
        r.seed = j.at("seed").get<std::uint64_t>();
        r.delta = read_number(j, "delta");
        r.tau = read_number(j, "tau");
        r.psnr_noisy = read_number(j, "psnr_noisy");
        r.psnr_denoised = read_number(j, "psnr_denoised");
        r.ssim_noisy = read_number(j, "ssim_noisy");
        r.ssim_denoised = read_number(j, "ssim_denoised");
        r.runtime_ms = read_number(j, "runtime_ms");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("malformed denoise report: ") + e.what(), 0);
    }
}

DenoiseResult denoise(const Image& clean, const Image& noisy, const TransformParams& params,
                      const std::vector<double>& delta_grid, double sigma, std::uint64_t seed, double max_value)
{
    if (delta_grid.empty()) {
        throw InvalidArgument("delta grid is empty");
    }
    if (clean.rows() != noisy.rows() || clean.cols() != noisy.cols()) {
        throw InvalidArgument("clean and noisy images differ in shape");
    }
    const auto start = std::chrono::steady_clock::now();
    const Transform transform(detect_geometry(noisy.pixels(), params));
    const SubbandSet coeffs = transform.forward(noisy.pixels());

    DenoiseResult result;
    bool have_best = false;
    double best_psnr = 0.0;
    for (double delta : delta_grid) {
        try {
            const double tau = universal_threshold(delta, noisy.size());
            const Reconstruction rec =
                transform.inverse(soft_threshold(coeffs, tau, transform), params.tol, params.maxiter);
            const double score = psnr(clean.pixels(), rec.image, max_value);
            if (!have_best || score > best_psnr) {
                have_best = true;
                best_psnr = score;
                result.image = rec.image;
                result.report.delta = delta;
                result.report.tau = tau;
            }
        } catch (const std::exception& e) {
            result.failures.push_back("delta " + std::to_string(delta) + ": " + e.what());
        }
    }
    if (!have_best) {
        throw NumericalError("every delta grid point failed: " + result.failures.front());
    }
    DenoiseReport& r = result.report;
    r.transform = to_string(params.kind);
    r.sigma = sigma;
    r.seed = seed;
    r.psnr_noisy = psnr(clean.pixels(), noisy.pixels(), max_value);
    r.psnr_denoised = best_psnr;
    r.ssim_noisy = ssim_global(clean.pixels(), noisy.pixels(), max_value);
    r.ssim_denoised = ssim_global(clean.pixels(), result.image, max_value);
    r.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace ewt
