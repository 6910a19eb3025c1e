#pragma once

// Noise synthesis, universal soft-threshold denoising through any 2D
// transform, and PSNR / global SSIM scoring.

#include "ewt/core.hpp"
#include "ewt/filter_bank_2d.hpp"
#include "ewt/transform.hpp"

#include "json.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ewt {

/// Adds i.i.d. N(0, sigma^2) noise. The generator is std::mt19937_64 seeded
/// with `seed`; each pair of 64-bit draws (a, b) gives two normals by
/// Box-Muller with u1 = ((a >> 11) + 1) 2^-53 and u2 = (b >> 11) 2^-53, so the
/// output is identical on every platform.
Image add_gaussian_noise(const Image& image, double sigma, std::uint64_t seed);

/// delta * sqrt(2 ln n_pixels).
double universal_threshold(double delta, std::size_t n_pixels);

double soft_threshold(double x, double tau);
RealMatrix soft_threshold(const RealMatrix& plane, double tau);
/// Thresholds every subband except the approximation.
SubbandSet soft_threshold(const SubbandSet& subbands, double tau, const Transform& transform);

/// 10 log10(max^2 / MSE); +infinity for identical images.
double psnr(const RealMatrix& ref, const RealMatrix& test, double max_value = 255.0);
/// Single-window SSIM over whole-image moments, c1 = (0.01 L)^2, c2 = (0.03 L)^2.
double ssim_global(const RealMatrix& ref, const RealMatrix& test, double dynamic_range = 255.0);

/// `count` evenly spaced values from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t count);
/// Parses "lo:hi:n".
std::vector<double> parse_delta_grid(const std::string& text);
/// 21 points from 0 to 4.
std::vector<double> default_delta_grid();

struct DenoiseReport {
    std::string transform;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    double delta = 0.0;
    double tau = 0.0;
    double psnr_noisy = 0.0;
    double psnr_denoised = 0.0;
    double ssim_noisy = 0.0;
    double ssim_denoised = 0.0;
    double runtime_ms = 0.0;

    friend bool operator==(const DenoiseReport&, const DenoiseReport&) = default;
};

nlohmann::json to_json(const DenoiseReport& report);
DenoiseReport report_from_json(const nlohmann::json& j);

struct DenoiseResult {
    RealMatrix image;
    DenoiseReport report;
    std::vector<std::string> failures;  // grid points that could not be evaluated
};

/// Detects the geometry on `noisy`, runs one forward transform, then for each
/// delta thresholds the details, inverts and scores against `clean`. The best
/// PSNR wins, the lowest delta on ties.
DenoiseResult denoise(const Image& clean, const Image& noisy, const TransformParams& params,
                      const std::vector<double>& delta_grid, double sigma, std::uint64_t seed,
                      double max_value = 255.0);

}  // namespace ewt
