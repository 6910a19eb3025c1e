#pragma once

// Fourier boundary detection: preprocess a magnitude spectrum H over
// [0, pi] and partition it into mode supports.
//
// Conventions pinned here and relied on by every detector:
//  * local maximum: H[i-1] < H[i] >= H[i+1] (plateaus credited to their
//    leftmost bin); local minimum is the mirror image;
//  * every tie (equal maxima, equal minima) is broken toward the lower
//    frequency;
//  * detectors work on signed values unchanged, only extremum positions
//    matter.

#include "ewt/core.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace ewt {

/// Real profile over [0, pi]. Bin i sits at omega = i * bin_step.
class Spectrum1D {
public:
    /// Raw magnitude spectrum (finite, nonnegative, K >= 3). A zero
    /// `bin_step` means pi / (K - 1), i.e. the last bin is pi.
    explicit Spectrum1D(std::vector<double> values, double bin_step = 0.0);

    static Spectrum1D preprocessed(std::vector<double> values, double bin_step,
                                   std::vector<std::string> recipe);

    std::size_t size() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double bin_step() const noexcept { return step_; }
    double omega(std::size_t i) const noexcept { return static_cast<double>(i) * step_; }
    bool is_preprocessed() const noexcept { return !recipe_.empty(); }
    const std::vector<std::string>& recipe() const noexcept { return recipe_; }

private:
    Spectrum1D() = default;

    std::vector<double> values_;
    double step_ = 0.0;
    std::vector<std::string> recipe_;
};

/// Strictly increasing {0 = w^0 < w^1 < ... < w^N = pi}, N >= 1.
class BoundarySet {
public:
    explicit BoundarySet(std::vector<double> boundaries);

    /// {0, interior..., pi}.
    static BoundarySet from_interior(std::vector<double> interior);
    /// N bands of equal width.
    static BoundarySet uniform(std::size_t bands);

    std::size_t bands() const noexcept { return values_.size() - 1; }
    std::span<const double> values() const noexcept { return values_; }
    double operator[](std::size_t n) const { return values_[n]; }

private:
    std::vector<double> values_;
};

enum class TrendKind { none, plaw, poly, morpho, tophat };
enum class DetectRule { middle, lowestmin, ftc };

struct Trend {
    TrendKind kind = TrendKind::none;
    int degree = 5;  // used by poly only
};

struct DetectConfig {
    bool use_log = false;
    Trend trend{};
    DetectRule rule = DetectRule::lowestmin;
    std::size_t bands = 3;  // ignored by ftc
    double rho = 0.7;       // ftc merge ratio

    void validate() const;
};

/// Parses "none", "plaw", "poly:D", "morpho", "tophat".
Trend parse_trend(const std::string& text);
std::string to_string(const Trend& trend);
DetectRule parse_rule(const std::string& text);
std::string to_string(DetectRule rule);

struct Detection {
    BoundarySet boundaries;
    std::vector<std::size_t> selected_maxima;  // bins of the retained modes
    std::vector<std::string> warnings;
};

// --- preprocessing -------------------------------------------------------

struct PowerLawFit {
    double exponent;      // closed form  s = -sum(ln w ln H) / sum((ln w)^2)
    double lsq_exponent;  // direct minimizer of sum (H - w^-s)^2, diagnostic only
    std::size_t bins_used;
};

/// Fits T(w) = w^-s over the samples with w > 0 and H > 0.
PowerLawFit fit_power_law(std::span<const double> omega, std::span<const double> h);
PowerLawFit fit_power_law(const Spectrum1D& h);

/// Least-squares polynomial of degree `degree` in w, evaluated on every bin.
std::vector<double> fit_polynomial(const Spectrum1D& h, int degree);

/// Structuring half-width: half the smallest gap between consecutive local
/// maxima, or max(1, K/20) when fewer than two maxima exist.
std::size_t se_size(std::span<const double> h);

std::vector<double> trend_morpho(std::span<const double> h);
std::vector<double> trend_tophat(std::span<const double> h);

/// Optional ln(1 + H), then subtraction of the configured trend.
Spectrum1D preprocess(const Spectrum1D& h, const DetectConfig& cfg);

// --- detectors -----------------------------------------------------------

std::vector<std::size_t> local_maxima(std::span<const double> h);
std::vector<std::size_t> local_minima(std::span<const double> h);

/// Positions of the `count` largest local maxima, in ascending bin order.
std::vector<std::size_t> select_maxima(std::span<const double> h, std::size_t count);

Detection detect_middle(const Spectrum1D& hp, std::size_t bands);
Detection detect_lowestmin(const Spectrum1D& hp, std::size_t bands);
Detection detect_ftc(const Spectrum1D& hp, double rho = 0.7);

/// Preprocess `raw` per `cfg`, then run the configured rule.
Detection detect_boundaries(const Spectrum1D& raw, const DetectConfig& cfg);
/// Run the configured rule on an already-preprocessed profile.
Detection detect_on_profile(const Spectrum1D& hp, const DetectConfig& cfg);

}  // namespace ewt
