#include "ewt/boundaries.hpp"

#include "ewt/morphology.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace ewt {

namespace {

std::string format_double(double v)
{
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

double default_step(std::size_t k) { return kPi / static_cast<double>(k - 1); }

}  // namespace

// --- Spectrum1D / BoundarySet ----------------------------------------------

Spectrum1D::Spectrum1D(std::vector<double> values, double bin_step)
    : values_(std::move(values))
{
    if (values_.size() < 3) {
        throw InvalidArgument("spectrum needs at least 3 bins");
    }
    if (!all_finite(values_)) {
        throw InvalidArgument("spectrum contains non-finite values");
    }
    if (std::any_of(values_.begin(), values_.end(), [](double v) { return v < 0.0; })) {
        throw InvalidArgument("raw magnitude spectrum must be nonnegative");
    }
    if (bin_step < 0.0) {
        throw InvalidArgument("spectrum bin step must be positive");
    }
    step_ = bin_step == 0.0 ? default_step(values_.size()) : bin_step;
}

Spectrum1D Spectrum1D::preprocessed(std::vector<double> values, double bin_step, std::vector<std::string> recipe)
{
    if (values.size() < 3 || !all_finite(values)) {
        throw InvalidArgument("preprocessed spectrum needs at least 3 finite bins");
    }
    Spectrum1D s;
    s.step_ = bin_step == 0.0 ? default_step(values.size()) : bin_step;
    s.values_ = std::move(values);
    s.recipe_ = std::move(recipe);
    if (s.recipe_.empty()) {
        s.recipe_.push_back("none");
    }
    return s;
}

BoundarySet::BoundarySet(std::vector<double> boundaries) : values_(std::move(boundaries))
{
    if (values_.size() < 2) {
        throw InvalidArgument("boundary set needs at least {0, pi}");
    }
    if (values_.front() != 0.0) {
        throw InvalidArgument("first boundary must be 0");
    }
    if (std::abs(values_.back() - kPi) > 1e-12) {
        throw InvalidArgument("last boundary must be pi");
    }
    values_.back() = kPi;
    for (std::size_t i = 1; i < values_.size(); ++i) {
        if (!(values_[i] > values_[i - 1])) {
            throw InvalidArgument("boundaries must be strictly increasing (index " + std::to_string(i) + ")");
        }
    }
}

BoundarySet BoundarySet::from_interior(std::vector<double> interior)
{
    interior.insert(interior.begin(), 0.0);
    interior.push_back(kPi);
    return BoundarySet(std::move(interior));
}

BoundarySet BoundarySet::uniform(std::size_t bands)
{
    if (bands == 0) {
        throw InvalidArgument("uniform boundary set needs at least one band");
    }
    std::vector<double> b(bands + 1);
    for (std::size_t n = 0; n <= bands; ++n) {
        b[n] = kPi * static_cast<double>(n) / static_cast<double>(bands);
    }
    b.back() = kPi;
    return BoundarySet(std::move(b));
}

// --- config ------------------------------------------------------------------

void DetectConfig::validate() const
{
    if (trend.kind == TrendKind::poly && trend.degree < 1) {
        throw InvalidArgument("polynomial trend degree must be >= 1");
    }
    if (rule != DetectRule::ftc && bands < 2) {
        throw InvalidArgument("requested band count must be >= 2");
    }
    if (!(rho > 0.0) || !(rho <= 1.0)) {
        throw InvalidArgument("ftc ratio rho must be in (0, 1]");
    }
}

Trend parse_trend(const std::string& text)
{
    if (text == "none") {
        return {TrendKind::none};
    }
    if (text == "plaw") {
        return {TrendKind::plaw};
    }
    if (text == "morpho") {
        return {TrendKind::morpho};
    }
    if (text == "tophat") {
        return {TrendKind::tophat};
    }
    if (text == "poly") {
        return {TrendKind::poly, 5};
    }
    if (text.rfind("poly:", 0) == 0) {
        const std::string digits = text.substr(5);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })
            || digits.size() > 3) {
            throw InvalidArgument("bad polynomial degree in trend '" + text + "'");
        }
        const int degree = std::stoi(digits);
        if (degree < 1) {
            throw InvalidArgument("polynomial trend degree must be >= 1");
        }
        return {TrendKind::poly, degree};
    }
    throw InvalidArgument("unknown trend '" + text + "'");
}

std::string to_string(const Trend& trend)
{
    switch (trend.kind) {
    case TrendKind::none: return "none";
    case TrendKind::plaw: return "plaw";
    case TrendKind::poly: return "poly:" + std::to_string(trend.degree);
    case TrendKind::morpho: return "morpho";
    case TrendKind::tophat: return "tophat";
    }
    return "none";
}

DetectRule parse_rule(const std::string& text)
{
    if (text == "middle") {
        return DetectRule::middle;
    }
    if (text == "lowestmin") {
        return DetectRule::lowestmin;
    }
    if (text == "ftc") {
        return DetectRule::ftc;
    }
    throw InvalidArgument("unknown detection rule '" + text + "'");
}

std::string to_string(DetectRule rule)
{
    switch (rule) {
    case DetectRule::middle: return "middle";
    case DetectRule::lowestmin: return "lowestmin";
    case DetectRule::ftc: return "ftc";
    }
    return "middle";
}

// --- trends ------------------------------------------------------------------

PowerLawFit fit_power_law(std::span<const double> omega, std::span<const double> h)
{
    if (omega.size() != h.size()) {
        throw InvalidArgument("power-law fit: frequency and magnitude lengths differ");
    }
    std::vector<double> log_w;
    std::vector<double> w_used;
    std::vector<double> h_used;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (omega[i] > 0.0 && h[i] > 0.0) {
            const double lw = std::log(omega[i]);
            num += lw * std::log(h[i]);
            den += lw * lw;
            w_used.push_back(omega[i]);
            h_used.push_back(h[i]);
        }
    }
    if (w_used.empty()) {
        throw DetectionError("power-law fit: no bins with positive frequency and magnitude");
    }
    // den == 0 only if every used bin sits at w = 1, where w^-s is constant.
    const double s = den > 0.0 ? -num / den : 0.0;

    auto objective = [&](double e) {
        double acc = 0.0;
        for (std::size_t i = 0; i < w_used.size(); ++i) {
            const double r = h_used[i] - std::pow(w_used[i], -e);
            acc += r * r;
        }
        return std::isfinite(acc) ? acc : std::numeric_limits<double>::infinity();
    };
    // Coarse scan then golden-section refinement of the bracketing cell.
    constexpr double lo = -10.0;
    constexpr double step = 0.01;
    double best = lo;
    double best_val = objective(lo);
    for (int k = 1; k <= 2000; ++k) {
        const double e = lo + step * k;
        const double v = objective(e);
        if (v < best_val) {
            best_val = v;
            best = e;
        }
    }
    double a = best - step;
    double b = best + step;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    return PowerLawFit{s, 0.5 * (a + b), w_used.size()};
}

PowerLawFit fit_power_law(const Spectrum1D& h)
{
    std::vector<double> omega(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        omega[i] = h.omega(i);
    }
    return fit_power_law(omega, h.values());
}

std::vector<double> fit_polynomial(const Spectrum1D& h, int degree)
{
    const std::size_t k = h.size();
    if (degree < 0 || static_cast<std::size_t>(degree) >= k) {
        throw InvalidArgument("polynomial degree " + std::to_string(degree) + " must be below the bin count " +
                              std::to_string(k));
    }
    // Work in x = w / w_max in [0, 1]; same polynomial space, better scaling.
    const double w_max = h.omega(k - 1);
    Eigen::MatrixXd v(static_cast<Eigen::Index>(k), degree + 1);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < k; ++i) {
        const double x = h.omega(i) / w_max;
        double p = 1.0;
        for (int d = 0; d <= degree; ++d) {
            v(static_cast<Eigen::Index>(i), d) = p;
            p *= x;
        }
        rhs(static_cast<Eigen::Index>(i)) = h[i];
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(v);
    const auto& sv = svd.singularValues();
    const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
    if (!(cond < 1e12)) {
        throw DetectionError("polynomial trend fit is ill-conditioned (condition estimate " + format_double(cond) + ")");
    }
    const Eigen::VectorXd coeffs = v.colPivHouseholderQr().solve(rhs);
    const Eigen::VectorXd fitted = v * coeffs;
    return std::vector<double>(fitted.data(), fitted.data() + fitted.size());
}

std::size_t se_size(std::span<const double> h)
{
    const std::vector<std::size_t> maxima = local_maxima(h);
    std::size_t half;
    if (maxima.size() < 2) {
        half = std::max<std::size_t>(1, h.size() / 20);
    } else {
        std::size_t gap = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = 1; i < maxima.size(); ++i) {
            gap = std::min(gap, maxima[i] - maxima[i - 1]);
        }
        half = gap / 2;
    }
    // Keep the window inside the signal.
    return std::min(half, (h.size() - 1) / 2);
}

std::vector<double> trend_morpho(std::span<const double> h)
{
    const morphology::StructuringWindow w{se_size(h)};
    const std::vector<double> open = morphology::opening(h, w);
    const std::vector<double> close = morphology::closing(h, w);
    std::vector<double> t(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        t[i] = 0.5 * (open[i] + close[i]);
    }
    return t;
}

std::vector<double> trend_tophat(std::span<const double> h)
{
    return morphology::opening(h, morphology::StructuringWindow{se_size(h)});
}

Spectrum1D preprocess(const Spectrum1D& h, const DetectConfig& cfg)
{
    cfg.validate();
    std::vector<std::string> recipe;
    std::vector<double> v(h.values().begin(), h.values().end());
    if (cfg.use_log) {
        for (double& x : v) {
            x = std::log1p(x);
        }
        recipe.push_back("log1p");
    }
    const Spectrum1D stage = Spectrum1D::preprocessed(v, h.bin_step(), recipe);
    std::vector<double> trend;
    switch (cfg.trend.kind) {
    case TrendKind::none:
        break;
    case TrendKind::plaw: {
        const PowerLawFit fit = fit_power_law(stage);
        trend.resize(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            // w^-s is undefined at DC; the DC bin keeps a zero residual.
            trend[i] = i == 0 ? v[0] : std::pow(stage.omega(i), -fit.exponent);
        }
        recipe.push_back("plaw(s=" + format_double(fit.exponent) + ")");
        break;
    }
    case TrendKind::poly:
        trend = fit_polynomial(stage, cfg.trend.degree);
        recipe.push_back("poly:" + std::to_string(cfg.trend.degree));
        break;
    case TrendKind::morpho:
        trend = trend_morpho(v);
        recipe.push_back("morpho(h=" + std::to_string(se_size(v)) + ")");
        break;
    case TrendKind::tophat:
        trend = trend_tophat(v);
        recipe.push_back("tophat(h=" + std::to_string(se_size(v)) + ")");
        break;
    }
    if (!trend.empty()) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] -= trend[i];
        }
    }
    return Spectrum1D::preprocessed(std::move(v), h.bin_step(), std::move(recipe));
}

// --- extrema -----------------------------------------------------------------

std::vector<std::size_t> local_maxima(std::span<const double> h)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < h.size(); ++i) {
        if (h[i - 1] < h[i] && h[i] >= h[i + 1]) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> local_minima(std::span<const double> h)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < h.size(); ++i) {
        if (h[i - 1] > h[i] && h[i] <= h[i + 1]) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> select_maxima(std::span<const double> h, std::size_t count)
{
    std::vector<std::size_t> maxima = local_maxima(h);
    std::stable_sort(maxima.begin(), maxima.end(), [&](std::size_t a, std::size_t b) { return h[a] > h[b]; });
    if (maxima.size() > count) {
        maxima.resize(count);
    }
    std::sort(maxima.begin(), maxima.end());
    return maxima;
}

namespace {

struct Selection {
    std::vector<std::size_t> maxima;
    std::vector<std::string> warnings;
};

Selection select_for_rule(const Spectrum1D& hp, std::size_t bands)
{
    if (bands < 2) {
        throw InvalidArgument("requested band count must be >= 2");
    }
    Selection sel{select_maxima(hp.values(), bands - 1), {}};
    if (sel.maxima.empty()) {
        throw DetectionError("spectrum has no local maximum");
    }
    if (sel.maxima.size() < bands - 1) {
        sel.warnings.push_back("fewer_maxima_than_requested");
    }
    if (sel.maxima.front() == 1) {
        sel.warnings.push_back("dc_adjacent_maximum");
    }
    return sel;
}

}  // namespace

Detection detect_middle(const Spectrum1D& hp, std::size_t bands)
{
    Selection sel = select_for_rule(hp, bands);
    std::vector<double> interior;
    double previous = 0.0;
    for (std::size_t m : sel.maxima) {
        interior.push_back(0.5 * (previous + hp.omega(m)));
        previous = hp.omega(m);
    }
    return Detection{BoundarySet::from_interior(std::move(interior)), std::move(sel.maxima), std::move(sel.warnings)};
}

Detection detect_lowestmin(const Spectrum1D& hp, std::size_t bands)
{
    Selection sel = select_for_rule(hp, bands);
    const auto h = hp.values();
    std::vector<double> interior;
    std::size_t left = 0;
    for (std::size_t m : sel.maxima) {
        if (m - left < 2) {
            // No bin strictly inside the segment.
            interior.push_back(0.5 * (hp.omega(left) + hp.omega(m)));
        } else {
            std::size_t arg = left + 1;
            for (std::size_t i = left + 2; i < m; ++i) {
                if (h[i] < h[arg]) {
                    arg = i;
                }
            }
            interior.push_back(hp.omega(arg));
        }
        left = m;
    }
    return Detection{BoundarySet::from_interior(std::move(interior)), std::move(sel.maxima), std::move(sel.warnings)};
}

Detection detect_ftc(const Spectrum1D& hp, double rho)
{
    if (hp.size() < 5) {
        throw InvalidArgument("fine-to-coarse segmentation needs at least 5 bins");
    }
    if (!(rho > 0.0) || !(rho <= 1.0)) {
        throw InvalidArgument("ftc ratio rho must be in (0, 1]");
    }
    const auto h = hp.values();
    const std::size_t last = h.size() - 1;
    std::vector<std::size_t> cuts = local_minima(h);

    auto peak = [&](std::size_t from, std::size_t to) {
        return *std::max_element(h.begin() + static_cast<std::ptrdiff_t>(from),
                                 h.begin() + static_cast<std::ptrdiff_t>(to) + 1);
    };

    // Each pass removes the qualifying minimum with the highest value.
    for (;;) {
        std::ptrdiff_t victim = -1;
        for (std::size_t k = 0; k < cuts.size(); ++k) {
            const std::size_t left = k == 0 ? 0 : cuts[k - 1];
            const std::size_t right = k + 1 == cuts.size() ? last : cuts[k + 1];
            const double p = std::min(peak(left, cuts[k]), peak(cuts[k], right));
            if (h[cuts[k]] > rho * p && (victim < 0 || h[cuts[k]] > h[cuts[static_cast<std::size_t>(victim)]])) {
                victim = static_cast<std::ptrdiff_t>(k);
            }
        }
        if (victim < 0) {
            break;
        }
        cuts.erase(cuts.begin() + victim);
    }

    std::vector<double> interior;
    std::vector<std::size_t> peaks;
    std::size_t left = 0;
    for (std::size_t k = 0; k <= cuts.size(); ++k) {
        const std::size_t right = k == cuts.size() ? last : cuts[k];
        std::size_t arg = left;
        for (std::size_t i = left + 1; i <= right; ++i) {
            if (h[i] > h[arg]) {
                arg = i;
            }
        }
        peaks.push_back(arg);
        if (k < cuts.size()) {
            interior.push_back(hp.omega(cuts[k]));
        }
        left = right;
    }
    return Detection{BoundarySet::from_interior(std::move(interior)), std::move(peaks), {}};
}

Detection detect_on_profile(const Spectrum1D& hp, const DetectConfig& cfg)
{
    switch (cfg.rule) {
    case DetectRule::middle: return detect_middle(hp, cfg.bands);
    case DetectRule::lowestmin: return detect_lowestmin(hp, cfg.bands);
    case DetectRule::ftc: return detect_ftc(hp, cfg.rho);
    }
    throw InvalidArgument("unknown detection rule");
}

Detection detect_boundaries(const Spectrum1D& raw, const DetectConfig& cfg)
{
    return detect_on_profile(preprocess(raw, cfg), cfg);
}

}  // namespace ewt
