#include "ewt/directional.hpp"

#include "ewt/fft.hpp"
#include "ewt/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>

namespace ewt {

namespace {

long signed_radius(std::size_t k, std::size_t n)
{
    const auto kl = static_cast<long>(k);
    const auto nl = static_cast<long>(n);
    return kl <= nl ? kl : kl - (2 * nl + 1);
}

void check_ridgelet(const FilterBank1D& bank, std::size_t n)
{
    if (bank.length != 2 * n + 1) {
        throw InvalidArgument("ridgelet bank length " + std::to_string(bank.length) + " does not match 2N+1 = " +
                              std::to_string(2 * n + 1));
    }
}

// --- circular profile helpers ---

std::size_t wrap_index(long i, std::size_t len)
{
    const auto l = static_cast<long>(len);
    return static_cast<std::size_t>(((i % l) + l) % l);
}

std::vector<std::size_t> cyclic_maxima(std::span<const double> h)
{
    std::vector<std::size_t> out;
    const std::size_t len = h.size();
    for (std::size_t i = 0; i < len; ++i) {
        if (h[(i + len - 1) % len] < h[i] && h[i] >= h[(i + 1) % len]) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> cyclic_minima(std::span<const double> h)
{
    std::vector<std::size_t> out;
    const std::size_t len = h.size();
    for (std::size_t i = 0; i < len; ++i) {
        if (h[(i + len - 1) % len] > h[i] && h[i] <= h[(i + 1) % len]) {
            out.push_back(i);
        }
    }
    return out;
}

// Max of h over the forward arc from a to b inclusive (b reached by wrapping if b <= a).
double arc_max(std::span<const double> h, std::size_t a, std::size_t b)
{
    const std::size_t len = h.size();
    double v = h[a];
    for (std::size_t i = a; i != b;) {
        i = (i + 1) % len;
        v = std::max(v, h[i]);
    }
    return v;
}

// Maps a fractional grid position (taken modulo the line count) onto theta.
double position_to_theta(double x, const PPGrid& grid)
{
    const auto len = static_cast<double>(grid.angles());
    x = std::fmod(x, len);
    if (x < 0.0) {
        x += len;
    }
    const auto k = static_cast<std::size_t>(std::floor(x));
    const double t = x - static_cast<double>(k);
    const double lo = grid.theta(k);
    const double hi = k + 1 < grid.angles() ? grid.theta(k + 1) : grid.theta(0) + kPi;
    return lo + t * (hi - lo);
}

AngularDetection from_positions(std::vector<double> positions, std::vector<std::size_t> peaks, const PPGrid& grid,
                                std::vector<std::string> warnings)
{
    const auto len = static_cast<double>(grid.angles());
    for (double& p : positions) {
        p = std::fmod(p, len);
        if (p < 0.0) {
            p += len;
        }
    }
    std::sort(positions.begin(), positions.end());
    std::vector<double> angles;
    for (double p : positions) {
        angles.push_back(position_to_theta(p, grid));
    }
    std::sort(peaks.begin(), peaks.end());
    return AngularDetection{AngularBoundarySet(std::move(angles)), std::move(peaks), std::move(warnings)};
}

AngularDetection uniform_fallback(const PPGrid& grid, std::size_t count, std::vector<std::string> warnings)
{
    return AngularDetection{AngularBoundarySet::uniform(count, grid.theta(0)), {}, std::move(warnings)};
}

}  // namespace

// --- ridgelet ----------------------------------------------------------------

FilterBank1D ridgelet_bank(const BoundarySet& boundaries, double gamma, std::size_t n)
{
    std::vector<double> abs_r(2 * n + 1);
    for (std::size_t k = 0; k < abs_r.size(); ++k) {
        abs_r[k] = kPi * static_cast<double>(std::abs(signed_radius(k, n))) / static_cast<double>(n);
    }
    return build_bank_on_axis(boundaries, gamma, abs_r);
}

RidgeletCoeffs ridgelet_forward(const RealMatrix& image, const FilterBank1D& bank)
{
    if (image.rows() != image.cols()) {
        throw InvalidArgument("ridgelet transform needs a square image");
    }
    const PPGrid grid(image.rows());
    const std::size_t n = grid.n();
    check_ridgelet(bank, n);
    const PPArray p = ppfft(image, grid);
    RidgeletCoeffs out{n, std::vector<RealMatrix>(bank.bands(), RealMatrix(grid.angles(), grid.radii()))};
    std::vector<Complex> line(grid.radii());
    for (std::size_t i = 0; i < grid.angles(); ++i) {
        for (std::size_t b = 0; b < bank.bands(); ++b) {
            for (std::size_t k = 0; k < line.size(); ++k) {
                line[k] = p.at(i, signed_radius(k, n)) * bank.masks[b][k];
            }
            const std::vector<double> ray = idft1_real(line, 1e-8);
            std::copy(ray.begin(), ray.end(), out.bands[b].row(i).begin());
        }
    }
    return out;
}

RidgeletInverse ridgelet_inverse(const RidgeletCoeffs& coeffs, const FilterBank1D& bank, double tol,
                                 std::size_t maxiter)
{
    const PPGrid grid(coeffs.n);
    const std::size_t n = grid.n();
    check_ridgelet(bank, n);
    if (coeffs.bands.size() != bank.bands()) {
        throw InvalidArgument("ridgelet band count does not match the bank");
    }
    for (const RealMatrix& b : coeffs.bands) {
        if (b.rows() != grid.angles() || b.cols() != grid.radii()) {
            throw InvalidArgument("ridgelet band has the wrong shape");
        }
    }
    PPArray p{n, ComplexMatrix(grid.angles(), grid.radii())};
    std::vector<Complex> acc(grid.radii());
    for (std::size_t i = 0; i < grid.angles(); ++i) {
        std::fill(acc.begin(), acc.end(), Complex{});
        for (std::size_t b = 0; b < bank.bands(); ++b) {
            const std::vector<Complex> spec = dft1(coeffs.bands[b].row(i));
            for (std::size_t k = 0; k < acc.size(); ++k) {
                acc[k] += spec[k] * bank.masks[b][k];
            }
        }
        for (std::size_t k = 0; k < acc.size(); ++k) {
            p.at(i, signed_radius(k, n)) = acc[k];
        }
    }
    PPInverse inv = ppfft_inverse(p, grid, tol, maxiter);
    return RidgeletInverse{std::move(inv.image), inv.report};
}

// --- angles ------------------------------------------------------------------

AngularBoundarySet::AngularBoundarySet(std::vector<double> angles) : angles_(std::move(angles))
{
    if (angles_.size() < 2) {
        throw InvalidArgument("angular boundary set needs at least 2 angles");
    }
    if (!all_finite(angles_)) {
        throw InvalidArgument("angular boundaries must be finite");
    }
    for (std::size_t m = 1; m < angles_.size(); ++m) {
        if (!(angles_[m] > angles_[m - 1])) {
            throw InvalidArgument("angular boundaries must be strictly increasing (index " + std::to_string(m) + ")");
        }
    }
    if (!(angles_.back() - angles_.front() < kPi)) {
        throw InvalidArgument("angular boundaries must span less than pi");
    }
}

AngularBoundarySet AngularBoundarySet::uniform(std::size_t count, double start)
{
    std::vector<double> a(count);
    for (std::size_t m = 0; m < count; ++m) {
        a[m] = start + kPi * static_cast<double>(m) / static_cast<double>(count);
    }
    return AngularBoundarySet(std::move(a));
}

double AngularBoundarySet::next(std::size_t m) const
{
    return m + 1 < angles_.size() ? angles_[m + 1] : angles_.front() + kPi;
}

DetectConfig default_angle_config()
{
    DetectConfig cfg;
    cfg.rule = DetectRule::middle;
    cfg.trend = Trend{TrendKind::tophat};
    cfg.use_log = false;
    return cfg;
}

AngularDetection detect_angles_on_profile(std::span<const double> profile, const PPGrid& grid, std::size_t count,
                                          const DetectConfig& cfg)
{
    if (profile.size() != grid.angles()) {
        throw InvalidArgument("angular profile length does not match the grid");
    }
    if (count < 2) {
        throw InvalidArgument("angular detection needs at least 2 sectors");
    }
    if (count > grid.angles()) {
        throw InvalidArgument("more angular sectors requested than grid lines");
    }
    DetectConfig c = cfg;
    c.bands = count;
    const Spectrum1D raw(std::vector<double>(profile.begin(), profile.end()), kPi / static_cast<double>(profile.size()));
    const Spectrum1D hp = preprocess(raw, c);
    const auto h = hp.values();
    const std::size_t len = h.size();

    const auto [lo_it, hi_it] = std::minmax_element(h.begin(), h.end());
    if (*hi_it - *lo_it <= 1e-12 * std::max(1.0, std::abs(*hi_it))) {
        return uniform_fallback(grid, count, {"flat_angular_profile"});
    }

    if (c.rule == DetectRule::ftc) {
        std::vector<std::size_t> cuts = cyclic_minima(h);
        while (cuts.size() >= 2) {
            std::ptrdiff_t victim = -1;
            for (std::size_t k = 0; k < cuts.size(); ++k) {
                const std::size_t prev = cuts[(k + cuts.size() - 1) % cuts.size()];
                const std::size_t next = cuts[(k + 1) % cuts.size()];
                const double p = std::min(arc_max(h, prev, cuts[k]), arc_max(h, cuts[k], next));
                if (h[cuts[k]] > c.rho * p &&
                    (victim < 0 || h[cuts[k]] > h[cuts[static_cast<std::size_t>(victim)]])) {
                    victim = static_cast<std::ptrdiff_t>(k);
                }
            }
            if (victim < 0) {
                break;
            }
            cuts.erase(cuts.begin() + victim);
        }
        if (cuts.size() < 2) {
            return uniform_fallback(grid, count, {"too_few_angular_sectors"});
        }
        std::vector<double> positions(cuts.begin(), cuts.end());
        std::vector<std::size_t> peaks;
        for (std::size_t k = 0; k < cuts.size(); ++k) {
            const std::size_t a = cuts[k];
            const std::size_t b = cuts[(k + 1) % cuts.size()];
            std::size_t arg = a;
            for (std::size_t i = a; i != b;) {
                i = (i + 1) % len;
                if (h[i] > h[arg]) {
                    arg = i;
                }
            }
            peaks.push_back(arg);
        }
        return from_positions(std::move(positions), std::move(peaks), grid, {});
    }

    std::vector<std::size_t> maxima = cyclic_maxima(h);
    std::stable_sort(maxima.begin(), maxima.end(), [&](std::size_t a, std::size_t b) { return h[a] > h[b]; });
    if (maxima.size() < count) {
        return uniform_fallback(grid, count, {"fewer_maxima_than_requested"});
    }
    maxima.resize(count);
    std::sort(maxima.begin(), maxima.end());

    std::vector<double> positions;
    for (std::size_t k = 0; k < count; ++k) {
        const auto a = static_cast<long>(maxima[k]);
        const auto b = k + 1 < count ? static_cast<long>(maxima[k + 1]) : static_cast<long>(maxima[0] + len);
        if (c.rule == DetectRule::middle || b - a < 2) {
            positions.push_back(0.5 * static_cast<double>(a + b));
            continue;
        }
        long arg = a + 1;
        for (long i = a + 2; i < b; ++i) {
            if (h[wrap_index(i, len)] < h[wrap_index(arg, len)]) {
                arg = i;
            }
        }
        positions.push_back(static_cast<double>(arg));
    }
    return from_positions(std::move(positions), std::move(maxima), grid, {});
}

AngularDetection detect_angles(const PPArray& p, const PPGrid& grid, std::size_t count, const DetectConfig& cfg,
                               std::optional<std::pair<double, double>> radial_band)
{
    try {
        return detect_angles_on_profile(angular_mean_spectrum(p, radial_band), grid, count, cfg);
    } catch (const DetectionError& e) {
        throw DetectionError(std::string("angular: ") + e.what());
    }
}

double choose_delta_theta(const AngularBoundarySet& angles)
{
    double gap = kPi;
    for (std::size_t m = 0; m < angles.size(); ++m) {
        gap = std::min(gap, angles.next(m) - angles[m]);
    }
    return 0.99 / 2.0 * gap;
}

double choose_delta_theta(const std::vector<AngularBoundarySet>& sets)
{
    if (sets.empty()) {
        throw InvalidArgument("no angular boundary set given");
    }
    double d = kPi;
    for (const auto& s : sets) {
        d = std::min(d, choose_delta_theta(s));
    }
    return d;
}

void check_angular_transitions(const AngularBoundarySet& angles, double delta_theta)
{
    if (!(delta_theta > 0.0)) {
        throw InvalidArgument("angular transition half-width must be positive");
    }
    for (std::size_t m = 0; m < angles.size(); ++m) {
        if (2.0 * delta_theta > angles.next(m) - angles[m]) {
            throw InvalidArgument("angular transition areas overlap in sector " + std::to_string(m));
        }
    }
}

double angular_window(const AngularBoundarySet& angles, double delta_theta, std::size_t m, double theta)
{
    const double start = angles[m];
    const double stop = angles.next(m);
    const double base = start - delta_theta;
    double t = std::fmod(theta - base, kPi);
    if (t < 0.0) {
        t += kPi;
    }
    t += base;
    constexpr double half_pi = kPi / 2.0;
    if (t <= start + delta_theta) {
        return std::sin(half_pi * beta((t - start + delta_theta) / (2.0 * delta_theta)));
    }
    if (t <= stop - delta_theta) {
        return 1.0;
    }
    if (t <= stop + delta_theta) {
        return std::cos(half_pi * beta((t - stop + delta_theta) / (2.0 * delta_theta)));
    }
    return 0.0;
}

// --- curvelets ---------------------------------------------------------------

FilterBank2D curvelet_bank(CurveletOption option, const BoundarySet& scales, double gamma,
                           const std::vector<AngularBoundarySet>& angles, double delta_theta, std::size_t rows,
                           std::size_t cols)
{
    if (rows < 4 || cols < 4) {
        throw InvalidArgument("curvelet bank needs at least 4x4 bins");
    }
    if (scales.bands() < 2) {
        throw InvalidArgument("curvelet bank needs at least 2 scales");
    }
    const std::size_t details = scales.bands() - 1;
    const std::size_t expected = option == CurveletOption::I ? 1 : details;
    if (angles.size() != expected) {
        throw InvalidArgument("curvelet option " + std::string(option == CurveletOption::I ? "I" : "II") +
                              " needs " + std::to_string(expected) + " angular set(s), got " +
                              std::to_string(angles.size()));
    }
    check_transitions(scales, gamma);
    for (const auto& set : angles) {
        check_angular_transitions(set, delta_theta);
    }

    FilterBank2D bank;
    bank.kind = option == CurveletOption::I ? BankKind::curvelet_I : BankKind::curvelet_II;
    bank.rows = rows;
    bank.cols = cols;
    bank.masks.push_back(symmetric_mask(rows, cols, [&](double w1, double w2) {
        return band_window(scales, gamma, 0, std::hypot(w1, w2));
    }));
    bank.labels.push_back({0, 0});
    for (std::size_t n = 1; n <= details; ++n) {
        const AngularBoundarySet& set = angles[option == CurveletOption::I ? 0 : n - 1];
        for (std::size_t m = 0; m < set.size(); ++m) {
            bank.masks.push_back(symmetric_mask(rows, cols, [&](double w1, double w2) {
                const double w = band_window(scales, gamma, n, std::hypot(w1, w2));
                return w == 0.0 ? 0.0 : w * angular_window(set, delta_theta, m, frequency_angle(w1, w2));
            }));
            bank.labels.push_back({n, m});
        }
    }
    return bank;
}

SubbandSet curvelet_forward(const RealMatrix& image, const FilterBank2D& bank) { return analyze(image, bank); }

RealMatrix curvelet_inverse(const SubbandSet& subbands, const FilterBank2D& bank)
{
    return synthesize(subbands, bank);
}

CurveletDetection curvelet_detect(const RealMatrix& image, std::size_t scales, std::size_t angles,
                                  const DetectConfig& scale_cfg, const DetectConfig& angle_cfg, CurveletOption option)
{
    if (scales < 2 || angles < 2) {
        throw InvalidArgument("curvelet detection needs at least 2 scales and 2 angles");
    }
    CurveletDetection out{lp_detect(image, scales, scale_cfg), {}};
    const RealMatrix square = centered_square_crop(image);
    const PPGrid grid(square.rows());
    const PPArray p = ppfft(square, grid);
    if (option == CurveletOption::I) {
        out.angles.push_back(detect_angles(p, grid, angles, angle_cfg));
        return out;
    }
    const BoundarySet& w = out.scales.boundaries;
    for (std::size_t n = 1; n < w.bands(); ++n) {
        const std::pair<double, double> band{w[n], w[n + 1]};
        std::vector<double> profile;
        try {
            profile = angular_mean_spectrum(p, band);
        } catch (const InvalidArgument&) {
            out.angles.push_back(uniform_fallback(grid, angles, {"empty_radial_band"}));
            continue;
        }
        try {
            out.angles.push_back(detect_angles_on_profile(profile, grid, angles, angle_cfg));
        } catch (const DetectionError& e) {
            throw DetectionError("angular, scale " + std::to_string(n) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace ewt
