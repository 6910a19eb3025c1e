#pragma once

// Directional empirical transforms: the ridgelet transform (1D EWT along
// the lines of the pseudo-polar grid) and curvelet wedge banks, option I
// (one angular partition for every scale) and option II (one per scale).

#include "ewt/boundaries.hpp"
#include "ewt/ewt1d.hpp"
#include "ewt/filter_bank_2d.hpp"
#include "ewt/pseudopolar.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ewt {

// --- ridgelet ----------------------------------------------------------------

/// 1D bank on the signed-radius axis of a pseudo-polar line, length 2N+1,
/// DFT order: position k holds radius j = k for k <= N, j = k - (2N+1) otherwise.
FilterBank1D ridgelet_bank(const BoundarySet& boundaries, double gamma, std::size_t n);

struct RidgeletCoeffs {
    std::size_t n = 0;
    std::vector<RealMatrix> bands;  // per band: 2N angles x (2N+1) ray positions
};

RidgeletCoeffs ridgelet_forward(const RealMatrix& image, const FilterBank1D& bank);

struct RidgeletInverse {
    RealMatrix image;
    SolverReport report;
};

RidgeletInverse ridgelet_inverse(const RidgeletCoeffs& coeffs, const FilterBank1D& bank, double tol = 1e-10,
                                 std::size_t maxiter = 300);

// --- angles ------------------------------------------------------------------

/// theta^1 < ... < theta^{N_theta} spanning less than pi; the partner of the
/// last angle is theta^1 + pi.
class AngularBoundarySet {
public:
    explicit AngularBoundarySet(std::vector<double> angles);

    static AngularBoundarySet uniform(std::size_t count, double start);

    std::size_t size() const noexcept { return angles_.size(); }
    std::span<const double> values() const noexcept { return angles_; }
    double operator[](std::size_t m) const { return angles_[m]; }
    /// theta^{m+1}, wrapping to theta^1 + pi.
    double next(std::size_t m) const;

private:
    std::vector<double> angles_;
};

struct AngularDetection {
    AngularBoundarySet angles;
    std::vector<std::size_t> peak_bins;  // grid line of each retained peak
    std::vector<std::string> warnings;
};

/// Middle rule, tophat trend, no log.
DetectConfig default_angle_config();

/// Circular detection on a per-angle profile sampled at the grid's line angles.
AngularDetection detect_angles_on_profile(std::span<const double> profile, const PPGrid& grid, std::size_t count,
                                          const DetectConfig& cfg);

AngularDetection detect_angles(const PPArray& p, const PPGrid& grid, std::size_t count, const DetectConfig& cfg,
                               std::optional<std::pair<double, double>> radial_band = std::nullopt);

/// 0.99/2 times the smallest gap between consecutive angles, wrap gap included.
double choose_delta_theta(const AngularBoundarySet& angles);
double choose_delta_theta(const std::vector<AngularBoundarySet>& sets);

/// Throws InvalidArgument naming m when 2 delta exceeds gap m.
void check_angular_transitions(const AngularBoundarySet& angles, double delta_theta);

/// Angular window V_m at angle theta (any real; reduced modulo pi).
double angular_window(const AngularBoundarySet& angles, double delta_theta, std::size_t m, double theta);

// --- curvelets ---------------------------------------------------------------

enum class CurveletOption { I, II };

/// Lowpass (0, 0) followed by wedges (n, m), n = 1..N_s-1, m = 0..N_theta-1.
/// Option I takes one angular set, option II one per detail scale.
FilterBank2D curvelet_bank(CurveletOption option, const BoundarySet& scales, double gamma,
                           const std::vector<AngularBoundarySet>& angles, double delta_theta, std::size_t rows,
                           std::size_t cols);

SubbandSet curvelet_forward(const RealMatrix& image, const FilterBank2D& bank);
RealMatrix curvelet_inverse(const SubbandSet& subbands, const FilterBank2D& bank);

struct CurveletDetection {
    Detection scales;
    std::vector<AngularDetection> angles;  // one (option I) or one per detail scale (option II)
};

CurveletDetection curvelet_detect(const RealMatrix& image, std::size_t scales, std::size_t angles,
                                  const DetectConfig& scale_cfg, const DetectConfig& angle_cfg, CurveletOption option);

}  // namespace ewt
