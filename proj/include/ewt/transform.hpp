#pragma once

// Uniform front end over the five 2D transforms: detect a geometry on an
// image, build the banks from that geometry, then decompose/reconstruct.
// A geometry is plain data, so a decomposition can be inverted later from
// stored boundaries alone.

#include "ewt/boundaries.hpp"
#include "ewt/directional.hpp"
#include "ewt/filter_bank_2d.hpp"
#include "ewt/tensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ewt {

enum class TransformKind { tensor, lp, ridgelet, curvelet1, curvelet2 };

std::string to_string(TransformKind kind);
TransformKind parse_transform(const std::string& text);

struct TransformParams {
    TransformKind kind = TransformKind::lp;
    std::size_t bands = 3;      // lp, ridgelet
    std::size_t bands_row = 3;  // tensor
    std::size_t bands_col = 3;  // tensor
    std::size_t scales = 3;     // curvelets
    std::size_t angles = 4;     // curvelets
    DetectConfig scale_cfg{};
    DetectConfig angle_cfg = default_angle_config();
    std::optional<double> gamma;                      // overrides choose_gamma
    std::optional<std::vector<double>> boundaries;    // interior radial boundaries, skips detection
    double tol = 1e-10;                               // ridgelet solver
    std::size_t maxiter = 300;
};

struct TransformGeometry {
    TransformKind kind = TransformKind::lp;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<BoundarySet> radial;  // tensor: {row, col}; otherwise one set
    std::vector<double> gammas;       // one per radial set
    std::vector<AngularBoundarySet> angles;
    double delta_theta = 0.0;
    std::vector<std::string> warnings;
};

TransformGeometry detect_geometry(const RealMatrix& image, const TransformParams& params);

struct Reconstruction {
    RealMatrix image;
    std::optional<SolverReport> solver;
};

class Transform {
public:
    explicit Transform(TransformGeometry geometry);

    const TransformGeometry& geometry() const noexcept { return geometry_; }
    /// Subband labels in storage order.
    const std::vector<SubbandLabel>& labels() const noexcept { return labels_; }
    /// True for the approximation subband(s), which thresholding leaves alone.
    bool is_approximation(const SubbandLabel& label) const noexcept { return label.n == 0 && label.m == 0; }

    SubbandSet forward(const RealMatrix& image) const;
    Reconstruction inverse(const SubbandSet& subbands, double tol = 1e-10, std::size_t maxiter = 300) const;

    /// max |sum of squared masks - 1| over the frequency grid.
    double frame_deviation() const;
    /// The 2D bank (absent for the ridgelet transform).
    const std::optional<FilterBank2D>& bank() const noexcept { return bank_; }

private:
    TransformGeometry geometry_;
    std::vector<SubbandLabel> labels_;
    std::optional<FilterBank2D> bank_;
    std::optional<TensorBanks> tensor_;
    std::optional<FilterBank1D> ridgelet_;
};

}  // namespace ewt
