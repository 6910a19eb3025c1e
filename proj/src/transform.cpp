#include "ewt/transform.hpp"

#include "ewt/littlewood_paley.hpp"

namespace ewt {

namespace {

void append(std::vector<std::string>& into, const std::vector<std::string>& from, const std::string& prefix)
{
    for (const auto& w : from) {
        into.push_back(prefix + w);
    }
}

}  // namespace

std::string to_string(TransformKind kind)
{
    switch (kind) {
    case TransformKind::tensor: return "tensor";
    case TransformKind::lp: return "lp";
    case TransformKind::ridgelet: return "ridgelet";
    case TransformKind::curvelet1: return "curvelet1";
    case TransformKind::curvelet2: return "curvelet2";
    }
    return "lp";
}

TransformKind parse_transform(const std::string& text)
{
    for (auto k : {TransformKind::tensor, TransformKind::lp, TransformKind::ridgelet, TransformKind::curvelet1,
                   TransformKind::curvelet2}) {
        if (to_string(k) == text) {
            return k;
        }
    }
    throw InvalidArgument("unknown transform '" + text + "'");
}

TransformGeometry detect_geometry(const RealMatrix& image, const TransformParams& params)
{
    TransformGeometry g;
    g.kind = params.kind;
    g.rows = image.rows();
    g.cols = image.cols();
    if (params.kind == TransformKind::ridgelet && (g.rows != g.cols || g.rows % 2 != 0)) {
        throw InvalidArgument("ridgelet transform needs a square image with an even side");
    }

    auto radial = [&](std::size_t bands, const DetectConfig& cfg) {
        if (params.boundaries) {
            return BoundarySet::from_interior(*params.boundaries);
        }
        Detection d = lp_detect(image, bands, cfg);
        append(g.warnings, d.warnings, "radial: ");
        return d.boundaries;
    };
    auto gamma_for = [&](const BoundarySet& b) { return params.gamma ? *params.gamma : choose_gamma(b); };

    switch (params.kind) {
    case TransformKind::tensor: {
        if (params.boundaries) {
            g.radial = {BoundarySet::from_interior(*params.boundaries), BoundarySet::from_interior(*params.boundaries)};
        } else {
            TensorDetection d = tensor_detect(image, params.bands_row, params.bands_col, params.scale_cfg);
            append(g.warnings, d.row.warnings, "rows: ");
            append(g.warnings, d.col.warnings, "cols: ");
            g.radial = {d.row.boundaries, d.col.boundaries};
        }
        break;
    }
    case TransformKind::lp:
    case TransformKind::ridgelet:
        g.radial = {radial(params.bands, params.scale_cfg)};
        break;
    case TransformKind::curvelet1:
    case TransformKind::curvelet2: {
        const auto option = params.kind == TransformKind::curvelet1 ? CurveletOption::I : CurveletOption::II;
        if (params.boundaries) {
            // Scales are given; angles are still detected, per band for option II.
            g.radial = {BoundarySet::from_interior(*params.boundaries)};
            const RealMatrix square = centered_square_crop(image);
            const PPGrid grid(square.rows());
            const PPArray p = ppfft(square, grid);
            const BoundarySet& w = g.radial.front();
            const std::size_t sets = option == CurveletOption::I ? 1 : w.bands() - 1;
            for (std::size_t s = 0; s < sets; ++s) {
                std::optional<std::pair<double, double>> band;
                if (option == CurveletOption::II) {
                    band = std::pair{w[s + 1], w[s + 2]};
                }
                AngularDetection a = [&] {
                    try {
                        return detect_angles(p, grid, params.angles, params.angle_cfg, band);
                    } catch (const InvalidArgument&) {
                        return AngularDetection{AngularBoundarySet::uniform(params.angles, grid.theta(0)), {},
                                                {"empty_radial_band"}};
                    }
                }();
                append(g.warnings, a.warnings, "angular: ");
                g.angles.push_back(a.angles);
            }
        } else {
            CurveletDetection d =
                curvelet_detect(image, params.scales, params.angles, params.scale_cfg, params.angle_cfg, option);
            append(g.warnings, d.scales.warnings, "radial: ");
            g.radial = {d.scales.boundaries};
            for (auto& a : d.angles) {
                append(g.warnings, a.warnings, "angular: ");
                g.angles.push_back(a.angles);
            }
        }
        g.delta_theta = choose_delta_theta(g.angles);
        break;
    }
    }
    for (const auto& b : g.radial) {
        g.gammas.push_back(gamma_for(b));
    }
    return g;
}

Transform::Transform(TransformGeometry geometry) : geometry_(std::move(geometry))
{
    const auto& g = geometry_;
    const std::size_t expected_sets = g.kind == TransformKind::tensor ? 2 : 1;
    if (g.radial.size() != expected_sets || g.gammas.size() != expected_sets) {
        throw InvalidArgument("geometry for " + to_string(g.kind) + " needs " + std::to_string(expected_sets) +
                              " radial boundary set(s) with matching gamma values");
    }
    switch (g.kind) {
    case TransformKind::tensor:
        tensor_ = tensor_banks(g.radial[0], g.gammas[0], g.radial[1], g.gammas[1], g.rows, g.cols);
        bank_ = tensor_view(*tensor_);
        labels_ = bank_->labels;
        break;
    case TransformKind::lp:
        bank_ = lp_bank(g.radial[0], g.gammas[0], g.rows, g.cols);
        labels_ = bank_->labels;
        break;
    case TransformKind::ridgelet:
        if (g.rows != g.cols) {
            throw InvalidArgument("ridgelet transform needs a square image");
        }
        ridgelet_ = ridgelet_bank(g.radial[0], g.gammas[0], g.rows);
        for (std::size_t n = 0; n < ridgelet_->bands(); ++n) {
            labels_.push_back({n, 0});
        }
        break;
    case TransformKind::curvelet1:
    case TransformKind::curvelet2:
        bank_ = curvelet_bank(g.kind == TransformKind::curvelet1 ? CurveletOption::I : CurveletOption::II,
                              g.radial[0], g.gammas[0], g.angles, g.delta_theta, g.rows, g.cols);
        labels_ = bank_->labels;
        break;
    }
}

SubbandSet Transform::forward(const RealMatrix& image) const
{
    if (image.rows() != geometry_.rows || image.cols() != geometry_.cols) {
        throw InvalidArgument("image shape does not match the transform geometry");
    }
    if (tensor_) {
        return tensor_forward(image, *tensor_);
    }
    if (ridgelet_) {
        RidgeletCoeffs c = ridgelet_forward(image, *ridgelet_);
        return SubbandSet{std::move(c.bands), labels_};
    }
    return analyze(image, *bank_);
}

Reconstruction Transform::inverse(const SubbandSet& subbands, double tol, std::size_t maxiter) const
{
    if (tensor_) {
        return {tensor_inverse(subbands, *tensor_), std::nullopt};
    }
    if (ridgelet_) {
        RidgeletInverse r = ridgelet_inverse(RidgeletCoeffs{geometry_.rows, subbands.planes}, *ridgelet_, tol, maxiter);
        return {std::move(r.image), r.report};
    }
    return {synthesize(subbands, *bank_), std::nullopt};
}

double Transform::frame_deviation() const
{
    if (ridgelet_) {
        return ewt::frame_deviation(*ridgelet_);
    }
    return ewt::frame_deviation(*bank_);
}

}  // namespace ewt
