#include "cli.hpp"

#include "ewt/denoise.hpp"
#include "ewt/io.hpp"
#include "ewt/littlewood_paley.hpp"
#include "ewt/tensor.hpp"
#include "ewt/transform.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace ewt::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kMetadataFormat = "ewt2d-subbands";
constexpr int kMetadataVersion = 1;

struct Options {
    std::string command;
    std::string input;
    std::string outdir;
    std::string output;
    std::string reference;
    std::string report;
    std::string transform = "lp";
    std::size_t bands = 3;
    std::size_t bands_row = 3;
    std::size_t bands_col = 3;
    std::size_t scales = 3;
    std::size_t angles = 4;
    std::string rule = "lowestmin";
    std::string trend = "none";
    bool log = false;
    double rho = 0.7;
    std::optional<double> gamma;
    std::string boundaries;
    double sigma = 10.0;
    std::uint64_t seed = 0;
    std::string delta_grid = "0:4:21";
    double tol = 1e-10;
    std::size_t maxiter = 300;
    bool json_output = false;
    std::string geometry = "radial";
    std::string profile_csv;
    std::size_t rows = 0;
    std::size_t cols = 0;
    bool rule_given = false;
    bool trend_given = false;
};

json run_config(const Options& o)
{
    return json{{"command", o.command},
                {"input", o.input},
                {"outdir", o.outdir},
                {"output", o.output},
                {"transform", o.transform},
                {"bands", o.bands},
                {"bands_row", o.bands_row},
                {"bands_col", o.bands_col},
                {"scales", o.scales},
                {"angles", o.angles},
                {"rule", o.rule},
                {"trend", o.trend},
                {"log", o.log},
                {"rho", o.rho},
                {"gamma", o.gamma ? json(*o.gamma) : json(nullptr)},
                {"boundaries", o.boundaries},
                {"sigma", o.sigma},
                {"seed", o.seed},
                {"delta_grid", o.delta_grid},
                {"tol", o.tol},
                {"maxiter", o.maxiter},
                {"geometry", o.geometry},
                {"rows", o.rows},
                {"cols", o.cols}};
}

// --- input/output helpers ---

struct Loaded {
    RealMatrix pixels;
    unsigned maxval = 255;
};

bool has_extension(const std::string& path, const char* ext)
{
    return fs::path(path).extension() == ext;
}

Loaded load_input(const std::string& path)
{
    if (has_extension(path, ".ewtm")) {
        RealMatrix m = load_matrix(path);
        Image checked(m);  // validates shape and finiteness
        return {checked.pixels(), 255};
    }
    PgmImage img = read_pgm(path);
    return {img.image.pixels(), img.maxval};
}

void save_output(const RealMatrix& image, const std::string& path, unsigned maxval)
{
    if (has_extension(path, ".ewtm")) {
        save_matrix(image, path);
    } else {
        write_pgm(image, path, maxval);
    }
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        throw FormatError("cannot write " + path.string(), 0);
    }
}

json read_json(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw FormatError("cannot open " + path.string(), 0);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path.string() + ": " + e.what(), e.byte);
    }
}

std::vector<double> parse_list(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw InvalidArgument("bad boundary value '" + item + "'");
        }
    }
    return out;
}

DetectConfig scale_config(const Options& o, std::size_t bands)
{
    DetectConfig cfg;
    cfg.use_log = o.log;
    cfg.trend = parse_trend(o.trend);
    cfg.rule = parse_rule(o.rule);
    cfg.bands = bands;
    cfg.rho = o.rho;
    cfg.validate();
    return cfg;
}

TransformParams transform_params(const Options& o)
{
    TransformParams p;
    p.kind = parse_transform(o.transform);
    p.bands = o.bands;
    p.bands_row = o.bands_row;
    p.bands_col = o.bands_col;
    p.scales = o.scales;
    p.angles = o.angles;
    p.scale_cfg = scale_config(o, o.bands);
    p.gamma = o.gamma;
    if (!o.boundaries.empty()) {
        p.boundaries = parse_list(o.boundaries);
    }
    p.tol = o.tol;
    p.maxiter = o.maxiter;
    return p;
}

json geometry_json(const TransformGeometry& g)
{
    json radial = json::array();
    for (const auto& b : g.radial) {
        radial.push_back(std::vector<double>(b.values().begin(), b.values().end()));
    }
    json angles = json::array();
    for (const auto& a : g.angles) {
        angles.push_back(std::vector<double>(a.values().begin(), a.values().end()));
    }
    return json{{"boundaries", radial}, {"gammas", g.gammas}, {"angles", angles}, {"delta_theta", g.delta_theta}};
}

TransformGeometry geometry_from_json(const json& meta)
{
    TransformGeometry g;
    g.kind = parse_transform(meta.at("transform").get<std::string>());
    g.rows = meta.at("dims").at("rows").get<std::size_t>();
    g.cols = meta.at("dims").at("cols").get<std::size_t>();
    for (const auto& b : meta.at("boundaries")) {
        g.radial.emplace_back(b.get<std::vector<double>>());
    }
    g.gammas = meta.at("gammas").get<std::vector<double>>();
    for (const auto& a : meta.at("angles")) {
        g.angles.emplace_back(a.get<std::vector<double>>());
    }
    g.delta_theta = meta.at("delta_theta").get<double>();
    return g;
}

std::string subband_stem(TransformKind kind, const SubbandLabel& l)
{
    switch (kind) {
    case TransformKind::tensor: return "T_" + std::to_string(l.n) + "_" + std::to_string(l.m);
    case TransformKind::lp: return "LP_" + std::to_string(l.n);
    case TransformKind::ridgelet: return "R_" + std::to_string(l.n);
    case TransformKind::curvelet1: return "C1_" + std::to_string(l.n) + "_" + std::to_string(l.m);
    case TransformKind::curvelet2: return "C2_" + std::to_string(l.n) + "_" + std::to_string(l.m);
    }
    return "X";
}

void print_summary(std::ostream& out, const json& j)
{
    for (const auto& [key, value] : j.items()) {
        out << key << ": " << value.dump() << "\n";
    }
}

// --- commands ---

int cmd_boundaries(const Options& o, std::ostream& out)
{
    const Loaded in = load_input(o.input);
    const Image image(in.pixels);
    DetectConfig cfg = scale_config(o, o.bands);
    json report;
    std::vector<double> bounds;
    std::vector<std::size_t> maxima;
    std::vector<std::string> warnings;
    std::vector<double> profile_axis;
    std::vector<double> profile_values;

    if (o.geometry == "angular") {
        if (!o.rule_given) {
            cfg.rule = default_angle_config().rule;
        }
        if (!o.trend_given) {
            cfg.trend = default_angle_config().trend;
        }
        const RealMatrix square = centered_square_crop(image.pixels());
        const PPGrid grid(square.rows());
        const std::vector<double> profile = angular_mean_spectrum(ppfft(square, grid));
        const AngularDetection d = detect_angles_on_profile(profile, grid, o.bands, cfg);
        bounds.assign(d.angles.values().begin(), d.angles.values().end());
        maxima = d.peak_bins;
        warnings = d.warnings;
        const Spectrum1D hp =
            preprocess(Spectrum1D(profile, kPi / static_cast<double>(profile.size())), cfg);
        profile_values.assign(hp.values().begin(), hp.values().end());
        for (std::size_t i = 0; i < profile.size(); ++i) {
            profile_axis.push_back(grid.theta(i));
        }
    } else {
        Spectrum1D raw = [&] {
            if (o.geometry == "rows") {
                return row_mean_spectrum(image.pixels());
            }
            if (o.geometry == "cols") {
                return col_mean_spectrum(image.pixels());
            }
            return radial_profile(image.pixels());
        }();
        const Spectrum1D hp = preprocess(raw, cfg);
        Detection d = [&] {
            try {
                return detect_on_profile(hp, cfg);
            } catch (const DetectionError& e) {
                throw DetectionError(o.geometry + ": " + e.what());
            }
        }();
        bounds.assign(d.boundaries.values().begin(), d.boundaries.values().end());
        maxima = d.selected_maxima;
        warnings = d.warnings;
        profile_values.assign(hp.values().begin(), hp.values().end());
        for (std::size_t i = 0; i < hp.size(); ++i) {
            profile_axis.push_back(hp.omega(i));
        }
    }

    report = json{{"geometry", o.geometry},
                  {"config",
                   {{"log", cfg.use_log},
                    {"trend", to_string(cfg.trend)},
                    {"rule", to_string(cfg.rule)},
                    {"N", o.bands},
                    {"rho", cfg.rho}}},
                  {"boundaries_radians", bounds},
                  {"selected_maxima_bins", maxima},
                  {"warning_flags", warnings}};

    if (!o.profile_csv.empty()) {
        std::ostringstream csv;
        csv.precision(17);
        csv << "bin," << (o.geometry == "angular" ? "theta" : "omega") << ",value\n";
        for (std::size_t i = 0; i < profile_values.size(); ++i) {
            csv << i << "," << profile_axis[i] << "," << profile_values[i] << "\n";
        }
        write_text(o.profile_csv, csv.str());
    }
    if (o.json_output) {
        out << report.dump();
    } else {
        print_summary(out, report);
    }
    return kOk;
}

int cmd_decompose(const Options& o, std::ostream& out)
{
    const Loaded in = load_input(o.input);
    const TransformParams params = transform_params(o);
    const TransformGeometry geo = detect_geometry(in.pixels, params);
    const Transform transform(geo);
    const SubbandSet subbands = transform.forward(in.pixels);

    const fs::path dir(o.outdir);
    fs::create_directories(dir);
    json list = json::array();
    for (std::size_t b = 0; b < subbands.planes.size(); ++b) {
        const RealMatrix& plane = subbands.planes[b];
        const SubbandLabel& label = subbands.labels[b];
        const std::string stem = subband_stem(geo.kind, label);
        if (geo.kind == TransformKind::ridgelet) {
            for (std::size_t i = 0; i < plane.rows(); ++i) {
                const std::string file = "sub_" + stem + "_" + std::to_string(i) + ".ewtm";
                const auto row = plane.row(i);
                save_matrix(RealMatrix(1, plane.cols(), std::vector<double>(row.begin(), row.end())), dir / file);
                list.push_back({{"file", file}, {"n", label.n}, {"angle", i}});
            }
        } else {
            const std::string file = "sub_" + stem + ".ewtm";
            save_matrix(plane, dir / file);
            list.push_back({{"file", file}, {"n", label.n}, {"m", label.m}});
        }
        write_pgm(preview_scale(plane), dir / ("preview_" + stem + ".pgm"), 255);
    }

    json meta = geometry_json(geo);
    meta["format"] = kMetadataFormat;
    meta["version"] = kMetadataVersion;
    meta["run_config"] = run_config(o);
    meta["transform"] = to_string(geo.kind);
    meta["dims"] = {{"rows", geo.rows}, {"cols", geo.cols}};
    meta["maxval"] = in.maxval;
    meta["subbands"] = list;
    meta["frame_sum_deviation"] = transform.frame_deviation();
    meta["warnings"] = geo.warnings;
    write_text(dir / "metadata.json", meta.dump(2) + "\n");

    const json summary{{"outdir", o.outdir},
                       {"transform", to_string(geo.kind)},
                       {"subband_files", list.size()},
                       {"frame_sum_deviation", transform.frame_deviation()},
                       {"warnings", geo.warnings}};
    if (o.json_output) {
        out << summary.dump();
    } else {
        print_summary(out, summary);
    }
    return kOk;
}

int cmd_reconstruct(const Options& o, std::ostream& out)
{
    const fs::path dir(o.input);
    if (!fs::is_directory(dir)) {
        throw InvalidArgument("subband directory " + o.input + " does not exist");
    }
    const fs::path meta_path = dir / "metadata.json";
    if (!fs::exists(meta_path)) {
        throw FormatError("missing " + meta_path.string(), 0);
    }
    const json meta = read_json(meta_path);
    if (!meta.is_object() || meta.value("format", "") != kMetadataFormat) {
        throw FormatError(meta_path.string() + ": not an ewt2d subband metadata file", 0);
    }
    const TransformGeometry geo = [&] {
        try {
            return geometry_from_json(meta);
        } catch (const json::exception& e) {
            throw FormatError(meta_path.string() + ": " + e.what(), 0);
        }
    }();
    const Transform transform(geo);

    auto load = [&](const std::string& file) {
        const fs::path p = dir / file;
        if (!fs::exists(p)) {
            throw FormatError("missing subband file " + p.string(), 0);
        }
        return load_matrix(p);
    };

    SubbandSet subbands;
    subbands.labels = transform.labels();
    const json& list = meta.at("subbands");
    if (geo.kind == TransformKind::ridgelet) {
        const std::size_t angles = 2 * geo.rows;
        const std::size_t radii = 2 * geo.rows + 1;
        if (list.size() != subbands.labels.size() * angles) {
            throw FormatError("metadata lists " + std::to_string(list.size()) + " subband files, expected " +
                              std::to_string(subbands.labels.size() * angles), 0);
        }
        for (std::size_t n = 0; n < subbands.labels.size(); ++n) {
            RealMatrix band(angles, radii);
            for (std::size_t i = 0; i < angles; ++i) {
                const RealMatrix row = load(list.at(n * angles + i).at("file").get<std::string>());
                if (row.rows() != 1 || row.cols() != radii) {
                    throw FormatError("ridgelet ray file has the wrong shape", 4);
                }
                std::copy(row.values().begin(), row.values().end(), band.row(i).begin());
            }
            subbands.planes.push_back(std::move(band));
        }
    } else {
        if (list.size() != subbands.labels.size()) {
            throw FormatError("metadata lists " + std::to_string(list.size()) + " subband files, expected " +
                              std::to_string(subbands.labels.size()), 0);
        }
        for (const auto& entry : list) {
            subbands.planes.push_back(load(entry.at("file").get<std::string>()));
        }
    }

    const Reconstruction rec = transform.inverse(subbands, o.tol, o.maxiter);
    json report{{"transform", to_string(geo.kind)}, {"rows", geo.rows}, {"cols", geo.cols}};
    if (!o.output.empty()) {
        save_output(rec.image, o.output, meta.value("maxval", 255u));
        report["output"] = o.output;
    }
    if (rec.solver) {
        report["solver"] = {{"iterations", rec.solver->iterations},
                            {"residual", rec.solver->residual},
                            {"normal_residual", rec.solver->normal_residual},
                            {"converged", rec.solver->converged}};
        if (!rec.solver->converged) {
            report["warnings"] = {"solver_not_converged"};
        }
    }
    if (!o.reference.empty()) {
        const Loaded ref = load_input(o.reference);
        if (!ref.pixels.same_shape(rec.image)) {
            throw InvalidArgument("reference image shape differs from the reconstruction");
        }
        double err = 0.0;
        double num = 0.0;
        double den = 0.0;
        for (std::size_t k = 0; k < rec.image.size(); ++k) {
            const double d = rec.image[k] - ref.pixels[k];
            err = std::max(err, std::abs(d));
            num += d * d;
            den += ref.pixels[k] * ref.pixels[k];
        }
        report["max_abs_error"] = err;
        report["relative_l2_error"] = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    }
    if (o.json_output) {
        out << report.dump();
    } else {
        print_summary(out, report);
    }
    return kOk;
}

int cmd_framecheck(const Options& o, std::ostream& out)
{
    const TransformParams params = transform_params(o);
    TransformGeometry geo;
    if (!o.input.empty()) {
        geo = detect_geometry(load_input(o.input).pixels, params);
    } else {
        if (o.rows == 0 || o.cols == 0 || !params.boundaries) {
            throw InvalidArgument("framecheck without --input needs --rows, --cols and --boundaries");
        }
        geo.kind = params.kind;
        geo.rows = o.rows;
        geo.cols = o.cols;
        const BoundarySet b = BoundarySet::from_interior(*params.boundaries);
        geo.radial = {b};
        if (geo.kind == TransformKind::tensor) {
            geo.radial.push_back(b);
        }
        for (const auto& r : geo.radial) {
            geo.gammas.push_back(params.gamma ? *params.gamma : choose_gamma(r));
        }
        if (geo.kind == TransformKind::curvelet1 || geo.kind == TransformKind::curvelet2) {
            const std::size_t sets = geo.kind == TransformKind::curvelet1 ? 1 : b.bands() - 1;
            for (std::size_t s = 0; s < sets; ++s) {
                geo.angles.push_back(AngularBoundarySet::uniform(o.angles, -kPi / 4.0));
            }
            geo.delta_theta = choose_delta_theta(geo.angles);
        }
    }
    const Transform transform(geo);
    const json report{{"transform", to_string(geo.kind)}, {"max_deviation", transform.frame_deviation()}};
    if (o.json_output) {
        out << report.dump();
    } else {
        print_summary(out, report);
    }
    return kOk;
}

int cmd_denoise(const Options& o, std::ostream& out)
{
    const Loaded in = load_input(o.input);
    const Image clean(in.pixels);
    const TransformParams params = transform_params(o);
    const std::vector<double> grid = parse_delta_grid(o.delta_grid);
    const Image noisy = add_gaussian_noise(clean, o.sigma, o.seed);
    const DenoiseResult result = denoise(clean, noisy, params, grid, o.sigma, o.seed, static_cast<double>(in.maxval));
    if (!o.output.empty()) {
        save_output(result.image, o.output, in.maxval);
    }
    json report = to_json(result.report);
    if (!o.report.empty()) {
        write_text(o.report, report.dump(2) + "\n");
    }
    if (o.json_output) {
        out << report.dump();
    } else {
        print_summary(out, report);
        for (const auto& f : result.failures) {
            out << "failed grid point: " << f << "\n";
        }
    }
    return kOk;
}

// --- error reporting ---

int fail(std::ostream& err, int code, const std::string& kind, const std::string& message,
         std::optional<std::uint64_t> offset = std::nullopt)
{
    json e{{"error", {{"type", kind}, {"message", message}, {"exit_code", code}}}};
    if (offset) {
        e["error"]["offset"] = *offset;
    }
    err << e.dump() << "\n";
    return code;
}

void add_detection_options(CLI::App& cmd, Options& o, CLI::Option*& rule, CLI::Option*& trend)
{
    rule = cmd.add_option("--rule", o.rule, "Boundary rule: middle, lowestmin or ftc")
               ->check(CLI::IsMember({"middle", "lowestmin", "ftc"}));
    trend = cmd.add_option("--trend", o.trend, "Trend removal: none, plaw, poly:D, morpho or tophat")
                ->check(CLI::Validator(
                    [](std::string& v) {
                        try {
                            parse_trend(v);
                        } catch (const InvalidArgument& e) {
                            return std::string(e.what());
                        }
                        return std::string();
                    },
                    "TREND"));
    cmd.add_flag("--log", o.log, "Detect on ln(1 + spectrum)");
    cmd.add_option("--rho", o.rho, "Fine-to-coarse merge ratio in (0, 1]");
}

void add_transform_options(CLI::App& cmd, Options& o)
{
    cmd.add_option("--transform", o.transform, "tensor, lp, ridgelet, curvelet1 or curvelet2")
        ->check(CLI::IsMember({"tensor", "lp", "ridgelet", "curvelet1", "curvelet2"}));
    cmd.add_option("--bands", o.bands, "Band count (lp, ridgelet)")->check(CLI::PositiveNumber);
    cmd.add_option("--bands-row", o.bands_row, "Row band count (tensor)")->check(CLI::PositiveNumber);
    cmd.add_option("--bands-col", o.bands_col, "Column band count (tensor)")->check(CLI::PositiveNumber);
    cmd.add_option("--scales", o.scales, "Scale count (curvelets)")->check(CLI::PositiveNumber);
    cmd.add_option("--angles", o.angles, "Angular sector count (curvelets)")->check(CLI::PositiveNumber);
    cmd.add_option("--gamma", o.gamma, "Override the transition ratio gamma");
    cmd.add_option("--boundaries", o.boundaries, "Comma-separated interior radial boundaries, skips detection");
    cmd.add_option("--tol", o.tol, "Pseudo-polar solver tolerance")->check(CLI::PositiveNumber);
    cmd.add_option("--maxiter", o.maxiter, "Pseudo-polar solver iteration cap");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Empirical wavelet transforms for images", "ewt2d"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    CLI::Option* rule = nullptr;
    CLI::Option* trend = nullptr;
    std::vector<std::pair<CLI::Option*, CLI::Option*>> detection_opts;

    auto* b = app.add_subcommand("boundaries", "Detect Fourier boundaries on an averaged spectrum");
    b->add_option("--input", o.input, "Input image (.pgm or .ewtm)")->required();
    b->add_option("--geometry", o.geometry, "rows, cols, radial or angular")
        ->check(CLI::IsMember({"rows", "cols", "radial", "angular"}));
    b->add_option("--bands", o.bands, "Requested band (or sector) count")->check(CLI::PositiveNumber);
    b->add_option("--profile-csv", o.profile_csv, "Write the preprocessed profile as CSV");
    b->add_flag("--json", o.json_output, "Print only the JSON report");
    add_detection_options(*b, o, rule, trend);
    detection_opts.emplace_back(rule, trend);

    auto* d = app.add_subcommand("decompose", "Write subband files, previews and metadata");
    d->add_option("--input", o.input, "Input image (.pgm or .ewtm)")->required();
    d->add_option("--outdir", o.outdir, "Output directory")->required();
    d->add_flag("--json", o.json_output, "Print only the JSON summary");
    add_transform_options(*d, o);
    add_detection_options(*d, o, rule, trend);
    detection_opts.emplace_back(rule, trend);

    auto* r = app.add_subcommand("reconstruct", "Invert a decomposition directory");
    r->add_option("--input", o.input, "Subband directory written by decompose")->required();
    r->add_option("--output", o.output, "Reconstructed image (.pgm or .ewtm)");
    r->add_option("--reference", o.reference, "Reference image for error reporting");
    r->add_option("--tol", o.tol, "Pseudo-polar solver tolerance")->check(CLI::PositiveNumber);
    r->add_option("--maxiter", o.maxiter, "Pseudo-polar solver iteration cap");
    r->add_flag("--json", o.json_output, "Print only the JSON report");

    auto* f = app.add_subcommand("framecheck", "Build a bank and report max |sum of squared masks - 1|");
    f->add_option("--input", o.input, "Image to detect boundaries on");
    f->add_option("--rows", o.rows, "Grid rows when no input is given");
    f->add_option("--cols", o.cols, "Grid columns when no input is given");
    f->add_flag("--json", o.json_output, "Print only the JSON report");
    add_transform_options(*f, o);
    add_detection_options(*f, o, rule, trend);
    detection_opts.emplace_back(rule, trend);

    auto* n = app.add_subcommand("denoise", "Add noise, soft-threshold and score");
    n->add_option("--input", o.input, "Clean image (.pgm or .ewtm)")->required();
    n->add_option("--output", o.output, "Denoised image (.pgm or .ewtm)");
    n->add_option("--report", o.report, "Write the JSON report to this file");
    n->add_option("--sigma", o.sigma, "Noise standard deviation")->check(CLI::NonNegativeNumber);
    n->add_option("--seed", o.seed, "Noise generator seed");
    n->add_option("--delta-grid", o.delta_grid, "Threshold multipliers as lo:hi:n");
    n->add_flag("--json", o.json_output, "Print only the JSON report");
    add_transform_options(*n, o);
    add_detection_options(*n, o, rule, trend);
    detection_opts.emplace_back(rule, trend);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        return fail(err, kUsage, "usage", e.what());
    }

    for (const auto& [ro, tr] : detection_opts) {
        o.rule_given = o.rule_given || ro->count() > 0;
        o.trend_given = o.trend_given || tr->count() > 0;
    }
    o.command = app.get_subcommands().front()->get_name();

    try {
        if (o.command == "boundaries") {
            return cmd_boundaries(o, out);
        }
        if (o.command == "decompose") {
            return cmd_decompose(o, out);
        }
        if (o.command == "reconstruct") {
            return cmd_reconstruct(o, out);
        }
        if (o.command == "framecheck") {
            return cmd_framecheck(o, out);
        }
        return cmd_denoise(o, out);
    } catch (const FormatError& e) {
        return fail(err, kDataError, "format_error", e.what(), e.offset());
    } catch (const InvalidArgument& e) {
        return fail(err, kDataError, "invalid_argument", e.what());
    } catch (const DetectionError& e) {
        return fail(err, kNumericalError, "detection_error", e.what());
    } catch (const NumericalError& e) {
        return fail(err, kNumericalError, "numerical_error", e.what());
    } catch (const json::exception& e) {
        return fail(err, kDataError, "format_error", e.what());
    } catch (const fs::filesystem_error& e) {
        return fail(err, kDataError, "io_error", e.what());
    } catch (const std::exception& e) {
        return fail(err, kDataError, "error", e.what());
    }
}

}  // namespace ewt::cli
