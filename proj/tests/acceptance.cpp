// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "cli.hpp"

#include "ewt/denoise.hpp"
#include "ewt/directional.hpp"
#include "ewt/ewt1d.hpp"
#include "ewt/io.hpp"
#include "ewt/littlewood_paley.hpp"
#include "ewt/morphology.hpp"
#include "ewt/pseudopolar.hpp"
#include "ewt/tensor.hpp"
#include "ewt/transform.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/toy.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <map>
#include <sstream>
#include <string>

using namespace ewt;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            if (!detail.empty()) {
                detail += "; ";
            }
            detail += what;
        }
    }
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double total_energy(const SubbandSet& s)
{
    double e = 0.0;
    for (const auto& p : s.planes) {
        e += test::energy(p);
    }
    return e;
}

double plane_share(const SubbandSet& s, const SubbandLabel& label)
{
    for (std::size_t i = 0; i < s.labels.size(); ++i) {
        if (s.labels[i] == label) {
            return test::energy(s.planes[i]) / total_energy(s);
        }
    }
    return 0.0;
}

// --- 1: tight frames -------------------------------------------------------

Outcome frames()
{
    Outcome o;
    double worst = 0.0;
    double slowest = 0.0;
    auto check = [&](const std::string& name, const std::function<double()>& deviation) {
        const auto t0 = std::chrono::steady_clock::now();
        const double d = deviation();
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        worst = std::max(worst, d);
        slowest = std::max(slowest, s);
        o.require(d < 1e-10, name + " deviation " + num(d));
        o.require(s < 5.0, name + " took " + num(s) + " s");
    };
    const BoundarySet b({0.0, 0.7, 1.6, 2.5, kPi});
    const double g = choose_gamma(b);
    const std::vector<AngularBoundarySet> one{AngularBoundarySet::uniform(5, -kPi / 4.0)};
    const std::vector<AngularBoundarySet> per_scale{AngularBoundarySet({-0.6, 0.1, 1.0, 1.9}),
                                                    AngularBoundarySet::uniform(6, -kPi / 4.0),
                                                    AngularBoundarySet({0.0, 0.4, 1.3, 2.0, 2.2})};
    for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{64, 64}, {48, 64}}) {
        const std::string shape = std::to_string(rows) + "x" + std::to_string(cols);
        check("tensor " + shape, [&] { return frame_deviation(tensor_view(tensor_banks(b, g, b, g, rows, cols))); });
        check("lp " + shape, [&] { return frame_deviation(lp_bank(b, g, rows, cols)); });
        check("curvelet1 " + shape, [&] {
            return frame_deviation(curvelet_bank(CurveletOption::I, b, g, one, choose_delta_theta(one), rows, cols));
        });
        check("curvelet2 " + shape, [&] {
            return frame_deviation(
                curvelet_bank(CurveletOption::II, b, g, per_scale, choose_delta_theta(per_scale), rows, cols));
        });
        // Detected geometry on the toy scene.
        const RealMatrix img = test::toy_image(rows, cols);
        for (auto kind : {TransformKind::tensor, TransformKind::lp, TransformKind::curvelet1, TransformKind::curvelet2}) {
            TransformParams p;
            p.kind = kind;
            p.scale_cfg = test::toy_scale_config();
            p.bands = p.bands_row = p.bands_col = p.scales = 4;
            check("detected " + to_string(kind) + " " + shape,
                  [&] { return Transform(detect_geometry(img, p)).frame_deviation(); });
        }
    }
    if (o.ok) {
        o.detail = "16 banks, worst " + num(worst) + ", slowest " + num(slowest) + " s";
    }
    return o;
}

// --- 2: perfect reconstruction ---------------------------------------------

Outcome reconstruction()
{
    Outcome o;
    test::Gen gen(2001);
    double worst2d = 0.0;
    double worst1d = 0.0;
    const std::size_t n = 64;
    for (int trial = 0; trial < 3; ++trial) {
        const BoundarySet b = gen.boundaries(gen.index(2, 5));
        const double g = choose_gamma(b);
        const RealMatrix f = gen.matrix(n, n, 0.0, 255.0);

        const TensorBanks tb = tensor_banks(b, g, b, g, n, n);
        worst2d = std::max(worst2d, test::sup_diff(tensor_inverse(tensor_forward(f, tb), tb), f));
        const FilterBank2D lp = lp_bank(b, g, n, n);
        worst2d = std::max(worst2d, test::sup_diff(lp_inverse(lp_forward(f, lp), lp), f));

        const std::vector<AngularBoundarySet> one{gen.angles(gen.index(2, 6))};
        const FilterBank2D c1 = curvelet_bank(CurveletOption::I, b, g, one, choose_delta_theta(one), n, n);
        worst2d = std::max(worst2d, test::sup_diff(curvelet_inverse(curvelet_forward(f, c1), c1), f));

        std::vector<AngularBoundarySet> many;
        for (std::size_t s = 1; s < b.bands(); ++s) {
            many.push_back(gen.angles(gen.index(2, 6)));
        }
        const FilterBank2D c2 = curvelet_bank(CurveletOption::II, b, g, many, choose_delta_theta(many), n, n);
        worst2d = std::max(worst2d, test::sup_diff(curvelet_inverse(curvelet_forward(f, c2), c2), f));
    }
    for (std::size_t len : {64u, 127u, 256u}) {
        const BoundarySet b = gen.boundaries(gen.index(2, 6));
        const FilterBank1D bank = build_bank_1d(b, choose_gamma(b), len);
        const Signal1D f(gen.vector(len, -5.0, 5.0));
        const Signal1D back = ewt1d_inverse(ewt1d_forward(f, bank), bank);
        for (std::size_t t = 0; t < len; ++t) {
            worst1d = std::max(worst1d, std::abs(back[t] - f[t]));
        }
    }
    o.require(worst2d < 1e-9, "2D sup error " + num(worst2d));
    o.require(worst1d < 1e-10, "1D sup error " + num(worst1d));
    if (o.ok) {
        o.detail = "2D sup error " + num(worst2d) + ", 1D sup error " + num(worst1d);
    }
    return o;
}

// --- 3: ridgelet round trip ------------------------------------------------

Outcome ridgelet()
{
    Outcome o;
    test::Gen gen(3001);
    std::string errs;
    for (std::size_t n : {16u, 32u}) {
        const BoundarySet b({0.0, 0.7, 1.8, kPi});
        const FilterBank1D bank = ridgelet_bank(b, choose_gamma(b), n);
        const RealMatrix f = gen.matrix(n, n, 0.0, 1.0);
        const RidgeletCoeffs c = ridgelet_forward(f, bank);
        double previous = std::numeric_limits<double>::infinity();
        for (double tol : {1e-4, 1e-7, 1e-10}) {
            const double err = test::rel_l2(ridgelet_inverse(c, bank, tol, 300).image, f);
            o.require(err < previous, std::to_string(n) + ": no decrease at tol " + num(tol));
            previous = err;
        }
        o.require(previous < 1e-4, std::to_string(n) + ": rel error " + num(previous));
        errs += (errs.empty() ? "" : ", ") + std::to_string(n) + "x" + std::to_string(n) + " " + num(previous);
    }
    if (o.ok) {
        o.detail = "rel L2 at tol 1e-10: " + errs;
    }
    return o;
}

// --- 4: pseudo-polar adjoint and direct sums ---------------------------------

Outcome pseudopolar()
{
    Outcome o;
    test::Gen gen(4001);
    double dot = 0.0;
    double direct = 0.0;
    for (std::size_t n : {8u, 16u}) {
        const PPGrid grid(n);
        for (int trial = 0; trial < 3; ++trial) {
            const ComplexMatrix f = gen.complex_matrix(n, n);
            const PPArray p{n, gen.complex_matrix(2 * n, 2 * n + 1)};
            Complex lhs = 0.0;
            const ComplexMatrix pf = ppfft(f, grid).values;
            for (std::size_t k = 0; k < pf.size(); ++k) {
                lhs += pf[k] * std::conj(p.values[k]);
            }
            Complex rhs = 0.0;
            const ComplexMatrix adj = ppfft_adjoint(p, grid);
            for (std::size_t k = 0; k < f.size(); ++k) {
                rhs += f[k] * std::conj(adj[k]);
            }
            dot = std::max(dot, std::abs(lhs - rhs) / std::abs(lhs));

            const ComplexMatrix ref = oracle::ppfft(f);
            double num_sq = 0.0;
            double den_sq = 0.0;
            for (std::size_t k = 0; k < ref.size(); ++k) {
                num_sq += std::norm(pf[k] - ref[k]);
                den_sq += std::norm(ref[k]);
            }
            direct = std::max(direct, std::sqrt(num_sq / den_sq));
        }
    }
    o.require(dot < 1e-10, "dot test " + num(dot));
    o.require(direct < 1e-8, "fast vs direct " + num(direct));
    if (o.ok) {
        o.detail = "dot test " + num(dot) + ", fast vs direct " + num(direct);
    }
    return o;
}

// --- 5: detection oracles --------------------------------------------------

Outcome detection()
{
    Outcome o;
    auto profile = [](std::vector<double> v) { return Spectrum1D::preprocessed(std::move(v), 0.0, {}); };
    // Equal up to 4 ulps.
    auto same = [](double a, double b) { return std::abs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(b); };

    const Detection mid = detect_middle(profile({0, 3, 0, 1, 0, 2, 0}), 3);
    o.require(mid.boundaries.values().size() == 4 && same(mid.boundaries[1], kPi / 12.0) &&
                  same(mid.boundaries[2], kPi / 2.0) && mid.boundaries[3] == kPi,
              "7-bin middle example");
    o.require(mid.selected_maxima == std::vector<std::size_t>{1, 5}, "7-bin maxima");

    const Spectrum1D eight = profile({0, 3, 2, 1, 2, 0.5, 4, 0});
    const Detection low = detect_lowestmin(eight, 2);
    o.require(low.boundaries.values().size() == 3 && same(low.boundaries[1], eight.omega(5)) &&
                  same(low.boundaries[1], 5.0 * kPi / 7.0), "8-bin lowestmin example");

    std::vector<double> w;
    std::vector<double> h;
    for (int i = 1; i <= 64; ++i) {
        w.push_back(kPi * i / 64.0);
        h.push_back(std::pow(w.back(), -2.0));
    }
    const double s = fit_power_law(w, h).exponent;
    o.require(std::abs(s - 2.0) < 1e-12, "power-law exponent " + num(s));

    double beta_err = std::abs(beta(0.0)) + std::abs(beta(1.0) - 1.0);
    for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        beta_err = std::max(beta_err, std::abs(beta(x) + beta(1.0 - x) - 1.0));
    }
    o.require(beta(0.0) == 0.0 && beta(1.0) == 1.0 && beta_err < 1e-14, "beta identity error " + num(beta_err));
    if (o.ok) {
        o.detail = "exact examples, s = " + num(s) + ", beta error " + num(beta_err);
    }
    return o;
}

// --- 6: morphology ---------------------------------------------------------

Outcome morphology_suite()
{
    Outcome o;
    test::Gen gen(6001);
    std::size_t violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t len = gen.index(1, 200);
        const auto f = trial % 2 ? gen.vector(len, -10.0, 10.0) : gen.blocky_vector(len);
        const morphology::StructuringWindow win{gen.index(0, std::min<std::size_t>(12, (len - 1) / 2))};
        const auto e = morphology::erode(f, win);
        const auto d = morphology::dilate(f, win);
        const auto op = morphology::opening(f, win);
        const auto cl = morphology::closing(f, win);
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (!(e[i] <= op[i] && op[i] <= f[i] && f[i] <= cl[i] && cl[i] <= d[i])) {
                ++violations;
            }
        }
        if (morphology::opening(op, win) != op || morphology::closing(cl, win) != cl) {
            ++violations;
        }
    }
    o.require(violations == 0, std::to_string(violations) + " violations");
    if (o.ok) {
        o.detail = "100 signals, ordering and idempotence exact";
    }
    return o;
}

// --- 7: mode isolation -----------------------------------------------------

std::size_t nearest_line(const PPGrid& grid, double theta)
{
    std::size_t best = 0;
    double err = 1e9;
    for (std::size_t i = 0; i < grid.angles(); ++i) {
        double d = std::fmod(std::abs(grid.theta(i) - theta), kPi);
        d = std::min(d, kPi - d);
        if (d < err) {
            err = d;
            best = i;
        }
    }
    return best;
}

Outcome isolation()
{
    Outcome o;
    const std::size_t n = 64;
    // Blob: spectrum well inside the lowpass. Texture: bins (5, 12), |w| = 1.28 at angle 0.395.
    const RealMatrix blob = test::gaussian_blob(n, n, 6.0, 100.0);
    const double w1 = 2.0 * kPi * 5.0 / n;
    const double w2 = 2.0 * kPi * 12.0 / n;
    const RealMatrix texture = test::plane_wave(n, n, w1, w2, 20.0, 0.3);
    const RealMatrix mix = test::add(blob, texture);

    const BoundarySet scales({0.0, 0.8, 2.0, kPi});
    const double g = choose_gamma(scales);
    const std::vector<AngularBoundarySet> angles{AngularBoundarySet::uniform(4, -kPi / 4.0)};
    const std::vector<AngularBoundarySet> per_scale(2, angles[0]);
    const double dtheta = 0.15;  // narrow angular transitions leave a flat wedge core

    std::map<std::string, double> shares;
    auto record = [&](const std::string& name, double share) {
        shares[name] = share;
        o.require(share >= 0.99, name + " " + num(share));
    };

    // Tensor: w2 = 1.18 is row band 1, w1 = 0.49 is column band 0.
    const TensorBanks tb = tensor_banks(scales, g, scales, g, n, n);
    record("tensor blob", plane_share(tensor_forward(blob, tb), {0, 0}));
    record("tensor texture", plane_share(tensor_forward(texture, tb), {1, 0}));

    const FilterBank2D lp = lp_bank(scales, g, n, n);
    record("lp blob", plane_share(lp_forward(blob, lp), {0, 0}));
    record("lp texture", plane_share(lp_forward(texture, lp), {1, 0}));

    const FilterBank2D c1 = curvelet_bank(CurveletOption::I, scales, g, angles, dtheta, n, n);
    record("curvelet1 blob", plane_share(curvelet_forward(blob, c1), {0, 0}));
    record("curvelet1 texture", plane_share(curvelet_forward(texture, c1), {1, 1}));
    const FilterBank2D c2 = curvelet_bank(CurveletOption::II, scales, g, per_scale, dtheta, n, n);
    record("curvelet2 blob", plane_share(curvelet_forward(blob, c2), {0, 0}));
    record("curvelet2 texture", plane_share(curvelet_forward(texture, c2), {1, 1}));

    // Ridgelet: the texture's energy concentrates on pseudo-polar lines next to its angle.
    {
        const PPGrid grid(n);
        const FilterBank1D rb = ridgelet_bank(scales, g, n);
        const RidgeletCoeffs bc = ridgelet_forward(blob, rb);
        double be = 0.0;
        double bt = 0.0;
        for (std::size_t k = 0; k < bc.bands.size(); ++k) {
            const double e = test::energy(bc.bands[k]);
            bt += e;
            be += k == 0 ? e : 0.0;
        }
        record("ridgelet blob", be / bt);

        // Pseudo-polar lines sit 2r/N apart at sup-radius r, so a texture resolves to +-1 line only
        // near the outer squares; a Hann taper keeps its spectral footprint compact.
        RealMatrix ridge = test::plane_wave(n, n, 0.0, 2.0 * kPi * 30.0 / n, 20.0, 0.3);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                ridge(r, c) *= 0.25 * (1.0 - std::cos(2.0 * kPi * r / n)) * (1.0 - std::cos(2.0 * kPi * c / n));
            }
        }
        const RidgeletCoeffs tc = ridgelet_forward(ridge, rb);
        const std::size_t line = nearest_line(grid, frequency_angle(0.0, 2.0 * kPi * 30.0 / n));
        const std::size_t lines = grid.angles();
        double near = 0.0;
        double all = 0.0;
        for (std::size_t k = 0; k < tc.bands.size(); ++k) {
            for (std::size_t i = 0; i < lines; ++i) {
                double e = 0.0;
                for (double v : tc.bands[k].row(i)) {
                    e += v * v;
                }
                const std::size_t dist = std::min((i + lines - line) % lines, (line + lines - i) % lines);
                all += e;
                near += k == 2 && dist <= 1 ? e : 0.0;
            }
        }
        record("ridgelet texture", near / all);
    }

    // The mixture splits into the same subbands by linearity.
    const SubbandSet sm = lp_forward(mix, lp);
    const SubbandSet sb = lp_forward(blob, lp);
    const SubbandSet st = lp_forward(texture, lp);
    double lin = 0.0;
    for (std::size_t i = 0; i < sm.planes.size(); ++i) {
        lin = std::max(lin, test::sup_diff(sm.planes[i], test::add(sb.planes[i], st.planes[i])));
    }
    o.require(lin < 1e-9, "mixture linearity " + num(lin));

    if (o.ok) {
        double least = 1.0;
        std::string which;
        for (const auto& [name, share] : shares) {
            if (share < least) {
                least = share;
                which = name;
            }
        }
        o.detail = "lowest share " + num(least) + " (" + which + ")";
    }
    return o;
}

// --- 8: denoising ------------------------------------------------------------

bool schema_ok(const json& j)
{
    const std::vector<std::string> numeric{"sigma", "delta", "tau", "psnr_noisy", "psnr_denoised",
                                           "ssim_noisy", "ssim_denoised", "runtime_ms"};
    if (!j.is_object() || j.size() != numeric.size() + 2 || !j.contains("transform") || !j["transform"].is_string() ||
        !j.contains("seed") || !j["seed"].is_number_unsigned()) {
        return false;
    }
    for (const auto& key : numeric) {
        if (!j.contains(key)) {
            return false;
        }
        const json& v = j[key];
        if (!v.is_number() && !(v.is_string() && (v == "inf" || v == "-inf"))) {
            return false;
        }
    }
    return true;
}

Outcome denoising()
{
    Outcome o;
    const std::size_t n = 128;
    const double sigma = 1.0;
    const std::uint64_t seed = 20240601;
    const Image clean(test::toy_image(n, n));
    const Image noisy = add_gaussian_noise(clean, sigma, seed);
    const std::vector<double> grid = linear_grid(0.0, 1.0, 41);
    std::string gains;
    for (auto kind : {TransformKind::tensor, TransformKind::lp, TransformKind::curvelet1, TransformKind::curvelet2}) {
        TransformParams p;
        p.kind = kind;
        p.scale_cfg = test::toy_scale_config();
        p.bands = p.bands_row = p.bands_col = p.scales = 4;
        p.angles = 4;
        const DenoiseResult r = denoise(clean, noisy, p, grid, sigma, seed);
        const double gain = r.report.psnr_denoised - r.report.psnr_noisy;
        const std::string name = to_string(kind);
        o.require(gain >= 2.0, name + " gain " + num(gain) + " dB");
        o.require(r.report.ssim_denoised > r.report.ssim_noisy, name + " SSIM did not improve");
        const json j = to_json(r.report);
        o.require(schema_ok(j), name + " report schema");
        o.require(report_from_json(json::parse(j.dump())) == r.report, name + " report round trip");
        gains += (gains.empty() ? "" : ", ") + name + " +" + num(gain) + " dB (SSIM " + num(r.report.ssim_noisy) +
                 " -> " + num(r.report.ssim_denoised) + ")";
    }
    if (o.ok) {
        o.detail = gains;
    }
    return o;
}

// --- 9: CLI determinism ------------------------------------------------------

std::map<std::string, std::string> snapshot(const fs::path& dir)
{
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (e.is_regular_file()) {
            std::ifstream in(e.path(), std::ios::binary);
            files[fs::relative(e.path(), dir).string()] = {std::istreambuf_iterator<char>(in),
                                                          std::istreambuf_iterator<char>()};
        }
    }
    return files;
}

Outcome determinism()
{
    Outcome o;
    const fs::path root = fs::temp_directory_path() / "ewt2d_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string input = (root / "toy.pgm").string();
    write_pgm(test::toy_image(64, 64), input, 255);

    const std::vector<std::vector<std::string>> commands{
        {"boundaries", "--input", input, "--bands", "4", "--log", "--trend", "morpho", "--profile-csv", "@/p.csv"},
        {"boundaries", "--input", input, "--geometry", "angular", "--bands", "4", "--profile-csv", "@/a.csv"},
        {"decompose", "--input", input, "--outdir", "@/lp", "--transform", "lp", "--bands", "4", "--log", "--trend",
         "morpho"},
        {"decompose", "--input", input, "--outdir", "@/c2", "--transform", "curvelet2", "--scales", "3", "--log",
         "--trend", "morpho"},
        {"decompose", "--input", input, "--outdir", "@/t", "--transform", "tensor", "--log", "--trend", "morpho"},
        {"framecheck", "--input", input, "--transform", "curvelet1", "--log", "--trend", "morpho"},
        {"denoise", "--input", input, "--transform", "lp", "--bands", "4", "--log", "--trend", "morpho", "--sigma",
         "5", "--seed", "9", "--delta-grid", "0:1:11", "--output", "@/d.pgm", "--report", "@/d.json"},
    };
    std::size_t files = 0;
    std::map<std::string, std::string> first;
    for (int pass = 0; pass < 2; ++pass) {
        // Same paths both times: metadata records the run configuration.
        const fs::path dir = root / "run";
        fs::remove_all(dir);
        fs::create_directories(dir);
        std::string stdout_all;
        for (auto args : commands) {
            for (auto& a : args) {
                if (a.rfind("@/", 0) == 0) {
                    a = (dir / a.substr(2)).string();
                }
            }
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run(args, out, err);
            o.require(code == 0, args[0] + " exited " + std::to_string(code) + " " + err.str());
            if (args[0] != "denoise") {
                stdout_all += out.str();
            }
        }
        // Round-trip the LP decomposition too.
        std::ostringstream out;
        std::ostringstream err;
        o.require(cli::run({"reconstruct", "--input", (dir / "lp").string(), "--output", (dir / "r.pgm").string()},
                           out, err) == 0,
                  "reconstruct failed " + err.str());

        // runtime_ms is a wall-clock measurement, not data.
        json report = json::parse(std::ifstream(dir / "d.json"));
        report.erase("runtime_ms");
        std::ofstream(dir / "d.json", std::ios::trunc) << report.dump(2) << "\n";

        auto snap = snapshot(dir);
        snap["<stdout>"] = stdout_all;
        if (pass == 0) {
            first = std::move(snap);
        } else {
            files = snap.size();
            o.require(snap.size() == first.size(), "file sets differ");
            for (const auto& [name, bytes] : snap) {
                const auto it = first.find(name);
                o.require(it != first.end() && it->second == bytes, name + " differs");
            }
        }
    }
    fs::remove_all(root);
    if (o.ok) {
        o.detail = std::to_string(files) + " outputs bit-identical across two runs";
    }
    return o;
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"tight frames", frames},
        {"perfect reconstruction", reconstruction},
        {"ridgelet round trip", ridgelet},
        {"pseudo-polar adjoint and direct sums", pseudopolar},
        {"boundary detection oracles", detection},
        {"morphology ordering and idempotence", morphology_suite},
        {"mode isolation", isolation},
        {"denoising gain on the toy scene", denoising},
        {"CLI determinism", determinism},
    };
    const std::vector<double> budget_s{40.0, 10.0, 120.0, 60.0, 10.0, 10.0, 60.0, 300.0, 120.0};
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.require(s < budget_s[k], "runtime " + num(s) + " s over budget");
        std::printf("%s criterion %zu: %s (%s; %.2f s)\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                    o.detail.c_str(), s);
        failed += o.ok ? 0 : 1;
    }
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
