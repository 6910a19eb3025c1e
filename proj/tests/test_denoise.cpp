#include "ewt/denoise.hpp"

#include "support/generators.hpp"
#include "support/toy.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace ewt;

namespace {

// Whole-image moments in long double.
double ssim_oracle(const RealMatrix& a, const RealMatrix& b, double L)
{
    const auto n = static_cast<long double>(a.size());
    long double ma = 0;
    long double mb = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        ma += a[k];
        mb += b[k];
    }
    ma /= n;
    mb /= n;
    long double va = 0;
    long double vb = 0;
    long double cab = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        va += (a[k] - ma) * (a[k] - ma);
        vb += (b[k] - mb) * (b[k] - mb);
        cab += (a[k] - ma) * (b[k] - mb);
    }
    va /= n;
    vb /= n;
    cab /= n;
    const long double c1 = (0.01L * L) * (0.01L * L);
    const long double c2 = (0.03L * L) * (0.03L * L);
    return static_cast<double>(((2 * ma * mb + c1) * (2 * cab + c2)) / ((ma * ma + mb * mb + c1) * (va + vb + c2)));
}

TransformParams toy_params(TransformKind kind)
{
    TransformParams p;
    p.kind = kind;
    p.scale_cfg = test::toy_scale_config();
    p.bands = p.bands_row = p.bands_col = p.scales = 4;
    p.angles = 4;
    return p;
}

}  // namespace

TEST(Noise, ZeroSigmaIsIdentity)
{
    test::Gen gen(81);
    const Image img(gen.matrix(9, 7, 0.0, 255.0));
    const Image out = add_gaussian_noise(img, 0.0, 5);
    EXPECT_EQ(test::sup_diff(out.pixels(), img.pixels()), 0.0);
    EXPECT_THROW(add_gaussian_noise(img, -1.0, 5), InvalidArgument);
}

TEST(Noise, SeedDeterminesTheRealization)
{
    const Image img(RealMatrix(31, 17, 100.0));
    const Image a = add_gaussian_noise(img, 3.0, 1234);
    const Image b = add_gaussian_noise(img, 3.0, 1234);
    const Image c = add_gaussian_noise(img, 3.0, 1235);
    for (std::size_t k = 0; k < img.size(); ++k) {
        EXPECT_EQ(a.values()[k], b.values()[k]);
    }
    EXPECT_GT(test::sup_diff(a.pixels(), c.pixels()), 0.0);
}

TEST(Noise, FirstDrawsFollowTheDocumentedGenerator)
{
    std::mt19937_64 gen(99);
    const auto a = gen();
    const auto b = gen();
    const double u1 = static_cast<double>((a >> 11) + 1) * 0x1p-53;
    const double u2 = static_cast<double>(b >> 11) * 0x1p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const Image out = add_gaussian_noise(Image(RealMatrix(1, 4)), 2.0, 99);
    EXPECT_EQ(out.values()[0], 2.0 * r * std::cos(2.0 * kPi * u2));
    EXPECT_EQ(out.values()[1], 2.0 * r * std::sin(2.0 * kPi * u2));
}

TEST(Noise, Statistics)
{
    const std::size_t n = 256;
    const Image out = add_gaussian_noise(Image(RealMatrix(n, n)), 10.0, 2024);
    const auto np = static_cast<double>(n * n);
    double mean = 0.0;
    for (double v : out.values()) {
        mean += v;
    }
    mean /= np;
    double var = 0.0;
    for (double v : out.values()) {
        var += (v - mean) * (v - mean);
    }
    const double sd = std::sqrt(var / np);
    EXPECT_LE(std::abs(mean), 3.0 * 10.0 / std::sqrt(np));
    EXPECT_NEAR(sd / 10.0, 1.0, 0.02);
}

TEST(Threshold, UniversalExamples)
{
    EXPECT_EQ(universal_threshold(0.0, 1024), 0.0);
    EXPECT_EQ(universal_threshold(2.0, 1), 0.0);
    EXPECT_NEAR(universal_threshold(1.0, 1024), 3.723297411059034, 1e-14);
    EXPECT_THROW(universal_threshold(-0.1, 10), InvalidArgument);
    EXPECT_THROW(universal_threshold(1.0, 0), InvalidArgument);
}

TEST(Threshold, SoftExamples)
{
    EXPECT_EQ(soft_threshold(3.0, 1.0), 2.0);
    EXPECT_EQ(soft_threshold(-0.5, 1.0), 0.0);
    EXPECT_EQ(soft_threshold(-4.0, 1.5), -2.5);
    EXPECT_EQ(soft_threshold(-0.7, 0.0), -0.7);
    EXPECT_THROW(soft_threshold(RealMatrix(2, 2), -1.0), InvalidArgument);
}

TEST(ThresholdProperty, Contraction)
{
    test::Gen gen(82);
    for (int trial = 0; trial < 50; ++trial) {
        const RealMatrix p = gen.matrix(gen.index(1, 20), gen.index(1, 20), -10.0, 10.0);
        const double tau = gen.uniform(0.0, 8.0);
        const RealMatrix q = soft_threshold(p, tau);
        EXPECT_LE(test::max_abs(q), test::max_abs(p));
        for (std::size_t k = 0; k < p.size(); ++k) {
            EXPECT_LE(std::abs(q[k]), std::abs(p[k]));
            EXPECT_TRUE(q[k] == 0.0 || (q[k] > 0.0) == (p[k] > 0.0));
        }
        EXPECT_EQ(test::sup_diff(soft_threshold(p, 0.0), p), 0.0);
    }
}

TEST(Metrics, PsnrExamples)
{
    const RealMatrix zero(8, 8, 0.0);
    const RealMatrix one(8, 8, 1.0);
    EXPECT_NEAR(psnr(zero, one), 48.130803608679102, 1e-12);
    EXPECT_EQ(psnr(one, one), std::numeric_limits<double>::infinity());
    EXPECT_NEAR(psnr(zero, RealMatrix(8, 8, 255.0)), 0.0, 1e-12);
    EXPECT_NEAR(psnr(zero, RealMatrix(8, 8, 2.0), 2.0), 0.0, 1e-12);
    EXPECT_THROW(psnr(zero, RealMatrix(8, 7)), InvalidArgument);
}

TEST(Metrics, SsimExamples)
{
    test::Gen gen(83);
    const RealMatrix ref = gen.matrix(20, 30, 0.0, 255.0);
    EXPECT_NEAR(ssim_global(ref, ref), 1.0, 1e-15);
    // Shifted copy: equal variances, full covariance, so only the luminance term moves.
    RealMatrix shifted = ref;
    for (double& v : shifted.values()) {
        v += 17.0;
    }
    double mr = 0.0;
    for (double v : ref.values()) {
        mr += v;
    }
    mr /= static_cast<double>(ref.size());
    const double c1 = (0.01 * 255.0) * (0.01 * 255.0);
    const double luminance = (2.0 * mr * (mr + 17.0) + c1) / (mr * mr + (mr + 17.0) * (mr + 17.0) + c1);
    EXPECT_NEAR(ssim_global(ref, shifted), luminance, 1e-12);
    EXPECT_NEAR(ssim_global(ref, shifted), ssim_oracle(ref, shifted, 255.0), 1e-12);

    RealMatrix centered = gen.matrix(16, 16, -50.0, 50.0);
    double m = 0.0;
    for (double v : centered.values()) {
        m += v;
    }
    m /= 256.0;
    for (double& v : centered.values()) {
        v -= m;
    }
    RealMatrix negated = centered;
    for (double& v : negated.values()) {
        v = -v;
    }
    EXPECT_LT(ssim_global(centered, negated), 0.0);
    EXPECT_NEAR(ssim_global(centered, negated), ssim_oracle(centered, negated, 255.0), 1e-12);
    EXPECT_THROW(ssim_global(ref, ref, 0.0), InvalidArgument);
}

TEST(MetricsProperty, SymmetryAndRange)
{
    test::Gen gen(84);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t r = gen.index(1, 24);
        const std::size_t c = gen.index(1, 24);
        const RealMatrix a = gen.matrix(r, c, 0.0, 255.0);
        const RealMatrix b = test::add(a, gen.matrix(r, c, -40.0, 40.0));
        EXPECT_DOUBLE_EQ(psnr(a, b), psnr(b, a));
        EXPECT_NEAR(ssim_global(a, b), ssim_global(b, a), 1e-15);
        const double s = ssim_global(a, b);
        EXPECT_GE(s, -1.0);
        EXPECT_LE(s, 1.0);
        EXPECT_NEAR(s, ssim_oracle(a, b, 255.0), 1e-12);
    }
}

TEST(DeltaGrid, Parsing)
{
    const auto d = default_delta_grid();
    ASSERT_EQ(d.size(), 21u);
    EXPECT_EQ(d.front(), 0.0);
    EXPECT_EQ(d.back(), 4.0);
    EXPECT_NEAR(d[1], 0.2, 1e-15);
    const auto g = parse_delta_grid("0:1:5");
    EXPECT_EQ(g, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
    EXPECT_EQ(parse_delta_grid("2:2:1"), (std::vector<double>{2.0}));
    EXPECT_THROW(parse_delta_grid("0:1"), InvalidArgument);
    EXPECT_THROW(parse_delta_grid("a:1:3"), InvalidArgument);
    EXPECT_THROW(parse_delta_grid("0:1:0"), InvalidArgument);
}

TEST(Report, JsonRoundTrip)
{
    DenoiseReport r;
    r.transform = "curvelet2";
    r.sigma = 1.0;
    r.seed = 18446744073709551615ull;
    r.delta = 0.1;
    r.tau = universal_threshold(0.1, 16384);
    r.psnr_noisy = 48.1234567890123;
    r.psnr_denoised = std::numeric_limits<double>::infinity();
    r.ssim_noisy = 0.123456789012345;
    r.ssim_denoised = -0.5;
    r.runtime_ms = 12.5;
    const nlohmann::json j = to_json(r);
    for (const char* key : {"transform", "sigma", "seed", "delta", "tau", "psnr_noisy", "psnr_denoised", "ssim_noisy",
                            "ssim_denoised", "runtime_ms"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j.at("psnr_denoised"), "inf");
    EXPECT_EQ(report_from_json(nlohmann::json::parse(j.dump())), r);
    nlohmann::json broken = j;
    broken.erase("tau");
    EXPECT_THROW(report_from_json(broken), FormatError);
}

TEST(Denoise, ZeroDeltaReproducesTheNoisyImage)
{
    const Image clean(test::toy_image(64, 64));
    const Image noisy = add_gaussian_noise(clean, 2.0, 3);
    for (auto kind : {TransformKind::tensor, TransformKind::lp, TransformKind::curvelet1, TransformKind::curvelet2}) {
        const Transform t(detect_geometry(noisy.pixels(), toy_params(kind)));
        const SubbandSet s = t.forward(noisy.pixels());
        const Reconstruction rec = t.inverse(soft_threshold(s, 0.0, t));
        EXPECT_LT(test::sup_diff(rec.image, noisy.pixels()), 1e-9) << to_string(kind);
    }
}

TEST(Denoise, ApproximationIsNeverThresholded)
{
    const Image img(test::toy_image(32, 32));
    const Transform t(detect_geometry(img.pixels(), toy_params(TransformKind::lp)));
    const SubbandSet s = t.forward(img.pixels());
    const SubbandSet th = soft_threshold(s, 1e6, t);
    EXPECT_EQ(test::sup_diff(th.planes[0], s.planes[0]), 0.0);
    for (std::size_t b = 1; b < th.planes.size(); ++b) {
        EXPECT_EQ(test::max_abs(th.planes[b]), 0.0);
    }
}

TEST(Denoise, NoiselessInputIsReturnedExactly)
{
    const Image clean(test::toy_image(64, 64));
    const Image noisy = add_gaussian_noise(clean, 0.0, 1);
    const DenoiseResult r = denoise(clean, noisy, toy_params(TransformKind::lp), {0.0, 0.5, 1.0}, 0.0, 1);
    EXPECT_EQ(r.report.delta, 0.0);
    EXPECT_TRUE(std::isinf(r.report.psnr_noisy));
    EXPECT_TRUE(r.failures.empty());
    EXPECT_LT(test::sup_diff(r.image, clean.pixels()), 1e-9);
    EXPECT_GE(r.report.psnr_denoised, 180.0);
}

TEST(Denoise, LittlewoodPaleyImprovesTheToyImage)
{
    const Image clean(test::toy_image(128, 128));
    const Image noisy = add_gaussian_noise(clean, 1.0, 11);
    const DenoiseResult r = denoise(clean, noisy, toy_params(TransformKind::lp), linear_grid(0.0, 1.0, 41), 1.0, 11);
    EXPECT_GT(r.report.psnr_denoised, r.report.psnr_noisy);
    EXPECT_GT(r.report.ssim_denoised, r.report.ssim_noisy);
    EXPECT_GT(r.report.delta, 0.0);
    EXPECT_NEAR(r.report.tau, universal_threshold(r.report.delta, 128 * 128), 1e-15);
    EXPECT_NEAR(r.report.psnr_denoised, psnr(clean.pixels(), r.image), 1e-12);
    EXPECT_EQ(r.report.transform, "lp");
}

TEST(Denoise, FailedGridPointsAreRecorded)
{
    const Image clean(test::toy_image(32, 32));
    const Image noisy = add_gaussian_noise(clean, 1.0, 2);
    const TransformParams p = toy_params(TransformKind::lp);
    const DenoiseResult r = denoise(clean, noisy, p, {-1.0, 0.0}, 1.0, 2);
    EXPECT_EQ(r.failures.size(), 1u);
    EXPECT_EQ(r.report.delta, 0.0);
    EXPECT_THROW(denoise(clean, noisy, p, {-1.0, -2.0}, 1.0, 2), NumericalError);
    EXPECT_THROW(denoise(clean, noisy, p, {}, 1.0, 2), InvalidArgument);
}

TEST(Denoise, TiesGoToTheLowestDelta)
{
    // A constant image has no detail at all: every delta scores the same.
    const Image clean(RealMatrix(32, 32, 50.0));
    TransformParams p;
    p.kind = TransformKind::lp;
    p.boundaries = std::vector<double>{1.0};
    const DenoiseResult r = denoise(clean, clean, p, {0.5, 0.25, 1.0}, 0.0, 0);
    EXPECT_EQ(r.report.delta, 0.5);
}
