#include "besovlab/signal.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

using namespace besov;

namespace {
const double kPi = std::numbers::pi;

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "besovlab_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}
}  // namespace

TEST(Transform, GaussianIsItsOwnTransform) {
    // unitary convention: exp(-|x|^2/2) has FT exp(-|xi|^2/2)
    FrequencyGrid g(2, 128, 8 * kPi);
    auto f = synthesize_from_spectrum(g, [](std::span<const double> xi) {
        return cplx(std::exp(-0.5 * (xi[0] * xi[0] + xi[1] * xi[1])), 0.0);
    });
    std::size_t ix[2];
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.unravel(i, ix);
        const double x = g.coordinate(ix[0]), y = g.coordinate(ix[1]);
        err = std::max(err, std::abs(f.samples()[i] - std::exp(-0.5 * (x * x + y * y))));
    }
    EXPECT_LT(err, 1e-12);
}

TEST(Transform, RoundTrip) {
    FrequencyGrid g(3, 16, 2.0);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> N;
    CVec s(g.size());
    for (auto& v : s) v = cplx(N(rng), N(rng));
    auto f = GridFunction::from_samples(g, s);
    auto back = GridFunction::from_spectrum(g, f.spectrum());
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(std::abs(back.samples()[i] - s[i]), 0.0, 1e-12);
}

TEST(Quasinorm, ConstantsAndMax) {
    FrequencyGrid g(1, 8, 1.0);  // h = 1/4, box length 2
    CVec z(8, cplx(3.0, 4.0));
    EXPECT_NEAR(lp_quasinorm(z, g, ExtendedExponent(1.0)), 10.0, 1e-14);
    EXPECT_NEAR(lp_quasinorm(z, g, ExtendedExponent(2.0)), 5.0 * std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(lp_quasinorm(z, g, ExtendedExponent(0.5)), 20.0, 1e-13);
    z[3] = 7.0;
    EXPECT_DOUBLE_EQ(lp_quasinorm(z, g, kInf), 7.0);
}

TEST(Quasinorm, MultiExponentMatchesSingle) {
    FrequencyGrid g(2, 16, 3.0);
    CVec z(g.size());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = cplx(std::sin(double(i)), 0.1 * double(i % 5));
    std::vector<ExtendedExponent> ps = {ExtendedExponent(0.5), ExtendedExponent(1.5), kInf};
    auto all = lp_quasinorms(z, g, ps);
    for (std::size_t i = 0; i < ps.size(); ++i) EXPECT_DOUBLE_EQ(all[i], lp_quasinorm(z, g, ps[i]));
}

TEST(Ladder, ConvergesAndReports) {
    std::vector<std::pair<std::size_t, double>> sched = {{32, 4 * kPi}, {64, 8 * kPi}, {128, 16 * kPi}};
    auto gen = [](const FrequencyGrid& g) {
        return synthesize_from_spectrum(g, [](std::span<const double> xi) { return cplx(std::exp(-xi[0] * xi[0]), 0.0); });
    };
    auto [v, meta] = refine_until_converged(gen, 1, ExtendedExponent(2.0), 1e-8, sched);
    EXPECT_TRUE(meta.converged);
    EXPECT_GE(meta.levels.size(), 2u);
    // ||F^{-1} e^{-xi^2}||_2 = ||e^{-xi^2}||_2 = (pi/2)^{1/4}
    EXPECT_NEAR(v, std::pow(kPi / 2, 0.25), 1e-10);
}

TEST(Ladder, RejectsShrinkingSchedules) {
    std::vector<std::pair<std::size_t, double>> bad = {{64, 4.0}, {32, 4.0}};
    EXPECT_THROW(check_schedule(bad), domain_error);
    std::vector<std::pair<std::size_t, double>> shrink = {{32, 4.0}, {64, 2.0}};
    EXPECT_THROW(check_schedule(shrink), domain_error);
}

TEST(Container, RoundTrip) {
    FrequencyGrid g(2, 16, 5.0);
    CVec s(g.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = cplx(double(i), -0.5 * double(i));
    auto path = scratch("rt.bin");
    export_grid_function(GridFunction::from_samples(g, s), path);
    auto f = import_grid_function(path);
    EXPECT_EQ(f.grid(), g);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(f.samples()[i], s[i]);
}

TEST(Container, MissingFileIsAnIoError) {
    EXPECT_THROW(import_grid_function(scratch("does_not_exist.bin")), io_error);
}

TEST(Masking, ApplyMaskKeepsBand) {
    FrequencyGrid g(1, 64, kPi);
    auto f = synthesize_from_spectrum(g, [](std::span<const double> xi) { return cplx(std::abs(xi[0]) < 20 ? 1.0 : 0.0, 0.0); });
    auto m = cube_mask(g, 3);
    auto h = apply_mask(f, m);
    for (std::size_t b = 0; b < g.n; ++b) EXPECT_NEAR(std::abs(h.spectrum()[b] - f.spectrum()[b] * m.at(b)), 0.0, 1e-12);
}
