#include "besovlab/partition.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace besov;

namespace {
const double kPi = std::numbers::pi;
}

TEST(Bands, Geometry) {
    EXPECT_DOUBLE_EQ(band_top(0), 1.5);
    EXPECT_DOUBLE_EQ(band_top(3), 12.0);
    EXPECT_DOUBLE_EQ(band_bottom(3), 4.0);
    FrequencyGrid g(1, 64, kPi);  // Nyquist 32
    EXPECT_TRUE(level_fits(g, 4));   // 24
    EXPECT_FALSE(level_fits(g, 5));  // 48
    EXPECT_EQ(max_level_for(g), 4);
}

TEST(Bands, NyquistOverflowIsADomainError) {
    FrequencyGrid g(2, 32, kPi);
    EXPECT_THROW(build_cube_partition(g, 5), domain_error);
    EXPECT_THROW(build_tensor_partition(g, 5), domain_error);
}

TEST(Bands, LevelFunctionShape) {
    EXPECT_DOUBLE_EQ(level_function(0, 0.0), 1.0);
    EXPECT_DOUBLE_EQ(level_function(0, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(level_function(0, 1.5), 0.0);
    EXPECT_DOUBLE_EQ(level_function(2, 3.0), 1.0);
    EXPECT_DOUBLE_EQ(level_function(2, 1.9), 0.0);
    EXPECT_DOUBLE_EQ(level_function(2, 6.1), 0.0);
}

class Unity : public ::testing::TestWithParam<int> {};

TEST_P(Unity, SumsToOneOnCoveredCube) {
    const int d = GetParam();
    FrequencyGrid g(d, d == 3 ? 32 : 128, kPi);
    const int L = max_level_for(g);
    for (auto P : {build_cube_partition(g, L), build_tensor_partition(g, L)}) {
        std::vector<double> sum(g.size(), 0.0);
        for (const auto& m : P.masks) {
            auto v = m.dense();
            for (std::size_t i = 0; i < v.size(); ++i) sum[i] += v[i];
        }
        std::size_t ix[16];
        for (std::size_t i = 0; i < g.size(); ++i) {
            g.unravel(i, ix);
            double r = 0.0;
            for (int a = 0; a < d; ++a) r = std::max(r, std::abs(g.frequency(ix[a])));
            if (r <= std::ldexp(1.0, L)) ASSERT_NEAR(sum[i], 1.0, 1e-12);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Dims, Unity, ::testing::Values(1, 2, 3));

TEST(Masks, ApplyMatchesDense) {
    FrequencyGrid g(2, 32, kPi);
    auto m = tensor_mask(g, {2, 1});
    std::vector<cplx> in(g.size()), out(g.size());
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = cplx(double(i % 7), -double(i % 3));
    bool touched = m.apply(in, out);
    EXPECT_TRUE(touched);
    auto v = m.dense();
    for (std::size_t i = 0; i < in.size(); ++i) EXPECT_EQ(out[i], in[i] * v[i]);
    EXPECT_EQ(std::get<MultiIndex>(m.label()), (MultiIndex{2, 1}));
    EXPECT_EQ(m.level_sum(), 3);
    EXPECT_EQ(m.level_max(), 2);
}

TEST(Masks, TensorMaskFactorizes) {
    FrequencyGrid g(2, 64, kPi);
    auto m = tensor_mask(g, {3, 0});
    auto v = m.dense();
    for (std::size_t a = 0; a < g.n; ++a)
        for (std::size_t b = 0; b < g.n; ++b)
            EXPECT_DOUBLE_EQ(v[a * g.n + b],
                             level_function(3, std::abs(g.frequency(a))) * level_function(0, std::abs(g.frequency(b))));
}

TEST(Overlaps, BandAndSquareBound) {
    for (int d : {2, 3}) {
        FrequencyGrid g(d, d == 2 ? 256 : 64, d == 2 ? kPi : kPi / 3);
        const int L = max_level_for(g);
        auto ov = overlap_sets(build_cube_partition(g, L), build_tensor_partition(g, L));
        for (const auto& [j, ks] : ov.delta)
            for (const auto& k : ks) {
                const int mk = level_max(Label(k));
                EXPECT_LE(std::abs(j - mk), 1);
            }
        for (const auto& [k, js] : ov.square) {
            EXPECT_LE(js.size(), 3u);
            EXPECT_FALSE(js.empty());
        }
    }
}

TEST(Overlaps, DeltaAndSquareAreMutual) {
    FrequencyGrid g(2, 128, kPi);
    auto ov = overlap_sets(build_cube_partition(g, 5), build_tensor_partition(g, 5));
    std::set<std::pair<int, MultiIndex>> a, b;
    for (const auto& [j, ks] : ov.delta)
        for (const auto& k : ks) a.insert({j, k});
    for (const auto& [k, js] : ov.square)
        for (int j : js) b.insert({j, k});
    EXPECT_EQ(a, b);
}

TEST(Overlaps, RejectsSwappedArguments) {
    FrequencyGrid g(2, 32, kPi);
    EXPECT_THROW(overlap_sets(build_tensor_partition(g, 2), build_cube_partition(g, 2)), domain_error);
}

TEST(Grid, JsonDescribesGrid) {
    auto j = grid_json(FrequencyGrid(2, 64, 2 * kPi));
    EXPECT_EQ(j["d"], 2);
    EXPECT_EQ(j["n"], 64);
}
