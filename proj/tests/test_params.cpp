#include "besovlab/params.hpp"
#include "besovlab/regions.hpp"
#include "golden_table.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>

using namespace besov;

namespace {
const double kInfD = std::numeric_limits<double>::infinity();
}

TEST(Scalar, ParsesDecimalsAndFractionsExactly) {
    EXPECT_TRUE(Scalar::parse("1/3").exact());
    EXPECT_EQ(Scalar::parse("1/3") * Scalar(3), Scalar(1));
    EXPECT_EQ(Scalar::parse("0.25"), Scalar::parse("1/4"));
    EXPECT_DOUBLE_EQ(Scalar::parse("-3/2").value(), -1.5);
    EXPECT_THROW(Scalar::parse("abc"), domain_error);
    EXPECT_THROW(Scalar::parse("1/0"), domain_error);
}

TEST(ExtendedExponent, InfinitySpellingsAndDomain) {
    for (const char* s : {"inf", "Infinity", "∞"}) EXPECT_TRUE(ExtendedExponent::parse(s).is_infinite()) << s;
    EXPECT_EQ(ExtendedExponent::parse("inf").reciprocal(), Scalar(0));
    EXPECT_EQ(ExtendedExponent::parse("1/2").reciprocal(), Scalar(2));
    EXPECT_THROW(ExtendedExponent::parse("0"), domain_error);
    EXPECT_THROW(ExtendedExponent::parse("-1"), domain_error);
    EXPECT_THROW(ExtendedExponent(0.0), domain_error);
    EXPECT_LT(ExtendedExponent(2.0), kInf);
}

TEST(ParameterPoint, RejectsBadDimension) {
    EXPECT_THROW(make_params(0.0, 1.0, 1.0, 0), domain_error);
    // domain errors are invalid_argument, so callers can treat them as usage errors
    EXPECT_THROW(make_params(0.0, -1.0, 1.0, 2), std::invalid_argument);
}

TEST(Oracle, GoldenTable) {
    std::set<std::string> seen;
    for (const auto& r : golden::table()) {
        SCOPED_TRACE(std::string(r.s2b ? "s2b " : "b2s ") + r.t + "," + r.p + "," + r.q + " d=" + std::to_string(r.d));
        auto v = golden::evaluate(r);
        EXPECT_EQ(v.status, r.status);
        EXPECT_EQ(v.clause, std::string(r.clause));
        seen.insert(v.clause);
    }
    for (const auto& c : golden::required_clauses()) EXPECT_TRUE(seen.count(c)) << c;
    EXPECT_GE(golden::table().size(), 24u);
}

TEST(Oracle, ZeroSmoothnessEmbeds) {
    auto v = embed_mixed_into_iso(make_params(Scalar(0), ExtendedExponent(2.0), ExtendedExponent(2.0), 2));
    EXPECT_EQ(v.status, Status::Embeds);
    EXPECT_EQ(v.clause, clause::kT31Q);
    auto j = to_json(v);
    EXPECT_EQ(j["status"], "Embeds");
    EXPECT_EQ(j["clause"], clause::kT31Q);
}

TEST(Oracle, DimensionOneAlwaysCoincides) {
    for (double t : {-2.0, 0.0, 3.0})
        for (double p : {0.3, 1.0, kInfD}) {
            auto x = make_params(t, p, 0.7, 1);
            EXPECT_EQ(embed_mixed_into_iso(x).status, Status::Embeds);
            EXPECT_EQ(embed_iso_into_mixed(x).status, Status::Embeds);
        }
}

TEST(Oracle, PositiveSmoothnessIsAlwaysEmbeds) {
    for (double p : {0.2, 1.0, 5.0, kInfD})
        for (double q : {0.2, 2.0, kInfD}) EXPECT_EQ(embed_mixed_into_iso(make_params(0.01, p, q, 3)).status, Status::Embeds);
}

TEST(Oracle, IsoIntoMixedThreshold) {
    // t > max(0, 1/p - 1): with p = 1/2 the threshold is 1
    EXPECT_EQ(embed_iso_into_mixed(make_params(1.01, 0.5, 3.0, 2)).status, Status::Embeds);
    EXPECT_EQ(embed_iso_into_mixed(make_params(1.0, 0.5, kInfD, 2)).status, Status::Embeds);
    EXPECT_EQ(embed_iso_into_mixed(make_params(1.0, 0.5, 3.0, 2)).status, Status::FailsToEmbed);
}

TEST(Classical, OffsetsAndTieBreak) {
    auto a = make_params(Scalar(2), ExtendedExponent(1.0), ExtendedExponent(1.0), 2);
    auto b = make_params(Scalar(1), ExtendedExponent(2.0), ExtendedExponent(1.0), 2);
    // mixed: 2 - 1 = 1 > 1 - 1/2
    EXPECT_TRUE(classical_embedding(a, b, Family::Mixed));
    // iso: 2 - 2 = 0 < 1 - 1 = 0 is a tie; q equal
    EXPECT_TRUE(classical_embedding(a, b, Family::Iso));
    auto b4 = make_params(Scalar(1), ExtendedExponent(2.0), ExtendedExponent(0.5), 2);
    EXPECT_FALSE(classical_embedding(a, b4, Family::Iso));
    // p may not decrease
    EXPECT_FALSE(classical_embedding(b, a, Family::Mixed));
    EXPECT_THROW(classical_embedding(a, make_params(1.0, 2.0, 1.0, 3), Family::Iso), domain_error);
}

TEST(Classical, OptimalSpaces) {
    auto x = make_params(Scalar::parse("3/2"), ExtendedExponent(2.0), ExtendedExponent(1.0), 3);
    EXPECT_EQ(optimal_space(x, Direction::MixedIntoIso).t, x.t);
    EXPECT_EQ(optimal_space(x, Direction::IsoIntoMixed_Source).t, Scalar::parse("9/2"));
    EXPECT_EQ(optimal_space(x, Direction::IsoIntoMixed_Target).t, Scalar::parse("1/2"));
}

TEST(Regions, InteriorLabelsAgreeWithOracle) {
    auto rd1 = region_diagram(Direction::MixedIntoIso, 2, 2.0);
    EXPECT_EQ(region_at(rd1, {0.5, 1.0}), Status::Embeds);
    EXPECT_EQ(region_at(rd1, {0.5, -1.0}), Status::ReverseEmbeds);
    EXPECT_EQ(region_at(rd1, {1.5, -1.0}), Status::NotComparable);
    auto rd2 = region_diagram(Direction::IsoIntoMixed_Source, 2, 2.0);
    EXPECT_EQ(region_at(rd2, {1.5, 0.25}), Status::NotComparable);
    EXPECT_EQ(region_at(rd2, {1.5, 0.75}), Status::Embeds);
    EXPECT_EQ(embed_iso_into_mixed(make_params(0.25, 1 / 1.5, 2.0, 2)).status, Status::NotComparable);
}

TEST(Regions, BoundariesCarryNoInteriorLabel) {
    auto rd = region_diagram(Direction::MixedIntoIso, 2, 2.0);
    EXPECT_FALSE(region_at(rd, {3.0, 0.5}).has_value());
    EXPECT_THROW(region_diagram(Direction::MixedIntoIso, 1, 2.0), domain_error);
    auto j = to_json(rd);
    EXPECT_FALSE(j["regions"].empty());
}
