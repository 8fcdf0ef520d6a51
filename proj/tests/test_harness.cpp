#include "besovlab/harness.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace besov;

TEST(Registry, CasesAreConsistent) {
    std::set<std::string> ids;
    for (const auto& c : witness_registry()) {
        EXPECT_NO_THROW(validate_case(c)) << c.id;
        EXPECT_TRUE(ids.insert(c.id).second) << "duplicate " << c.id;
    }
    EXPECT_THROW(find_case("no-such-case"), domain_error);
    EXPECT_EQ(find_case("T34-t-neg").id, "T34-t-neg");
}

TEST(Registry, EveryNegativeClauseIsWitnessedOrAnnotated) {
    std::set<std::string> negative = {clause::kP33i,  clause::kP33ii, clause::kP33iii, clause::kP33iv,
                                      clause::kP33v,  clause::kP35i,  clause::kP35ii,  clause::kP35iii,
                                      clause::kP35iv, clause::kT34Nec};
    std::set<std::string> ids;
    for (const auto& c : witness_registry()) ids.insert(c.id);
    for (const auto& cov : clause_coverage()) {
        negative.erase(cov.clause);
        EXPECT_TRUE(!cov.cases.empty() || !cov.annotation.empty()) << cov.clause;
        for (const auto& id : cov.cases) EXPECT_TRUE(ids.count(id)) << id;
    }
    EXPECT_TRUE(negative.empty()) << *negative.begin();
}

TEST(Registry, ValidationCatchesWrongExpectations) {
    auto c = find_case("ctrl-T31");
    c.expected = Status::FailsToEmbed;
    EXPECT_THROW(validate_case(c), domain_error);
    auto o = find_case("opt-T36");
    o.role = CaseRole::Control;
    EXPECT_THROW(validate_case(o), domain_error);
    auto r = find_case("T34-t-neg");
    r.grid.oversample = 3;
    EXPECT_THROW(validate_case(r), domain_error);
}

TEST(Fit, RecoversSyntheticExponents) {
    std::vector<int> ells = {2, 3, 4, 5, 6, 7};
    std::vector<double> pw, ex;
    for (int l : ells) {
        pw.push_back(3.0 * std::pow(double(l), 0.5));
        ex.push_back(0.25 * std::exp2(0.7 * l));
    }
    auto fp = fit_growth(ells, pw, GrowthModel::PowerInEll);
    EXPECT_NEAR(fp.exponent, 0.5, 1e-12);
    EXPECT_NEAR(fp.max_residual, 0.0, 1e-12);
    EXPECT_EQ(fp.ells_dropped, std::vector<int>{2});
    auto fe = fit_growth(ells, ex, GrowthModel::ExponentialBase2InEll);
    EXPECT_NEAR(fe.exponent, 0.7, 1e-12);
}

TEST(Fit, RejectsTooFewOrBadRows) {
    std::vector<int> e = {1, 2, 3};
    std::vector<double> r = {1, 2, 3};
    EXPECT_THROW(fit_growth(e, r, GrowthModel::PowerInEll), domain_error);
    std::vector<int> e4 = {1, 2, 3, 4};
    std::vector<double> r4 = {1, 2, 0, 3};
    EXPECT_THROW(fit_growth(e4, r4, GrowthModel::PowerInEll), domain_error);
}

TEST(Witness, ExampleTwoRowsAreExact) {
    Config cfg;
    auto tab = run_witness(find_case("T31-pinf-q-gt-1"), 4, 7, cfg);
    ASSERT_EQ(tab.rows.size(), 4u);
    for (const auto& r : tab.rows) {
        EXPECT_TRUE(r.converged);
        // iso = ell, mixed = ell^{1/2}
        EXPECT_NEAR(r.ratio, std::sqrt(double(r.ell)), 1e-9);
    }
    ASSERT_TRUE(tab.fit.has_value());
    EXPECT_NEAR(tab.fit->exponent, 0.5, 1e-6);
    auto pred = predicted_growth(find_case("T31-pinf-q-gt-1"), 4, 7);
    EXPECT_NEAR(pred.exponent, 0.5, 1e-12);
}

TEST(Reports, CsvRoundTrip) {
    WitnessTable t;
    t.case_id = "demo";
    for (int l = 1; l <= 3; ++l) {
        WitnessRow r;
        r.ell = l;
        r.iso_norm = 1.0 / 3.0 * l;
        r.mixed_norm = std::exp2(-l);
        r.ratio = r.iso_norm / r.mixed_norm;
        r.converged = l != 2;
        t.rows.push_back(r);
    }
    auto path = std::filesystem::temp_directory_path() / "besovlab_report_rt.csv";
    emit_report({t}, ReportFormat::CSV, path);
    auto back = read_csv_report(path);
    ASSERT_EQ(back.size(), 1u);
    ASSERT_EQ(back[0].rows.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(back[0].rows[i].ell, t.rows[i].ell);
        EXPECT_EQ(back[0].rows[i].iso_norm, t.rows[i].iso_norm);
        EXPECT_EQ(back[0].rows[i].ratio, t.rows[i].ratio);
        EXPECT_EQ(back[0].rows[i].converged, t.rows[i].converged);
    }
    std::ofstream(path) << "not,a,report\n";
    EXPECT_THROW(read_csv_report(path), io_error);
}

TEST(Reports, JsonCarriesFit) {
    WitnessTable t;
    t.case_id = "x";
    t.fit_error = "fit_growth needs at least 4 usable rows";
    std::ostringstream os;
    write_report(os, {t}, ReportFormat::JSON);
    auto j = nlohmann::json::parse(os.str());
    EXPECT_NE(os.str().find("fit_growth needs"), std::string::npos);
}

TEST(Probe, DeterministicForFixedSeed) {
    std::vector<ExtendedExponent> ps = {ExtendedExponent(0.5), kInf};
    auto a = to_json(probe_sweep(ps, 2, 3, 4, 42)).dump();
    auto b = to_json(probe_sweep(ps, 2, 3, 4, 42)).dump();
    auto c = to_json(probe_sweep(ps, 2, 3, 4, 43)).dump();
    EXPECT_EQ(a, b);
    EXPECT_NE(a, c);
}

TEST(Probe, SlopeHelper) {
    std::vector<double> x = {1, 2, 3, 4}, y = {1, 3, 5, 7};
    EXPECT_NEAR(ls_slope(x, y), 2.0, 1e-15);
}
