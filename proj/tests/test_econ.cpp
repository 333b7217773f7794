#include "h2path/econ.hpp"
#include "h2path/errors.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

using namespace h2path;

namespace {

// Present value of n unit payments at rate d, summed term by term.
double annuity_present_value(double d, int n, double payment)
{
    double pv = 0.0;
    for (int k = 1; k <= n; ++k) {
        pv += payment / std::pow(1.0 + d, k);
    }
    return pv;
}

FlowLedger grid_only_ledger()
{
    PlantSpec plant;
    plant.grid.line_capacity_mw = 10.0;
    DispatchRule rule;
    rule.variant = DispatchVariant::GridOnly;
    return simulate_year(rule, plant, constant_profile(0.0, 10.0));
}

} // namespace

TEST(Crf, ReferenceValue)
{
    EXPECT_NEAR(crf(0.03, 30), 0.0510193, 1e-6);
    EXPECT_NEAR(crf(0.03, 30), 0.05101925932025256, 1e-15);
}

TEST(Crf, SingleYearAnnuity)
{
    for (double d : {0.01, 0.03, 0.08, 0.2}) {
        EXPECT_NEAR(crf(d, 1), 1.0 + d, 1e-12);
    }
}

TEST(Crf, AnnuityIdentityAcrossGrid)
{
    for (double d = 0.005; d <= 0.15; d += 0.005) {
        for (int n = 1; n <= 50; ++n) {
            ASSERT_NEAR(annuity_present_value(d, n, crf(d, n)), 1.0, 1e-9) << d << ' ' << n;
        }
    }
}

TEST(PemAnnualCost, TableValuesAtBenchmarkStackLife)
{
    const Electrolyser el;
    const double cost = pem_annual_cost(el, 6.88, 0.03);
    // (1500 + 720 / 1.03^6.88) * crf + 75, per kW
    EXPECT_NEAR(cost, 1815030.1575725148, 1e-6);
    EXPECT_NEAR(cost / 10000.0, 181.5, 0.05);
}

TEST(PemAnnualCost, WithoutReplacementOrInfiniteLife)
{
    Electrolyser el;
    const double plain = 10000.0 * (1500.0 * crf(0.03, 30) + 75.0);
    EXPECT_NEAR(pem_annual_cost(el, kInfiniteLife, 0.03), plain, 1e-6);
    el.stack_replace_frac_of_capex = 0.0;
    EXPECT_NEAR(pem_annual_cost(el, 6.88, 0.03), plain, 1e-6);
    EXPECT_NEAR(plain, 1515288.8898037884, 1e-6);
}

TEST(PemAnnualCost, ReplacementTermVanishesForLongLives)
{
    const Electrolyser el;
    const double plain = pem_annual_cost(el, kInfiniteLife, 0.03);
    EXPECT_LT(pem_annual_cost(el, 2000.0, 0.03) - plain, 1e-6 * plain);
    EXPECT_GT(pem_annual_cost(el, 10.0, 0.03), pem_annual_cost(el, 20.0, 0.03));
}

TEST(PemAnnualCost, MultiReplacementCountsEveryStackInsideLifetime)
{
    const Electrolyser el;
    // replacements at 6.88, 13.76, 20.64 and 27.52 years
    EXPECT_NEAR(pem_annual_cost(el, 6.88, 0.03, ReplacementMode::Multi), 2422037.760649833, 1e-6);
    // a stack outliving the electrolyser is never replaced
    EXPECT_NEAR(pem_annual_cost(el, 31.0, 0.03, ReplacementMode::Multi),
                pem_annual_cost(el, kInfiniteLife, 0.03), 1e-6);
}

TEST(CompAnnualCost, BenchmarkCapacity)
{
    const Compressor comp;
    const double capex = 2.49 * 1760580.0 * crf(0.03, 30);
    const double opex = 0.06 * 2.49 * 1760580.0;
    EXPECT_NEAR(capex, 223.7e3, 0.05e3);
    EXPECT_NEAR(opex, 263.0e3, 0.05e3);
    EXPECT_NEAR(comp_annual_cost(comp, 1760580.0, 0.03), capex + opex, 1e-6);
}

TEST(CompAnnualCost, EdgeCases)
{
    Compressor comp;
    EXPECT_EQ(comp_annual_cost(comp, 0.0, 0.03), 0.0);
    comp.opex_frac_of_capex_per_year = 0.0;
    EXPECT_NEAR(comp_annual_cost(comp, 1000.0, 0.03), 2490.0 * crf(0.03, 30), 1e-9);
}

TEST(CompAnnualCost, AnnualisedOpexBasis)
{
    const Compressor comp;
    const double annualised = 2490.0 * crf(0.03, 30);
    EXPECT_NEAR(comp_annual_cost(comp, 1000.0, 0.03, CompressorOpexBasis::AnnualisedCapex),
                annualised * 1.06, 1e-9);
}

TEST(IcAnnualCost, Examples)
{
    GridConnection line;
    line.line_capacity_mw = 10.0;
    EXPECT_NEAR(ic_annual_cost(line, 0.03), 1e6 * 0.05101925932025256, 1e-6);
    EXPECT_NEAR(ic_annual_cost(line, 0.03), 51.0e3, 0.05e3);

    EXPECT_EQ(ic_annual_cost(GridConnection{}, 0.03), 0.0);

    GridConnection wire;
    wire.wire_capacity_mw = 10.0;
    wire.wire_cost_share_h2 = 0.5;
    EXPECT_NEAR(ic_annual_cost(wire, 0.03), 150000.0 * 0.05101925932025256 * 0.5, 1e-6);
    EXPECT_NEAR(ic_annual_cost(wire, 0.03), 3.83e3, 0.005e3);
}

TEST(ElecAnnualCost, Examples)
{
    FlowTotals grid;
    grid.import_mwh = 87600.0;
    EXPECT_NEAR(elec_annual_cost(grid, EconParams{}), 16.1184e6, 1.0);

    FlowTotals mixed;
    mixed.wind_to_h2_mwh = 1000.0;
    mixed.import_mwh = 500.0;
    EconParams free;
    free.p_ppa = 0.0;
    EXPECT_NEAR(elec_annual_cost(mixed, free), 500.0 * 1000.0 * 0.184, 1e-6);
    EXPECT_NEAR(elec_annual_cost(mixed, EconParams{}), 57000.0 + 92000.0, 1e-6);

    EXPECT_EQ(elec_annual_cost(FlowTotals{}, EconParams{}), 0.0);
}

TEST(Lcoh, HandArithmetic)
{
    const auto v = lcoh(394000.0, 100000.0);
    EXPECT_NEAR(v.per_kg, 3.94, 1e-12);
    EXPECT_NEAR(v.per_mwh_hhv, 100.0, 1e-9);
    const auto zero = lcoh(0.0, 5.0);
    EXPECT_EQ(zero.per_kg, 0.0);
    EXPECT_EQ(zero.per_mwh_hhv, 0.0);
}

TEST(Lcoh, ZeroMassIsUndefined)
{
    EXPECT_THROW(lcoh(1000.0, 0.0), UndefinedLcohError);
}

TEST(Lcoh, UnitRatio)
{
    for (double c : {1.0, 1234.5, 9.9e6}) {
        for (double m : {1.0, 777.0, 1.7e6}) {
            const auto v = lcoh(c, m);
            ASSERT_NEAR(v.per_mwh_hhv / v.per_kg, 1000.0 / 39.4, 1e-9 * 1000.0 / 39.4);
        }
    }
}

TEST(EvaluateCosts, GridOnlyBenchmark)
{
    PlantSpec plant;
    plant.grid.line_capacity_mw = 10.0;
    const auto ledger = grid_only_ledger();
    const auto r = evaluate_costs(plant, EconParams{}, ledger);
    EXPECT_NEAR(r.lcoh_per_kg, 10.39, 10.39 * 0.02);
    EXPECT_NEAR(r.lcoh_per_mwh_hhv, 263.62, 263.62 * 0.02);
    EXPECT_NEAR(r.c_total, r.c_pem + r.c_comp + r.c_ic + r.c_elec, 1e-6 * r.c_total);
    EXPECT_NEAR(r.shares.pem + r.shares.comp + r.shares.ic + r.shares.elec, 1.0, 1e-9);
    EXPECT_EQ(r.export_revenue, 0.0);
}

TEST(EvaluateCosts, FullLoadCompressorBasisUsesRatedProduction)
{
    PlantSpec plant;
    plant.grid.wire_capacity_mw = 10.0;
    DispatchRule rule;
    const auto ledger = simulate_year(rule, plant, constant_profile(5.0, 10.0));
    EconParams econ;
    const auto realised = evaluate_costs(plant, econ, ledger);
    econ.comp_capacity_basis = CompressorCapacityBasis::FullLoad;
    const auto full = evaluate_costs(plant, econ, ledger);
    EXPECT_NEAR(full.c_comp, 2.0 * realised.c_comp, 1e-6 * full.c_comp);
}

TEST(EvaluateCosts, ExportRevenueIsReportedButNotSubtracted)
{
    PlantSpec plant;
    plant.electrolyser.rated_mw = 5.0;
    plant.grid.line_capacity_mw = 5.0;
    plant.grid.wire_capacity_mw = 5.0;
    DispatchRule rule;
    rule.variant = DispatchVariant::BtmPemFirst;
    const auto ledger = simulate_year(rule, plant, constant_profile(8.0, 10.0));
    const auto r = evaluate_costs(plant, EconParams{}, ledger);
    EXPECT_NEAR(r.export_revenue, 3.0 * 8760.0 * 1000.0 * 0.07, 1e-3);
    EXPECT_NEAR(r.c_total, r.c_pem + r.c_comp + r.c_ic + r.c_elec, 1e-9 * r.c_total);
}

TEST(EvaluateCosts, LcohNondecreasingInEachCostDriver)
{
    PlantSpec base;
    base.grid.line_capacity_mw = 10.0;
    base.grid.wire_capacity_mw = 10.0;
    base.grid.line_cost_share_h2 = 0.0;
    base.grid.wire_cost_share_h2 = 0.0;
    DispatchRule rule;
    rule.variant = DispatchVariant::VirtualPpa;
    rule.backup = Backup::GridBackup;
    WindProfile profile = constant_profile(0.0, 10.0, 1000);
    for (std::size_t t = 0; t < profile.steps(); ++t) {
        profile.farms[0][t] = 10.0 * static_cast<double>(t % 7) / 6.0;
    }
    const auto ledger = simulate_year(rule, base, profile);

    using Mutator = std::function<void(PlantSpec&, EconParams&, double)>;
    const std::vector<std::pair<const char*, Mutator>> drivers{
        {"p_ppa", [](PlantSpec&, EconParams& e, double x) { e.p_ppa = 0.1 * x; }},
        {"p_import", [](PlantSpec&, EconParams& e, double x) { e.p_import = 0.3 * x; }},
        {"capex", [](PlantSpec& p, EconParams&, double x) { p.electrolyser.capex_per_kw = 3000 * x; }},
        {"replace",
         [](PlantSpec& p, EconParams&, double x) {
             p.electrolyser.stack_replace_frac_of_capex = std::max(1e-3, x);
         }},
        {"line_share", [](PlantSpec& p, EconParams&, double x) { p.grid.line_cost_share_h2 = x; }},
        {"wire_share", [](PlantSpec& p, EconParams&, double x) { p.grid.wire_cost_share_h2 = x; }},
    };
    for (const auto& [name, mutate] : drivers) {
        double prev = -1.0;
        for (int i = 0; i <= 20; ++i) {
            PlantSpec plant = base;
            EconParams econ;
            mutate(plant, econ, i / 20.0);
            const double v = evaluate_costs(plant, econ, ledger).lcoh_per_kg;
            ASSERT_GE(v, prev) << name << " step " << i;
            prev = v;
        }
    }
}

TEST(EconNames, RoundTrip)
{
    EXPECT_EQ(parse_replacement_mode(to_string(ReplacementMode::Multi)), ReplacementMode::Multi);
    EXPECT_EQ(parse_capacity_basis(to_string(CompressorCapacityBasis::FullLoad)),
              CompressorCapacityBasis::FullLoad);
    EXPECT_EQ(parse_opex_basis(to_string(CompressorOpexBasis::AnnualisedCapex)),
              CompressorOpexBasis::AnnualisedCapex);
    EXPECT_THROW(parse_opex_basis("monthly"), ConfigError);
}

TEST(EconParams, Validation)
{
    EconParams e;
    EXPECT_NO_THROW(validate(e));
    e.discount_rate = 0.0;
    EXPECT_THROW(validate(e), ConfigError);
    e = {};
    e.p_import = -0.1;
    EXPECT_THROW(validate(e), ConfigError);
}
