#include "pnofdm/pilots.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>

using namespace pnofdm;

namespace {

PilotLayout layout_for(int n, int n_cb, int n_ct, int gamma, double es = 1.0)
{
    return build_layout(OfdmSpec{n, 0, 240e3, es}, CoherenceSpec::make(n, n_cb, n_ct), gamma);
}

} // namespace

TEST(Layout, ExampleGeometry)
{
    const auto l = layout_for(96, 6, 1, 1);
    EXPECT_EQ(l.pn_pilot_subcarriers, (std::vector<int>{0, 1, 2, 3, 4}));
    EXPECT_EQ(l.pn_obs_subcarriers, (std::vector<int>{1, 2, 3}));
    for (int k = 0; k <= 4; ++k)
        EXPECT_EQ(l.pn_pilot_value(k), cplx(k == 2 ? 1.0 : 0.0));
    const ComplexMat x = l.assembled_pilot_matrix();
    EXPECT_EQ((x - ComplexMat::identity(3)).max_abs(), 0.0);
}

TEST(Layout, CpeOnly)
{
    const auto l = layout_for(64, 8, 1, 0, 4.0);
    EXPECT_EQ(l.pn_pilot_subcarriers, std::vector<int>{0});
    EXPECT_EQ(l.pn_obs_subcarriers, std::vector<int>{0});
    const ComplexMat x = l.assembled_pilot_matrix();
    ASSERT_EQ(x.rows(), 1u);
    EXPECT_EQ(x(0, 0), cplx(2.0));
}

TEST(Layout, Infeasible)
{
    EXPECT_THROW(layout_for(64, 8, 1, 2), LayoutInfeasible);
    EXPECT_THROW(layout_for(64, 8, 1, -1), std::invalid_argument);
    EXPECT_NO_THROW(layout_for(64, 16, 1, 3));
}

TEST(Layout, AssembledIdentityForAllFeasibleOrders)
{
    for (int n_cb : {1, 2, 4, 8, 16, 32, 64}) {
        for (int gamma = 0; 4 * gamma + 1 <= n_cb; ++gamma) {
            const auto l = layout_for(256, n_cb, 1, gamma, 2.0);
            const ComplexMat x = l.assembled_pilot_matrix();
            for (int r = 0; r < l.n_p; ++r)
                for (int c = 0; c < l.n_p; ++c)
                    EXPECT_EQ(x(r, c), cplx(r == c ? std::sqrt(2.0) : 0.0));
        }
    }
}

TEST(Layout, ChannelPilotsAndRoles)
{
    const auto l = layout_for(128, 16, 4, 2);
    ASSERT_EQ(l.ch_pilot_subcarriers.size(), 8u);
    EXPECT_EQ(l.ch_pilot_subcarriers[0], 4);
    for (int m = 1; m < 8; ++m)
        EXPECT_EQ(l.ch_pilot_subcarriers[m], 16 * m);
    EXPECT_EQ(l.slot_plan.size(), 4u);
    EXPECT_EQ(l.slot_plan[0], SymbolKind::pilot);
    for (int s = 1; s < 4; ++s)
        EXPECT_EQ(l.slot_plan[s], SymbolKind::tracking);

    EXPECT_EQ(l.role(4, SymbolKind::pilot), SubcarrierRole::pn_pilot);
    EXPECT_EQ(l.role(3, SymbolKind::pilot), SubcarrierRole::zero_pilot);
    EXPECT_EQ(l.role(16, SymbolKind::pilot), SubcarrierRole::ch_pilot);
    EXPECT_EQ(l.role(16, SymbolKind::tracking), SubcarrierRole::data);
    EXPECT_EQ(l.role(9, SymbolKind::pilot), SubcarrierRole::data);
    EXPECT_THROW(l.role(128, SymbolKind::pilot), std::out_of_range);

    // Disjoint index sets that cover the grid.
    for (SymbolKind kind : {SymbolKind::pilot, SymbolKind::tracking}) {
        std::set<int> seen(l.data_subcarriers(kind).begin(), l.data_subcarriers(kind).end());
        EXPECT_EQ(seen.size(), l.data_subcarriers(kind).size());
        for (int k : l.pn_pilot_subcarriers)
            EXPECT_TRUE(seen.insert(k).second);
        if (kind == SymbolKind::pilot)
            for (int k : l.ch_pilot_subcarriers)
                if (k != l.pn_center())
                    EXPECT_TRUE(seen.insert(k).second);
        EXPECT_EQ(seen.size(), 128u);
    }
    EXPECT_EQ(l.data_subcarriers(SymbolKind::pilot).size(), 128u - 9 - 7);
    EXPECT_EQ(l.data_subcarriers(SymbolKind::tracking).size(), 128u - 9);
}

TEST(Layout, PilotCountMatchesOverheadNumerator)
{
    for (int gamma : {0, 1, 3, 7}) {
        const auto l = layout_for(1024, 32, 7, gamma);
        EXPECT_EQ(l.pilots_per_slot(), 7 * (2 * l.n_p - 1) + 32 - 1);
        EXPECT_NEAR(pilot_overhead(1024, 7, 32, l.n_p), double(l.pilots_per_slot()) / (1024.0 * 7), 1e-15);
    }
}

TEST(Overhead, ExampleValues)
{
    const int np[] = {1, 3, 7, 15};
    const double ex4[] = {1.26, 1.60, 2.26, 3.60};
    const double sec6[] = {1.22, 1.34, 1.58, 2.06};
    for (int i = 0; i < 4; ++i) {
        EXPECT_NEAR(100.0 * pilot_overhead(1200, 7, 100, np[i]), ex4[i], 0.005);
        EXPECT_NEAR(100.0 * pilot_overhead(3300, 7, 275, np[i]), sec6[i], 0.005);
    }
    EXPECT_DOUBLE_EQ(pilot_overhead(512, 3, 1, 1), 1.0 / 512);
    EXPECT_THROW(pilot_overhead(0, 1, 1, 1), std::invalid_argument);
}

TEST(Overhead, Monotone)
{
    EXPECT_LT(pilot_overhead(1024, 7, 32, 3), pilot_overhead(1024, 7, 32, 5));
    EXPECT_LT(pilot_overhead(1024, 7, 32, 3), pilot_overhead(1024, 7, 33, 3));
    EXPECT_GT(pilot_overhead(1024, 7, 32, 3), pilot_overhead(2048, 7, 32, 3));
}

TEST(Layout, ResourceMapJson)
{
    const auto l = layout_for(64, 16, 2, 1);
    const auto j = nlohmann::json::parse(layout_resource_map_json(l));
    EXPECT_EQ(j["n"], 64);
    EXPECT_EQ(j["gamma"], 1);
    ASSERT_EQ(j["symbols"].size(), 2u);
    EXPECT_EQ(j["symbols"][0]["kind"], "pilot");
    EXPECT_EQ(j["symbols"][0]["pn_pilot"], std::vector<int>{2});
    EXPECT_EQ(j["symbols"][0]["zero_pilot"], (std::vector<int>{0, 1, 3, 4}));
    EXPECT_EQ(j["symbols"][0]["ch_pilot"], (std::vector<int>{16, 32, 48}));
    EXPECT_EQ(j["symbols"][1]["kind"], "tracking");
    EXPECT_EQ(j["symbols"][1]["data_count"], 59);
}
