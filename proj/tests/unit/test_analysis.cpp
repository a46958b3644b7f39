#include "oracle/oracles.hpp"
#include "pnofdm/analysis.hpp"

#include <gtest/gtest.h>

using namespace pnofdm;

namespace {

OscillatorSpec osc(double beta, int n) { return {beta, 1.0 / (n * 240e3)}; }

} // namespace

TEST(NmsePnac, NoPhaseNoiseCpeOnly)
{
    const auto st = make_pn_stats(osc(0.0, 64), 64, 0);
    for (double snr : {0.1, 1.0, 100.0})
        EXPECT_NEAR(nmse_pnac_closed(EstimatorKind::ls, st, snr), 1.0 / snr, 1e-12);
    EXPECT_NEAR(nmse_pnac_closed(EstimatorKind::lmmse, st, 100.0), 1.0 / 101.0, 1e-12);
    EXPECT_NEAR(nmse_pnac_floor(EstimatorKind::ls, st), 0.0, 1e-12);
}

TEST(NmsePnac, FloorsAndOrdering)
{
    for (int gamma : {0, 1, 3, 7}) {
        const auto st = make_pn_stats(osc(5000, 1024), 1024, gamma);
        const double floor_ls = st.r_ici_gamma.trace().real() / st.r_pp_gamma.trace().real();
        EXPECT_DOUBLE_EQ(nmse_pnac_floor(EstimatorKind::ls, st), floor_ls);
        EXPECT_NEAR(nmse_pnac_closed(EstimatorKind::ls, st, 1e9) / floor_ls, 1.0, 1e-3);
        EXPECT_NEAR(nmse_pnac_closed(EstimatorKind::lmmse, st, 1e9) / nmse_pnac_floor(EstimatorKind::lmmse, st),
                    1.0, 1e-3);
        double prev_ls = INFINITY, prev_lm = INFINITY;
        for (double db = -10; db <= 60; db += 5) {
            const double snr = std::pow(10.0, db / 10.0);
            const double ls = nmse_pnac_closed(EstimatorKind::ls, st, snr);
            const double lm = nmse_pnac_closed(EstimatorKind::lmmse, st, snr);
            EXPECT_LE(lm, ls * (1 + 1e-12));
            EXPECT_LE(ls, prev_ls);
            EXPECT_LE(lm, prev_lm * (1 + 1e-12));
            EXPECT_GE(lm, 0.0);
            prev_ls = ls;
            prev_lm = lm;
        }
    }
}

TEST(NmsePnacApprox, Limits)
{
    EXPECT_EQ(nmse_pnac_approx(1.0, 3, INFINITY), 0.0);
    EXPECT_NEAR(nmse_pnac_approx(0.9, 3, 0.01) / nmse_pnac_approx_low_snr(0.9, 3, 0.01), 1.0, 0.01);
    EXPECT_DOUBLE_EQ(nmse_pnac_approx_high_snr(0.8), 0.25);
    EXPECT_DOUBLE_EQ(nmse_pnac_approx(0.8, 3, 10.0), (0.2 + 0.3) / 0.8);
    EXPECT_THROW(nmse_pnac_approx(0.0, 1, 1.0), std::invalid_argument);
    EXPECT_THROW(nmse_pnac_approx(1.5, 1, 1.0), std::invalid_argument);
}

TEST(NmsePnacApprox, LowSnrSlopeGrowsWithOrder)
{
    const OscillatorSpec spec{5000, 1.0 / 245.76e6};
    const auto band = PnCorrelation::compute(spec, 4096, 14);
    double prev = 0.0;
    for (int gamma : {0, 1, 3, 7}) {
        const double f = (2 * gamma + 1) / p_dom(band, gamma);
        EXPECT_GT(f, prev);
        prev = f;
    }
}

TEST(NmseIfc, ClosedForms)
{
    for (double snr : {0.5, 10.0, 1e4}) {
        EXPECT_DOUBLE_EQ(nmse_ifc_closed(EstimatorKind::ls, 0.0, snr), 1.0 / snr);
        EXPECT_NEAR(nmse_ifc_closed(EstimatorKind::lmmse, 0.0, snr), 1.0 / (1.0 + snr), 1e-15);
        for (double s2 : {0.01, 0.1, 0.5}) {
            EXPECT_LE(nmse_ifc_closed(EstimatorKind::lmmse, s2, snr), nmse_ifc_closed(EstimatorKind::ls, s2, snr));
            EXPECT_NEAR(nmse_ifc_closed(EstimatorKind::ls, s2, snr), (1.0 / snr + s2) / (1.0 - s2), 1e-15);
        }
    }
    EXPECT_NEAR(nmse_ifc_closed(EstimatorKind::ls, 0.05, 1e9) / nmse_ifc_floor(EstimatorKind::ls, 0.05), 1.0, 1e-3);
    EXPECT_NEAR(nmse_ifc_closed(EstimatorKind::lmmse, 0.05, 1e9) / nmse_ifc_floor(EstimatorKind::lmmse, 0.05), 1.0,
                1e-3);
    // Small effective error: both floors agree to first order.
    EXPECT_NEAR(nmse_ifc_floor(EstimatorKind::ls, 1e-3) / nmse_ifc_floor(EstimatorKind::lmmse, 1e-3), 1.0, 2e-3);
    EXPECT_THROW(nmse_ifc_closed(EstimatorKind::ls, 1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(nmse_ifc_floor(EstimatorKind::lmmse, -0.1), std::invalid_argument);
}

TEST(Throughput, Arithmetic)
{
    EXPECT_NEAR(throughput(0.0, 275, 12, 14, 0.25e-3, 4, 0.0) / 739.2e6, 1.0, 1e-12);
    EXPECT_EQ(throughput(0.3, 275, 12, 14, 0.25e-3, 4, 1.0), 0.0);
    const double v = throughput(0.0134, 275, 12, 14, 0.25e-3, 4, 0.048);
    EXPECT_NEAR(v / ((1 - 0.0134) * 739.2e6 * (1 - 0.048)), 1.0, 1e-12);
    EXPECT_NEAR(v / 694.3e6, 1.0, 1e-4);
    EXPECT_THROW(throughput(1.0, 1, 1, 1, 1.0, 4, 0.0), std::invalid_argument);
    EXPECT_THROW(throughput(0.0, 1, 1, 1, 1.0, 4, 1.5), std::invalid_argument);
}

TEST(Ber, SixteenQamMatchesTextbook)
{
    for (double db : {0.0, 5.0, 10.0, 20.0}) {
        const double snr = std::pow(10.0, db / 10.0);
        EXPECT_NEAR(ber_qam_awgn(16, snr) / oracle::ber_16qam_awgn(snr), 1.0, 1e-12);
        EXPECT_NEAR(ber_qam_rayleigh(16, snr) / oracle::ber_16qam_rayleigh(snr), 1.0, 1e-4);
    }
}

TEST(Ber, QpskAndLimits)
{
    const double snr = 4.0;
    EXPECT_NEAR(ber_qam_awgn(4, snr), oracle::q_function(std::sqrt(snr)), 1e-15);
    EXPECT_NEAR(ber_qam_rayleigh(4, snr), 0.5 * (1 - std::sqrt(0.5 * snr / (1 + 0.5 * snr))), 1e-15);
    EXPECT_NEAR(ber_qam_awgn(64, 1e-9), 0.5, 1e-3);
}
