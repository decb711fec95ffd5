#include <doctest.h>

#include <random>

#include "rchp/dispatch.hpp"
#include "rchp/lp_oracle.hpp"
#include "support/instance_gen.hpp"

using namespace rchp;
using namespace rchp::testing;

namespace {
const Capacities kCaps{45000.0, 20000.0};
}

TEST_CASE("prosumer branch table examples") {
    const MarketParams p = table_params(4.0);

    SUBCASE("high price exports everything") {
        const auto [d, region] = optimal_dispatch(p, kCaps, {0.15, 0.5}, ParticipationModel::M2);
        CHECK(d.p_h == 0.0);
        CHECK(d.p_ex == 22500.0);
        CHECK(d.p_im == 0.0);
        CHECK(region == RegionLabel::R3);
    }
    SUBCASE("low price imports the shortfall") {
        const auto [d, region] = optimal_dispatch(p, kCaps, {0.02, 0.1}, ParticipationModel::M2);
        CHECK(d.p_h == 20000.0);
        CHECK(d.p_ex == 0.0);
        CHECK(d.p_im == 15500.0);
        CHECK(region == RegionLabel::R1);
    }
    SUBCASE("standalone clips to the electrolyzer") {
        for (double lmp : {-0.1, 0.0, 0.05, 0.3}) {
            const auto [d, region] =
                optimal_dispatch(p, kCaps, {lmp, 0.5}, ParticipationModel::M0);
            CHECK(d.p_h == 20000.0);
            CHECK(d.p_ex == 0.0);
            CHECK(d.p_im == 0.0);
        }
    }
    SUBCASE("net-zero band with no renewables idles") {
        const auto [d, region] = optimal_dispatch(p, kCaps, {0.11, 0.0}, ParticipationModel::M2);
        CHECK(d.p_h == 0.0);
        CHECK(d.p_ex == 0.0);
        CHECK(d.p_im == 0.0);
        CHECK(region == RegionLabel::R2);
    }
}

TEST_CASE("region classification examples") {
    const MarketParams p = table_params(4.0);
    CHECK(classify_region(p, kCaps, {0.2, 0.5}, ParticipationModel::M2) == RegionLabel::R3);
    CHECK(classify_region(p, kCaps, {0.11, 0.6}, ParticipationModel::M2) == RegionLabel::R4);
    CHECK(classify_region(p, kCaps, {-0.05, 0.5}, ParticipationModel::M2) == RegionLabel::R6_neg);
    // Deep-negative prices: the oracle imports there too.
    const OracleSolution sol = solve_exact(p, kCaps, {-0.05, 0.5}, ParticipationModel::M2);
    CHECK(sol.dispatch.p_im > 0.0);
}

TEST_CASE("negative LMP branches") {
    const MarketParams p = table_params(4.0);

    SUBCASE("below -tau_rec_im everything is imported and renewables curtailed") {
        const auto [d, region] = optimal_dispatch(p, kCaps, {-0.05, 0.8}, ParticipationModel::M2);
        CHECK(d.p_h == 20000.0);
        CHECK(d.p_ex == 0.0);
        CHECK(d.p_im == 20000.0);
        CHECK(region == RegionLabel::R6_neg);
    }
    SUBCASE("between the REC prices the surplus is curtailed, not exported") {
        const auto [d, region] =
            optimal_dispatch(p, kCaps, {-0.02, 0.8}, ParticipationModel::M2);
        CHECK(d.p_h == 20000.0);
        CHECK(d.p_ex == 0.0);
        CHECK(d.p_im == 0.0);
        CHECK(region == RegionLabel::R5_neg);
    }
    SUBCASE("producer model curtails when export pays the grid") {
        const auto [d, region] =
            optimal_dispatch(p, kCaps, {-0.05, 0.8}, ParticipationModel::M1p);
        CHECK(d.p_h == 20000.0);
        CHECK(d.p_ex == 0.0);
        CHECK(region == RegionLabel::R5_neg);
    }
}

TEST_CASE("returned dispatch is always feasible") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const MarketParams p = random_params(rng);
        const Capacities caps = random_caps(rng);
        const IntervalSignal sig = random_signal(rng);
        const ParticipationModel m = random_model(rng);
        const auto [d, region] = optimal_dispatch(p, caps, sig, m);
        CHECK_NOTHROW(d.validate(p, caps, sig));
        if (m == ParticipationModel::M0) {
            CHECK(d.p_ex == 0.0);
            CHECK(d.p_im == 0.0);
        }
        if (m == ParticipationModel::M1p) CHECK(d.p_im == 0.0);
        if (m == ParticipationModel::M1c) CHECK(d.p_ex == 0.0);
    }
}

TEST_CASE("closed form matches the exact LP on random instances") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 3000; ++i) {
        const MarketParams p = random_params(rng);
        const Capacities caps = random_caps(rng);
        const IntervalSignal sig = random_signal(rng);
        const ParticipationModel m = random_model(rng);
        const double closed = gross_profit(p, caps, sig, optimal_dispatch(p, caps, sig, m).dispatch);
        const double exact = solve_exact(p, caps, sig, m).gross;
        CHECK(close_rel(closed, exact, 1e-9));
    }
}

TEST_CASE("per-interval model dominance") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 2000; ++i) {
        const MarketParams p = random_params(rng);
        const Capacities caps = random_caps(rng);
        const IntervalSignal sig = random_signal(rng);
        auto gp = [&](ParticipationModel m) {
            return gross_profit(p, caps, sig, optimal_dispatch(p, caps, sig, m).dispatch);
        };
        const double m0 = gp(ParticipationModel::M0);
        const double m1p = gp(ParticipationModel::M1p);
        const double m1c = gp(ParticipationModel::M1c);
        const double m2 = gp(ParticipationModel::M2);
        const double slack = 1e-9 * std::max(1.0, std::abs(m2));
        CHECK(m2 >= m1p - slack);
        CHECK(m2 >= m1c - slack);
        CHECK(m1p >= m0 - slack);
        CHECK(m1c >= m0 - slack);
    }
}

TEST_CASE("policy is monotone in the price") {
    std::mt19937_64 rng(19);
    const MarketParams p = table_params(4.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double eta = uniform(rng, 0.0, 1.0);
        double prev_ph = 1e18, prev_pex = -1.0;
        for (int i = 0; i <= 200; ++i) {
            const double lmp = -0.2 + 0.7 * i / 200.0;
            const auto [d, region] =
                optimal_dispatch(p, kCaps, {lmp, eta}, ParticipationModel::M2);
            CHECK(d.p_h <= prev_ph + 1e-9);
            prev_ph = d.p_h;
            if (lmp > -p.tau_rec_ex) {
                CHECK(d.p_ex >= prev_pex - 1e-9);
                prev_pex = d.p_ex;
            }
        }
    }
}

TEST_CASE("net-zero region produces exactly from renewables") {
    const MarketParams p = table_params(4.0);
    const Thresholds th = compute_thresholds(p);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const double lmp = uniform(rng, th.pi_lo + 1e-12, th.pi_hi - 1e-12);
        const double eta = uniform(rng, 0.0, kCaps.q_h / kCaps.q_r);
        const auto [d, region] = optimal_dispatch(p, kCaps, {lmp, eta}, ParticipationModel::M2);
        CHECK(d.p_ex == 0.0);
        CHECK(d.p_im == 0.0);
        CHECK(d.p_h == eta * kCaps.q_r);
    }
}

TEST_CASE("boundary ties follow the branch conventions") {
    const MarketParams p = table_params(4.0);
    const Thresholds th = compute_thresholds(p);
    // At pi_hi exactly: export branch.
    const auto hi = optimal_dispatch(p, kCaps, {th.pi_hi, 0.3}, ParticipationModel::M2);
    CHECK(hi.dispatch.p_h == 0.0);
    CHECK(hi.region == RegionLabel::R3);
    // At pi_lo exactly: hydrogen-production branch.
    const auto lo = optimal_dispatch(p, kCaps, {th.pi_lo, 0.3}, ParticipationModel::M2);
    CHECK(lo.dispatch.p_h == kCaps.q_h);
    CHECK(lo.region == RegionLabel::R1);
}

TEST_CASE("prosumer dispatch matches a literal re-derivation of the branch table") {
    std::mt19937_64 rng(131);
    for (int i = 0; i < 3000; ++i) {
        const MarketParams p = random_params(rng);
        const Capacities caps = random_caps(rng);
        const IntervalSignal sig = random_signal(rng);
        const Thresholds th = compute_thresholds(p);
        const double avail = sig.eta * caps.q_r;
        double e_ph, e_pex, e_pim;
        if (sig.lmp <= th.neg_im) {
            e_ph = caps.q_h;
            e_pex = 0.0;
            e_pim = caps.q_h;
        } else if (sig.lmp <= th.neg_ex) {
            e_ph = caps.q_h;
            e_pex = 0.0;
            e_pim = std::max(caps.q_h - avail, 0.0);
        } else if (sig.lmp <= th.pi_lo) {
            e_ph = caps.q_h;
            e_pex = std::max(avail - caps.q_h, 0.0);
            e_pim = std::max(caps.q_h - avail, 0.0);
        } else if (sig.lmp < th.pi_hi) {
            e_ph = std::min(avail, caps.q_h);
            e_pex = std::max(avail - caps.q_h, 0.0);
            e_pim = 0.0;
        } else {
            e_ph = 0.0;
            e_pex = avail;
            e_pim = 0.0;
        }
        const Dispatch d = optimal_dispatch(p, caps, sig, ParticipationModel::M2).dispatch;
        CHECK(d.p_h == e_ph);
        CHECK(d.p_ex == e_pex);
        CHECK(d.p_im == e_pim);
    }
}

TEST_CASE("threshold-boundary prices still achieve the LP optimum") {
    std::mt19937_64 rng(137);
    for (int i = 0; i < 500; ++i) {
        const MarketParams p = random_params(rng);
        const Capacities caps = random_caps(rng);
        const Thresholds th = compute_thresholds(p);
        const double boundaries[] = {th.neg_im, th.neg_ex, th.pi_lo, th.pi_hi};
        IntervalSignal sig = random_signal(rng);
        sig.lmp = boundaries[rng() % 4];
        for (ParticipationModel m : {ParticipationModel::M0, ParticipationModel::M1p,
                                     ParticipationModel::M1c, ParticipationModel::M2}) {
            const Dispatch d = optimal_dispatch(p, caps, sig, m).dispatch;
            const double closed = gross_profit(p, caps, sig, d);
            CHECK(close_rel(closed, solve_exact(p, caps, sig, m).gross, 1e-9));
        }
    }
}

TEST_CASE("nonstandard ordering is rejected with a pointer to the oracle") {
    std::mt19937_64 rng(29);
    const MarketParams p = random_nonstandard_params(rng);
    CHECK_THROWS_AS(optimal_dispatch(p, kCaps, {0.01, 0.5}, ParticipationModel::M2),
                    nonstandard_ordering_error);
    // The fallback wrapper matches the oracle.
    for (int i = 0; i < 200; ++i) {
        const IntervalSignal sig = random_signal(rng);
        const ParticipationModel m = random_model(rng);
        const DispatchProfit dp = dispatch_any_ordering(p, kCaps, sig, m);
        CHECK(dp.from_oracle);
        CHECK(close_rel(dp.gross, solve_exact(p, kCaps, sig, m).gross, 1e-12));
    }
}
