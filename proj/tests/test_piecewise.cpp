#include <doctest.h>

#include <random>

#include "rchp/dispatch.hpp"
#include "rchp/lp_oracle.hpp"
#include "support/instance_gen.hpp"
#include "support/pw_oracle.hpp"

using namespace rchp;
using namespace rchp::testing;

namespace {

const Capacities kCaps{45000.0, 20000.0};

PiecewiseProduction random_two_segment(std::mt19937_64& rng, double q_h) {
    const double a1 = uniform(rng, 0.015, 0.03);
    const double a2 = a1 * uniform(rng, 0.3, 0.9);
    const double q_t = q_h * uniform(rng, 0.1, 0.9);
    const double b2 = q_t * (a1 - a2);
    return PiecewiseProduction({{a1, 0.0}, {a2, b2}});
}

} // namespace

TEST_CASE("piecewise construction enforces concavity") {
    CHECK_THROWS_AS(PiecewiseProduction({{0.01, 0.0}, {0.02, 10.0}}), input_error); // slopes up
    CHECK_THROWS_AS(PiecewiseProduction({{0.02, 1.0}}), input_error);               // beta1 != 0
    CHECK_THROWS_AS(PiecewiseProduction({{0.02, 0.0}, {-0.001, 10.0}}), input_error);
    CHECK_THROWS_AS(PiecewiseProduction({{0.02, 0.0}, {0.01, -5.0}}), input_error);
    CHECK_THROWS_AS(PiecewiseProduction({}), input_error);
    CHECK_NOTHROW(PiecewiseProduction({{0.02, 0.0}, {0.01, 50.0}}));
}

TEST_CASE("breakpoints must fall inside (0, q_h)") {
    const MarketParams p = table_params(4.0);
    const PiecewiseProduction pw({{0.02, 0.0}, {0.01, 500.0}}); // breakpoint at 50 MW
    CHECK_THROWS_AS(
        optimal_dispatch_piecewise(p, Capacities{45000.0, 20000.0}, {0.05, 0.5},
                                   ParticipationModel::M2, pw),
        input_error);
    CHECK_NOTHROW(optimal_dispatch_piecewise(p, Capacities{45000.0, 60000.0}, {0.05, 0.5},
                                             ParticipationModel::M2, pw));
}

TEST_CASE("segment thresholds follow the per-segment efficiency") {
    const MarketParams p = table_params(4.0);
    const PiecewiseProduction pw({{0.021, 0.0}, {0.017, 60.0}});
    const SegmentThresholds th = piecewise_thresholds(p, pw);
    const double margin = p.pi_h + p.tau_h - p.c_w;
    CHECK(th.pi_lo[0] == doctest::Approx(0.021 * margin - p.tau_rec_im));
    CHECK(th.pi_lo[1] == doctest::Approx(0.017 * margin - p.tau_rec_im));
    CHECK(th.pi_hi[0] == doctest::Approx(0.021 * margin - p.tau_rec_ex));
    CHECK(th.pi_hi[1] == doctest::Approx(0.017 * margin - p.tau_rec_ex));
}

TEST_CASE("single segment reduces to the linear policy bit for bit") {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 2000; ++i) {
        const MarketParams p = random_params(rng);
        const Capacities caps = random_caps(rng);
        const IntervalSignal sig = random_signal(rng);
        const ParticipationModel m = random_model(rng);
        const PiecewiseProduction pw = PiecewiseProduction::linear(p.gamma);
        const auto linear = optimal_dispatch(p, caps, sig, m).dispatch;
        const auto piecewise = optimal_dispatch_piecewise(p, caps, sig, m, pw).dispatch;
        CHECK(linear.p_h == piecewise.p_h);
        CHECK(linear.p_ex == piecewise.p_ex);
        CHECK(linear.p_im == piecewise.p_im);
        CHECK(linear.h == piecewise.h);
    }
}

TEST_CASE("highest segment threshold switches to all-export") {
    const MarketParams p = table_params(4.0);
    const PiecewiseProduction pw({{0.021, 0.0}, {0.014, 70.0}});
    const SegmentThresholds th = piecewise_thresholds(p, pw);
    const IntervalSignal sig{th.pi_hi[0] + 0.001, 0.5};
    const auto res = optimal_dispatch_piecewise(p, kCaps, sig, ParticipationModel::M2, pw);
    CHECK(res.dispatch.p_h == 0.0);
    CHECK(res.dispatch.p_ex == doctest::Approx(22500.0));
    CHECK(res.dispatch.h == 0.0);
}

TEST_CASE("deep low price saturates both segments") {
    const MarketParams p = table_params(4.0);
    const PiecewiseProduction pw({{0.021, 0.0}, {0.014, 70.0}});
    const IntervalSignal sig{-0.005, 0.6}; // below every threshold, eta*q_r > q_h
    const auto res = optimal_dispatch_piecewise(p, kCaps, sig, ParticipationModel::M2, pw);
    CHECK(res.dispatch.p_h == doctest::Approx(kCaps.q_h));
    CHECK(res.dispatch.h ==
          doctest::Approx((0.014 * kCaps.q_h + 70.0) * p.interval_hours).epsilon(1e-12));
    CHECK(res.segment == 1);
}

TEST_CASE("two-segment optimum dominates a dense dispatch grid") {
    std::mt19937_64 rng(149);
    for (int i = 0; i < 30; ++i) {
        const MarketParams p = random_params(rng);
        const Capacities caps = random_caps(rng);
        const IntervalSignal sig = random_signal(rng);
        const PiecewiseProduction pw = random_two_segment(rng, caps.q_h);
        const double impl = optimal_dispatch_piecewise(p, caps, sig,
                                                       ParticipationModel::M2, pw).gross;
        const double avail = sig.eta * caps.q_r;
        const double dt = p.interval_hours;
        const int steps = 300;
        double grid_best = -1e300;
        auto value = [&](double p_h, double p_ex, double p_im) {
            return gross_profit_for_hydrogen(p, caps, sig, p_ex, p_im,
                                             pw.envelope(p_h) * dt);
        };
        for (int a = 0; a <= steps; ++a) {
            // Export side: p_h + p_ex <= avail.
            const double ph_ex = std::min(caps.q_h, avail) * a / steps;
            for (int b = 0; b <= steps; ++b)
                grid_best = std::max(grid_best, value(ph_ex, (avail - ph_ex) * b / steps, 0.0));
            // Import side: p_im in [max(0, p_h - avail), p_h].
            const double ph_im = caps.q_h * a / steps;
            const double lo = std::max(0.0, ph_im - avail);
            for (int b = 0; b <= steps; ++b)
                grid_best = std::max(grid_best, value(ph_im, 0.0, lo + (ph_im - lo) * b / steps));
        }
        CHECK(grid_best <= impl + 1e-9 * std::max(1.0, std::abs(impl)));
        CHECK(close_rel(grid_best, impl, 2e-2));
    }
}

TEST_CASE("two-segment dispatch matches the closed-form region map and the LP") {
    std::mt19937_64 rng(53);
    int hi2_above_lo1 = 0, hi2_below_lo1 = 0;
    for (int i = 0; i < 2000; ++i) {
        const MarketParams p = random_params(rng);
        const Capacities caps = random_caps(rng);
        const IntervalSignal sig = random_signal(rng);
        const ParticipationModel m = random_model(rng);
        const PiecewiseProduction pw = random_two_segment(rng, caps.q_h);
        const SegmentThresholds th = piecewise_thresholds(p, pw);
        (th.pi_hi[1] > th.pi_lo[0] ? hi2_above_lo1 : hi2_below_lo1)++;

        const auto impl = optimal_dispatch_piecewise(p, caps, sig, m, pw);
        const double closed = pw_closed_form_profit(p, caps, sig, m, pw);
        const double exact = solve_exact(p, caps, sig, m, pw).gross;
        CHECK(close_rel(impl.gross, closed, 1e-9));
        CHECK(close_rel(impl.gross, exact, 1e-9));
        CHECK_NOTHROW(impl.dispatch.validate(p, caps, sig, /*check_h=*/false));
    }
    // Both orderings of pi_hi_2 vs pi_lo_1 must actually occur.
    CHECK(hi2_above_lo1 > 100);
    CHECK(hi2_below_lo1 > 100);
}
