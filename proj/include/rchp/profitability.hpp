#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "rchp/dispatch.hpp"
#include "rchp/market.hpp"
#include "rchp/series.hpp"

namespace rchp {

constexpr std::size_t kRegionCount = 7;

// Empirical per-unit-capacity revenue sums at a fixed capacity ratio kappa:
// gross profit of the optimally dispatched series equals
// sum_a_r*q_r + sum_a_h*q_h for every (q_r, q_h) with q_h/q_r = kappa.
struct ProfitCoefficients {
    double sum_a_r = 0.0;   // $/kW of renewable capacity
    double sum_a_h = 0.0;   // $/kW of electrolyzer capacity
    double kappa = 0.0;     // ratio the sums were computed at
    double alpha_r_n = 0.0; // amortized fixed cost, $/kW over the n intervals
    double alpha_h_n = 0.0;
    std::size_t n = 0;      // interval count behind the sums
    std::array<double, kRegionCount> region_probs{}; // empirical region frequencies
};

ProfitCoefficients estimate_coefficients(const SignalSeries& series, double kappa,
                                         const MarketParams& params,
                                         ParticipationModel model = ParticipationModel::M2);

// (sum_a_r - alpha_r_n)*q_r + (sum_a_h - alpha_h_n)*q_h. Throws input_error
// when caps.ratio() disagrees with coeffs.kappa beyond 1e-12 relative.
double operating_profit(const ProfitCoefficients& coeffs, const Capacities& caps);

// Precomputed kappa-profile of a series: coefficient sums for any kappa in
// O(log n) (the eta-sorted prefix-sum trick). Classification reuses
// classify_region, so dispatch and Prop-1 regions cannot disagree.
class CoefficientProfile {
public:
    CoefficientProfile(const SignalSeries& series, const MarketParams& params,
                       ParticipationModel model);

    // Revenue sums at ratio kappa (kappa >= 1 all share the same sums).
    void sums_at(double kappa, double& sum_a_r, double& sum_a_h) const;

    // Operating profit of (q_r, q_h) over n_horizon intervals, scaling the
    // empirical sums by n_horizon / series_n.
    double profit(const Capacities& caps, double n_horizon) const;

    double series_n() const { return static_cast<double>(n_); }
    const MarketParams& params() const { return params_; }

private:
    struct Entry {
        double eta;
        double a_r_low, a_h_low;   // row when eta*q_r <= q_h
        double a_r_high, a_h_high; // row when eta*q_r >  q_h
    };
    std::vector<double> etas_;
    std::vector<double> pre_r_low_, pre_h_low_;  // prefix sums over eta-sorted low rows
    std::vector<double> suf_r_high_, suf_h_high_; // suffix sums over high rows
    std::size_t n_ = 0;
    MarketParams params_;
};

enum class Classification { Profitable, Deficit, BreakEven };
const char* classification_name(Classification c);

// A capacity point with its n-interval operating profit and sign class.
// BreakEven uses a 1e-6 band relative to the gross money flow at the point.
struct CapacityPlan {
    Capacities caps;
    double op_profit = 0.0;
    Classification classification = Classification::BreakEven;
};

CapacityPlan classify_capacity(const CoefficientProfile& profile, const Capacities& caps,
                               double n_horizon);

// All break-even ratios kappa0 in [0, kappa_max]: sign changes of
// g(kappa) = (sum_a_r - alpha_r_n) + kappa*(sum_a_h - alpha_h_n), located by a
// scan at pitch d_kappa and bisection to 1e-8.
std::vector<double> breakeven_rays(const SignalSeries& series, const MarketParams& params,
                                   double n_horizon,
                                   ParticipationModel model = ParticipationModel::M2,
                                   double kappa_max = 3.0, double d_kappa = 1e-3);

// Optimal electrolyzer-to-renewable ratio for a fixed q_r: the zero crossing
// of d(kappa) = sum_a_h(kappa) - alpha_h_n on [0, 1] (d is nonincreasing).
struct MatchingResult {
    double kappa_star = 0.0;
    double q_h_star = 0.0;
    bool open_ended = false; // d(1) >= 0: any kappa >= 1 optimal (unbounded if d(1) > 0)
    double d_at_1 = 0.0;
};

MatchingResult matching_capacity(const SignalSeries& series, const MarketParams& params,
                                 double n_horizon, double q_r,
                                 ParticipationModel model = ParticipationModel::M2);

// Budget-constrained joint sizing: bisection on the monotone ratio condition
// sum_a_h/sum_a_r = alpha_h_n/alpha_r_n, capacities from the budget line
// alpha_r_n*q_r + alpha_h_n*q_h = budget; cross-validated against a 200-point
// sweep of the kappa in [0, kappa_max] segment of that line.
struct SizingResult {
    Capacities caps;
    double kappa_star = 0.0;
    double op_profit = 0.0;
    double budget_residual = 0.0; // |alpha_r_n*q_r + alpha_h_n*q_h - budget|
    bool ratio_crossed = true;    // false when a boundary candidate was returned
};

SizingResult optimal_nameplate(const SignalSeries& series, const MarketParams& params,
                               double n_horizon, double budget,
                               ParticipationModel model = ParticipationModel::M2,
                               double kappa_max = 3.0);

} // namespace rchp
