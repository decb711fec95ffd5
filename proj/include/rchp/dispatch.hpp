#pragma once

#include <string>

#include "rchp/market.hpp"
#include "rchp/piecewise.hpp"

namespace rchp {

// Operating regions of the optimal policy on the (renewable level, LMP) plane.
//   R1     import to fill the electrolyzer (low LMP, limited renewable)
//   R2     net-zero inside (pi_lo, pi_hi), all renewable to hydrogen
//   R2p    net-zero outside the band, forced by a restricted model
//   R3     export everything (high LMP)
//   R4     produce at capacity and export the surplus
//   R5_neg produce at capacity and curtail the surplus (export barred or unprofitable)
//   R6_neg import the full electrolyzer load and curtail all renewable
enum class RegionLabel { R1, R2, R2p, R3, R4, R5_neg, R6_neg };

const char* region_name(RegionLabel r);

struct DispatchResult {
    Dispatch dispatch;
    RegionLabel region = RegionLabel::R2;
};

// Closed-form profit-maximizing dispatch for one interval. Requires the
// standard threshold ordering; otherwise throws nonstandard_ordering_error
// (use lp_oracle::solve_exact).
DispatchResult optimal_dispatch(const MarketParams& params, const Capacities& caps,
                                const IntervalSignal& sig, ParticipationModel model);

// The region of the branch optimal_dispatch takes.
RegionLabel classify_region(const MarketParams& params, const Capacities& caps,
                            const IntervalSignal& sig, ParticipationModel model);

// Closed form when the ordering is standard, exact LP fallback otherwise.
// Returns the dispatch and its gross profit.
struct DispatchProfit {
    Dispatch dispatch;
    double gross = 0.0;
    bool from_oracle = false;
};
DispatchProfit dispatch_any_ordering(const MarketParams& params, const Capacities& caps,
                                     const IntervalSignal& sig, ParticipationModel model);

// Optimal dispatch under the concave piecewise production model, solved
// exactly: the import and export cases are each reduced to <= 12 candidate
// vertices (bounds, renewable level, segment breakpoints) and the best
// feasible vertex wins. Works for any threshold ordering.
struct PiecewiseDispatchResult {
    Dispatch dispatch;          // h from the production envelope
    double gross = 0.0;         // $ for the interval
    std::size_t segment = 0;    // envelope segment active at p_h
};

PiecewiseDispatchResult optimal_dispatch_piecewise(const MarketParams& params,
                                                   const Capacities& caps,
                                                   const IntervalSignal& sig,
                                                   ParticipationModel model,
                                                   const PiecewiseProduction& pw);

} // namespace rchp
