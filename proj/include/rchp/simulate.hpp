#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rchp/dispatch.hpp"
#include "rchp/market.hpp"
#include "rchp/piecewise.hpp"
#include "rchp/series.hpp"

namespace rchp {

struct IntervalRecord {
    std::size_t t = 0;
    IntervalSignal signal;
    Dispatch dispatch;
    std::string region; // region label, or "S<k>" for piecewise runs
    double gross_profit = 0.0;
};

// Where the renewable energy went and what the money did, over a whole run.
// Percentages are of total renewable generation; the curtailment row is
// valued at the export opportunity (lmp + tau_rec_ex + tau_r), a
// definition-dependent metric flagged as such in reports.
struct RevenueBreakdown {
    double total_renewable_kwh = 0.0;
    double pct_renewable_to_hydrogen = 0.0;
    double pct_renewable_sold = 0.0;
    double pct_curtailed = 0.0;
    double hydrogen_kg = 0.0;
    double revenue_hydrogen = 0.0;         // (pi_h + tau_h) * kg
    double revenue_renewable_sales = 0.0;  // sum (lmp + tau_rec_ex) * p_ex * dT
    double renewable_credit = 0.0;         // sum tau_r * eta * q_r * dT
    double lost_revenue_curtailment = 0.0; // sum curtailed * (lmp + tau_rec_ex + tau_r) * dT
    double import_cost = 0.0;              // sum (lmp + tau_rec_im) * p_im * dT
    double water_cost = 0.0;               // c_w * kg
    double gross_profit = 0.0;             // sum of per-interval gross profits
    double amortized_fixed_cost = 0.0;
    double operating_profit = 0.0;         // gross_profit - amortized_fixed_cost
};

struct SimulationResult {
    std::vector<IntervalRecord> log;
    RevenueBreakdown breakdown;
};

// Dispatches every interval optimally (closed form, lp_oracle fallback on
// nonstandard orderings, piecewise solver when pw is given) and aggregates
// the breakdown. Renewable allocation is self-generation-first:
// to-hydrogen = min(p_h, eta*q_r), sold = p_ex, the rest is curtailed.
SimulationResult run_simulation(const SignalSeries& series, const MarketParams& params,
                                const Capacities& caps, ParticipationModel model,
                                const std::optional<PiecewiseProduction>& pw = std::nullopt);

// Plug-in profit forecast: coefficients estimated on the training series,
// scaled to horizon_n intervals, minus the horizon's amortized fixed cost.
// Assumes stationarity; the forecast is only as good as the training window's
// representation of the horizon's price/renewable joint distribution.
double forecast_profit(const SignalSeries& train, const Capacities& caps,
                       const MarketParams& params, double horizon_n,
                       ParticipationModel model = ParticipationModel::M2);

} // namespace rchp
