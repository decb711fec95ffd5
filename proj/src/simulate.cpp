#include "rchp/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "rchp/lp_oracle.hpp"
#include "rchp/profitability.hpp"

namespace rchp {

SimulationResult run_simulation(const SignalSeries& series, const MarketParams& params,
                                const Capacities& caps, ParticipationModel model,
                                const std::optional<PiecewiseProduction>& pw) {
    series.validate();
    params.validate();
    caps.validate();
    if (series.interval_hours != params.interval_hours)
        throw input_error("series interval_hours does not match params.interval_hours");

    const double dt = params.interval_hours;
    SimulationResult res;
    res.log.reserve(series.size());

    double to_hydrogen_kwh = 0.0;
    double sold_kwh = 0.0;

    for (std::size_t t = 0; t < series.size(); ++t) {
        const IntervalSignal& sig = series.intervals[t];
        IntervalRecord rec;
        rec.t = t;
        rec.signal = sig;
        if (pw) {
            const PiecewiseDispatchResult r = optimal_dispatch_piecewise(params, caps, sig, model, *pw);
            rec.dispatch = r.dispatch;
            rec.gross_profit = r.gross;
            rec.region = "S" + std::to_string(r.segment + 1);
        } else {
            const DispatchProfit r = dispatch_any_ordering(params, caps, sig, model);
            rec.dispatch = r.dispatch;
            rec.gross_profit = r.gross;
            rec.region = r.from_oracle ? "LP"
                                       : region_name(classify_region(params, caps, sig, model));
        }

        const double avail = sig.eta * caps.q_r;
        // Renewable consumed by the electrolyzer. Equals min(p_h, avail) in
        // every import branch except the paid-to-import ones (R5/R6), where
        // the optimum feeds the electrolyzer from the grid and curtails.
        const double own_to_h = std::max(0.0, rec.dispatch.p_h - rec.dispatch.p_im);
        const double curtailed = avail - own_to_h - rec.dispatch.p_ex;

        res.breakdown.total_renewable_kwh += avail * dt;
        to_hydrogen_kwh += own_to_h * dt;
        sold_kwh += rec.dispatch.p_ex * dt;
        res.breakdown.hydrogen_kg += rec.dispatch.h;
        res.breakdown.revenue_hydrogen += (params.pi_h + params.tau_h) * rec.dispatch.h;
        res.breakdown.revenue_renewable_sales +=
            (sig.lmp + params.tau_rec_ex) * rec.dispatch.p_ex * dt;
        res.breakdown.renewable_credit += params.tau_r * avail * dt;
        res.breakdown.lost_revenue_curtailment +=
            curtailed * (sig.lmp + params.tau_rec_ex + params.tau_r) * dt;
        res.breakdown.import_cost += (sig.lmp + params.tau_rec_im) * rec.dispatch.p_im * dt;
        res.breakdown.water_cost += params.c_w * rec.dispatch.h;
        res.breakdown.gross_profit += rec.gross_profit;

        res.log.push_back(rec);
    }

    RevenueBreakdown& b = res.breakdown;
    if (b.total_renewable_kwh > 0.0) {
        b.pct_renewable_to_hydrogen = 100.0 * to_hydrogen_kwh / b.total_renewable_kwh;
        b.pct_renewable_sold = 100.0 * sold_kwh / b.total_renewable_kwh;
        b.pct_curtailed = 100.0 - b.pct_renewable_to_hydrogen - b.pct_renewable_sold;
        if (std::abs(b.pct_curtailed) < 1e-9) b.pct_curtailed = 0.0;
    }
    b.amortized_fixed_cost =
        amortized_fixed_cost(params, caps, static_cast<double>(series.size())).total;
    b.operating_profit = b.gross_profit - b.amortized_fixed_cost;
    return res;
}

double forecast_profit(const SignalSeries& train, const Capacities& caps,
                       const MarketParams& params, double horizon_n,
                       ParticipationModel model) {
    train.validate();
    if (!(horizon_n >= 0.0)) throw input_error("horizon_n must be >= 0");
    const double kappa = caps.q_r > 0.0 ? caps.q_h / caps.q_r : 1.0;
    const ProfitCoefficients coeffs = estimate_coefficients(train, kappa, params, model);
    const double scale = horizon_n / static_cast<double>(train.size());
    const AmortizedCost amort = amortized_fixed_cost(params, caps, horizon_n);
    return (scale * coeffs.sum_a_r) * caps.q_r + (scale * coeffs.sum_a_h) * caps.q_h -
           amort.total;
}

} // namespace rchp
