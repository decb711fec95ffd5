#pragma once

#include <string>

#include "rchp/errors.hpp"

namespace rchp {

// How the plant interfaces with the wholesale market:
//   M0   standalone (no grid connection)
//   M1p  producer (export only)
//   M1c  consumer (import only)
//   M2   prosumer (both directions)
enum class ParticipationModel { M0, M1p, M1c, M2 };

const char* model_name(ParticipationModel m);
ParticipationModel model_from_name(const std::string& name);

// Time-invariant economics and schedule geometry. Canonical units throughout:
// kW, kWh, $/kWh, $/kg, kg/kWh, hours. $/MWh inputs are converted at the
// ingestion boundary, never here.
struct MarketParams {
    double pi_h = 4.0;          // hydrogen market price, $/kg
    double tau_h = 3.0;         // green hydrogen production credit, $/kg
    double tau_r = 0.0275;      // renewable production tax credit, $/kWh
    double tau_rec_ex = 0.010;  // REC price earned on exported renewable, $/kWh
    double tau_rec_im = 0.0318; // REC price paid on imported renewable, $/kWh
    double gamma = 0.019;       // electrolyzer efficiency, kg/kWh
    double c_w = 0.10;          // marginal cost of consumable inputs, $/kg
    double alpha_r = 85.50;     // fixed operating cost of renewable capacity, $/kW/yr
    double alpha_h = 101.25;    // fixed operating cost of electrolyzer capacity, $/kW/yr
    double intervals_per_year = 8760.0; // N
    double interval_hours = 1.0;        // dT

    // Net hydrogen margin before electricity, $/kg.
    double hydrogen_margin() const { return pi_h + tau_h - c_w; }

    // Throws input_error when an invariant is violated.
    void validate() const;
};

struct Capacities {
    double q_r = 0.0; // renewable nameplate, kW
    double q_h = 0.0; // electrolyzer nameplate, kW

    // kappa = q_h / q_r; only defined for q_r > 0.
    double ratio() const;
    void validate() const;
};

// One scheduling interval's exogenous signals.
struct IntervalSignal {
    double lmp = 0.0; // $/kWh, may be negative
    double eta = 0.0; // renewable capacity factor in [0, 1]

    void validate() const;
};

// The four LMP break points of the optimal policy. Standard ordering is
// neg_im < neg_ex < pi_lo < pi_hi; anything else routes through lp_oracle.
struct Thresholds {
    double pi_lo = 0.0;  // gamma*(pi_h+tau_h-c_w) - tau_rec_im, $/kWh
    double pi_hi = 0.0;  // gamma*(pi_h+tau_h-c_w) - tau_rec_ex, $/kWh
    double neg_im = 0.0; // -tau_rec_im
    double neg_ex = 0.0; // -tau_rec_ex
    bool standard_ordering = false;
};

Thresholds compute_thresholds(const MarketParams& params);

// Per-interval decision triple plus the hydrogen it produces.
struct Dispatch {
    double p_h = 0.0;  // electrolyzer input, kW
    double p_ex = 0.0; // export to grid, kW
    double p_im = 0.0; // import from grid, kW
    double h = 0.0;    // hydrogen produced this interval, kg

    // Checks bounds, power balance, I/O complementarity and (for the linear
    // production model) the hydrogen accounting h = gamma*p_h*dT. Throws
    // input_error naming the violated constraint. check_h=false skips the
    // hydrogen accounting check (piecewise production).
    void validate(const MarketParams& params, const Capacities& caps,
                  const IntervalSignal& sig, bool check_h = true) const;
};

// Gross profit of a feasible dispatch in one interval, $:
// hydrogen sales + credits + export revenue + renewable PTC - water - import.
double gross_profit(const MarketParams& params, const Capacities& caps,
                    const IntervalSignal& sig, const Dispatch& d);

// Same revenue expression with the hydrogen quantity decoupled from
// gamma*p_h (piecewise production model).
double gross_profit_for_hydrogen(const MarketParams& params, const Capacities& caps,
                                 const IntervalSignal& sig, double p_ex, double p_im,
                                 double h_kg);

// n-interval amortized per-unit fixed costs (n/N scaled annual costs), $/kW.
struct AmortizedCost {
    double alpha_r_n = 0.0;
    double alpha_h_n = 0.0;
    double total = 0.0; // alpha_r_n*q_r + alpha_h_n*q_h, $
};

AmortizedCost amortized_fixed_cost(const MarketParams& params, const Capacities& caps,
                                   double n_intervals);

} // namespace rchp
