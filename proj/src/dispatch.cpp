#include "rchp/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rchp/lp_oracle.hpp"

namespace rchp {

const char* region_name(RegionLabel r) {
    switch (r) {
        case RegionLabel::R1: return "R1";
        case RegionLabel::R2: return "R2";
        case RegionLabel::R2p: return "R2p";
        case RegionLabel::R3: return "R3";
        case RegionLabel::R4: return "R4";
        case RegionLabel::R5_neg: return "R5";
        case RegionLabel::R6_neg: return "R6";
    }
    return "?";
}

namespace {

double pos(double x) { return std::max(x, 0.0); }

Dispatch make_dispatch(const MarketParams& params, double p_h, double p_ex, double p_im) {
    Dispatch d;
    d.p_h = p_h;
    d.p_ex = p_ex;
    d.p_im = p_im;
    d.h = params.gamma * p_h * params.interval_hours;
    return d;
}

// Prosumer branch table over the five price bands. avail = eta*q_r.
DispatchResult dispatch_m2(const MarketParams& params, const Capacities& caps,
                           const IntervalSignal& sig, const Thresholds& th) {
    const double avail = sig.eta * caps.q_r;
    const double q_h = caps.q_h;
    DispatchResult r;
    if (sig.lmp <= th.neg_im) {
        // Paid to import: run the electrolyzer fully from the grid, curtail.
        r.dispatch = make_dispatch(params, q_h, 0.0, q_h);
        r.region = RegionLabel::R6_neg;
    } else if (sig.lmp <= th.neg_ex) {
        // Export would pay the grid; import only to cover the shortfall.
        r.dispatch = make_dispatch(params, q_h, 0.0, pos(q_h - avail));
        r.region = avail <= q_h ? RegionLabel::R1 : RegionLabel::R5_neg;
    } else if (sig.lmp <= th.pi_lo) {
        r.dispatch = make_dispatch(params, q_h, pos(avail - q_h), pos(q_h - avail));
        r.region = avail <= q_h ? RegionLabel::R1 : RegionLabel::R4;
    } else if (sig.lmp < th.pi_hi) {
        r.dispatch = make_dispatch(params, std::min(avail, q_h), pos(avail - q_h), 0.0);
        r.region = avail <= q_h ? RegionLabel::R2 : RegionLabel::R4;
    } else {
        r.dispatch = make_dispatch(params, 0.0, avail, 0.0);
        r.region = RegionLabel::R3;
    }
    return r;
}

// Producer: the no-import LP's closed form.
DispatchResult dispatch_m1p(const MarketParams& params, const Capacities& caps,
                            const IntervalSignal& sig, const Thresholds& th) {
    const double avail = sig.eta * caps.q_r;
    const double q_h = caps.q_h;
    DispatchResult r;
    if (sig.lmp >= th.pi_hi) {
        r.dispatch = make_dispatch(params, 0.0, avail, 0.0);
        r.region = RegionLabel::R3;
    } else if (sig.lmp > th.neg_ex) {
        r.dispatch = make_dispatch(params, std::min(avail, q_h), pos(avail - q_h), 0.0);
        r.region = avail <= q_h ? (sig.lmp > th.pi_lo ? RegionLabel::R2 : RegionLabel::R2p)
                                : RegionLabel::R4;
    } else {
        // Exporting pays the grid: keep the surplus curtailed.
        r.dispatch = make_dispatch(params, std::min(avail, q_h), 0.0, 0.0);
        r.region = avail <= q_h ? RegionLabel::R2p : RegionLabel::R5_neg;
    }
    return r;
}

// Consumer: the no-export LP's closed form.
DispatchResult dispatch_m1c(const MarketParams& params, const Capacities& caps,
                            const IntervalSignal& sig, const Thresholds& th) {
    const double avail = sig.eta * caps.q_r;
    const double q_h = caps.q_h;
    DispatchResult r;
    if (sig.lmp <= th.neg_im) {
        r.dispatch = make_dispatch(params, q_h, 0.0, q_h);
        r.region = RegionLabel::R6_neg;
    } else if (sig.lmp <= th.pi_lo) {
        r.dispatch = make_dispatch(params, q_h, 0.0, pos(q_h - avail));
        r.region = avail <= q_h ? RegionLabel::R1 : RegionLabel::R5_neg;
    } else {
        r.dispatch = make_dispatch(params, std::min(avail, q_h), 0.0, 0.0);
        r.region = avail <= q_h ? (sig.lmp < th.pi_hi ? RegionLabel::R2 : RegionLabel::R2p)
                                : RegionLabel::R5_neg;
    }
    return r;
}

DispatchResult dispatch_m0(const MarketParams& params, const Capacities& caps,
                           const IntervalSignal& sig, const Thresholds& th) {
    const double avail = sig.eta * caps.q_r;
    DispatchResult r;
    r.dispatch = make_dispatch(params, std::min(avail, caps.q_h), 0.0, 0.0);
    if (avail <= caps.q_h)
        r.region = (sig.lmp > th.pi_lo && sig.lmp < th.pi_hi) ? RegionLabel::R2 : RegionLabel::R2p;
    else
        r.region = RegionLabel::R5_neg;
    return r;
}

} // namespace

DispatchResult optimal_dispatch(const MarketParams& params, const Capacities& caps,
                                const IntervalSignal& sig, ParticipationModel model) {
    caps.validate();
    sig.validate();
    const Thresholds th = compute_thresholds(params);
    if (!th.standard_ordering)
        throw nonstandard_ordering_error(
            "threshold ordering is nonstandard; use lp_oracle::solve_exact");
    switch (model) {
        case ParticipationModel::M0: return dispatch_m0(params, caps, sig, th);
        case ParticipationModel::M1p: return dispatch_m1p(params, caps, sig, th);
        case ParticipationModel::M1c: return dispatch_m1c(params, caps, sig, th);
        case ParticipationModel::M2: return dispatch_m2(params, caps, sig, th);
    }
    throw computation_error("unreachable participation model");
}

RegionLabel classify_region(const MarketParams& params, const Capacities& caps,
                            const IntervalSignal& sig, ParticipationModel model) {
    return optimal_dispatch(params, caps, sig, model).region;
}

DispatchProfit dispatch_any_ordering(const MarketParams& params, const Capacities& caps,
                                     const IntervalSignal& sig, ParticipationModel model) {
    DispatchProfit out;
    const Thresholds th = compute_thresholds(params);
    if (th.standard_ordering) {
        out.dispatch = optimal_dispatch(params, caps, sig, model).dispatch;
        out.gross = gross_profit(params, caps, sig, out.dispatch);
    } else {
        const OracleSolution sol = solve_exact(params, caps, sig, model);
        out.dispatch = sol.dispatch;
        out.gross = sol.gross;
        out.from_oracle = true;
    }
    return out;
}

PiecewiseDispatchResult optimal_dispatch_piecewise(const MarketParams& params,
                                                   const Capacities& caps,
                                                   const IntervalSignal& sig,
                                                   ParticipationModel model,
                                                   const PiecewiseProduction& pw) {
    params.validate();
    caps.validate();
    sig.validate();
    const double avail = sig.eta * caps.q_r;
    const double q_h = caps.q_h;
    const double dt = params.interval_hours;
    const std::vector<double> breaks = pw.breakpoints_within(q_h);

    const bool can_import = model == ParticipationModel::M1c || model == ParticipationModel::M2;
    const bool can_export = model == ParticipationModel::M1p || model == ParticipationModel::M2;

    PiecewiseDispatchResult best;
    bool have_best = false;

    auto consider = [&](double p_h, double p_ex, double p_im) {
        const double h = pw.envelope(p_h) * dt;
        const double value = gross_profit_for_hydrogen(params, caps, sig, p_ex, p_im, h);
        if (!have_best || value > best.gross) {
            best.dispatch.p_h = p_h;
            best.dispatch.p_ex = p_ex;
            best.dispatch.p_im = p_im;
            best.dispatch.h = h;
            best.gross = value;
            best.segment = pw.active_segment(p_h);
            have_best = true;
        }
    };

    // Import case first so fp-exact ties land on the import-side branch, the
    // weak-inequality convention of the linear branch table.
    if (can_import) {
        std::vector<double> cand{q_h};
        for (auto it = breaks.rbegin(); it != breaks.rend(); ++it) cand.push_back(*it);
        cand.push_back(std::min(avail, q_h));
        cand.push_back(0.0);
        for (double p_h : cand) {
            consider(p_h, 0.0, p_h);              // full import, renewables curtailed
            consider(p_h, 0.0, pos(p_h - avail)); // minimal import
        }
    }
    if (can_export) {
        std::vector<double> cand{0.0};
        for (double b : breaks)
            if (b <= avail) cand.push_back(b); // balance caps p_h at the renewable level
        cand.push_back(std::min(avail, q_h));
        for (double p_h : cand) {
            consider(p_h, 0.0, 0.0);         // curtail the surplus
            consider(p_h, avail - p_h, 0.0); // export the surplus
        }
    }
    if (!can_import && !can_export) {
        std::vector<double> cand{std::min(avail, q_h)};
        for (auto it = breaks.rbegin(); it != breaks.rend(); ++it)
            if (*it <= avail) cand.push_back(*it);
        cand.push_back(0.0);
        for (double p_h : cand) consider(p_h, 0.0, 0.0);
    }
    return best;
}

} // namespace rchp
