#include "rchp/market.hpp"

#include <cmath>
#include <sstream>

#include "rchp/series.hpp"

namespace rchp {

const char* model_name(ParticipationModel m) {
    switch (m) {
        case ParticipationModel::M0: return "m0";
        case ParticipationModel::M1p: return "m1p";
        case ParticipationModel::M1c: return "m1c";
        case ParticipationModel::M2: return "m2";
    }
    return "m2";
}

ParticipationModel model_from_name(const std::string& name) {
    if (name == "m0") return ParticipationModel::M0;
    if (name == "m1p") return ParticipationModel::M1p;
    if (name == "m1c") return ParticipationModel::M1c;
    if (name == "m2") return ParticipationModel::M2;
    throw input_error("unknown participation model '" + name + "' (expected m0|m1p|m1c|m2)");
}

void MarketParams::validate() const {
    if (!(gamma > 0.0)) throw input_error("gamma must be > 0");
    if (!(interval_hours > 0.0)) throw input_error("interval_hours must be > 0");
    if (!(intervals_per_year > 0.0)) throw input_error("intervals_per_year must be > 0");
    if (!(hydrogen_margin() >= 0.0))
        throw input_error("pi_h + tau_h - c_w must be >= 0 (hydrogen from own renewables must at least break even)");
    if (!(tau_rec_im >= tau_rec_ex))
        throw input_error("tau_rec_im must not be below tau_rec_ex (REC no-arbitrage)");
    for (double v : {pi_h, tau_h, tau_r, tau_rec_ex, tau_rec_im, c_w, alpha_r, alpha_h})
        if (!std::isfinite(v)) throw input_error("market parameter is not finite");
}

double Capacities::ratio() const {
    if (!(q_r > 0.0)) throw input_error("capacity ratio undefined: q_r must be > 0");
    return q_h / q_r;
}

void Capacities::validate() const {
    if (!(q_r >= 0.0) || !std::isfinite(q_r)) throw input_error("q_r must be finite and >= 0");
    if (!(q_h >= 0.0) || !std::isfinite(q_h)) throw input_error("q_h must be finite and >= 0");
}

void IntervalSignal::validate() const {
    if (!std::isfinite(lmp)) throw input_error("lmp must be finite");
    if (!(eta >= 0.0 && eta <= 1.0)) throw input_error("eta must lie in [0, 1]");
}

void SignalSeries::validate() const {
    if (intervals.empty()) throw input_error("empty series");
    if (!(interval_hours > 0.0)) throw input_error("interval_hours must be > 0");
    for (const auto& s : intervals) s.validate();
    if (!stamps.empty() && stamps.size() != intervals.size())
        throw input_error("timestamp count does not match interval count");
}

Thresholds compute_thresholds(const MarketParams& params) {
    params.validate();
    Thresholds th;
    const double value = params.gamma * params.hydrogen_margin();
    th.pi_lo = value - params.tau_rec_im;
    th.pi_hi = value - params.tau_rec_ex;
    th.neg_im = -params.tau_rec_im;
    th.neg_ex = -params.tau_rec_ex;
    th.standard_ordering = th.neg_im < th.neg_ex && th.neg_ex < th.pi_lo && th.pi_lo < th.pi_hi;
    return th;
}

namespace {

// Feasibility slack proportional to the problem scale.
double feas_eps(const Capacities& caps, const IntervalSignal& sig) {
    const double scale = std::max({1.0, caps.q_h, sig.eta * caps.q_r});
    return 1e-9 * scale;
}

[[noreturn]] void violated(const char* constraint, double lhs, double bound) {
    std::ostringstream os;
    os << "infeasible dispatch: " << constraint << " violated (" << lhs
       << " vs bound " << bound << ")";
    throw input_error(os.str());
}

} // namespace

void Dispatch::validate(const MarketParams& params, const Capacities& caps,
                        const IntervalSignal& sig, bool check_h) const {
    const double avail = sig.eta * caps.q_r;
    const double eps = feas_eps(caps, sig);
    if (p_h < -eps || p_h > caps.q_h + eps) violated("electrolyzer input limit", p_h, caps.q_h);
    if (p_ex < -eps || p_ex > avail + eps) violated("export limit", p_ex, avail);
    if (p_im < -eps || p_im > caps.q_h + eps) violated("import limit", p_im, caps.q_h);
    const double net = p_h + p_ex - p_im;
    if (net < -eps || net > avail + eps) violated("power balance", net, avail);
    if (std::min(p_im, p_ex) > eps) violated("import/export complementarity", p_im * p_ex, 0.0);
    if (check_h) {
        const double expected = params.gamma * p_h * params.interval_hours;
        const double tol = 1e-9 * std::max(1.0, std::abs(expected));
        if (std::abs(h - expected) > tol) violated("hydrogen accounting", h, expected);
    }
}

double gross_profit(const MarketParams& params, const Capacities& caps,
                    const IntervalSignal& sig, const Dispatch& d) {
    d.validate(params, caps, sig);
    const double dt = params.interval_hours;
    return (params.pi_h + params.tau_h) * params.gamma * d.p_h * dt
         + (sig.lmp + params.tau_rec_ex) * d.p_ex * dt
         + params.tau_r * sig.eta * caps.q_r * dt
         - params.c_w * params.gamma * d.p_h * dt
         - (sig.lmp + params.tau_rec_im) * d.p_im * dt;
}

double gross_profit_for_hydrogen(const MarketParams& params, const Capacities& caps,
                                 const IntervalSignal& sig, double p_ex, double p_im,
                                 double h_kg) {
    const double dt = params.interval_hours;
    return (params.pi_h + params.tau_h) * h_kg
         + (sig.lmp + params.tau_rec_ex) * p_ex * dt
         + params.tau_r * sig.eta * caps.q_r * dt
         - params.c_w * h_kg
         - (sig.lmp + params.tau_rec_im) * p_im * dt;
}

AmortizedCost amortized_fixed_cost(const MarketParams& params, const Capacities& caps,
                                   double n_intervals) {
    if (!(n_intervals >= 0.0)) throw input_error("interval count must be >= 0");
    AmortizedCost c;
    const double fraction = n_intervals / params.intervals_per_year;
    c.alpha_r_n = fraction * params.alpha_r;
    c.alpha_h_n = fraction * params.alpha_h;
    c.total = c.alpha_r_n * caps.q_r + c.alpha_h_n * caps.q_h;
    return c;
}

} // namespace rchp
