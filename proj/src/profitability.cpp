#include "rchp/profitability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace rchp {

const char* classification_name(Classification c) {
    switch (c) {
        case Classification::Profitable: return "profitable";
        case Classification::Deficit: return "deficit";
        case Classification::BreakEven: return "break_even";
    }
    return "?";
}

namespace {

// Per-unit-capacity revenue of one interval, split by operating region so
// that gross profit == a_r*q_r + a_h*q_h holds exactly on each region.
void coefficient_row(RegionLabel label, const IntervalSignal& sig, const Thresholds& th,
                     const MarketParams& params, double& a_r, double& a_h) {
    const double dt = params.interval_hours;
    const double unit_value = params.gamma * params.hydrogen_margin(); // $/kWh into the electrolyzer
    switch (label) {
        case RegionLabel::R1:
            a_r = (sig.lmp + params.tau_rec_im + params.tau_r) * sig.eta;
            a_h = th.pi_lo - sig.lmp;
            break;
        case RegionLabel::R2:
        case RegionLabel::R2p:
            a_r = (unit_value + params.tau_r) * sig.eta;
            a_h = 0.0;
            break;
        case RegionLabel::R3:
            a_r = (sig.lmp + params.tau_rec_ex + params.tau_r) * sig.eta;
            a_h = 0.0;
            break;
        case RegionLabel::R4:
            a_r = (sig.lmp + params.tau_rec_ex + params.tau_r) * sig.eta;
            a_h = th.pi_hi - sig.lmp;
            break;
        case RegionLabel::R5_neg:
            a_r = params.tau_r * sig.eta;
            a_h = unit_value;
            break;
        case RegionLabel::R6_neg:
            a_r = params.tau_r * sig.eta;
            a_h = th.pi_lo - sig.lmp;
            break;
    }
    a_r *= dt;
    a_h *= dt;
}

} // namespace

ProfitCoefficients estimate_coefficients(const SignalSeries& series, double kappa,
                                         const MarketParams& params,
                                         ParticipationModel model) {
    series.validate();
    params.validate();
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw input_error("kappa must be finite and >= 0");
    const Thresholds th = compute_thresholds(params);
    const Capacities unit{1.0, kappa};

    ProfitCoefficients out;
    out.kappa = kappa;
    out.n = series.size();
    for (const auto& sig : series.intervals) {
        const RegionLabel label = classify_region(params, unit, sig, model);
        double a_r = 0.0, a_h = 0.0;
        coefficient_row(label, sig, th, params, a_r, a_h);
        out.sum_a_r += a_r;
        out.sum_a_h += a_h;
        out.region_probs[static_cast<std::size_t>(label)] += 1.0;
    }
    for (auto& p : out.region_probs) p /= static_cast<double>(out.n);
    const AmortizedCost amort =
        amortized_fixed_cost(params, unit, static_cast<double>(series.size()));
    out.alpha_r_n = amort.alpha_r_n;
    out.alpha_h_n = amort.alpha_h_n;
    return out;
}

double operating_profit(const ProfitCoefficients& coeffs, const Capacities& caps) {
    caps.validate();
    if (caps.q_r > 0.0) {
        const double kappa = caps.q_h / caps.q_r;
        const double tol = 1e-12 * std::max({1.0, std::abs(kappa), std::abs(coeffs.kappa)});
        if (std::abs(kappa - coeffs.kappa) > tol)
            throw input_error("coefficients were computed at a different kappa than caps");
    } else if (caps.q_h > 0.0 && !(coeffs.kappa >= 1.0)) {
        // q_r = 0 behaves like any kappa >= 1 (sums are constant there).
        throw input_error("coefficients were computed at a different kappa than caps");
    }
    return (coeffs.sum_a_r - coeffs.alpha_r_n) * caps.q_r +
           (coeffs.sum_a_h - coeffs.alpha_h_n) * caps.q_h;
}

CoefficientProfile::CoefficientProfile(const SignalSeries& series, const MarketParams& params,
                                       ParticipationModel model)
    : params_(params) {
    series.validate();
    params.validate();
    const Thresholds th = compute_thresholds(params);
    n_ = series.size();

    std::vector<Entry> entries;
    entries.reserve(n_);
    for (const auto& sig : series.intervals) {
        Entry e{};
        e.eta = sig.eta;
        // Classify both kappa-sides of the interval by forcing eta*q_r <= q_h
        // and eta*q_r > q_h with unit renewable capacity.
        const RegionLabel low = classify_region(params, Capacities{1.0, 2.0}, sig, model);
        coefficient_row(low, sig, th, params, e.a_r_low, e.a_h_low);
        if (sig.eta > 0.0) {
            const RegionLabel high =
                classify_region(params, Capacities{1.0, sig.eta * 0.5}, sig, model);
            coefficient_row(high, sig, th, params, e.a_r_high, e.a_h_high);
        }
        entries.push_back(e);
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.eta < b.eta; });

    etas_.resize(n_);
    pre_r_low_.assign(n_ + 1, 0.0);
    pre_h_low_.assign(n_ + 1, 0.0);
    suf_r_high_.assign(n_ + 1, 0.0);
    suf_h_high_.assign(n_ + 1, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        etas_[i] = entries[i].eta;
        pre_r_low_[i + 1] = pre_r_low_[i] + entries[i].a_r_low;
        pre_h_low_[i + 1] = pre_h_low_[i] + entries[i].a_h_low;
    }
    for (std::size_t i = n_; i-- > 0;) {
        suf_r_high_[i] = suf_r_high_[i + 1] + entries[i].a_r_high;
        suf_h_high_[i] = suf_h_high_[i + 1] + entries[i].a_h_high;
    }
}

void CoefficientProfile::sums_at(double kappa, double& sum_a_r, double& sum_a_h) const {
    const auto it = std::upper_bound(etas_.begin(), etas_.end(), kappa);
    const std::size_t idx = static_cast<std::size_t>(it - etas_.begin());
    sum_a_r = pre_r_low_[idx] + suf_r_high_[idx];
    sum_a_h = pre_h_low_[idx] + suf_h_high_[idx];
}

double CoefficientProfile::profit(const Capacities& caps, double n_horizon) const {
    caps.validate();
    const double kappa = caps.q_r > 0.0 ? caps.q_h / caps.q_r : 1.0;
    double sum_r = 0.0, sum_h = 0.0;
    sums_at(kappa, sum_r, sum_h);
    const double scale = n_horizon / static_cast<double>(n_);
    const AmortizedCost amort = amortized_fixed_cost(params_, caps, n_horizon);
    return (scale * sum_r) * caps.q_r + (scale * sum_h) * caps.q_h - amort.total;
}

CapacityPlan classify_capacity(const CoefficientProfile& profile, const Capacities& caps,
                               double n_horizon) {
    CapacityPlan plan;
    plan.caps = caps;
    plan.op_profit = profile.profit(caps, n_horizon);
    const double kappa = caps.q_r > 0.0 ? caps.q_h / caps.q_r : 1.0;
    double sum_r = 0.0, sum_h = 0.0;
    profile.sums_at(kappa, sum_r, sum_h);
    const double scale = n_horizon / profile.series_n();
    const AmortizedCost amort = amortized_fixed_cost(profile.params(), caps, n_horizon);
    const double flow = scale * (std::abs(sum_r) * caps.q_r + std::abs(sum_h) * caps.q_h) +
                        amort.total;
    const double band = 1e-6 * flow;
    if (std::abs(plan.op_profit) <= band)
        plan.classification = Classification::BreakEven;
    else
        plan.classification =
            plan.op_profit > 0.0 ? Classification::Profitable : Classification::Deficit;
    return plan;
}

std::vector<double> breakeven_rays(const SignalSeries& series, const MarketParams& params,
                                   double n_horizon, ParticipationModel model,
                                   double kappa_max, double d_kappa) {
    if (!(kappa_max > 0.0) || !(d_kappa > 0.0))
        throw input_error("kappa_max and d_kappa must be > 0");
    const CoefficientProfile profile(series, params, model);
    const double scale = n_horizon / profile.series_n();
    const AmortizedCost amort =
        amortized_fixed_cost(params, Capacities{1.0, 1.0}, n_horizon);

    auto g = [&](double kappa) {
        double sum_r = 0.0, sum_h = 0.0;
        profile.sums_at(kappa, sum_r, sum_h);
        return (scale * sum_r - amort.alpha_r_n) + kappa * (scale * sum_h - amort.alpha_h_n);
    };

    std::vector<double> roots;
    auto push_root = [&](double k) {
        if (roots.empty() || std::abs(roots.back() - k) > 1e-8) roots.push_back(k);
    };

    double prev_k = 0.0;
    double prev_g = g(prev_k);
    if (prev_g == 0.0) push_root(prev_k);
    const int steps = static_cast<int>(std::ceil(kappa_max / d_kappa));
    for (int i = 1; i <= steps; ++i) {
        const double k = std::min(kappa_max, static_cast<double>(i) * d_kappa);
        const double gk = g(k);
        if (gk == 0.0) {
            push_root(k);
        } else if (prev_g != 0.0 && (prev_g > 0.0) != (gk > 0.0)) {
            double lo = prev_k, hi = k;
            double glo = prev_g;
            while (hi - lo > 1e-8) {
                const double mid = 0.5 * (lo + hi);
                const double gm = g(mid);
                if (gm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((gm > 0.0) == (glo > 0.0)) {
                    lo = mid;
                    glo = gm;
                } else {
                    hi = mid;
                }
            }
            push_root(0.5 * (lo + hi));
        }
        prev_k = k;
        prev_g = gk;
    }
    return roots;
}

MatchingResult matching_capacity(const SignalSeries& series, const MarketParams& params,
                                 double n_horizon, double q_r, ParticipationModel model) {
    if (!(q_r > 0.0)) throw input_error("matching_capacity requires q_r > 0");
    const CoefficientProfile profile(series, params, model);
    const double scale = n_horizon / profile.series_n();
    const AmortizedCost amort =
        amortized_fixed_cost(params, Capacities{1.0, 1.0}, n_horizon);

    // Marginal value of electrolyzer capacity at ratio kappa; nonincreasing,
    // constant for kappa >= 1.
    auto d = [&](double kappa) {
        double sum_r = 0.0, sum_h = 0.0;
        profile.sums_at(kappa, sum_r, sum_h);
        return scale * sum_h - amort.alpha_h_n;
    };

    MatchingResult out;
    out.d_at_1 = d(1.0);
    if (d(0.0) <= 0.0) {
        out.kappa_star = 0.0;
    } else if (out.d_at_1 >= 0.0) {
        out.kappa_star = 1.0;
        out.open_ended = true;
    } else {
        double lo = 0.0, hi = 1.0;
        while (hi - lo > 1e-8) {
            const double mid = 0.5 * (lo + hi);
            if (d(mid) > 0.0)
                lo = mid;
            else
                hi = mid;
        }
        out.kappa_star = 0.5 * (lo + hi);
    }
    out.q_h_star = out.kappa_star * q_r;
    return out;
}

SizingResult optimal_nameplate(const SignalSeries& series, const MarketParams& params,
                               double n_horizon, double budget, ParticipationModel model,
                               double kappa_max) {
    if (!(budget >= 0.0)) throw input_error("budget must be >= 0");
    if (!(kappa_max > 0.0)) throw input_error("kappa_max must be > 0");
    SizingResult out;
    if (budget == 0.0) return out;

    const CoefficientProfile profile(series, params, model);
    const AmortizedCost amort =
        amortized_fixed_cost(params, Capacities{1.0, 1.0}, n_horizon);
    if (!(amort.alpha_r_n > 0.0) || !(amort.alpha_h_n > 0.0))
        throw input_error("sizing requires positive amortized unit costs");
    const double cost_ratio = amort.alpha_h_n / amort.alpha_r_n;

    // sum_a_h / sum_a_r, nonincreasing in kappa; +inf when no renewable revenue.
    auto revenue_ratio = [&](double kappa) {
        double sum_r = 0.0, sum_h = 0.0;
        profile.sums_at(kappa, sum_r, sum_h);
        if (sum_r <= 0.0) return std::numeric_limits<double>::infinity();
        return sum_h / sum_r;
    };
    auto point_at = [&](double kappa) {
        Capacities caps;
        caps.q_r = budget / (amort.alpha_r_n + amort.alpha_h_n * kappa);
        caps.q_h = kappa * caps.q_r;
        return caps;
    };

    const double r0 = revenue_ratio(0.0);
    const double rmax = revenue_ratio(kappa_max);
    double kappa_star;
    if (r0 <= cost_ratio) {
        // Ratio already at/below cost ratio: boundary candidates.
        out.ratio_crossed = r0 == cost_ratio;
        kappa_star = 0.0;
    } else if (rmax > cost_ratio) {
        out.ratio_crossed = false;
        kappa_star = kappa_max;
    } else {
        double lo = 0.0, hi = kappa_max;
        while (hi - lo > 1e-10) {
            const double mid = 0.5 * (lo + hi);
            if (revenue_ratio(mid) > cost_ratio)
                lo = mid;
            else
                hi = mid;
        }
        kappa_star = 0.5 * (lo + hi);
    }
    if (!out.ratio_crossed) {
        // Pick the better boundary.
        const double p0 = profile.profit(point_at(0.0), n_horizon);
        const double pmax = profile.profit(point_at(kappa_max), n_horizon);
        kappa_star = p0 >= pmax ? 0.0 : kappa_max;
    }

    out.kappa_star = kappa_star;
    out.caps = point_at(kappa_star);
    out.op_profit = profile.profit(out.caps, n_horizon);
    out.budget_residual =
        std::abs(amort.alpha_r_n * out.caps.q_r + amort.alpha_h_n * out.caps.q_h - budget);

    // Cross-validate against a dense sweep of the kappa in [0, kappa_max]
    // segment of the budget line.
    double sweep_best = -std::numeric_limits<double>::infinity();
    const double qr_lo = budget / (amort.alpha_r_n + amort.alpha_h_n * kappa_max);
    const double qr_hi = budget / amort.alpha_r_n;
    for (int j = 0; j <= 200; ++j) {
        Capacities caps;
        caps.q_r = qr_lo + (qr_hi - qr_lo) * static_cast<double>(j) / 200.0;
        caps.q_h = (budget - amort.alpha_r_n * caps.q_r) / amort.alpha_h_n;
        if (caps.q_h < 0.0) caps.q_h = 0.0;
        sweep_best = std::max(sweep_best, profile.profit(caps, n_horizon));
    }
    if (out.op_profit < sweep_best - 1e-6 * std::max(1.0, std::abs(sweep_best)))
        throw computation_error("optimal_nameplate bisection fell short of the budget-line sweep");
    return out;
}

} // namespace rchp
