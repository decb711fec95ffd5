#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>
#include <vector>

#include <json.hpp>

#include "rchp/profitability.hpp"
#include "rchp/simulate.hpp"

namespace rchp::cli {

using nlohmann::json;

std::string fmt9(double v) {
    if (v == 0.0) v = 0.0; // never print -0
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

double round9(double v) {
    return std::strtod(fmt9(v).c_str(), nullptr);
}

namespace {

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    const fs::path path = fs::path(cfg.out_dir) / name;
    std::ofstream out(path);
    if (!out) throw input_error("cannot write '" + path.string() + "'");
    return out;
}

void write_json(const RunConfig& cfg, const std::string& name, const json& j) {
    auto out = open_output(cfg, name);
    out << j.dump(2) << "\n";
}

// Runs fn(0..count-1) on a few threads; results land at their own index, so
// output order stays deterministic.
template <typename Fn>
void parallel_for_index(std::size_t count, Fn&& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace

void cmd_thresholds(const RunConfig& cfg, std::ostream& out) {
    const Thresholds th = compute_thresholds(cfg.params);
    json j;
    j["pi_lo"] = round9(th.pi_lo);
    j["pi_hi"] = round9(th.pi_hi);
    j["neg_im"] = round9(th.neg_im);
    j["neg_ex"] = round9(th.neg_ex);
    j["standard_ordering"] = th.standard_ordering;
    write_json(cfg, "thresholds.json", j);

    out << "lower LMP threshold pi_lo   " << fmt9(th.pi_lo) << " $/kWh\n"
        << "upper LMP threshold pi_hi   " << fmt9(th.pi_hi) << " $/kWh\n"
        << "-REC import price  neg_im   " << fmt9(th.neg_im) << " $/kWh\n"
        << "-REC export price  neg_ex   " << fmt9(th.neg_ex) << " $/kWh\n"
        << "standard ordering           " << (th.standard_ordering ? "yes" : "no") << "\n";
}

void cmd_simulate(const RunConfig& cfg, std::ostream& out) {
    std::vector<std::string> warnings;
    const SignalSeries series = cfg.load(&warnings);
    for (const auto& w : warnings) out << "warning: " << w << "\n";
    const SimulationResult res =
        run_simulation(series, cfg.params, cfg.caps, cfg.model, cfg.piecewise);

    auto log = open_output(cfg, "dispatch_log.csv");
    log << "t,lmp,eta,p_h,p_ex,p_im,h_kg,region,gross_profit\n";
    for (const auto& rec : res.log) {
        log << rec.t << ',' << fmt9(rec.signal.lmp) << ',' << fmt9(rec.signal.eta) << ','
            << fmt9(rec.dispatch.p_h) << ',' << fmt9(rec.dispatch.p_ex) << ','
            << fmt9(rec.dispatch.p_im) << ',' << fmt9(rec.dispatch.h) << ',' << rec.region << ','
            << fmt9(rec.gross_profit) << "\n";
    }

    const RevenueBreakdown& b = res.breakdown;
    json j;
    j["n_intervals"] = res.log.size();
    j["model"] = model_name(cfg.model);
    j["total_renewable_kwh"] = round9(b.total_renewable_kwh);
    j["pct_renewable_to_hydrogen"] = round9(b.pct_renewable_to_hydrogen);
    j["pct_renewable_sold"] = round9(b.pct_renewable_sold);
    j["pct_curtailed"] = round9(b.pct_curtailed);
    j["hydrogen_kg"] = round9(b.hydrogen_kg);
    j["revenue_hydrogen"] = round9(b.revenue_hydrogen);
    j["revenue_renewable_sales"] = round9(b.revenue_renewable_sales);
    j["renewable_credit"] = round9(b.renewable_credit);
    j["lost_revenue_curtailment"] = round9(b.lost_revenue_curtailment);
    j["curtailment_valuation"] = "export_opportunity(lmp+tau_rec_ex+tau_r)";
    j["import_cost"] = round9(b.import_cost);
    j["water_cost"] = round9(b.water_cost);
    j["gross_profit"] = round9(b.gross_profit);
    j["amortized_fixed_cost"] = round9(b.amortized_fixed_cost);
    j["operating_profit"] = round9(b.operating_profit);
    write_json(cfg, "breakdown.json", j);

    out << "intervals                 " << res.log.size() << "\n"
        << "renewable generated       " << fmt9(b.total_renewable_kwh) << " kWh\n"
        << "  to hydrogen             " << fmt9(b.pct_renewable_to_hydrogen) << " %\n"
        << "  sold                    " << fmt9(b.pct_renewable_sold) << " %\n"
        << "  curtailed               " << fmt9(b.pct_curtailed) << " %\n"
        << "hydrogen produced         " << fmt9(b.hydrogen_kg) << " kg\n"
        << "operating profit          " << fmt9(b.operating_profit) << " $\n";
}

void cmd_heatmap(const RunConfig& cfg, std::ostream& out) {
    if (cfg.qr_grid.empty() || cfg.qh_grid.empty())
        throw input_error("heatmap needs --qr-grid and --qh-grid");
    const SignalSeries series = cfg.load();
    const double n = static_cast<double>(series.size());
    const CoefficientProfile profile(series, cfg.params, cfg.model);

    struct Cell {
        Capacities caps;
        CapacityPlan plan;
    };
    std::vector<Cell> cells(cfg.qr_grid.size() * cfg.qh_grid.size());
    parallel_for_index(cells.size(), [&](std::size_t i) {
        const double q_r = cfg.qr_grid[i / cfg.qh_grid.size()];
        const double q_h = cfg.qh_grid[i % cfg.qh_grid.size()];
        cells[i].caps = Capacities{q_r, q_h};
        cells[i].plan = classify_capacity(profile, cells[i].caps, n);
    });

    auto csv = open_output(cfg, "heatmap.csv");
    csv << "q_r,q_h,op_profit,classification\n";
    for (const auto& c : cells)
        csv << fmt9(c.caps.q_r) << ',' << fmt9(c.caps.q_h) << ',' << fmt9(c.plan.op_profit)
            << ',' << classification_name(c.plan.classification) << "\n";

    const std::vector<double> rays =
        breakeven_rays(series, cfg.params, n, cfg.model, cfg.kappa_max);
    const MatchingResult match = matching_capacity(series, cfg.params, n, 1.0, cfg.model);

    json j;
    j["model"] = model_name(cfg.model);
    j["n_intervals"] = series.size();
    json jr = json::array();
    for (double k : rays) jr.push_back(round9(k));
    j["breakeven_kappas"] = jr;
    j["matching_kappa"] = round9(match.kappa_star);
    j["matching_open_ended"] = match.open_ended;
    write_json(cfg, "heatmap_rays.json", j);

    out << "heatmap cells             " << cells.size() << "\n"
        << "break-even rays           " << rays.size() << "\n"
        << "matching kappa            " << fmt9(match.kappa_star)
        << (match.open_ended ? " (any kappa >= 1 optimal)" : "") << "\n";
}

void cmd_size(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.budget) throw input_error("size needs --budget");
    const SignalSeries series = cfg.load();
    const double n = cfg.horizon_n.value_or(static_cast<double>(series.size()));
    const SizingResult res =
        optimal_nameplate(series, cfg.params, n, *cfg.budget, cfg.model, cfg.kappa_max);

    json j;
    j["q_r"] = round9(res.caps.q_r);
    j["q_h"] = round9(res.caps.q_h);
    j["kappa_star"] = round9(res.kappa_star);
    j["op_profit"] = round9(res.op_profit);
    j["budget"] = round9(*cfg.budget);
    j["budget_residual"] = round9(res.budget_residual);
    j["ratio_crossed"] = res.ratio_crossed;
    j["model"] = model_name(cfg.model);
    write_json(cfg, "size.json", j);

    out << "q_r*                      " << fmt9(res.caps.q_r) << " kW\n"
        << "q_h*                      " << fmt9(res.caps.q_h) << " kW\n"
        << "kappa*                    " << fmt9(res.kappa_star) << "\n"
        << "operating profit          " << fmt9(res.op_profit) << " $\n"
        << "budget residual           " << fmt9(res.budget_residual) << " $\n";
}

void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    if (cfg.h_prices.empty()) throw input_error("sweep needs --prices");
    std::vector<double> prices = cfg.h_prices;
    std::sort(prices.begin(), prices.end());
    prices.erase(std::unique(prices.begin(), prices.end()), prices.end());

    const SignalSeries series = cfg.load();
    const std::vector<ParticipationModel>& models = cfg.sweep_models;
    if (models.empty()) throw input_error("sweep needs at least one model");

    struct Row {
        double pi_h;
        ParticipationModel model;
        double op_profit;
    };
    std::vector<Row> rows(prices.size() * models.size());
    parallel_for_index(rows.size(), [&](std::size_t i) {
        MarketParams p = cfg.params;
        p.pi_h = prices[i / models.size()];
        const ParticipationModel m = models[i % models.size()];
        const SimulationResult res = run_simulation(series, p, cfg.caps, m, cfg.piecewise);
        rows[i] = Row{p.pi_h, m, res.breakdown.operating_profit};
    });

    auto csv = open_output(cfg, "sweep.csv");
    csv << "pi_h,model,op_profit\n";
    for (const auto& r : rows)
        csv << fmt9(r.pi_h) << ',' << model_name(r.model) << ',' << fmt9(r.op_profit) << "\n";
    out << "sweep rows                " << rows.size() << "\n";
}

void cmd_breakeven(const RunConfig& cfg, std::ostream& out) {
    const SignalSeries series = cfg.load();
    const double n = cfg.horizon_n.value_or(static_cast<double>(series.size()));
    const std::vector<double> rays =
        breakeven_rays(series, cfg.params, n, cfg.model, cfg.kappa_max);
    const MatchingResult match = matching_capacity(series, cfg.params, n, 1.0, cfg.model);

    json j;
    j["model"] = model_name(cfg.model);
    j["n_intervals"] = series.size();
    j["horizon_n"] = round9(n);
    json jr = json::array();
    for (double k : rays) jr.push_back(round9(k));
    j["breakeven_kappas"] = jr;
    j["matching_kappa"] = round9(match.kappa_star);
    j["matching_open_ended"] = match.open_ended;
    write_json(cfg, "breakeven.json", j);

    out << "break-even kappas         ";
    if (rays.empty()) out << "(none)";
    for (double k : rays) out << fmt9(k) << ' ';
    out << "\nmatching kappa            " << fmt9(match.kappa_star)
        << (match.open_ended ? " (any kappa >= 1 optimal)" : "") << "\n";
}

void cmd_forecast(const RunConfig& cfg, std::ostream& out) {
    const SignalSeries series = cfg.load();
    const double horizon = cfg.horizon_n.value_or(static_cast<double>(series.size()));
    const double profit =
        forecast_profit(series, cfg.caps, cfg.params, horizon, cfg.model);

    json j;
    j["model"] = model_name(cfg.model);
    j["train_n"] = series.size();
    j["horizon_n"] = round9(horizon);
    j["forecast_profit"] = round9(profit);
    write_json(cfg, "forecast.json", j);

    out << "forecast operating profit " << fmt9(profit) << " $ over " << fmt9(horizon)
        << " intervals\n";
}

} // namespace rchp::cli
