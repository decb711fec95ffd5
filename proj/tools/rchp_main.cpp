#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace {

using rchp::cli::RunConfig;

struct Flags {
    std::string config_path;
    std::string model;
    std::string lmp_units;
    std::string gap_policy;
    std::string out_dir;
    std::string data;
    std::string lmp_data;
    std::string cf_data;
    std::string qr_grid;
    std::string qh_grid;
    std::string prices;
    std::string models;
    std::string pw_segments;
    double budget = 0.0;
    bool budget_set = false;
    double h_price = 0.0;
    bool h_price_set = false;
    double horizon = 0.0;
    bool horizon_set = false;
    double q_r = 0.0;
    bool q_r_set = false;
    double q_h = 0.0;
    bool q_h_set = false;
    double kappa_max = 0.0;
    bool kappa_max_set = false;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path, "flat key=value config file");
    cmd->add_option("--model", f.model, "participation model: m0|m1p|m1c|m2");
    cmd->add_option("--lmp-units", f.lmp_units, "units of the lmp column: mwh|kwh");
    cmd->add_option("--gap-policy", f.gap_policy, "missing rows: error|drop|fill_previous");
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--data", f.data, "combined CSV (timestamp,lmp,capacity_factor)");
    cmd->add_option("--lmp-data", f.lmp_data, "separate LMP CSV (timestamp,lmp)");
    cmd->add_option("--cf-data", f.cf_data, "separate CF CSV (timestamp,capacity_factor)");
    cmd->add_option("--pw-segments", f.pw_segments, "piecewise production, alpha:beta,...");
    cmd->add_option("--h-price", f.h_price, "hydrogen price override, $/kg")
        ->each([&f](const std::string&) { f.h_price_set = true; });
    cmd->add_option("--q-r", f.q_r, "renewable nameplate, kW")
        ->each([&f](const std::string&) { f.q_r_set = true; });
    cmd->add_option("--q-h", f.q_h, "electrolyzer nameplate, kW")
        ->each([&f](const std::string&) { f.q_h_set = true; });
    cmd->add_option("--kappa-max", f.kappa_max, "upper bound of the kappa search range")
        ->each([&f](const std::string&) { f.kappa_max_set = true; });
}

RunConfig build_config(const Flags& f) {
    RunConfig cfg;
    if (!f.config_path.empty()) cfg = rchp::cli::parse_config_file(f.config_path);
    // Flags win over the config file.
    if (!f.model.empty()) cfg.model = rchp::model_from_name(f.model);
    if (!f.lmp_units.empty()) cfg.lmp_units = rchp::units_from_name(f.lmp_units);
    if (!f.gap_policy.empty()) cfg.gap_policy = rchp::gap_policy_from_name(f.gap_policy);
    if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
    if (!f.data.empty()) cfg.data_path = f.data;
    if (!f.lmp_data.empty()) cfg.lmp_path = f.lmp_data;
    if (!f.cf_data.empty()) cfg.cf_path = f.cf_data;
    if (!f.pw_segments.empty()) cfg.piecewise = rchp::cli::parse_segments(f.pw_segments);
    if (f.h_price_set) cfg.params.pi_h = f.h_price;
    if (f.q_r_set) cfg.caps.q_r = f.q_r;
    if (f.q_h_set) cfg.caps.q_h = f.q_h;
    if (f.kappa_max_set) cfg.kappa_max = f.kappa_max;
    if (f.budget_set) cfg.budget = f.budget;
    if (f.horizon_set) cfg.horizon_n = f.horizon;
    if (!f.qr_grid.empty()) cfg.qr_grid = rchp::cli::parse_grid(f.qr_grid, "--qr-grid");
    if (!f.qh_grid.empty()) cfg.qh_grid = rchp::cli::parse_grid(f.qh_grid, "--qh-grid");
    if (!f.prices.empty()) {
        // Any order accepted; cmd_sweep normalizes to ascending.
        std::vector<double> prices;
        std::stringstream ss(f.prices);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) prices.push_back(std::stod(item));
        cfg.h_prices = prices;
    }
    if (!f.models.empty()) {
        cfg.sweep_models.clear();
        std::stringstream ss(f.models);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) cfg.sweep_models.push_back(rchp::model_from_name(item));
    }
    cfg.params.validate();
    cfg.caps.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dispatch and profitability analysis for renewable-colocated hydrogen"};
    app.require_subcommand(1);

    Flags flags;
    std::function<void(const RunConfig&)> action;

    auto wire = [&](CLI::App* cmd, void (*fn)(const RunConfig&, std::ostream&)) {
        add_common_flags(cmd, flags);
        cmd->callback([&action, fn] {
            action = [fn](const RunConfig& cfg) { fn(cfg, std::cout); };
        });
        return cmd;
    };

    wire(app.add_subcommand("thresholds", "print the LMP thresholds"), rchp::cli::cmd_thresholds);
    wire(app.add_subcommand("simulate", "dispatch a series and report the revenue breakdown"),
         rchp::cli::cmd_simulate);
    auto* heatmap = wire(app.add_subcommand("heatmap", "operating profit over a capacity grid"),
                         rchp::cli::cmd_heatmap);
    heatmap->add_option("--qr-grid", flags.qr_grid, "ascending q_r values, comma separated");
    heatmap->add_option("--qh-grid", flags.qh_grid, "ascending q_h values, comma separated");
    auto* size = wire(app.add_subcommand("size", "budget-constrained optimal nameplates"),
                      rchp::cli::cmd_size);
    size->add_option("--budget", flags.budget, "amortized fixed-cost budget, $")
        ->each([&flags](const std::string&) { flags.budget_set = true; });
    auto* sweep = wire(app.add_subcommand("sweep", "profit vs hydrogen price per model"),
                       rchp::cli::cmd_sweep);
    sweep->add_option("--prices", flags.prices, "hydrogen prices, comma separated $/kg");
    sweep->add_option("--models", flags.models,
                      "models to sweep, comma separated (default m0,m1p,m1c,m2)");
    auto* breakeven = wire(app.add_subcommand("breakeven", "break-even rays and matching kappa"),
                           rchp::cli::cmd_breakeven);
    auto* forecast = wire(app.add_subcommand("forecast", "profit forecast from historical data"),
                          rchp::cli::cmd_forecast);
    for (auto* cmd : {breakeven, forecast, size})
        cmd->add_option("--horizon", flags.horizon, "horizon in intervals")
            ->each([&flags](const std::string&) { flags.horizon_set = true; });

    CLI11_PARSE(app, argc, argv);

    try {
        action(build_config(flags));
    } catch (const rchp::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
