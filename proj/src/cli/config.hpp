#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rchp/ingest.hpp"
#include "rchp/market.hpp"
#include "rchp/piecewise.hpp"

namespace rchp::cli {

// Everything a run needs, collected from the flat key=value config file and
// overridden by CLI flags (flags win). Unknown keys are rejected.
struct RunConfig {
    MarketParams params;
    Capacities caps{45000.0, 20000.0};
    ParticipationModel model = ParticipationModel::M2;
    std::optional<PiecewiseProduction> piecewise;

    std::string data_path;     // combined schema
    std::string lmp_path;      // separate schemas
    std::string cf_path;
    SeriesUnits lmp_units = SeriesUnits::UsdPerKwh;
    GapPolicy gap_policy = GapPolicy::Error;

    std::string out_dir = ".";
    double kappa_max = 3.0;

    // Subcommand options (flags only).
    std::optional<double> budget;
    std::optional<double> horizon_n;
    std::vector<double> qr_grid;
    std::vector<double> qh_grid;
    std::vector<double> h_prices;
    std::vector<ParticipationModel> sweep_models{
        ParticipationModel::M0, ParticipationModel::M1p, ParticipationModel::M1c,
        ParticipationModel::M2};

    // Loads the series named by data/lmp_data/cf_data.
    SignalSeries load(std::vector<std::string>* warnings = nullptr) const;
};

// Parses the flat key=value config format ('#' comments, blank lines ok).
RunConfig parse_config_file(const std::string& path);

// Applies one key=value pair; shared by the file parser and by tests.
void apply_key(RunConfig& cfg, const std::string& key, const std::string& value);

// "a1:b1,a2:b2,..." -> piecewise segments (alpha kg/kWh, beta kg/h).
PiecewiseProduction parse_segments(const std::string& text);

// Ascending comma-separated doubles; throws on empty/descending lists.
std::vector<double> parse_grid(const std::string& text, const char* what);

} // namespace rchp::cli
