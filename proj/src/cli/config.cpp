#include "cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rchp::cli {

namespace {

double to_double(const std::string& value, const std::string& key) {
    const char* begin = value.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw input_error("config key '" + key + "': bad number '" + value + "'");
    return v;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

std::vector<double> parse_grid(const std::string& text, const char* what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        values.push_back(to_double(item, what));
    }
    if (values.empty()) throw input_error(std::string(what) + ": empty list");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (!(values[i] > values[i - 1]))
            throw input_error(std::string(what) + ": values must be strictly ascending");
    return values;
}

PiecewiseProduction parse_segments(const std::string& text) {
    std::vector<ProductionSegment> segments;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw input_error("pw_segments: expected alpha:beta pairs, got '" + item + "'");
        ProductionSegment s;
        s.alpha = to_double(trim(item.substr(0, colon)), "pw_segments alpha");
        s.beta = to_double(trim(item.substr(colon + 1)), "pw_segments beta");
        segments.push_back(s);
    }
    return PiecewiseProduction(segments);
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "pi_h") cfg.params.pi_h = to_double(value, key);
    else if (key == "tau_h") cfg.params.tau_h = to_double(value, key);
    else if (key == "tau_r") cfg.params.tau_r = to_double(value, key);
    else if (key == "tau_rec_ex") cfg.params.tau_rec_ex = to_double(value, key);
    else if (key == "tau_rec_im") cfg.params.tau_rec_im = to_double(value, key);
    else if (key == "gamma") cfg.params.gamma = to_double(value, key);
    else if (key == "c_w") cfg.params.c_w = to_double(value, key);
    else if (key == "alpha_r") cfg.params.alpha_r = to_double(value, key);
    else if (key == "alpha_h") cfg.params.alpha_h = to_double(value, key);
    else if (key == "intervals_per_year") cfg.params.intervals_per_year = to_double(value, key);
    else if (key == "interval_hours") cfg.params.interval_hours = to_double(value, key);
    else if (key == "q_r") cfg.caps.q_r = to_double(value, key);
    else if (key == "q_h") cfg.caps.q_h = to_double(value, key);
    else if (key == "model") cfg.model = model_from_name(value);
    else if (key == "pw_segments") cfg.piecewise = parse_segments(value);
    else if (key == "data") cfg.data_path = value;
    else if (key == "lmp_data") cfg.lmp_path = value;
    else if (key == "cf_data") cfg.cf_path = value;
    else if (key == "lmp_units") cfg.lmp_units = units_from_name(value);
    else if (key == "gap_policy") cfg.gap_policy = gap_policy_from_name(value);
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "kappa_max") cfg.kappa_max = to_double(value, key);
    else throw input_error("unknown config key '" + key + "'");
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open config '" + path + "'");
    RunConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream os;
            os << path << ":" << line_no << ": expected key = value";
            throw input_error(os.str());
        }
        apply_key(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return cfg;
}

SignalSeries RunConfig::load(std::vector<std::string>* warnings) const {
    if (!data_path.empty())
        return load_series(data_path, lmp_units, params.interval_hours, gap_policy, warnings);
    if (!lmp_path.empty() && !cf_path.empty())
        return load_series_separate(lmp_path, cf_path, lmp_units, params.interval_hours,
                                    gap_policy, warnings);
    throw input_error("no input data configured (set data= or lmp_data=/cf_data=)");
}

} // namespace rchp::cli
