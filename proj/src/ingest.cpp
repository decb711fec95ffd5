#include "rchp/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

namespace rchp {

SeriesUnits units_from_name(const std::string& name) {
    if (name == "kwh") return SeriesUnits::UsdPerKwh;
    if (name == "mwh") return SeriesUnits::UsdPerMwh;
    throw input_error("unknown LMP units '" + name + "' (expected kwh|mwh)");
}

GapPolicy gap_policy_from_name(const std::string& name) {
    if (name == "error") return GapPolicy::Error;
    if (name == "drop") return GapPolicy::Drop;
    if (name == "fill_previous") return GapPolicy::FillPrevious;
    throw input_error("unknown gap policy '" + name + "' (expected error|drop|fill_previous)");
}

namespace {

// days since 1970-01-01 for a proleptic Gregorian date
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const int yoe = static_cast<int>(y - era * 400);
    const int doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const std::int64_t doe = static_cast<std::int64_t>(yoe) * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const int doe = static_cast<int>(z - era * 146097);
    const int yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<int>(yoe + era * 400);
    const int doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const int mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

int parse_int(const std::string& s, std::size_t pos, std::size_t len) {
    int v = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw input_error("bad timestamp '" + s + "'");
        v = v * 10 + (s[i] - '0');
    }
    return v;
}

double parse_double(const std::string& s, const char* what, std::size_t row) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || !std::isfinite(v)) {
        std::ostringstream os;
        os << "row " << row << ": bad " << what << " value '" << s << "'";
        throw input_error(os.str());
    }
    return v;
}

// RFC-4180 field split (quoted fields, "" escapes).
std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

struct RawRow {
    TimePoint tp;
    double value = 0.0;
};

std::int64_t step_seconds(double interval_hours) {
    const double sec = interval_hours * 3600.0;
    const std::int64_t rounded = std::llround(sec);
    if (!(rounded > 0) || std::abs(sec - static_cast<double>(rounded)) > 1e-6)
        throw input_error("interval_hours must correspond to a whole number of seconds");
    return rounded;
}

void note(std::vector<std::string>* warnings, const std::string& msg) {
    if (warnings) warnings->push_back(msg);
}

double check_eta(double eta, std::size_t row, std::vector<std::string>* warnings) {
    if (eta >= 0.0 && eta <= 1.0) return eta;
    if (eta >= -1e-9 && eta < 0.0) {
        std::ostringstream os;
        os << "row " << row << ": capacity_factor " << eta << " clamped to 0";
        note(warnings, os.str());
        return 0.0;
    }
    if (eta > 1.0 && eta <= 1.0 + 1e-9) {
        std::ostringstream os;
        os << "row " << row << ": capacity_factor " << eta << " clamped to 1";
        note(warnings, os.str());
        return 1.0;
    }
    std::ostringstream os;
    os << "row " << row << ": capacity_factor " << eta << " outside [0, 1]";
    throw input_error(os.str());
}

// One column of (timestamp, value) rows with monotonicity, spacing and gap
// handling applied. Returns rows plus the data-row number each came from.
std::vector<RawRow> load_column(const std::string& path, const std::string& value_column,
                                double interval_hours, GapPolicy policy,
                                std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    const std::int64_t step = step_seconds(interval_hours);

    std::string line;
    if (!std::getline(in, line)) throw input_error(path + ": missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split_csv(line);
    for (auto& h : header) h = trim(h);
    int ts_col = -1, val_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "timestamp") ts_col = static_cast<int>(i);
        else if (header[i] == value_column) val_col = static_cast<int>(i);
        else throw input_error(path + ": unexpected column '" + header[i] + "'");
    }
    if (ts_col < 0 || val_col < 0)
        throw input_error(path + ": header must name 'timestamp' and '" + value_column + "'");

    std::vector<RawRow> rows;
    std::size_t row_no = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row_no;
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != header.size()) {
            std::ostringstream os;
            os << path << ": row " << row_no << " has " << fields.size() << " fields, expected "
               << header.size();
            throw input_error(os.str());
        }
        RawRow r;
        r.tp = parse_timestamp(trim(fields[ts_col]));
        r.value = parse_double(trim(fields[val_col]), value_column.c_str(), row_no);

        if (!rows.empty()) {
            const std::int64_t diff = r.tp.epoch_s - rows.back().tp.epoch_s;
            if (diff == 0) {
                std::ostringstream os;
                os << path << ": duplicate timestamp at row " << row_no << " ("
                   << format_timestamp(r.tp) << ")";
                throw input_error(os.str());
            }
            if (diff < 0) {
                std::ostringstream os;
                os << path << ": timestamps not increasing at row " << row_no;
                throw input_error(os.str());
            }
            if (diff != step) {
                if (diff % step != 0) {
                    std::ostringstream os;
                    os << path << ": irregular spacing at row " << row_no << " (" << diff
                       << " s, expected multiple of " << step << " s)";
                    throw input_error(os.str());
                }
                const std::int64_t missing = diff / step - 1;
                switch (policy) {
                    case GapPolicy::Error: {
                        std::ostringstream os;
                        os << path << ": gap of " << missing << " interval(s) before row "
                           << row_no;
                        throw input_error(os.str());
                    }
                    case GapPolicy::Drop: {
                        std::ostringstream os;
                        os << path << ": gap of " << missing << " interval(s) before row "
                           << row_no << " dropped";
                        note(warnings, os.str());
                        break;
                    }
                    case GapPolicy::FillPrevious: {
                        const RawRow prev = rows.back();
                        for (std::int64_t k = 1; k <= missing; ++k) {
                            RawRow fill = prev;
                            fill.tp.epoch_s += k * step;
                            rows.push_back(fill);
                        }
                        std::ostringstream os;
                        os << path << ": gap of " << missing << " interval(s) before row "
                           << row_no << " filled with previous value";
                        note(warnings, os.str());
                        break;
                    }
                }
            }
        }
        rows.push_back(r);
    }
    if (rows.empty()) throw input_error(path + ": empty series");
    return rows;
}

double convert_lmp(double value, SeriesUnits units) {
    return units == SeriesUnits::UsdPerMwh ? value / 1000.0 : value;
}

} // namespace

TimePoint parse_timestamp(const std::string& text) {
    // YYYY-MM-DD[T ]HH:MM:SS(Z|±HH:MM)
    if (text.size() < 20 || text[4] != '-' || text[7] != '-' ||
        (text[10] != 'T' && text[10] != ' ') || text[13] != ':' || text[16] != ':')
        throw input_error("bad timestamp '" + text + "' (expected ISO-8601 with offset)");
    const int year = parse_int(text, 0, 4);
    const int month = parse_int(text, 5, 2);
    const int day = parse_int(text, 8, 2);
    const int hh = parse_int(text, 11, 2);
    const int mi = parse_int(text, 14, 2);
    const int ss = parse_int(text, 17, 2);
    if (month < 1 || month > 12 || day < 1 || day > 31 || hh > 23 || mi > 59 || ss > 59)
        throw input_error("bad timestamp '" + text + "'");

    int offset_min = 0;
    const std::string tail = text.substr(19);
    if (tail == "Z" || tail == "z") {
        offset_min = 0;
    } else if ((tail.size() == 6) && (tail[0] == '+' || tail[0] == '-') && tail[3] == ':') {
        const int oh = parse_int(tail, 1, 2);
        const int om = parse_int(tail, 4, 2);
        offset_min = oh * 60 + om;
        if (tail[0] == '-') offset_min = -offset_min;
    } else {
        throw input_error("bad timestamp '" + text + "' (offset must be Z or ±HH:MM)");
    }

    TimePoint tp;
    tp.offset_min = offset_min;
    tp.epoch_s = days_from_civil(year, month, day) * 86400 + hh * 3600 + mi * 60 + ss -
                 static_cast<std::int64_t>(offset_min) * 60;
    return tp;
}

std::string format_timestamp(const TimePoint& tp) {
    const std::int64_t local = tp.epoch_s + static_cast<std::int64_t>(tp.offset_min) * 60;
    std::int64_t days = local / 86400;
    std::int64_t rem = local % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    const int hh = static_cast<int>(rem / 3600);
    const int mi = static_cast<int>((rem % 3600) / 60);
    const int ss = static_cast<int>(rem % 60);
    const int om = std::abs(tp.offset_min);
    char buf[72];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02d%c%02d:%02d", y, m, d, hh, mi,
                  ss, tp.offset_min < 0 ? '-' : '+', om / 60, om % 60);
    return buf;
}

SignalSeries load_series(const std::string& path, SeriesUnits units, double interval_hours,
                         GapPolicy policy, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    const std::int64_t step = step_seconds(interval_hours);

    std::string line;
    if (!std::getline(in, line)) throw input_error(path + ": missing header row");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split_csv(line);
    for (auto& h : header) h = trim(h);
    int ts_col = -1, lmp_col = -1, cf_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "timestamp") ts_col = static_cast<int>(i);
        else if (header[i] == "lmp") lmp_col = static_cast<int>(i);
        else if (header[i] == "capacity_factor") cf_col = static_cast<int>(i);
        else throw input_error(path + ": unexpected column '" + header[i] + "'");
    }
    if (ts_col < 0 || lmp_col < 0 || cf_col < 0)
        throw input_error(path + ": header must name timestamp, lmp, capacity_factor");

    SignalSeries series;
    series.source_label = path;
    series.interval_hours = interval_hours;

    std::size_t row_no = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row_no;
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != header.size()) {
            std::ostringstream os;
            os << path << ": row " << row_no << " has " << fields.size() << " fields, expected "
               << header.size();
            throw input_error(os.str());
        }
        const TimePoint tp = parse_timestamp(trim(fields[ts_col]));
        IntervalSignal sig;
        sig.lmp = convert_lmp(parse_double(trim(fields[lmp_col]), "lmp", row_no), units);
        sig.eta = check_eta(parse_double(trim(fields[cf_col]), "capacity_factor", row_no), row_no,
                            warnings);

        if (!series.stamps.empty()) {
            const std::int64_t diff = tp.epoch_s - series.stamps.back().epoch_s;
            if (diff == 0) {
                std::ostringstream os;
                os << path << ": duplicate timestamp at row " << row_no << " ("
                   << format_timestamp(tp) << ")";
                throw input_error(os.str());
            }
            if (diff < 0) {
                std::ostringstream os;
                os << path << ": timestamps not increasing at row " << row_no;
                throw input_error(os.str());
            }
            if (diff != step) {
                if (diff % step != 0) {
                    std::ostringstream os;
                    os << path << ": irregular spacing at row " << row_no << " (" << diff
                       << " s, expected multiple of " << step << " s)";
                    throw input_error(os.str());
                }
                const std::int64_t missing = diff / step - 1;
                switch (policy) {
                    case GapPolicy::Error: {
                        std::ostringstream os;
                        os << path << ": gap of " << missing << " interval(s) before row "
                           << row_no;
                        throw input_error(os.str());
                    }
                    case GapPolicy::Drop: {
                        std::ostringstream os;
                        os << path << ": gap of " << missing << " interval(s) before row "
                           << row_no << " dropped";
                        note(warnings, os.str());
                        break;
                    }
                    case GapPolicy::FillPrevious: {
                        const TimePoint prev_tp = series.stamps.back();
                        const IntervalSignal prev_sig = series.intervals.back();
                        for (std::int64_t k = 1; k <= missing; ++k) {
                            TimePoint fill = prev_tp;
                            fill.epoch_s += k * step;
                            series.stamps.push_back(fill);
                            series.intervals.push_back(prev_sig);
                        }
                        std::ostringstream os;
                        os << path << ": gap of " << missing << " interval(s) before row "
                           << row_no << " filled with previous value";
                        note(warnings, os.str());
                        break;
                    }
                }
            }
        }
        series.stamps.push_back(tp);
        series.intervals.push_back(sig);
    }
    if (series.empty()) throw input_error(path + ": empty series");
    return series;
}

SignalSeries load_series_separate(const std::string& lmp_path, const std::string& cf_path,
                                  SeriesUnits units, double interval_hours, GapPolicy policy,
                                  std::vector<std::string>* warnings) {
    const std::vector<RawRow> lmp_rows =
        load_column(lmp_path, "lmp", interval_hours, policy, warnings);
    const std::vector<RawRow> cf_rows =
        load_column(cf_path, "capacity_factor", interval_hours, policy, warnings);

    SignalSeries series;
    series.source_label = lmp_path + "+" + cf_path;
    series.interval_hours = interval_hours;

    std::size_t i = 0, j = 0, out_row = 0;
    double prev_lmp = 0.0, prev_cf = 0.0;
    bool have_lmp = false, have_cf = false;
    while (i < lmp_rows.size() || j < cf_rows.size()) {
        const std::int64_t ti = i < lmp_rows.size() ? lmp_rows[i].tp.epoch_s
                                                    : std::numeric_limits<std::int64_t>::max();
        const std::int64_t tj = j < cf_rows.size() ? cf_rows[j].tp.epoch_s
                                                   : std::numeric_limits<std::int64_t>::max();
        TimePoint tp;
        double lmp, cf;
        if (ti == tj) {
            tp = lmp_rows[i].tp;
            lmp = lmp_rows[i++].value;
            cf = cf_rows[j++].value;
        } else if (ti < tj) {
            if (policy == GapPolicy::Error)
                throw input_error("timestamp " + format_timestamp(lmp_rows[i].tp) +
                                  " present in " + lmp_path + " but missing from " + cf_path);
            if (policy == GapPolicy::Drop) {
                ++i;
                continue;
            }
            if (!have_cf)
                throw input_error("no previous capacity_factor to fill " +
                                  format_timestamp(lmp_rows[i].tp));
            tp = lmp_rows[i].tp;
            lmp = lmp_rows[i++].value;
            cf = prev_cf;
        } else {
            if (policy == GapPolicy::Error)
                throw input_error("timestamp " + format_timestamp(cf_rows[j].tp) +
                                  " present in " + cf_path + " but missing from " + lmp_path);
            if (policy == GapPolicy::Drop) {
                ++j;
                continue;
            }
            if (!have_lmp)
                throw input_error("no previous lmp to fill " + format_timestamp(cf_rows[j].tp));
            tp = cf_rows[j].tp;
            cf = cf_rows[j++].value;
            lmp = prev_lmp;
        }
        prev_lmp = lmp;
        prev_cf = cf;
        have_lmp = have_cf = true;
        ++out_row;
        IntervalSignal sig;
        sig.lmp = convert_lmp(lmp, units);
        sig.eta = check_eta(cf, out_row, warnings);
        series.stamps.push_back(tp);
        series.intervals.push_back(sig);
    }
    if (series.empty()) throw input_error("empty series after join");
    return series;
}

void save_series(const SignalSeries& series, const std::string& path) {
    series.validate();
    if (series.stamps.size() != series.intervals.size())
        throw input_error("cannot save a series without timestamps");
    std::ofstream out(path);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << "timestamp,lmp,capacity_factor\n";
    char buf[64];
    for (std::size_t i = 0; i < series.size(); ++i) {
        out << format_timestamp(series.stamps[i]);
        std::snprintf(buf, sizeof(buf), ",%.17g,%.17g", series.intervals[i].lmp,
                      series.intervals[i].eta);
        out << buf << "\n";
    }
}

} // namespace rchp
