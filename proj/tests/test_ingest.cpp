#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rchp/ingest.hpp"
#include "support/instance_gen.hpp"

using namespace rchp;
using namespace rchp::testing;

namespace {

std::string fixture(const std::string& name) {
    return std::string(RCHP_FIXTURES_DIR) + "/" + name;
}

std::filesystem::path temp_file(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "rchp_ingest_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

bool series_equal(const SignalSeries& a, const SignalSeries& b) {
    if (a.size() != b.size() || a.stamps.size() != b.stamps.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.intervals[i].lmp != b.intervals[i].lmp) return false;
        if (a.intervals[i].eta != b.intervals[i].eta) return false;
        if (a.stamps[i].epoch_s != b.stamps[i].epoch_s) return false;
        if (a.stamps[i].offset_min != b.stamps[i].offset_min) return false;
    }
    return true;
}

} // namespace

TEST_CASE("MWh fixture converts units and keeps all rows") {
    const SignalSeries s =
        load_series(fixture("combined_mwh.csv"), SeriesUnits::UsdPerMwh, 1.0, GapPolicy::Error);
    REQUIRE(s.size() == 3);
    CHECK(s.intervals[0].lmp == doctest::Approx(0.055).epsilon(1e-15));
    CHECK(s.intervals[1].lmp == doctest::Approx(0.0425).epsilon(1e-15));
    CHECK(s.intervals[2].lmp == doctest::Approx(-0.01225).epsilon(1e-15));
    CHECK(s.intervals[0].eta == 0.41);
}

TEST_CASE("timestamps parse offsets and round-trip") {
    const TimePoint tp = parse_timestamp("2022-11-06T01:00:00-05:00");
    CHECK(tp.offset_min == -300);
    CHECK(format_timestamp(tp) == "2022-11-06T01:00:00-05:00");
    const TimePoint zulu = parse_timestamp("2022-06-01T00:00:00Z");
    CHECK(zulu.offset_min == 0);
    CHECK(format_timestamp(zulu) == "2022-06-01T00:00:00+00:00");
    CHECK(parse_timestamp("2022-06-01T01:00:00+00:00").epoch_s - zulu.epoch_s == 3600);
    CHECK_THROWS_AS(parse_timestamp("2022-06-01 01:00:00"), input_error); // no offset
    CHECK_THROWS_AS(parse_timestamp("junk"), input_error);
}

TEST_CASE("DST fall-back hours stay distinct through their offsets") {
    const SignalSeries s =
        load_series(fixture("dst_fall_back.csv"), SeriesUnits::UsdPerKwh, 1.0, GapPolicy::Error);
    REQUIRE(s.size() == 4);
    for (std::size_t i = 1; i < s.size(); ++i)
        CHECK(s.stamps[i].epoch_s - s.stamps[i - 1].epoch_s == 3600);
}

TEST_CASE("duplicate timestamps are rejected with the row named") {
    CHECK_THROWS_WITH_AS(
        load_series(fixture("dup_timestamp.csv"), SeriesUnits::UsdPerKwh, 1.0, GapPolicy::Error),
        doctest::Contains("row 3"), input_error);
}

TEST_CASE("nonmonotone timestamps are rejected") {
    CHECK_THROWS_WITH_AS(
        load_series(fixture("nonmonotone.csv"), SeriesUnits::UsdPerKwh, 1.0, GapPolicy::Error),
        doctest::Contains("not increasing"), input_error);
}

TEST_CASE("gap policies") {
    SUBCASE("error names the gap") {
        CHECK_THROWS_WITH_AS(
            load_series(fixture("gap.csv"), SeriesUnits::UsdPerKwh, 1.0, GapPolicy::Error),
            doctest::Contains("gap of 1 interval"), input_error);
    }
    SUBCASE("drop keeps the observed rows") {
        std::vector<std::string> warnings;
        const SignalSeries s =
            load_series(fixture("gap.csv"), SeriesUnits::UsdPerKwh, 1.0, GapPolicy::Drop,
                        &warnings);
        CHECK(s.size() == 3);
        REQUIRE(warnings.size() == 1);
        CHECK(warnings[0].find("dropped") != std::string::npos);
    }
    SUBCASE("fill_previous repeats the last row") {
        const SignalSeries s = load_series(fixture("gap.csv"), SeriesUnits::UsdPerKwh, 1.0,
                                           GapPolicy::FillPrevious);
        REQUIRE(s.size() == 4);
        CHECK(s.intervals[2].lmp == s.intervals[1].lmp);
        CHECK(s.intervals[2].eta == s.intervals[1].eta);
        CHECK(s.stamps[2].epoch_s - s.stamps[1].epoch_s == 3600);
    }
}

TEST_CASE("eta tolerance band") {
    SUBCASE("values inside 1e-9 clamp with a warning") {
        std::vector<std::string> warnings;
        const SignalSeries s = load_series(fixture("eta_clamp.csv"), SeriesUnits::UsdPerKwh, 1.0,
                                           GapPolicy::Error, &warnings);
        CHECK(s.intervals[0].eta == 1.0);
        CHECK(s.intervals[1].eta == 0.0);
        CHECK(warnings.size() == 2);
    }
    SUBCASE("values beyond the band are rejected") {
        CHECK_THROWS_WITH_AS(
            load_series(fixture("eta_bad.csv"), SeriesUnits::UsdPerKwh, 1.0, GapPolicy::Error),
            doctest::Contains("outside [0, 1]"), input_error);
    }
}

TEST_CASE("separate schemas join on timestamp") {
    SUBCASE("aligned files join cleanly") {
        const SignalSeries s =
            load_series_separate(fixture("separate_lmp.csv"), fixture("separate_cf.csv"),
                                 SeriesUnits::UsdPerMwh, 1.0, GapPolicy::Error);
        REQUIRE(s.size() == 2);
        CHECK(s.intervals[0].lmp == doctest::Approx(0.000055).epsilon(1e-15));
        CHECK(s.intervals[0].eta == 0.41);
    }
    SUBCASE("mismatched stamps error under the strict policy") {
        CHECK_THROWS_WITH_AS(
            load_series_separate(fixture("separate_lmp.csv"), fixture("separate_cf_offset.csv"),
                                 SeriesUnits::UsdPerKwh, 1.0, GapPolicy::Error),
            doctest::Contains("missing from"), input_error);
    }
    SUBCASE("drop takes the inner join") {
        const SignalSeries s =
            load_series_separate(fixture("separate_lmp.csv"), fixture("separate_cf_offset.csv"),
                                 SeriesUnits::UsdPerKwh, 1.0, GapPolicy::Drop);
        CHECK(s.size() == 1); // only 01:00 is in both
    }
    SUBCASE("fill_previous completes an interior one-sided miss") {
        const auto lmp_path = temp_file("join_lmp.csv");
        const auto cf_path = temp_file("join_cf.csv");
        std::ofstream(lmp_path) << "timestamp,lmp\n"
                                << "2022-06-01T00:00:00Z,0.05\n"
                                << "2022-06-01T01:00:00Z,0.06\n"
                                << "2022-06-01T02:00:00Z,0.07\n";
        std::ofstream(cf_path) << "timestamp,capacity_factor\n"
                               << "2022-06-01T00:00:00Z,0.5\n"
                               << "2022-06-01T02:00:00Z,0.3\n";
        const SignalSeries s =
            load_series_separate(lmp_path.string(), cf_path.string(), SeriesUnits::UsdPerKwh,
                                 1.0, GapPolicy::Drop);
        CHECK(s.size() == 2); // inner join drops 01:00
        const SignalSeries filled =
            load_series_separate(lmp_path.string(), cf_path.string(), SeriesUnits::UsdPerKwh,
                                 1.0, GapPolicy::FillPrevious);
        REQUIRE(filled.size() == 3);
        CHECK(filled.intervals[1].lmp == 0.06);
        CHECK(filled.intervals[1].eta == 0.5); // carried forward
    }
    SUBCASE("fill_previous cannot invent a leading value") {
        CHECK_THROWS_WITH_AS(
            load_series_separate(fixture("separate_lmp.csv"), fixture("separate_cf_offset.csv"),
                                 SeriesUnits::UsdPerKwh, 1.0, GapPolicy::FillPrevious),
            doctest::Contains("no previous"), input_error);
    }
}

TEST_CASE("sub-hourly spacing is honored") {
    const auto path = temp_file("quarter_hour.csv");
    std::ofstream out(path);
    out << "timestamp,lmp,capacity_factor\n"
        << "2022-06-01T00:00:00Z,0.05,0.5\n"
        << "2022-06-01T00:15:00Z,0.06,0.4\n"
        << "2022-06-01T00:30:00Z,0.04,0.3\n";
    out.close();
    const SignalSeries s =
        load_series(path.string(), SeriesUnits::UsdPerKwh, 0.25, GapPolicy::Error);
    CHECK(s.size() == 3);
    CHECK(s.interval_hours == 0.25);
    // The same file read as hourly data has irregular spacing.
    CHECK_THROWS_WITH_AS(
        load_series(path.string(), SeriesUnits::UsdPerKwh, 1.0, GapPolicy::Error),
        doctest::Contains("irregular spacing"), input_error);
}

TEST_CASE("empty and malformed inputs") {
    CHECK_THROWS_WITH_AS(
        load_series(fixture("empty.csv"), SeriesUnits::UsdPerKwh, 1.0, GapPolicy::Error),
        doctest::Contains("empty series"), input_error);
    CHECK_THROWS_AS(load_series(fixture("does_not_exist.csv"), SeriesUnits::UsdPerKwh, 1.0,
                                GapPolicy::Error),
                    input_error);
}

TEST_CASE("load -> save -> load is bit identical") {
    for (const char* name : {"combined_mwh.csv", "dst_fall_back.csv", "two_interval.csv"}) {
        const SeriesUnits units =
            std::string(name) == "combined_mwh.csv" ? SeriesUnits::UsdPerMwh
                                                    : SeriesUnits::UsdPerKwh;
        const SignalSeries first = load_series(fixture(name), units, 1.0, GapPolicy::Error);
        const auto tmp = temp_file(std::string("roundtrip_") + name);
        save_series(first, tmp.string());
        const SignalSeries second =
            load_series(tmp.string(), SeriesUnits::UsdPerKwh, 1.0, GapPolicy::Error);
        CHECK(series_equal(first, second));
        // A second emit is byte-identical too.
        const auto tmp2 = temp_file(std::string("roundtrip2_") + name);
        save_series(second, tmp2.string());
        std::ifstream f1(tmp), f2(tmp2);
        const std::string b1((std::istreambuf_iterator<char>(f1)),
                             std::istreambuf_iterator<char>());
        const std::string b2((std::istreambuf_iterator<char>(f2)),
                             std::istreambuf_iterator<char>());
        CHECK(b1 == b2);
    }
}

TEST_CASE("loading is deterministic") {
    const SignalSeries a =
        load_series(fixture("combined_mwh.csv"), SeriesUnits::UsdPerMwh, 1.0, GapPolicy::Error);
    const SignalSeries b =
        load_series(fixture("combined_mwh.csv"), SeriesUnits::UsdPerMwh, 1.0, GapPolicy::Error);
    CHECK(series_equal(a, b));
}
