#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rchp/market.hpp"

namespace rchp {

// Instant with the UTC offset it was written in, so emitted files keep the
// source's offsets (DST duplicates stay distinguishable).
struct TimePoint {
    std::int64_t epoch_s = 0; // seconds since the Unix epoch
    int offset_min = 0;       // local offset applied when formatting
};

// Ordered (lmp, eta) observations; the empirical surrogate for the joint law
// of price and capacity factor.
struct SignalSeries {
    std::vector<IntervalSignal> intervals;
    std::vector<TimePoint> stamps; // empty for synthetic series, else one per interval
    std::string source_label;
    double interval_hours = 1.0;

    std::size_t size() const { return intervals.size(); }
    bool empty() const { return intervals.empty(); }
    void validate() const;
};

} // namespace rchp
