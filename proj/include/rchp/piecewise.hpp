#pragma once

#include <vector>

#include "rchp/market.hpp"

namespace rchp {

// One linear segment of a concave production envelope H(p) = min_k(alpha_k*p + beta_k).
struct ProductionSegment {
    double alpha = 0.0; // kg/kWh slope
    double beta = 0.0;  // kg/h intercept
};

// Concave piecewise linear electrolyzer production model. Segments are kept
// in declaration order: strictly decreasing slopes, nondecreasing intercepts,
// beta_1 = 0, alpha_K >= 0.
class PiecewiseProduction {
public:
    explicit PiecewiseProduction(std::vector<ProductionSegment> segments);

    // Single segment equivalent to the linear model with efficiency gamma.
    static PiecewiseProduction linear(double gamma);

    const std::vector<ProductionSegment>& segments() const { return segments_; }
    std::size_t segment_count() const { return segments_.size(); }

    // kg/h at input power p (kW).
    double envelope(double p) const;

    // Index of the segment active at p (lowest index on ties).
    std::size_t active_segment(double p) const;

    // Power levels where the efficiency changes, (beta_{k+1}-beta_k)/(alpha_k-alpha_{k+1}).
    // Throws input_error if they are not strictly increasing inside (0, q_h).
    std::vector<double> breakpoints_within(double q_h) const;

private:
    std::vector<ProductionSegment> segments_;
};

// Per-segment LMP thresholds: pi_lo_k = alpha_k*(pi_h+tau_h-c_w) - tau_rec_im,
// pi_hi_k = alpha_k*(pi_h+tau_h-c_w) - tau_rec_ex.
struct SegmentThresholds {
    std::vector<double> pi_lo;
    std::vector<double> pi_hi;
};

SegmentThresholds piecewise_thresholds(const MarketParams& params,
                                       const PiecewiseProduction& pw);

} // namespace rchp
