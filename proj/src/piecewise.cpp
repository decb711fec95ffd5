#include "rchp/piecewise.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace rchp {

PiecewiseProduction::PiecewiseProduction(std::vector<ProductionSegment> segments)
    : segments_(std::move(segments)) {
    if (segments_.empty()) throw input_error("piecewise production needs at least one segment");
    if (segments_.front().beta != 0.0)
        throw input_error("piecewise production: beta_1 must be 0");
    for (std::size_t k = 0; k < segments_.size(); ++k) {
        if (!std::isfinite(segments_[k].alpha) || !std::isfinite(segments_[k].beta))
            throw input_error("piecewise production: segment values must be finite");
        if (k + 1 < segments_.size()) {
            if (!(segments_[k].alpha > segments_[k + 1].alpha))
                throw input_error("piecewise production: slopes must be strictly decreasing");
            if (!(segments_[k].beta <= segments_[k + 1].beta))
                throw input_error("piecewise production: intercepts must be nondecreasing");
        }
    }
    if (!(segments_.back().alpha >= 0.0))
        throw input_error("piecewise production: slopes must be nonnegative");
}

PiecewiseProduction PiecewiseProduction::linear(double gamma) {
    return PiecewiseProduction({ProductionSegment{gamma, 0.0}});
}

double PiecewiseProduction::envelope(double p) const {
    double h = std::numeric_limits<double>::infinity();
    for (const auto& s : segments_) h = std::min(h, s.alpha * p + s.beta);
    return h;
}

std::size_t PiecewiseProduction::active_segment(double p) const {
    std::size_t best = 0;
    double h = segments_[0].alpha * p + segments_[0].beta;
    for (std::size_t k = 1; k < segments_.size(); ++k) {
        const double v = segments_[k].alpha * p + segments_[k].beta;
        if (v < h) {
            h = v;
            best = k;
        }
    }
    return best;
}

std::vector<double> PiecewiseProduction::breakpoints_within(double q_h) const {
    std::vector<double> breaks;
    double prev = 0.0;
    for (std::size_t k = 0; k + 1 < segments_.size(); ++k) {
        const double b = (segments_[k + 1].beta - segments_[k].beta) /
                         (segments_[k].alpha - segments_[k + 1].alpha);
        if (!(b > prev && b < q_h)) {
            std::ostringstream os;
            os << "piecewise production: breakpoint " << (k + 1) << " (" << b
               << " kW) must lie strictly inside (previous breakpoint, q_h)";
            throw input_error(os.str());
        }
        breaks.push_back(b);
        prev = b;
    }
    return breaks;
}

SegmentThresholds piecewise_thresholds(const MarketParams& params,
                                       const PiecewiseProduction& pw) {
    SegmentThresholds th;
    const double margin = params.hydrogen_margin();
    for (const auto& s : pw.segments()) {
        th.pi_lo.push_back(s.alpha * margin - params.tau_rec_im);
        th.pi_hi.push_back(s.alpha * margin - params.tau_rec_ex);
    }
    return th;
}

} // namespace rchp
