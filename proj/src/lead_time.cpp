#include "spares/lead_time.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spares {

LeadTimeDistribution LeadTimeDistribution::mixture(std::vector<double> raw_weights,
                                                   std::vector<Segment> segments) {
    if (raw_weights.empty() || raw_weights.size() != segments.size()) {
        throw std::invalid_argument("mixture: need one weight per segment");
    }
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (!(segments[i].lo_days >= 0.0) || !(segments[i].hi_days >= segments[i].lo_days)) {
            throw std::invalid_argument("mixture: segment bounds must satisfy 0 <= lo <= hi");
        }
        if (i > 0 && segments[i].lo_days < segments[i - 1].hi_days - 1e-9 * segments[i].lo_days) {
            throw std::invalid_argument("mixture: segments must be ordered and non-overlapping");
        }
        if (!(raw_weights[i] >= 0.0)) throw std::invalid_argument("mixture: weights must be >= 0");
    }
    const double total = std::accumulate(raw_weights.begin(), raw_weights.end(), 0.0);
    if (!(total > 0.0)) throw std::invalid_argument("mixture: weights sum to zero");

    LeadTimeDistribution d;
    d.kind_ = Kind::mixture_of_uniforms;
    d.neglected_mass_ = std::max(0.0, 1.0 - total);
    for (double& w : raw_weights) w /= total;
    d.weights_ = std::move(raw_weights);
    d.segments_ = std::move(segments);
    return d;
}

LeadTimeDistribution LeadTimeDistribution::shifted_exponential(double shift_days,
                                                               double mean_wait_days) {
    if (!(shift_days >= 0.0) || !(mean_wait_days > 0.0)) {
        throw std::invalid_argument("shifted_exponential: need shift >= 0 and mean > 0");
    }
    LeadTimeDistribution d;
    d.kind_ = Kind::shifted_exponential;
    d.shift_days_ = shift_days;
    d.mean_wait_days_ = mean_wait_days;
    return d;
}

double LeadTimeDistribution::mean() const {
    if (kind_ == Kind::shifted_exponential) return shift_days_ + mean_wait_days_;
    double m = 0.0;
    for (std::size_t i = 0; i < segments_.size(); ++i) m += weights_[i] * segments_[i].midpoint();
    return m;
}

double LeadTimeDistribution::pdf(double t) const {
    if (kind_ == Kind::shifted_exponential) {
        if (t < shift_days_) return 0.0;
        return std::exp(-(t - shift_days_) / mean_wait_days_) / mean_wait_days_;
    }
    double f = 0.0;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const Segment& s = segments_[i];
        if (t >= s.lo_days && t < s.hi_days) f += weights_[i] / (s.hi_days - s.lo_days);
    }
    return f;
}

double LeadTimeDistribution::cdf(double t) const {
    if (kind_ == Kind::shifted_exponential) {
        if (t <= shift_days_) return 0.0;
        return -std::expm1(-(t - shift_days_) / mean_wait_days_);
    }
    double c = 0.0;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const Segment& s = segments_[i];
        if (t >= s.hi_days) {
            c += weights_[i];
        } else if (t > s.lo_days) {
            c += weights_[i] * (t - s.lo_days) / (s.hi_days - s.lo_days);
        }
    }
    return std::min(c, 1.0);
}

double LeadTimeDistribution::lower_bound() const {
    return kind_ == Kind::shifted_exponential ? shift_days_ : segments_.front().lo_days;
}

double LeadTimeDistribution::sample(double u_component, double u_value) const {
    if (kind_ == Kind::shifted_exponential) {
        return shift_days_ - mean_wait_days_ * std::log1p(-u_value);
    }
    double acc = 0.0;
    std::size_t pick = segments_.size() - 1;
    while (pick > 0 && weights_[pick] == 0.0) --pick;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        acc += weights_[i];
        if (u_component < acc) {
            pick = i;
            break;
        }
    }
    const Segment& s = segments_[pick];
    return s.lo_days + u_value * (s.hi_days - s.lo_days);
}

}  // namespace spares
