// Resupply lead-time laws: a mixture of uniform segments for parking-to-plane
// transfers and a shifted exponential for ground launches.
#pragma once

#include <span>
#include <utility>
#include <vector>

#include "spares/quadrature.hpp"

namespace spares {

struct Segment {
    double lo_days = 0.0;
    double hi_days = 0.0;

    double midpoint() const { return 0.5 * (lo_days + hi_days); }
};

class LeadTimeDistribution {
public:
    enum class Kind { mixture_of_uniforms, shifted_exponential };

    /// Mixture with weights proportional to `raw_weights`. The weights are
    /// renormalized to sum to one; the missing mass of the raw weights is
    /// kept as a diagnostic. Segments must be ordered and non-overlapping.
    static LeadTimeDistribution mixture(std::vector<double> raw_weights,
                                        std::vector<Segment> segments);

    /// T = shift + Exp(mean_wait).
    static LeadTimeDistribution shifted_exponential(double shift_days, double mean_wait_days);

    Kind kind() const { return kind_; }
    std::span<const double> weights() const { return weights_; }
    std::span<const Segment> segments() const { return segments_; }
    double shift_days() const { return shift_days_; }
    double mean_wait_days() const { return mean_wait_days_; }
    /// 1 - sum(raw weights) for mixtures, 0 otherwise.
    double neglected_mass() const { return neglected_mass_; }

    double mean() const;
    double pdf(double t) const;
    double cdf(double t) const;
    double lower_bound() const;

    /// Inverse-CDF style draw from two independent uniforms on [0, 1).
    double sample(double u_component, double u_value) const;

    /// E[g(T)] by Gauss-Legendre per uniform segment (32 nodes) or
    /// Gauss-Laguerre after the shift (64 nodes).
    template <typename F>
    double expectation(F&& g) const {
        double acc = 0.0;
        if (kind_ == Kind::mixture_of_uniforms) {
            const auto& rule = quadrature::legendre32();
            for (std::size_t i = 0; i < segments_.size(); ++i) {
                if (weights_[i] == 0.0) continue;
                const Segment& seg = segments_[i];
                const double width = seg.hi_days - seg.lo_days;
                const double avg = width > 0.0
                                       ? quadrature::integrate(rule, seg.lo_days, seg.hi_days, g) / width
                                       : g(seg.lo_days);
                acc += weights_[i] * avg;
            }
        } else {
            const auto& rule = quadrature::laguerre64();
            for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
                acc += rule.weights[k] * g(shift_days_ + mean_wait_days_ * rule.nodes[k]);
            }
        }
        return acc;
    }

private:
    LeadTimeDistribution() = default;

    Kind kind_ = Kind::shifted_exponential;
    std::vector<double> weights_;
    std::vector<Segment> segments_;
    double neglected_mass_ = 0.0;
    double shift_days_ = 0.0;
    double mean_wait_days_ = 0.0;
};

}  // namespace spares
