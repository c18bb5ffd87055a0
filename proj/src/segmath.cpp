// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#include "procurate/segmath.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "procurate/error.hpp"

namespace procurate::segmath {

Interval::Interval(double start, double end) : start_(start), end_(end) {
    if (!std::isfinite(start) || !std::isfinite(end) || !(start < end)) {
        throw ConfigError("interval needs finite start < end, got [" + std::to_string(start) + ", " +
                          std::to_string(end) + "]");
    }
}

double intersection_length(const Interval& a, const Interval& b) noexcept {
    return std::max(0.0, std::min(a.end(), b.end()) - std::max(a.start(), b.start()));
}

double hull_length(const Interval& a, const Interval& b) noexcept {
    return std::max(a.end(), b.end()) - std::min(a.start(), b.start());
}

double interval_iou(const Interval& a, const Interval& b) noexcept {
    const double inter = intersection_length(a, b);
    return inter / (a.length() + b.length() - inter);
}

double interval_giou(const Interval& a, const Interval& b) noexcept {
    const double inter = intersection_length(a, b);
    const double uni = a.length() + b.length() - inter;
    const double hull = hull_length(a, b);
    return inter / uni - (hull - uni) / hull;
}

double scaled_g(const Interval& truth, const Interval& predicted) noexcept {
    return 0.5 * (1.0 + interval_giou(truth, predicted));
}

double gvfl_loss(double p, double g, const VflParams& params) {
    if (!(g >= 0.0 && g <= 1.0)) throw ConfigError("gvfl target g must lie in [0, 1], got " + std::to_string(g));
    if (!(params.alpha > 0.0)) throw ConfigError("gvfl alpha must be positive");
    if (!(params.gamma >= 0.0)) throw ConfigError("gvfl gamma must be non-negative");
    if (std::isnan(p)) throw ConfigError("gvfl confidence p is NaN");

    p = std::clamp(p, kProbabilityClamp, 1.0 - kProbabilityClamp);
    if (g > 0.0) return -g * (g * std::log(p) + (1.0 - g) * std::log1p(-p));
    const double log_term = params.literal_negative_branch ? std::log1p(-g) : std::log1p(-p);
    if (log_term == 0.0) return 0.0;
    return -params.alpha * std::pow(p, params.gamma) * log_term;
}

}  // namespace procurate::segmath
