// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 procurate contributors

#pragma once

namespace procurate::segmath {

// Half-open time interval with positive length.
class Interval {
public:
    // Throws ConfigError unless start < end and both are finite.
    Interval(double start, double end);

    double start() const noexcept { return start_; }
    double end() const noexcept { return end_; }
    double length() const noexcept { return end_ - start_; }

private:
    double start_;
    double end_;
};

double intersection_length(const Interval& a, const Interval& b) noexcept;
double hull_length(const Interval& a, const Interval& b) noexcept;

double interval_iou(const Interval& a, const Interval& b) noexcept;

// IoU minus the share of the enclosing hull covered by neither interval.
// Range (-1, 1]; equals IoU whenever the intervals overlap or touch.
double interval_giou(const Interval& a, const Interval& b) noexcept;

// Positive-branch target of the varifocal loss: 0.5 * (1 + gIoU).
double scaled_g(const Interval& truth, const Interval& predicted) noexcept;

struct VflParams {
    double alpha = 0.75;
    double gamma = 2.0;
    // Evaluate the negative branch exactly as printed, -alpha p^gamma log(1-g),
    // which is identically zero at g = 0.
    bool literal_negative_branch = false;
};

inline constexpr double kProbabilityClamp = 1e-7;

// gIoU-guided varifocal loss for one proposal with confidence p and target g.
//   g > 0:  -g (g log p + (1-g) log(1-p))
//   g = 0:  -alpha p^gamma log(1-p)
// p is clamped to [1e-7, 1-1e-7]. Throws ConfigError for g outside [0, 1] or
// invalid alpha/gamma.
double gvfl_loss(double p, double g, const VflParams& params = {});

}  // namespace procurate::segmath
