#pragma once

#include <span>
#include <vector>

#include "morrey/core.hpp"

namespace morrey {

/// Compactly supported piecewise-constant function on the real line.
///
/// Cell i is (breakpoints[i], breakpoints[i+1]) with value values[i]; the
/// function vanishes outside [breakpoints.front(), breakpoints.back()].
/// Construction canonicalises: adjacent cells with equal values are merged
/// and zero cells at either end are trimmed, so the zero function has no
/// breakpoints at all.
class StepFunction {
public:
    StepFunction() = default;
    StepFunction(std::vector<double> breakpoints, std::vector<double> values);

    static StepFunction indicator(const Interval& I, double height = 1.0);

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t cell_count() const { return values_.size(); }
    bool is_zero() const { return values_.empty(); }

    /// [first, last] breakpoint. Throws InvalidArgument for the zero function.
    Interval support() const;
    Interval cell(std::size_t i) const { return {breakpoints_[i], breakpoints_[i + 1]}; }

    bool is_breakpoint(double x) const;
    /// Value at x; at a breakpoint the right-continuous value is returned.
    double operator()(double x) const;

    StepFunction scaled(double c) const;
    double max_abs() const;

private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

/// Partition of [lo, hi] into `min_cells` uniform cells, refined geometrically
/// towards each focus point with `cells_per_decade` cells per decade of
/// distance. Focus points inside the interval split it; points outside grade
/// the cells towards the nearer endpoint. Around focus points on or inside the
/// interval, distances below `floor` (relative to hi - lo) are not resolved.
std::vector<double> graded_partition(double lo, double hi, std::span<const double> focus,
                                     int min_cells, int cells_per_decade, double floor = 1e-12);

}  // namespace morrey
