#include "morrey/step_function.hpp"

#include <algorithm>
#include <cmath>

namespace morrey {

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values) {
    if (breakpoints.empty() && values.empty()) return;
    if (breakpoints.size() != values.size() + 1)
        throw InvalidArgument("step function needs exactly one value per cell (|values| = |breakpoints| - 1)");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1]))
            throw InvalidArgument("step function breakpoints must be strictly increasing");
    for (double v : values)
        if (!std::isfinite(v)) throw InvalidArgument("step function values must be finite");
    for (double b : breakpoints)
        if (!std::isfinite(b)) throw InvalidArgument("step function breakpoints must be finite");

    // merge equal neighbours
    std::vector<double> bp{breakpoints.front()};
    std::vector<double> vals;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!vals.empty() && vals.back() == values[i]) {
            bp.back() = breakpoints[i + 1];
        } else {
            vals.push_back(values[i]);
            bp.push_back(breakpoints[i + 1]);
        }
    }
    // trim zero cells at both ends
    std::size_t first = 0;
    std::size_t last = vals.size();
    while (first < last && vals[first] == 0.0) ++first;
    while (last > first && vals[last - 1] == 0.0) --last;
    if (first == last) return;
    breakpoints_.assign(bp.begin() + static_cast<std::ptrdiff_t>(first),
                        bp.begin() + static_cast<std::ptrdiff_t>(last) + 1);
    values_.assign(vals.begin() + static_cast<std::ptrdiff_t>(first),
                   vals.begin() + static_cast<std::ptrdiff_t>(last));
}

StepFunction StepFunction::indicator(const Interval& I, double height) {
    return StepFunction({I.lo, I.hi}, {height});
}

Interval StepFunction::support() const {
    if (is_zero()) throw InvalidArgument("the zero step function has empty support");
    return {breakpoints_.front(), breakpoints_.back()};
}

bool StepFunction::is_breakpoint(double x) const {
    return std::binary_search(breakpoints_.begin(), breakpoints_.end(), x);
}

double StepFunction::operator()(double x) const {
    if (is_zero() || x < breakpoints_.front() || x >= breakpoints_.back()) return 0.0;
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

StepFunction StepFunction::scaled(double c) const {
    std::vector<double> v = values_;
    for (double& x : v) x *= c;
    return StepFunction(breakpoints_, std::move(v));
}

double StepFunction::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> graded_partition(double lo, double hi, std::span<const double> focus,
                                     int min_cells, int cells_per_decade, double floor) {
    if (!(hi > lo)) throw InvalidArgument("graded_partition needs lo < hi");
    if (min_cells < 1 || cells_per_decade < 1) throw InvalidArgument("graded_partition needs positive cell counts");
    const double len = hi - lo;
    const double dmin = floor * len;

    std::vector<double> pts;
    for (int i = 0; i <= min_cells; ++i) pts.push_back(lo + len * i / min_cells);
    pts.back() = hi;

    // geometric points at distances in [near, far] from a, on the side given by sign
    auto grade = [&](double a, double sign, double near, double far) {
        if (!(near > 0.0)) near = dmin;
        if (!(far > near)) return;
        const double decades = std::log10(far / near);
        const int cells = std::max(1, static_cast<int>(std::ceil(decades * cells_per_decade)));
        for (int j = 0; j <= cells; ++j) {
            const double d = near * std::pow(far / near, static_cast<double>(j) / cells);
            const double t = a + sign * d;
            if (t > lo && t < hi) pts.push_back(t);
        }
    };

    for (double a : focus) {
        if (a > lo && a < hi) {
            pts.push_back(a);
            grade(a, -1.0, 0.0, a - lo);
            grade(a, +1.0, 0.0, hi - a);
        } else if (a <= lo) {
            grade(a, +1.0, lo - a, hi - a);
        } else {
            grade(a, -1.0, a - hi, a - lo);
        }
    }

    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace morrey
