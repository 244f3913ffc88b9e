#include "morrey/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace morrey {

double distance(const Point& a, const Point& b, int dim) {
    if (dim == 1) return std::abs(a.x - b.x);
    return std::hypot(a.x - b.x, a.y - b.y);
}

void MorreyParams::validate() const {
    if (!std::isfinite(p) || p < 1.0)
        throw InvalidArgument("p must satisfy p >= 1, got " + std::to_string(p));
    if (!std::isfinite(lambda) || lambda < 0.0 || lambda >= 1.0)
        throw InvalidArgument("lambda must satisfy 0 <= lambda < 1, got " + std::to_string(lambda));
    if (n != 1 && n != 2)
        throw InvalidArgument("dimension n must be 1 or 2, got " + std::to_string(n));
}

double beta(const MorreyParams& params) {
    const double denom = params.lambda + params.p - 1.0;
    if (!(denom > 0.0))
        throw DegenerateParameters("lambda + p - 1 must be positive (p = 1 with lambda = 0 has no beta)");
    return 1.0 / denom;
}

double dual_exponent(const MorreyParams& params) {
    return -(1.0 - params.lambda) * beta(params);
}

double conjugate_exponent(double p) {
    if (!(p > 1.0)) throw InvalidArgument("conjugate exponent needs p > 1");
    return p / (p - 1.0);
}

double unit_sphere_area(int dim) {
    if (dim == 1) return 2.0;
    if (dim == 2) return 2.0 * std::numbers::pi;
    throw InvalidArgument("unsupported dimension " + std::to_string(dim));
}

double Ball::volume(int dim) const {
    if (dim == 1) return 2.0 * radius;
    if (dim == 2) return std::numbers::pi * radius * radius;
    throw InvalidArgument("unsupported dimension " + std::to_string(dim));
}

bool Ball::contains(const Point& q, int dim) const { return distance(center, q, dim) < radius; }

bool Ball::contains_closure(const Point& q, int dim) const { return distance(center, q, dim) <= radius; }

void Ball::validate() const {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw InvalidArgument("ball radius must be positive and finite");
    if (!std::isfinite(center.x) || !std::isfinite(center.y))
        throw InvalidArgument("ball center must be finite");
}

bool lexicographically_less(const Ball& a, const Ball& b) {
    return std::tie(a.center.x, a.center.y, a.radius) < std::tie(b.center.x, b.center.y, b.radius);
}

std::optional<Interval> intersect_1d(const Interval& a, const Interval& b) {
    const double lo = std::max(a.lo, b.lo);
    const double hi = std::min(a.hi, b.hi);
    if (lo > hi) return std::nullopt;
    return Interval{lo, hi};
}

}  // namespace morrey
