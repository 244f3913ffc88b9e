#pragma once

#include <array>
#include <numbers>
#include <optional>

#include "morrey/errors.hpp"

namespace morrey {

/// A point of R^n, n <= 2. One-dimensional code only reads x.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b, int dim);

/// The triple (p, lambda, n) that parametrises L^{p,lambda}(R^n, w).
struct MorreyParams {
    double p = 2.0;
    double lambda = 0.0;
    int n = 1;

    /// Throws InvalidArgument unless p >= 1, 0 <= lambda < 1 and n in {1, 2}.
    void validate() const;
};

/// beta = 1/(lambda + p - 1). Throws DegenerateParameters when lambda + p - 1 <= 0.
double beta(const MorreyParams& params);

/// Exponent of the dual weight w_* = w^{-(1-lambda)/(lambda+p-1)}.
double dual_exponent(const MorreyParams& params);

/// Conjugate exponent p' = p/(p-1); requires p > 1.
double conjugate_exponent(double p);

/// Surface measure of the unit sphere S^{n-1}: 2 for n = 1, 2 pi for n = 2.
double unit_sphere_area(int dim);

/// Open ball B(center, radius). In one dimension this is the interval I(x, r).
struct Ball {
    Point center;
    double radius = 1.0;

    /// Lebesgue measure: 2r for n = 1, pi r^2 for n = 2.
    double volume(int dim) const;
    bool contains(const Point& q, int dim) const;
    bool contains_closure(const Point& q, int dim) const;
    void validate() const;

    friend bool operator==(const Ball&, const Ball&) = default;
};

/// Lexicographic (center, radius) order used to break ties between maximisers.
bool lexicographically_less(const Ball& a, const Ball& b);

/// Closed interval [lo, hi] of the real line.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    double midpoint() const { return 0.5 * (lo + hi); }
    Ball as_ball() const { return Ball{Point{midpoint(), 0.0}, 0.5 * length()}; }
    static Interval of(const Ball& b) { return {b.center.x - b.radius, b.center.x + b.radius}; }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Intersection of two intervals, or nullopt when they are disjoint.
/// Intervals that only touch at an endpoint intersect in a single point.
std::optional<Interval> intersect_1d(const Interval& a, const Interval& b);

}  // namespace morrey
