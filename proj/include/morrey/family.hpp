#pragma once

#include <optional>
#include <vector>

#include "morrey/core.hpp"

namespace morrey {

/// Axis-aligned box of candidate ball centers. In one dimension only x is used.
struct Box {
    Point lo;
    Point hi;
    friend bool operator==(const Box&, const Box&) = default;
};

/// Finite search grid of centers x radii over which every sup is evaluated.
///
/// Centers form a uniform grid with center_count points per axis plus the
/// extra `seeds` (weight singularities, interval endpoints) that fall inside
/// the box. Radii are log-spaced on [radius_min, min(radius_max, cap)].
struct BallFamily {
    int dim = 1;
    Box center_box;
    int center_count = 129;
    double radius_min = 1e-4;
    double radius_max = 1.0;
    int radius_count = 64;
    int refine_rounds = 3;
    std::optional<double> max_radius_cap;
    std::vector<Point> seeds;

    /// Throws InvalidArgument on empty boxes, counts < 2, or radius_min >= effective radius_max.
    void validate() const;

    double effective_radius_max() const;
    std::vector<double> radii() const;
    std::vector<Point> grid_centers() const;
    bool in_box(const Point& q) const;
    void add_seeds(const std::vector<Point>& pts);

    friend bool operator==(const BallFamily&, const BallFamily&) = default;
};

/// Shape of a family relative to a target ball; used where a family has to be
/// rebuilt for many balls (the inner norms of the nested functionals).
struct GridShape {
    int center_count = 129;
    int radius_count = 64;
    double rmin_ratio = 1e-4;
    int refine_rounds = 3;

    static GridShape standard() { return {}; }
    /// Coarse inner grid for nested sups: 33 centers x 24 radii, one zoom round.
    static GridShape inner() { return {33, 24, 1e-4, 1}; }

    friend bool operator==(const GridShape&, const GridShape&) = default;
};

/// Family for the norm of the characteristic function of b0: centers in the
/// ball enlarged by 2 r0 (centers of balls meeting b0 lie within 2 r0 once
/// r <= r0), radii in [rmin_ratio r0, r0]. Larger radii are dominated by (x0, r0).
BallFamily family_for_ball(const Ball& b0, const GridShape& shape, int dim);

/// Family for a function supported on `support` (1-D): radii up to half the
/// support length, centers over the support enlarged by twice that.
BallFamily family_for_support(const Interval& support, const GridShape& shape);

/// Value and provenance of a sup-type functional evaluated over a family.
struct FunctionalReport {
    double value = 0.0;  ///< lower-bound estimate of the sup (may be +inf)
    Ball argmax;
    BallFamily family;
    std::vector<double> refine_trace;  ///< running max after each round, non-decreasing
    bool diverging = false;
    std::size_t nonfinite_evaluations = 0;
    std::size_t evaluations = 0;
};

}  // namespace morrey
