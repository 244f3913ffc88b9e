#include "morrey/family.hpp"

#include <algorithm>
#include <cmath>

namespace morrey {

void BallFamily::validate() const {
    if (dim != 1 && dim != 2) throw InvalidArgument("family dimension must be 1 or 2");
    if (center_count < 2) throw InvalidArgument("family center_count must be >= 2");
    if (radius_count < 2) throw InvalidArgument("family radius_count must be >= 2");
    if (refine_rounds < 0) throw InvalidArgument("family refine_rounds must be >= 0");
    if (!(center_box.hi.x >= center_box.lo.x) || (dim == 2 && !(center_box.hi.y >= center_box.lo.y)))
        throw InvalidArgument("family center box is empty");
    if (!(radius_min > 0.0)) throw InvalidArgument("family radius_min must be positive");
    if (max_radius_cap && !(*max_radius_cap > 0.0)) throw InvalidArgument("family max_radius_cap must be positive");
    if (!(radius_min < effective_radius_max()))
        throw InvalidArgument("family needs radius_min < radius_max (after applying the cap)");
}

double BallFamily::effective_radius_max() const {
    return max_radius_cap ? std::min(radius_max, *max_radius_cap) : radius_max;
}

std::vector<double> BallFamily::radii() const {
    const double lo = radius_min;
    const double hi = effective_radius_max();
    std::vector<double> r(static_cast<std::size_t>(radius_count));
    const double step = std::log(hi / lo) / (radius_count - 1);
    for (int i = 0; i < radius_count; ++i) r[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
    r.front() = lo;
    r.back() = hi;
    return r;
}

namespace {
std::vector<double> axis(double lo, double hi, int count) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
    v.back() = hi;
    return v;
}
}  // namespace

std::vector<Point> BallFamily::grid_centers() const {
    const auto xs = axis(center_box.lo.x, center_box.hi.x, center_count);
    std::vector<Point> out;
    if (dim == 1) {
        for (double x : xs) out.push_back({x, 0.0});
    } else {
        const auto ys = axis(center_box.lo.y, center_box.hi.y, center_count);
        for (double x : xs)
            for (double y : ys) out.push_back({x, y});
    }
    return out;
}

bool BallFamily::in_box(const Point& q) const {
    const bool x_ok = q.x >= center_box.lo.x && q.x <= center_box.hi.x;
    if (dim == 1) return x_ok;
    return x_ok && q.y >= center_box.lo.y && q.y <= center_box.hi.y;
}

void BallFamily::add_seeds(const std::vector<Point>& pts) {
    for (Point q : pts) {
        if (dim == 1) q.y = 0.0;
        if (in_box(q) && std::find(seeds.begin(), seeds.end(), q) == seeds.end()) seeds.push_back(q);
    }
}

BallFamily family_for_ball(const Ball& b0, const GridShape& shape, int dim) {
    b0.validate();
    const double r0 = b0.radius;
    const double reach = 3.0 * r0;
    BallFamily fam;
    fam.dim = dim;
    fam.center_box.lo = {b0.center.x - reach, dim == 2 ? b0.center.y - reach : 0.0};
    fam.center_box.hi = {b0.center.x + reach, dim == 2 ? b0.center.y + reach : 0.0};
    fam.center_count = shape.center_count;
    fam.radius_count = shape.radius_count;
    fam.radius_min = shape.rmin_ratio * r0;
    fam.radius_max = r0;
    fam.refine_rounds = shape.refine_rounds;
    fam.add_seeds({b0.center});
    if (dim == 1) fam.add_seeds({{b0.center.x - r0, 0.0}, {b0.center.x + r0, 0.0}});
    return fam;
}

BallFamily family_for_support(const Interval& support, const GridShape& shape) {
    return family_for_ball(support.as_ball(), shape, 1);
}

}  // namespace morrey
