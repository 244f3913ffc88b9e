#include "morrey/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

namespace morrey {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kGeometricLevels = 40;
constexpr double kSimpsonTol = 1e-12;
constexpr int kSimpsonDepth = 40;

// integral of t^nu over [u, v], 0 <= u < v
double one_sided_power(double nu, double u, double v) {
    const double q = nu + 1.0;
    if (u == 0.0) {
        if (q <= 0.0) return kInf;
        return std::pow(v, q) / q;
    }
    const double rel = (v - u) / u;
    if (q == 0.0) return std::log1p(rel);
    if (rel > 1.0) return (std::pow(v, q) - std::pow(u, q)) / q;
    return std::pow(u, q) * std::expm1(q * std::log1p(rel)) / q;
}

template <class F>
double simpson_recursive(const F& f, double a, double b, double fa, double fm, double fb, double whole,
                         double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_recursive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recursive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b) {
    if (!(b > a)) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double scale = std::max(std::abs(whole), std::numeric_limits<double>::min());
    return simpson_recursive(f, a, b, fa, fm, fb, whole, kSimpsonTol * scale, kSimpsonDepth);
}

bool is_center(const std::vector<Weight::Power>& powers, double t) {
    return std::any_of(powers.begin(), powers.end(), [t](const Weight::Power& q) { return q.a.x == t; });
}

double exponent_at(const std::vector<Weight::Power>& powers, double t) {
    for (const auto& q : powers)
        if (q.a.x == t) return q.nu;
    return 0.0;
}

// [u, v] with a power singularity at endpoint e (e == u or e == v)
double graded_piece(const Weight& w, const std::vector<Weight::Power>& powers, double u, double v, bool at_left) {
    const double h = v - u;
    const double e = at_left ? u : v;
    const double s = at_left ? 1.0 : -1.0;
    auto f = [&w](double t) { return w(t); };
    double total = 0.0;
    double outer = h;
    for (int k = 0; k < kGeometricLevels; ++k) {
        const double inner = 0.5 * outer;
        const double a = e + s * inner;
        const double b = e + s * outer;
        total += adaptive_simpson(f, std::min(a, b), std::max(a, b));
        outer = inner;
    }
    // remaining [e, e + s*outer]: w ~ C |t-e|^nu there
    const double nu = exponent_at(powers, e);
    total += w(e + s * outer) * outer / (nu + 1.0);
    return total;
}

double numeric_mass(const Weight& w, double lo, double hi) {
    const auto powers = w.power_factors();
    for (const auto& q : powers)
        if (q.nu <= -1.0 && q.a.x >= lo && q.a.x <= hi) return kInf;

    std::vector<double> cuts{lo, hi};
    for (const auto& q : powers)
        if (q.a.x > lo && q.a.x < hi) cuts.push_back(q.a.x);
    for (const auto& t : w.tabulated_factors())
        for (double x : t.x)
            if (x > lo && x < hi) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto f = [&w](double t) { return w(t); };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double u = cuts[i];
        const double v = cuts[i + 1];
        const bool left = is_center(powers, u);
        const bool right = is_center(powers, v);
        if (left && right) {
            const double m = 0.5 * (u + v);
            total += graded_piece(w, powers, u, m, true) + graded_piece(w, powers, m, v, false);
        } else if (left) {
            total += graded_piece(w, powers, u, v, true);
        } else if (right) {
            total += graded_piece(w, powers, u, v, false);
        } else {
            total += adaptive_simpson(f, u, v);
        }
    }
    return total;
}

double power_disc_mass(double nu, double d, double r) {
    const double q = nu + 2.0;
    if (d == 0.0) {
        if (q <= 0.0) return kInf;
        return 2.0 * std::numbers::pi * std::pow(r, q) / q;
    }
    if (d <= r) {
        if (q <= 0.0) return kInf;
        // rho(theta): distance from the power center to the circle along theta
        auto integrand = [&](double th) {
            const double s = std::sin(th);
            const double rho = d * std::cos(th) + std::sqrt(std::max(0.0, r * r - d * d * s * s));
            return std::pow(rho, q) / q;
        };
        int n = 256;
        auto trap = [&](int m) {
            double acc = 0.0;
            for (int i = 0; i < m; ++i) acc += integrand(2.0 * std::numbers::pi * i / m);
            return acc * 2.0 * std::numbers::pi / m;
        };
        double prev = trap(n);
        while (n < (1 << 20)) {
            n *= 2;
            const double cur = trap(n);
            if (std::abs(cur - prev) <= 1e-8 * std::abs(cur)) return cur;
            prev = cur;
        }
        return prev;
    }
    // center outside: sin(phi) = (r/d) sin(psi) removes the tangent square roots
    auto integrand = [&](double psi) {
        const double cpsi = std::cos(psi);
        if (cpsi <= 0.0) return 0.0;
        const double sphi = r / d * std::sin(psi);
        const double cphi = std::sqrt(std::max(0.0, 1.0 - sphi * sphi));
        const double half = r * cpsi;
        const double t1 = d * cphi - half;
        const double t2 = d * cphi + half;
        double radial;
        if (t1 > 0.0 && (t2 - t1) < t1)
            radial = std::pow(t1, q) * std::expm1(q * std::log1p((t2 - t1) / t1)) / q;
        else
            radial = (std::pow(t2, q) - std::pow(std::max(t1, 0.0), q)) / q;
        return radial * (r / d) * cpsi / cphi;
    };
    const double a = -0.5 * std::numbers::pi;
    const double b = 0.5 * std::numbers::pi;
    auto simpson = [&](int m) {
        const double h = (b - a) / m;
        double acc = integrand(a) + integrand(b);
        for (int i = 1; i < m; ++i) acc += integrand(a + h * i) * ((i % 2) ? 4.0 : 2.0);
        return acc * h / 3.0;
    };
    int n = 256;
    double prev = simpson(n);
    while (n < (1 << 20)) {
        n *= 2;
        const double cur = simpson(n);
        if (std::abs(cur - prev) <= 1e-8 * std::abs(cur)) return cur;
        prev = cur;
    }
    return prev;
}

// segment of the ray a + t e(theta), t >= 0, inside the open disc B
bool ray_segment(const Point& a, double cx, double sy, const Ball& B, double& t0, double& t1) {
    const double px = a.x - B.center.x;
    const double py = a.y - B.center.y;
    const double bq = px * cx + py * sy;
    const double cq = px * px + py * py - B.radius * B.radius;
    const double disc = bq * bq - cq;
    if (disc <= 0.0) return false;
    const double root = std::sqrt(disc);
    t0 = std::max(0.0, -bq - root);
    t1 = -bq + root;
    return t1 > t0;
}

double lens_area(double d, double r1, double r2) {
    if (d >= r1 + r2) return 0.0;
    const double rs = std::min(r1, r2);
    if (d <= std::abs(r1 - r2)) return std::numbers::pi * rs * rs;
    const double a1 = std::acos(std::clamp((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0));
    const double a2 = std::acos(std::clamp((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0));
    return r1 * r1 * (a1 - std::sin(2.0 * a1) / 2.0) + r2 * r2 * (a2 - std::sin(2.0 * a2) / 2.0);
}

struct ScaledPower {
    double c;
    Weight::Power pw;
};

std::optional<ScaledPower> as_scaled_power(const Weight& w) {
    const auto powers = w.power_factors();
    const auto c = w.constant_cofactor();
    if (!c || powers.size() != 1) return std::nullopt;
    return ScaledPower{*c, powers.front()};
}

}  // namespace

double power_mass_1d(double a, double nu, double lo, double hi) {
    if (lo > hi) throw InvalidArgument("weight mass needs lo <= hi");
    if (lo == hi) return 0.0;
    const double u = lo - a;
    const double v = hi - a;
    if (u >= 0.0) return one_sided_power(nu, u, v);
    if (v <= 0.0) return one_sided_power(nu, -v, -u);
    return one_sided_power(nu, 0.0, -u) + one_sided_power(nu, 0.0, v);
}

double weight_mass_1d(const Weight& w, double lo, double hi) {
    if (lo > hi) throw InvalidArgument("weight mass needs lo <= hi");
    if (lo == hi) return 0.0;
    if (w.is_unit()) return hi - lo;
    if (const auto* pw = w.as_power()) return power_mass_1d(pw->a.x, pw->nu, lo, hi);
    const auto powers = w.power_factors();
    if (const auto c = w.constant_cofactor()) {
        if (powers.empty()) return *c * (hi - lo);
        if (powers.size() == 1) return *c * power_mass_1d(powers.front().a.x, powers.front().nu, lo, hi);
    }
    return numeric_mass(w, lo, hi);
}

double weight_mass_ball(const Weight& w, const Ball& B, const MorreyParams& params) {
    B.validate();
    if (params.n == 1) {
        const auto* pw = w.as_power();
        if (w.is_unit() || (pw && pw->nu == 0.0)) return 2.0 * B.radius;
        return weight_mass_1d(w, Interval::of(B));
    }
    if (params.n != 2) throw Unsupported("weight_mass_ball supports n = 1 and n = 2");
    if (w.is_unit()) return std::numbers::pi * B.radius * B.radius;
    const auto sp = as_scaled_power(w);
    if (!sp) throw Unsupported("two-dimensional masses support unit and power weights only");
    const double d = distance(sp->pw.a, B.center, 2);
    return sp->c * power_disc_mass(sp->pw.nu, d, B.radius);
}

double weight_mass_intersection(const Weight& w, const Ball& B1, const Ball& B2, int dim) {
    if (dim == 1) {
        const auto I = intersect_1d(Interval::of(B1), Interval::of(B2));
        if (!I) return 0.0;
        return weight_mass_1d(w, *I);
    }
    if (dim != 2) throw Unsupported("intersections are supported for n = 1 and n = 2");
    const double d = distance(B1.center, B2.center, 2);
    if (d >= B1.radius + B2.radius) return 0.0;
    const MorreyParams plane{1.0, 0.0, 2};
    if (d + B1.radius <= B2.radius) return weight_mass_ball(w, B1, plane);
    if (d + B2.radius <= B1.radius) return weight_mass_ball(w, B2, plane);
    if (w.is_unit()) return lens_area(d, B1.radius, B2.radius);

    const auto sp = as_scaled_power(w);
    if (!sp) throw Unsupported("two-dimensional masses support unit and power weights only");
    const Point a = sp->pw.a;
    const double q = sp->pw.nu + 2.0;
    if (q <= 0.0 && B1.contains_closure(a, 2) && B2.contains_closure(a, 2)) return kInf;
    auto integrand = [&](double th) {
        const double cx = std::cos(th);
        const double sy = std::sin(th);
        double s0, s1, u0, u1;
        if (!ray_segment(a, cx, sy, B1, s0, s1) || !ray_segment(a, cx, sy, B2, u0, u1)) return 0.0;
        const double lo = std::max(s0, u0);
        const double hi = std::min(s1, u1);
        if (!(hi > lo)) return 0.0;
        return (std::pow(hi, q) - std::pow(lo, q)) / q;
    };
    // the angular integrand has kinks towards the lens corners and square-root
    // behaviour at rays tangent to either circle; integrate between those angles
    const double th0 = std::atan2(B1.center.y - a.y, B1.center.x - a.x);
    std::vector<double> cuts{0.0, 2.0 * std::numbers::pi};
    auto add_angle = [&](double th) {
        double rel = std::fmod(th - th0, 2.0 * std::numbers::pi);
        if (rel < 0.0) rel += 2.0 * std::numbers::pi;
        cuts.push_back(rel);
    };
    for (const Ball* B : {&B1, &B2}) {
        const double dist = distance(a, B->center, 2);
        if (dist > B->radius) {
            const double mid = std::atan2(B->center.y - a.y, B->center.x - a.x);
            const double half = std::asin(B->radius / dist);
            add_angle(mid - half);
            add_angle(mid + half);
        }
    }
    {
        const double r1 = B1.radius;
        const double r2 = B2.radius;
        const double along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
        const double across = std::sqrt(std::max(0.0, r1 * r1 - along * along));
        const double ex = (B2.center.x - B1.center.x) / d;
        const double ey = (B2.center.y - B1.center.y) / d;
        for (double sgn : {-1.0, 1.0}) {
            const double px = B1.center.x + along * ex - sgn * across * ey;
            const double py = B1.center.y + along * ey + sgn * across * ex;
            if (px != a.x || py != a.y) add_angle(std::atan2(py - a.y, px - a.x));
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto shifted = [&](double rel) { return integrand(th0 + rel); };
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += adaptive_simpson(shifted, cuts[i], cuts[i + 1]);
    return sp->c * total;
}

void require_integrable_on(const Weight& w, const Ball& B, int dim) {
    for (const auto& q : w.power_factors()) {
        if (q.nu <= -static_cast<double>(dim) && B.contains_closure(q.a, dim))
            throw NonIntegrable("weight " + w.describe() + " is not integrable on a ball containing its singularity");
    }
}

}  // namespace morrey
