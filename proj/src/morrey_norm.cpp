#include "morrey/morrey_norm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "morrey/measure.hpp"

namespace morrey {

namespace {

BallFamily seeded(BallFamily fam, const Weight& w) {
    fam.add_seeds(w.singular_points());
    return fam;
}

// p-th root applied to a mass report
FunctionalReport root_report(FunctionalReport rep, double p) {
    auto root = [p](double v) { return std::isfinite(v) ? std::pow(v, 1.0 / p) : v; };
    rep.value = root(rep.value);
    for (double& t : rep.refine_trace) t = root(t);
    return rep;
}

}  // namespace

double char_norm_unweighted(const MorreyParams& params, const Ball& b0) {
    params.validate();
    b0.validate();
    return std::pow(b0.volume(params.n), (1.0 - params.lambda) / params.p);
}

FunctionalReport char_mass_sup(const MorreyParams& params, const Weight& w, const Ball& b0, const BallFamily& fam,
                               const SupOptions& opt) {
    params.validate();
    b0.validate();
    const int n = params.n;
    const double lambda = params.lambda;
    const BallFunctional f = [&](const Ball& B) {
        const double mass = weight_mass_intersection(w, B, b0, n);
        if (mass == 0.0) return 0.0;
        return mass / std::pow(B.volume(n), lambda);
    };
    return maximize(seeded(fam, w), f, opt);
}

FunctionalReport char_norm_weighted(const MorreyParams& params, const Weight& w, const Ball& b0,
                                    const BallFamily& fam, const SupOptions& opt) {
    // the p-th root is monotone, so the maximiser and the divergence verdict
    // carry over; growth ratios shrink to their p-th root, hence the rescaled threshold
    SupOptions o = opt;
    o.divergence.growth_threshold = std::pow(opt.divergence.growth_threshold, params.p);
    FunctionalReport rep = root_report(char_mass_sup(params, w, b0, fam, o), params.p);
    return rep;
}

FunctionalReport char_norm_weighted(const MorreyParams& params, const Weight& w, const Ball& b0,
                                    const GridShape& shape, const SupOptions& opt) {
    return char_norm_weighted(params, w, b0, family_for_ball(b0, shape, params.n), opt);
}

NormBracket char_norm_bracket(const MorreyParams& params, const Weight& w, const Ball& b0, const BallFamily& fam) {
    params.validate();
    fam.validate();
    const int n = params.n;
    auto term = [&](const Ball& B) {
        const double mass = weight_mass_ball(w, B, params);
        return std::pow(mass / std::pow(B.volume(n), params.lambda), 1.0 / params.p);
    };
    NormBracket out;
    const auto radii = fam.radii();
    for (double r : radii) {
        if (r > b0.radius) continue;
        out.lower = std::max(out.lower, term(Ball{b0.center, r}));
    }
    std::vector<Point> centers = fam.grid_centers();
    for (const Point& s : fam.seeds) centers.push_back(s);
    for (const Point& c : centers) {
        if (!(distance(c, b0.center, n) < 2.0 * b0.radius)) continue;
        for (double r : radii) {
            if (r > b0.radius) continue;
            out.upper = std::max(out.upper, term(Ball{c, r}));
        }
    }
    return out;
}

FunctionalReport morrey_norm_step(const MorreyParams& params, const Weight& w, const StepFunction& f,
                                  const BallFamily& fam, const SupOptions& opt) {
    params.validate();
    if (params.n != 1) throw Unsupported("step-function norms are one-dimensional");
    if (f.is_zero()) {
        FunctionalReport rep;
        rep.family = fam;
        rep.refine_trace = {0.0};
        rep.argmax = Ball{fam.center_box.lo, fam.radius_min};
        return rep;
    }
    const auto& bp = f.breakpoints();
    std::vector<double> powered(f.values().size());
    std::transform(f.values().begin(), f.values().end(), powered.begin(),
                   [&](double v) { return std::pow(std::abs(v), params.p); });

    // prefix[i] = sum of |v_j|^p w(cell_j) over j < i
    const std::size_t cells = powered.size();
    std::vector<double> prefix(cells + 1, 0.0);
    for (std::size_t i = 0; i < cells; ++i)
        prefix[i + 1] = prefix[i] + (powered[i] == 0.0 ? 0.0 : powered[i] * weight_mass_1d(w, bp[i], bp[i + 1]));
    if (!std::isfinite(prefix.back())) throw NonIntegrable("|f|^p w is not integrable");

    auto cell_of = [&](double x) {
        auto it = std::upper_bound(bp.begin(), bp.end(), x);
        return static_cast<std::size_t>(it - bp.begin()) - 1;
    };
    auto partial = [&](std::size_t i, double a, double b) {
        if (powered[i] == 0.0 || !(b > a)) return 0.0;
        return powered[i] * weight_mass_1d(w, a, b);
    };

    const double lambda = params.lambda;
    const BallFunctional fn = [&](const Ball& B) {
        const double lo = std::max(B.center.x - B.radius, bp.front());
        const double hi = std::min(B.center.x + B.radius, bp.back());
        if (!(hi > lo)) return 0.0;
        const std::size_t i0 = std::min(cell_of(lo), cells - 1);
        const std::size_t i1 = std::min(cell_of(hi), cells - 1);
        double acc;
        if (i0 == i1) {
            acc = partial(i0, lo, hi);
        } else {
            acc = partial(i0, lo, bp[i0 + 1]) + (prefix[i1] - prefix[i0 + 1]) + partial(i1, bp[i1], hi);
        }
        if (!(acc > 0.0)) return 0.0;
        return acc / std::pow(2.0 * B.radius, lambda);
    };
    SupOptions o = opt;
    o.divergence.growth_threshold = std::pow(opt.divergence.growth_threshold, params.p);
    return root_report(maximize(seeded(fam, w), fn, o), params.p);
}

FunctionalReport morrey_norm_step(const MorreyParams& params, const Weight& w, const StepFunction& f,
                                  const GridShape& shape, const SupOptions& opt) {
    if (f.is_zero()) return morrey_norm_step(params, w, f, family_for_support({-1.0, 1.0}, shape), opt);
    BallFamily fam = family_for_support(f.support(), shape);
    std::vector<Point> pts;
    for (double b : f.breakpoints()) pts.push_back({b, 0.0});
    fam.add_seeds(pts);
    return morrey_norm_step(params, w, f, fam, opt);
}

ExponentFit exponent_fit(const MorreyParams& params, const Weight& w, const std::vector<double>& radii,
                         const GridShape& shape, const SupOptions& opt, double residual_threshold) {
    params.validate();
    const auto* pw = w.as_power();
    if (!pw) throw InvalidArgument("exponent_fit needs a power weight");
    if (radii.size() < 2) throw InvalidArgument("exponent_fit needs at least two radii");
    const auto [rmin, rmax] = std::minmax_element(radii.begin(), radii.end());
    if (!(*rmin > 0.0) || *rmax / *rmin < 10.0 * (1.0 - 1e-12))
        throw InvalidArgument("exponent_fit radii must be positive and span at least one decade");

    ExponentFit fit;
    fit.radii = radii;
    const int n = params.n;
    std::vector<double> xs, ys;
    for (double r : radii) {
        const Ball B{pw->a, r};
        const FunctionalReport rep = char_norm_weighted(params, w, B, shape, opt);
        if (rep.diverging || !std::isfinite(rep.value))
            throw AdmissibilityFailure("norm of the characteristic function diverges at radius " + std::to_string(r));
        fit.norms.push_back(rep.value);
        xs.push_back(std::log(B.volume(n)));
        ys.push_back(std::log(rep.value));
    }
    const double m = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / m;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / m;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / m);
    fit.theory = (n + pw->nu - n * params.lambda) / (n * params.p);
    fit.warning = fit.residual > residual_threshold;
    return fit;
}

}  // namespace morrey
