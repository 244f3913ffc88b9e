#include "morrey/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "morrey/measure.hpp"
#include "morrey/morrey_norm.hpp"
#include "morrey/muckenhoupt.hpp"

namespace morrey {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool close(double a, double b, double scale) { return std::abs(a - b) <= 1e-12 * scale; }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

double hilbert_step(const StepFunction& f, double x) {
    if (f.is_breakpoint(x)) throw BreakpointEvaluation("Hilbert transform evaluated at breakpoint " + fmt(x));
    const auto& b = f.breakpoints();
    const auto& v = f.values();
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double lo = b[i];
        const double hi = b[i + 1];
        double term;
        if (x < lo) {
            term = std::log1p((hi - lo) / (lo - x));
        } else if (x > hi) {
            term = -std::log1p((hi - lo) / (x - hi));
        } else {
            term = std::log((hi - x) / (x - lo));
        }
        acc += v[i] * term;
    }
    return acc / std::numbers::pi;
}

double hilbert_step_offset(const StepFunction& f, double x, double offset) {
    return hilbert_step(f, f.is_breakpoint(x) ? x + offset : x);
}

void AdjacentPair::validate() const {
    const double l1 = i_prime.length();
    const double l2 = i_double_prime.length();
    if (!(l1 > 0.0) || !(l2 > 0.0)) throw InvalidArgument("adjacent intervals must have positive length");
    if (!close(l1, l2, l1)) throw InvalidArgument("adjacent intervals must have equal lengths");
    if (l1 > 1.0 + 1e-12) throw InvalidArgument("adjacent intervals must have length at most 1");
    const bool shared = side == Side::left ? close(i_double_prime.hi, i_prime.lo, l1)
                                           : close(i_prime.hi, i_double_prime.lo, l1);
    if (!shared) throw InvalidArgument("intervals do not share an endpoint on the stated side");
}

AdjacentPair AdjacentPair::from_prime(const Interval& i_prime, Side side) {
    const double L = i_prime.length();
    AdjacentPair pair{i_prime,
                      side == Side::left ? Interval{i_prime.lo - L, i_prime.lo} : Interval{i_prime.hi, i_prime.hi + L},
                      side};
    pair.validate();
    return pair;
}

double adjacent_bound(const AdjacentPair& pair, int samples) {
    pair.validate();
    if (samples < 2) throw InvalidArgument("adjacent_bound needs at least two samples");
    const StepFunction f = StepFunction::indicator(pair.i_prime);
    const Interval& I = pair.i_double_prime;
    const double L = I.length();
    const double sigma = pair.side == Side::left ? 1.0 : -1.0;
    // inward offset away from the shared endpoint
    const double inward = pair.side == Side::left ? -1e-9 * L : 1e-9 * L;
    double best = kInf;
    for (int j = 0; j < samples; ++j) {
        const double x = j == samples - 1 ? I.hi : I.lo + L * j / (samples - 1);
        best = std::min(best, sigma * hilbert_step_offset(f, x, inward));
    }
    return best;
}

AdjacentRatio adjacent_norm_ratio(const MorreyParams& params, const Weight& w, const AdjacentPair& pair, double k,
                                  const GridShape& shape, const SupOptions& opt) {
    params.validate();
    if (params.n != 1) throw Unsupported("adjacent intervals are one-dimensional");
    pair.validate();
    if (!(k > 0.0)) throw InvalidArgument("k must be positive");
    AdjacentRatio out;
    out.k = k;
    out.norm_prime = morrey_norm_step(params, w, StepFunction::indicator(pair.i_prime), shape, opt).value;
    out.norm_double_prime = morrey_norm_step(params, w, StepFunction::indicator(pair.i_double_prime), shape, opt).value;
    if (!(out.norm_prime > 0.0)) throw Error("zero norm of the characteristic function");
    out.ratio = out.norm_double_prime / out.norm_prime;
    out.within = out.ratio >= 1.0 / (2.0 * k) && out.ratio <= 2.0 * k;
    return out;
}

BallFamily necessity_family(const Weight& w, int center_count, int radius_count, int refine_rounds) {
    const auto sing = w.singular_points();
    const double a = sing.empty() ? 0.0 : sing.front().x;
    BallFamily fam;
    fam.dim = 1;
    fam.center_box = Box{{a - 1.0, 0.0}, {a + 1.0, 0.0}};
    fam.center_count = center_count;
    fam.radius_min = 1e-4;
    fam.radius_max = 0.5;
    fam.radius_count = radius_count;
    fam.refine_rounds = refine_rounds;
    fam.max_radius_cap = 0.5;
    fam.add_seeds({Point{a, 0.0}});
    return fam;
}

NecessityReport necessity_functional(const MorreyParams& params, const Weight& w, const BallFamily& interval_fam,
                                     double k, const GridShape& inner, const SupOptions& opt) {
    params.validate();
    if (params.n != 1 || interval_fam.dim != 1) throw Unsupported("the necessity functional is one-dimensional");
    if (!(k >= 1.0)) throw InvalidArgument("k must be at least 1");
    BallFamily fam = interval_fam;
    fam.max_radius_cap = std::min(fam.max_radius_cap.value_or(0.5), 0.5);

    NecessityReport rep;
    rep.k_hypothesis = k;
    rep.bound_2k = 2.0 * k;
    rep.functional_value = apl_constant(params, w, fam, inner, opt);
    rep.admissibility_failures = rep.functional_value.nonfinite_evaluations;
    rep.satisfied = !rep.functional_value.diverging && rep.functional_value.value <= rep.bound_2k;
    return rep;
}

namespace {

// piecewise-constant builder over consecutive segments, zero in gaps
struct Pieces {
    std::vector<double> bps;
    std::vector<double> vals;

    void append(const std::vector<double>& pts, const std::vector<double>& v) {
        if (!bps.empty() && pts.front() > bps.back()) vals.push_back(0.0);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i == 0 && !bps.empty() && pts.front() == bps.back()) continue;
            bps.push_back(pts[i]);
        }
        vals.insert(vals.end(), v.begin(), v.end());
    }
    StepFunction build() const { return bps.empty() ? StepFunction{} : StepFunction(bps, vals); }
};

std::vector<double> singular_xs(const Weight& w) {
    std::vector<double> xs;
    for (const auto& q : w.power_factors()) xs.push_back(q.a.x);
    return xs;
}

// chi_A lies in L^{p,lambda}(w) iff no power factor with exponent <= lambda - 1
// is centered on the closure of A
bool indicator_admissible(const Weight& w, const Interval& A, const MorreyParams& params) {
    for (const auto& q : w.power_factors())
        if (q.a.x >= A.lo && q.a.x <= A.hi && q.nu <= params.lambda - 1.0) return false;
    return true;
}

BallFamily witness_family(const StepFunction& f, const StepFunction& g, const Weight& w, const WitnessOptions& wo) {
    double lo = f.support().lo, hi = f.support().hi;
    double min_cell = hi - lo;
    for (const StepFunction* h : {&f, &g}) {
        if (h->is_zero()) continue;
        lo = std::min(lo, h->support().lo);
        hi = std::max(hi, h->support().hi);
        for (std::size_t i = 0; i < h->cell_count(); ++i) min_cell = std::min(min_cell, h->cell(i).length());
    }
    const double R = 0.5 * (hi - lo);
    BallFamily fam;
    fam.dim = 1;
    fam.center_box = Box{{lo - 2.0 * R, 0.0}, {hi + 2.0 * R, 0.0}};
    fam.center_count = wo.center_count;
    fam.radius_max = R;
    fam.radius_min = std::min(1e-4 * R, 0.1 * min_cell);
    const double decades = std::log10(fam.radius_max / fam.radius_min);
    fam.radius_count = std::max(2, static_cast<int>(std::ceil(decades * wo.radii_per_decade)) + 1);
    fam.refine_rounds = wo.refine_rounds;
    std::vector<Point> seeds;
    for (const StepFunction* h : {&f, &g})
        for (double b : h->breakpoints()) seeds.push_back({b, 0.0});
    for (double a : singular_xs(w)) seeds.push_back({a, 0.0});
    fam.add_seeds(seeds);
    return fam;
}

// lower envelope of |Sf| on the equal-length neighbours of J
StepFunction envelope(const StepFunction& f, const Interval& J, const Weight& w, const MorreyParams& params,
                      const WitnessOptions& wo) {
    const double L = J.length();
    std::vector<double> focus = singular_xs(w);
    Pieces pieces;
    for (Side side : {Side::left, Side::right}) {
        const Interval A = side == Side::left ? Interval{J.lo - L, J.lo} : Interval{J.hi, J.hi + L};
        if (!indicator_admissible(w, A, params)) continue;
        std::vector<double> fo = focus;
        fo.push_back(side == Side::left ? A.hi : A.lo);
        const auto pts = graded_partition(A.lo, A.hi, fo, wo.step_resolution, wo.cells_per_decade, 1e-9);
        std::vector<double> vals;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            const double far = side == Side::left ? pts[i] : pts[i + 1];
            vals.push_back(std::abs(hilbert_step(f, far)));
        }
        pieces.append(pts, vals);
    }
    return pieces.build();
}

}  // namespace

OpnormBound opnorm_lower_bound(const MorreyParams& params, const Weight& w, const std::vector<Interval>& tests,
                               const WitnessOptions& wo, const SupOptions& opt) {
    params.validate();
    if (params.n != 1) throw Unsupported("operator-norm witnesses are one-dimensional");
    if (tests.empty()) throw InvalidArgument("no test intervals");
    if (wo.step_resolution < 1 || wo.cells_per_decade < 1) throw InvalidArgument("invalid step resolution");
    w.validate(1);

    const Weight wb = w.pow(-beta(params));
    const bool trivial_dual = w.power_factors().empty() && w.tabulated_factors().empty();
    const std::vector<double> focus = singular_xs(w);

    OpnormBound out;
    for (const Interval& J : tests) {
        if (!(J.length() > 0.0)) throw InvalidArgument("test interval must have positive length");
        for (const char* kind : {"indicator", "dual_power"}) {
            const bool dual = std::string(kind) == "dual_power";
            if (dual && trivial_dual) continue;
            WitnessTest t{J, kind};
            const std::string label = std::string(kind) + " on (" + fmt(J.lo) + ", " + fmt(J.hi) + ")";

            StepFunction f;
            if (!dual) {
                f = StepFunction::indicator(J);
            } else {
                try {
                    for (const auto& q : wb.power_factors())
                        if (q.nu <= -1.0 && q.a.x >= J.lo && q.a.x <= J.hi)
                            throw NonIntegrable("w^{-beta} is not integrable on the test interval");
                    const auto pts = graded_partition(J.lo, J.hi, focus, wo.step_resolution, wo.cells_per_decade);
                    std::vector<double> vals;
                    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
                        const double m = weight_mass_1d(wb, pts[i], pts[i + 1]);
                        if (!std::isfinite(m)) throw NonIntegrable("w^{-beta} has infinite mass");
                        vals.push_back(m / (pts[i + 1] - pts[i]));
                    }
                    f = StepFunction(pts, vals);
                } catch (const NonIntegrable&) {
                    t.skipped = true;
                    out.warnings.push_back(label + ": w^{-beta} is not integrable, test skipped");
                    out.tests.push_back(t);
                    continue;
                }
            }

            const StepFunction g = envelope(f, J, w, params, wo);
            if (g.is_zero()) {
                t.skipped = true;
                out.warnings.push_back(label + ": no admissible neighbouring interval, test skipped");
                out.tests.push_back(t);
                continue;
            }
            const BallFamily fam = witness_family(f, g, w, wo);
            const FunctionalReport rf = morrey_norm_step(params, w, f, fam, opt);
            if (rf.diverging || !std::isfinite(rf.value) || !(rf.value > 0.0)) {
                t.skipped = true;
                out.warnings.push_back(label + ": test function has no finite weighted Morrey norm, test skipped");
                out.tests.push_back(t);
                continue;
            }
            const FunctionalReport rg = morrey_norm_step(params, w, g, fam, opt);
            t.norm_f = rf.value;
            t.norm_sf = rg.diverging ? kInf : rg.value;
            t.ratio = t.norm_sf / t.norm_f;
            if (!std::isfinite(t.ratio)) out.infinite = true;
            out.value = std::max(out.value, t.ratio);
            out.tests.push_back(t);
        }
    }
    if (std::none_of(out.tests.begin(), out.tests.end(), [](const WitnessTest& t) { return !t.skipped; }))
        out.warnings.push_back("every test was skipped");
    return out;
}

void SlidingFamily::validate() const {
    if (!(length > 0.0)) throw InvalidArgument("sliding family length must be positive");
    if (!(first_gap > 0.0)) throw InvalidArgument("sliding family first_gap must be positive");
    if (!(gap_ratio > 0.0 && gap_ratio < 1.0)) throw InvalidArgument("sliding family gap_ratio must lie in (0, 1)");
    if (steps < 2) throw InvalidArgument("sliding family needs at least two steps");
}

double SlidingFamily::gap(int step) const { return first_gap * std::pow(gap_ratio, step); }

std::vector<Interval> SlidingFamily::tests() const {
    return {Interval{a, a + length}, Interval{a + length, a + 2.0 * length}};
}

Growth classify_growth(const std::vector<double>& values) {
    if (values.empty()) return Growth::inconclusive;
    if (std::any_of(values.begin(), values.end(), [](double v) { return std::isinf(v); })) return Growth::diverging;
    const double first = values.front();
    if (!(first > 0.0)) return Growth::inconclusive;
    bool monotone = true;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[i - 1] * (1.0 - 1e-9)) monotone = false;
    if (monotone && values.back() / first >= 10.0) return Growth::diverging;
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    if (*mn > 0.0 && *mx / *mn <= 3.0) return Growth::bounded;
    return Growth::inconclusive;
}

const char* to_string(Growth g) {
    switch (g) {
        case Growth::bounded: return "bounded";
        case Growth::diverging: return "diverging";
        case Growth::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

SweepResult necessity_sweep(const MorreyParams& params, const std::vector<double>& nus, const SlidingFamily& family,
                            const WitnessOptions& wo, const SupOptions& opt) {
    params.validate();
    family.validate();
    if (nus.empty()) throw InvalidArgument("empty nu grid");

    const std::size_t steps = static_cast<std::size_t>(family.steps);
    std::vector<std::vector<double>> lbs(nus.size(), std::vector<double>(steps, kInf));
    std::vector<std::vector<std::string>> warns(nus.size());
    const SupOptions inner = opt.inner();
    parallel_for(nus.size(), opt.threads, [&](std::size_t i) {
        const double nu = nus[i];
        if (nu <= -1.0) {
            warns[i].push_back("nu = " + fmt(nu) + ": not locally integrable, recorded as unbounded");
            return;
        }
        for (std::size_t k = 0; k < steps; ++k) {
            const Weight w = Weight::power(family.singularity(static_cast<int>(k)), nu);
            const OpnormBound b = opnorm_lower_bound(params, w, family.tests(), wo, inner);
            lbs[i][k] = b.infinite ? kInf : b.value;
            for (const auto& m : b.warnings) warns[i].push_back("nu = " + fmt(nu) + ", step " + std::to_string(k) + ": " + m);
        }
    });

    SweepResult out;
    for (std::size_t i = 0; i < nus.size(); ++i) {
        const Growth g = classify_growth(lbs[i]);
        out.growth.push_back(g);
        for (std::size_t k = 0; k < steps; ++k)
            out.rows.push_back({nus[i], static_cast<int>(k), lbs[i][k], g == Growth::diverging});
        out.warnings.insert(out.warnings.end(), warns[i].begin(), warns[i].end());
    }
    return out;
}

}  // namespace morrey
