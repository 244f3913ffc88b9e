#include "morrey/muckenhoupt.hpp"

#include <cmath>

#include "morrey/measure.hpp"
#include "morrey/morrey_norm.hpp"

namespace morrey {

namespace {

double finite_mass(const Weight& w, const Ball& B, const MorreyParams& params) {
    require_integrable_on(w, B, params.n);
    const double m = weight_mass_ball(w, B, params);
    if (!std::isfinite(m)) throw NonIntegrable("weight " + w.describe() + " has infinite mass on the ball");
    return m;
}

}  // namespace

double ap_functional(double p, const Weight& w, const Ball& B, int dim) {
    if (!(p > 1.0)) throw InvalidArgument("ap_functional needs p > 1");
    const MorreyParams params{p, 0.0, dim};
    params.validate();
    B.validate();
    const Weight dual = w.pow(1.0 - conjugate_exponent(p));
    const double vol = B.volume(dim);
    const double avg_w = finite_mass(w, B, params) / vol;
    const double avg_dual = finite_mass(dual, B, params) / vol;
    return avg_w * std::pow(avg_dual, p - 1.0);
}

FunctionalReport ap_constant(double p, const Weight& w, const BallFamily& fam, const SupOptions& opt) {
    if (!(p > 1.0)) throw InvalidArgument("ap_constant needs p > 1");
    BallFamily f = fam;
    f.add_seeds(w.singular_points());
    const int dim = fam.dim;
    return maximize(f, [&](const Ball& B) { return ap_functional(p, w, B, dim); }, opt);
}

AdmissibilityReport admissible(const MorreyParams& params, const Weight& w, const Ball& probe, const BallFamily& fam,
                               const SupOptions& opt) {
    AdmissibilityReport rep;
    rep.condition_1 = char_mass_sup(params, w, probe, fam, opt);
    rep.condition_2 = char_mass_sup(params, dual_weight(w, params), probe, fam, opt);
    rep.admissible = !rep.condition_1.diverging && !rep.condition_2.diverging;
    return rep;
}

double apl_functional(const MorreyParams& params, const Weight& w, const Ball& B, const GridShape& inner,
                      const SupOptions& opt) {
    params.validate();
    B.validate();
    const Weight wb = w.pow(-beta(params));
    require_integrable_on(wb, B, params.n);

    const SupOptions io = opt.inner();
    const BallFamily fam = family_for_ball(B, inner, params.n);
    const FunctionalReport num = char_norm_weighted(params, w, B, fam, io);
    if (num.diverging || !std::isfinite(num.value))
        throw AdmissibilityFailure("norm of chi_B in the w-weighted space diverges");
    const FunctionalReport den = char_norm_weighted(params, dual_weight(w, params), B, fam, io);
    if (den.diverging || !std::isfinite(den.value))
        throw AdmissibilityFailure("norm of chi_B in the dual-weighted space diverges");
    if (!(den.value > 0.0)) throw Error("zero dual norm");

    const double avg = finite_mass(wb, B, params) / B.volume(params.n);
    return num.value / den.value * avg;
}

FunctionalReport apl_constant(const MorreyParams& params, const Weight& w, const BallFamily& outer,
                              const GridShape& inner, const SupOptions& opt) {
    params.validate();
    BallFamily f = outer;
    f.add_seeds(w.singular_points());
    return maximize(f, [&](const Ball& B) { return apl_functional(params, w, B, inner, opt); }, opt);
}

}  // namespace morrey
