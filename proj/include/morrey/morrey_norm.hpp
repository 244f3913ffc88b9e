#pragma once

#include <vector>

#include "morrey/family.hpp"
#include "morrey/search.hpp"
#include "morrey/step_function.hpp"
#include "morrey/weight.hpp"

namespace morrey {

/// Closed form for the unweighted norm of the characteristic function of a
/// ball: |B0|^{(1-lambda)/p}, with |B0| the Lebesgue measure.
double char_norm_unweighted(const MorreyParams& params, const Ball& b0);

/// Grid estimate of ||chi_{B0}||_{p,lambda;w} =
/// sup_{x,r} (w(B(x,r) ∩ B0) / |B(x,r)|^lambda)^{1/p}.
///
/// The value is a lower bound of the true norm. Weight singularities are
/// added to the family as seed centers.
FunctionalReport char_norm_weighted(const MorreyParams& params, const Weight& w, const Ball& b0,
                                    const BallFamily& fam, const SupOptions& opt = {});

/// Same, on the default family for b0 built from `shape`.
FunctionalReport char_norm_weighted(const MorreyParams& params, const Weight& w, const Ball& b0,
                                    const GridShape& shape = GridShape::standard(), const SupOptions& opt = {});

/// sup_{x,r} w(B(x,r) ∩ B0) / |B(x,r)|^lambda, i.e. the p-th power of
/// char_norm_weighted. This is the quantity tested by the admissibility conditions.
FunctionalReport char_mass_sup(const MorreyParams& params, const Weight& w, const Ball& b0,
                               const BallFamily& fam, const SupOptions& opt = {});

/// Two-sided estimate of ||chi_{B0}||_{p,lambda;w} from balls alone:
/// lower = sup over balls centered at x0 with r <= r0 of (w(B(x0,r))/|B|^lambda)^{1/p},
/// upper = sup over |x-x0| < 2 r0, r <= r0 of (w(B(x,r))/|B|^lambda)^{1/p},
/// both on the candidates of `fam` (no refinement).
struct NormBracket {
    double lower = 0.0;
    double upper = 0.0;
};
NormBracket char_norm_bracket(const MorreyParams& params, const Weight& w, const Ball& b0, const BallFamily& fam);

/// Grid estimate of ||f||_{p,lambda;w} for a step function (n = 1). The inner
/// integral is exact per cell: |v_i|^p w(cell_i ∩ B).
FunctionalReport morrey_norm_step(const MorreyParams& params, const Weight& w, const StepFunction& f,
                                  const BallFamily& fam, const SupOptions& opt = {});

/// Same, on the default family for the support of f, seeded with every
/// breakpoint and weight singularity.
FunctionalReport morrey_norm_step(const MorreyParams& params, const Weight& w, const StepFunction& f,
                                  const GridShape& shape = GridShape::standard(), const SupOptions& opt = {});

/// Least-squares fit of log ||chi_{B(a,r)}||_{p,lambda;w} against log |B(a,r)|.
struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  ///< RMS residual in log units
    double theory = 0.0;    ///< (n + nu - n lambda)/(n p)
    bool warning = false;   ///< residual above residual_threshold
    std::vector<double> radii;
    std::vector<double> norms;
};

/// Requires a power weight, radii spanning at least a decade, and finite norms
/// (throws AdmissibilityFailure when a norm diverges).
ExponentFit exponent_fit(const MorreyParams& params, const Weight& w, const std::vector<double>& radii,
                         const GridShape& shape = GridShape::standard(), const SupOptions& opt = {},
                         double residual_threshold = 1e-2);

}  // namespace morrey
