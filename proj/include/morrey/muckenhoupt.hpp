#pragma once

#include "morrey/family.hpp"
#include "morrey/search.hpp"
#include "morrey/weight.hpp"

namespace morrey {

/// (avg_B w)(avg_B w^{1-p'})^{p-1} for a single ball. Throws NonIntegrable when
/// either factor is not integrable on B, InvalidArgument unless p > 1.
double ap_functional(double p, const Weight& w, const Ball& B, int dim = 1);

/// Grid sup of ap_functional. Non-integrable balls count as +inf and mark the
/// report diverging.
FunctionalReport ap_constant(double p, const Weight& w, const BallFamily& fam, const SupOptions& opt = {});

/// The two sups of (p,lambda)-admissibility on a probe ball B0:
///   condition_1 = sup_B w(B ∩ B0)/|B|^lambda,
///   condition_2 = sup_B w_*(B ∩ B0)/|B|^lambda, w_* = w^{-(1-lambda)/(lambda+p-1)}.
struct AdmissibilityReport {
    FunctionalReport condition_1;
    FunctionalReport condition_2;
    bool admissible = false;  ///< neither sup diverges
};

AdmissibilityReport admissible(const MorreyParams& params, const Weight& w, const Ball& probe, const BallFamily& fam,
                               const SupOptions& opt = {});

/// ||chi_B||_{p,lambda;w} / ||chi_B||_{p,lambda;w_*} * avg_B w^{-beta}, beta = 1/(lambda+p-1).
///
/// Both norms are grid sups on family_for_ball(B, inner). Throws NonIntegrable
/// when w^{-beta} is not integrable on B (checked from the exponents) and
/// AdmissibilityFailure when either inner norm diverges.
double apl_functional(const MorreyParams& params, const Weight& w, const Ball& B,
                      const GridShape& inner = GridShape::inner(), const SupOptions& opt = {});

/// Grid sup of apl_functional over `outer`; the inner searches run single-threaded.
FunctionalReport apl_constant(const MorreyParams& params, const Weight& w, const BallFamily& outer,
                              const GridShape& inner = GridShape::inner(), const SupOptions& opt = {});

}  // namespace morrey
