#pragma once

#include "morrey/core.hpp"
#include "morrey/weight.hpp"

namespace morrey {

/// w([lo, hi]) = integral of w over [lo, hi].
///
/// Power weights (times an optional constant) use the exact antiderivative
/// sign(t-a)|t-a|^{nu+1}/(nu+1); general products use adaptive Simpson on the
/// interpolation grid with 40 levels of geometric refinement towards every
/// power center. Returns +inf when a power factor with exponent <= -1 has its
/// center in [lo, hi]. lo == hi gives 0; lo > hi throws InvalidArgument.
double weight_mass_1d(const Weight& w, double lo, double hi);

inline double weight_mass_1d(const Weight& w, const Interval& I) { return weight_mass_1d(w, I.lo, I.hi); }

/// Exact mass of |t - a|^nu on [lo, hi]; +inf if not integrable there.
double power_mass_1d(double a, double nu, double lo, double hi);

/// w(B). n = 1 delegates to weight_mass_1d; n = 2 supports Unit and
/// constant multiples of a single power weight (radial reduction about the
/// power center, exact radial antiderivative, angular quadrature doubled from
/// 256 nodes until the relative change is below 1e-8).
double weight_mass_ball(const Weight& w, const Ball& B, const MorreyParams& params);

/// w(B1 ∩ B2). One-dimensional intersections are intervals; in two dimensions
/// Unit uses the lens area and power weights a ray-segment angular quadrature.
double weight_mass_intersection(const Weight& w, const Ball& B1, const Ball& B2, int dim);

/// Throws NonIntegrable if w is not integrable on the closed ball (checked
/// symbolically from the power factors).
void require_integrable_on(const Weight& w, const Ball& B, int dim);

}  // namespace morrey
