#pragma once

#include <string>
#include <vector>

#include "morrey/family.hpp"
#include "morrey/search.hpp"
#include "morrey/step_function.hpp"
#include "morrey/weight.hpp"

namespace morrey {

/// Sf(x) = (1/pi) PV ∫ f(t)/(t - x) dt, exact for step functions:
/// (1/pi) sum_i v_i ln(|x - b_{i+1}| / |x - b_i|).
/// Throws BreakpointEvaluation when x is a breakpoint of f.
double hilbert_step(const StepFunction& f, double x);

/// As hilbert_step, but a breakpoint x is moved to x + offset first.
double hilbert_step_offset(const StepFunction& f, double x, double offset);

enum class Side { left, right };

/// Two adjacent intervals of equal length <= 1. `side` tells where I'' lies
/// relative to I'.
struct AdjacentPair {
    Interval i_prime;
    Interval i_double_prime;
    Side side = Side::left;

    /// Throws InvalidArgument unless the lengths agree, the intervals share
    /// an endpoint on `side`, and the common length is at most 1.
    void validate() const;
    static AdjacentPair from_prime(const Interval& i_prime, Side side);
};

/// min over `samples` equispaced points of I'' (endpoints included) of
/// sigma * S(chi_{I'}), sigma = +1 for a left neighbour and -1 for a right one.
/// The shared endpoint is sampled at an inward offset of 1e-9 |I|.
/// Sharp value: ln(2)/pi, attained at the far endpoint.
double adjacent_bound(const AdjacentPair& pair, int samples = 1025);

struct AdjacentRatio {
    double norm_prime = 0.0;
    double norm_double_prime = 0.0;
    double ratio = 0.0;  ///< norm_double_prime / norm_prime
    double k = 1.0;
    bool within = false;  ///< ratio in [1/(2k), 2k]
};

/// Compares ||chi_{I''}||_{p,lambda;w} with ||chi_{I'}||_{p,lambda;w}; each
/// norm is a grid sup on the family of its own interval.
AdjacentRatio adjacent_norm_ratio(const MorreyParams& params, const Weight& w, const AdjacentPair& pair, double k,
                                  const GridShape& shape = GridShape::standard(), const SupOptions& opt = {});

struct NecessityReport {
    double k_hypothesis = 1.0;
    FunctionalReport functional_value;
    double bound_2k = 2.0;
    bool satisfied = false;
    /// balls where an inner norm or the average of w^{-beta} was infinite
    std::size_t admissibility_failures = 0;
};

/// Outer family for necessity_functional: centers in [a - 1, a + 1] around the
/// first singular point a (0 without one), radii up to 1/2 so |I| <= 1.
BallFamily necessity_family(const Weight& w, int center_count = 33, int radius_count = 16, int refine_rounds = 1);

/// The per-interval A_{p,lambda} functional maximised over `interval_fam`
/// (whose radii are capped at 1/2). satisfied iff value <= 2k and not diverging.
NecessityReport necessity_functional(const MorreyParams& params, const Weight& w, const BallFamily& interval_fam,
                                     double k, const GridShape& inner = GridShape::inner(),
                                     const SupOptions& opt = {});

/// Discretisation and search settings for operator-norm witnesses.
struct WitnessOptions {
    int step_resolution = 16;   ///< uniform cells per test interval
    int cells_per_decade = 6;   ///< geometric cells towards singular points and shared endpoints
    int center_count = 65;
    int radii_per_decade = 6;
    int refine_rounds = 1;
};

struct WitnessTest {
    Interval interval;
    std::string kind;  ///< "indicator" or "dual_power"
    double norm_f = 0.0;
    double norm_sf = 0.0;  ///< norm of the lower envelope of |Sf|
    double ratio = 0.0;
    bool skipped = false;
};

struct OpnormBound {
    double value = 0.0;
    bool infinite = false;  ///< some envelope norm diverged while ||f|| stayed finite
    std::vector<WitnessTest> tests;
    std::vector<std::string> warnings;
};

/// max over test functions f in {chi_J, chi_J w^{-beta}} (J in `tests`) of
/// ||Sf||/||f||, a lower bound for the norm of S on L^{p,lambda}(w).
///
/// w^{-beta} is replaced by its cell averages on a graded partition of J. The
/// numerator uses the lower envelope of |Sf| on the neighbours of J of equal
/// length: on each sub-cell the value at the end farther from J, where |Sf| is
/// smallest because f >= 0. Neighbours on which chi is not in the weighted
/// space are left out. Tests with a non-integrable or infinite-norm f are
/// skipped with a warning.
OpnormBound opnorm_lower_bound(const MorreyParams& params, const Weight& w, const std::vector<Interval>& tests,
                               const WitnessOptions& wo = {}, const SupOptions& opt = {});

/// Sliding test family: the weight singularity sits at a - d_k with
/// d_k = first_gap * gap_ratio^k, the test intervals stay at (a, a + L) and
/// (a + L, a + 2L). This is the translate of intervals sliding towards a fixed
/// singularity, with every gap exactly representable.
struct SlidingFamily {
    double a = 0.0;
    double length = 1.0;
    double first_gap = 1e-3;
    double gap_ratio = 1e-3;
    int steps = 6;

    void validate() const;
    double gap(int step) const;
    double singularity(int step) const { return a - gap(step); }
    std::vector<Interval> tests() const;
};

enum class Growth { bounded, diverging, inconclusive };

/// diverging: non-decreasing with last/first >= 10 (or any +inf);
/// bounded: max/min <= 3; otherwise inconclusive.
Growth classify_growth(const std::vector<double>& values);
const char* to_string(Growth g);

struct SweepRow {
    double nu = 0.0;
    int family_step = 0;
    double opnorm_lb = 0.0;
    bool diverging = false;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<Growth> growth;  ///< one per nu
    std::vector<std::string> warnings;
};

/// opnorm_lower_bound for |x - a|^nu over the sliding family, for every nu.
/// nu <= -1 is not a weight: its rows carry +inf and diverging = true.
SweepResult necessity_sweep(const MorreyParams& params, const std::vector<double>& nus, const SlidingFamily& family,
                            const WitnessOptions& wo = {}, const SupOptions& opt = {});

}  // namespace morrey
