#pragma once

#include <cstddef>
#include <functional>

#include "morrey/family.hpp"

namespace morrey {

/// Small-radius probing used to tell a finite sup from a power-law blow-up.
///
/// After the zoom rounds, each probe round extends the radii below the
/// current minimum by a factor 2^-halvings_per_round, with centers at the
/// seeds and around the current maximiser. A functional is flagged diverging
/// when the running max grows by at least growth_threshold in each of the
/// last two probe rounds, or when any candidate evaluates to +inf.
struct DivergencePolicy {
    int probe_rounds = 3;
    double halvings_per_round = 32.0;
    double growth_threshold = 2.0;
};

struct SupOptions {
    int threads = 1;
    int zoom_factor = 4;
    DivergencePolicy divergence;

    /// Same options for a nested (inner) search, which always runs single-threaded.
    SupOptions inner() const {
        SupOptions o = *this;
        o.threads = 1;
        return o;
    }
};

/// Function of a ball; may return +inf. Exceptions derived from
/// NonIntegrable or AdmissibilityFailure count as +inf.
using BallFunctional = std::function<double(const Ball&)>;

/// Grid sup of f over the family, followed by refine_rounds zoom rounds and
/// the divergence probe. Candidates with radius below 1e-10 |center| are
/// skipped: the ball is not resolvable in double precision. Deterministic: the maximiser is the lexicographically
/// smallest (center, radius) among ties, independent of threads.
FunctionalReport maximize(const BallFamily& fam, const BallFunctional& f, const SupOptions& opt = {});

/// Evaluate fn(i) for i in [0, count) with up to `threads` workers, static partition.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace morrey
