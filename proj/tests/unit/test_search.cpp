#include <doctest.h>

#include <atomic>
#include <cmath>
#include <limits>
#include <vector>

#include "morrey/search.hpp"

using namespace morrey;

namespace {

BallFamily unit_family() {
    BallFamily fam;
    fam.center_box = {{-1.0, 0.0}, {1.0, 0.0}};
    fam.center_count = 33;
    fam.radius_min = 1e-3;
    fam.radius_max = 1.0;
    fam.radius_count = 16;
    fam.refine_rounds = 2;
    return fam;
}

bool same(const FunctionalReport& a, const FunctionalReport& b) {
    return a.value == b.value && a.argmax.center.x == b.argmax.center.x && a.argmax.radius == b.argmax.radius &&
           a.refine_trace == b.refine_trace && a.diverging == b.diverging && a.evaluations == b.evaluations;
}

}  // namespace

TEST_CASE("smooth maximum is located") {
    const BallFunctional f = [](const Ball& B) {
        const double dc = B.center.x - 0.3, dr = B.radius - 0.2;
        return 1.0 - dc * dc - dr * dr;
    };
    const auto rep = maximize(unit_family(), f);
    CHECK(rep.value <= 1.0);
    CHECK(rep.value == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(rep.argmax.center.x == doctest::Approx(0.3).epsilon(0.05));
    CHECK_FALSE(rep.diverging);
    CHECK(rep.evaluations > 0);
}

TEST_CASE("refine trace is non-decreasing and ends at the value") {
    const BallFunctional f = [](const Ball& B) { return std::sin(7.0 * B.center.x) * std::sqrt(B.radius); };
    const auto rep = maximize(unit_family(), f);
    REQUIRE_FALSE(rep.refine_trace.empty());
    for (std::size_t i = 1; i < rep.refine_trace.size(); ++i) CHECK(rep.refine_trace[i] >= rep.refine_trace[i - 1]);
    CHECK(rep.refine_trace.back() == rep.value);
}

TEST_CASE("results are independent of the thread count") {
    const BallFunctional f = [](const Ball& B) { return std::cos(3.0 * B.center.x) * std::pow(B.radius, 0.3); };
    SupOptions one, many;
    many.threads = 8;
    CHECK(same(maximize(unit_family(), f, one), maximize(unit_family(), f, many)));
}

TEST_CASE("ties resolve to the lexicographically smallest ball") {
    const BallFunctional f = [](const Ball&) { return 1.0; };
    SupOptions many;
    many.threads = 4;
    const auto rep = maximize(unit_family(), f, many);
    CHECK(rep.argmax.center.x == -1.0);
    CHECK(same(rep, maximize(unit_family(), f)));
}

TEST_CASE("power-law blow-up is flagged, bounded growth is not") {
    BallFamily fam = unit_family();
    fam.seeds = {Point{0.0, 0.0}};
    const BallFunctional blowup = [](const Ball& B) { return std::pow(B.radius, -0.1); };
    CHECK(maximize(fam, blowup).diverging);

    const BallFunctional saturating = [](const Ball& B) { return 1.0 - B.radius; };
    CHECK_FALSE(maximize(fam, saturating).diverging);
}

TEST_CASE("infinite and non-integrable evaluations count as +inf") {
    const BallFunctional inf_at_zero = [](const Ball& B) {
        return std::abs(B.center.x) < B.radius ? std::numeric_limits<double>::infinity() : 1.0;
    };
    const auto a = maximize(unit_family(), inf_at_zero);
    CHECK(std::isinf(a.value));
    CHECK(a.diverging);
    CHECK(a.nonfinite_evaluations > 0);

    const BallFunctional throws = [](const Ball& B) -> double {
        if (B.radius > 0.5) throw NonIntegrable("test");
        return B.radius;
    };
    const auto b = maximize(unit_family(), throws);
    CHECK(std::isinf(b.value));
    CHECK(b.diverging);

    const BallFunctional nan = [](const Ball&) { return std::nan(""); };
    CHECK_THROWS_AS(maximize(unit_family(), nan), Error);
}

TEST_CASE("parallel_for visits every index once") {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), 8, [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS(parallel_for(10, 3, [](std::size_t i) {
        if (i == 7) throw InvalidArgument("x");
    }));
}

TEST_CASE("family validation") {
    BallFamily fam = unit_family();
    fam.radius_min = 2.0;
    CHECK_THROWS_AS(fam.validate(), InvalidArgument);
    fam = unit_family();
    fam.center_count = 1;
    CHECK_THROWS_AS(fam.validate(), InvalidArgument);
    fam = unit_family();
    fam.max_radius_cap = 0.5;
    CHECK(fam.effective_radius_max() == 0.5);
    CHECK(fam.radii().back() == doctest::Approx(0.5));
    CHECK(fam.radii().size() == 16);
}
