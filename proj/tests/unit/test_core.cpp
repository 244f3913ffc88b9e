#include <doctest.h>

#include <cmath>
#include <numbers>

#include "morrey/core.hpp"
#include "morrey/step_function.hpp"
#include "morrey/weight.hpp"

using namespace morrey;

TEST_CASE("beta examples") {
    CHECK(beta({2.0, 0.0, 1}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(beta({2.0, 0.5, 1}) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(beta({1.0, 0.5, 1}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(beta({1.0, 0.0, 1}), DegenerateParameters);
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW((MorreyParams{1.0, 0.0, 1}.validate()));
    CHECK_THROWS_AS((MorreyParams{0.5, 0.0, 1}.validate()), InvalidArgument);
    CHECK_THROWS_AS((MorreyParams{2.0, 1.0, 1}.validate()), InvalidArgument);
    CHECK_THROWS_AS((MorreyParams{2.0, -0.1, 1}.validate()), InvalidArgument);
    CHECK_THROWS_AS((MorreyParams{2.0, 0.0, 3}.validate()), InvalidArgument);
}

TEST_CASE("ball volume is the Lebesgue measure") {
    const Ball b{{0.3, -0.2}, 1.5};
    CHECK(b.volume(1) == doctest::Approx(3.0));
    CHECK(b.volume(2) == doctest::Approx(std::numbers::pi * 2.25));
    CHECK(unit_sphere_area(1) == 2.0);
    CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * std::numbers::pi));
    CHECK_THROWS_AS(Ball({0.0, 0.0}, 0.0).validate(), InvalidArgument);
}

TEST_CASE("intersect_1d") {
    auto i = intersect_1d({0.0, 2.0}, {1.0, 3.0});
    REQUIRE(i);
    CHECK(*i == Interval{1.0, 2.0});
    CHECK_FALSE(intersect_1d({0.0, 1.0}, {2.0, 3.0}));
    CHECK(*intersect_1d({0.0, 1.0}, {0.0, 1.0}) == Interval{0.0, 1.0});
}

TEST_CASE("lexicographic tie-break order") {
    CHECK(lexicographically_less(Ball{{0.0, 0.0}, 1.0}, Ball{{0.5, 0.0}, 0.1}));
    CHECK(lexicographically_less(Ball{{0.5, 0.0}, 0.1}, Ball{{0.5, 0.0}, 0.2}));
    CHECK_FALSE(lexicographically_less(Ball{{0.5, 0.0}, 0.2}, Ball{{0.5, 0.0}, 0.2}));
}

TEST_CASE("dual weight examples") {
    CHECK(dual_weight(Weight::unit(), {3.0, 0.4, 1}) == Weight::unit());

    const MorreyParams pr{2.0, 0.3, 1};
    const Weight dw = dual_weight(Weight::power(0.0, 0.5), pr);
    const auto* d = dw.as_power();
    REQUIRE(d);
    CHECK(d->nu == doctest::Approx(-0.5 * 0.7 / 1.3).epsilon(1e-15));

    // nu = 1, p = 2, lambda = 0 gives exponent -1: the integrability boundary
    const Weight w = dual_weight(Weight::power(0.0, 1.0), {2.0, 0.0, 1});
    CHECK(w.as_power()->nu == -1.0);
    CHECK(w.integrability(1) == Integrability::boundary);
    CHECK_THROWS_AS(w.validate(1), InvalidArgument);
}

TEST_CASE("dual exponent reduces to 1 - p' at lambda = 0") {
    for (double p : {1.5, 2.0, 3.0, 7.0}) {
        const MorreyParams pr{p, 0.0, 1};
        CHECK(dual_exponent(pr) == doctest::Approx(1.0 - conjugate_exponent(p)).epsilon(1e-14));
    }
}

TEST_CASE("pow composition is exact for power weights") {
    const Weight w = Weight::power(0.25, 0.7);
    for (double s : {-1.3, 0.5, 2.0})
        for (double t : {0.3, -2.0}) CHECK(w.pow(s).pow(t).as_power()->nu == doctest::Approx(0.7 * s * t).epsilon(1e-15));

    const MorreyParams pr{2.5, 0.4, 1};
    const double e = dual_exponent(pr);
    const Weight dd = dual_weight(dual_weight(w, pr), pr);
    CHECK(dd.as_power()->nu == doctest::Approx(0.7 * e * e).epsilon(1e-15));
}

TEST_CASE("product normal form") {
    const Weight a = Weight::power(0.0, 0.5);
    const Weight b = Weight::power(0.0, -0.2);
    const Weight c = Weight::power(1.0, 0.3);
    // merged exponents at a shared center, unit dropped, order irrelevant
    const Weight p1 = Weight::product({a, Weight::unit(), c, b});
    const Weight p2 = Weight::product({c, Weight::product({b, a})});
    CHECK(p1 == p2);
    const auto pf = p1.power_factors();
    REQUIRE(pf.size() == 2);
    CHECK(pf[0].nu == doctest::Approx(0.3));
    // cancelling exponents give the unit weight
    CHECK(Weight::product({a, a.pow(-1.0)}).is_unit());
    CHECK(Weight::product({a}) == a);
    CHECK(Weight::product({Weight::constant(2.0), Weight::constant(3.0)}).constant_cofactor().value() == doctest::Approx(6.0));
}

TEST_CASE("weight evaluation") {
    CHECK(Weight::power(1.0, 2.0)(3.0) == doctest::Approx(4.0));
    CHECK(Weight::power(Point{0.0, 0.0}, 1.0)(Point{3.0, 4.0}) == doctest::Approx(5.0));
    const Weight t = Weight::tabulated({0.0, 1.0, 2.0}, {1.0, 3.0, 2.0});
    CHECK(t(0.5) == doctest::Approx(2.0));
    CHECK(t(-5.0) == doctest::Approx(1.0));
    CHECK(t(9.0) == doctest::Approx(2.0));
    CHECK(t.pow(2.0)(0.5) == doctest::Approx(4.0));
    CHECK_THROWS_AS(Weight::tabulated({0.0, 0.0}, {1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(Weight::tabulated({0.0, 1.0}, {1.0, 0.0}), InvalidArgument);
}

TEST_CASE("integrability classification") {
    CHECK(Weight::power(0.0, -0.5).integrability(1) == Integrability::integrable);
    CHECK(Weight::power(0.0, -1.0).integrability(1) == Integrability::boundary);
    CHECK(Weight::power(0.0, -1.5).integrability(1) == Integrability::non_integrable);
    CHECK(Weight::power(Point{0.0, 0.0}, -1.5).integrability(2) == Integrability::integrable);
    CHECK_THROWS_AS(Weight::power(0.0, -2.0).validate(1), InvalidArgument);
    CHECK_NOTHROW(Weight::power(0.0, -0.999).validate(1));
    CHECK_THROWS_AS(Weight::tabulated({0.0, 1.0}, {1.0, 2.0}).validate(2), InvalidArgument);
}

TEST_CASE("step function canonical form") {
    const StepFunction f({0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 2.0, 2.0, 0.0});
    CHECK(f.breakpoints() == std::vector<double>{1.0, 3.0});
    CHECK(f.values() == std::vector<double>{2.0});
    CHECK(StepFunction({0.0, 1.0}, {0.0}).is_zero());
    CHECK_THROWS_AS(StepFunction({0.0, 0.0}, {1.0}), InvalidArgument);
    CHECK_THROWS_AS(StepFunction({0.0, 1.0}, {1.0, 2.0}), InvalidArgument);
    CHECK_THROWS_AS(StepFunction().support(), InvalidArgument);

    const StepFunction g({0.0, 1.0, 2.0}, {1.0, -1.0});
    CHECK(g(0.5) == 1.0);
    CHECK(g(1.0) == -1.0);
    CHECK(g(2.0) == 0.0);
    CHECK(g.is_breakpoint(1.0));
    CHECK(g.scaled(3.0).max_abs() == 3.0);
}

TEST_CASE("graded partition refines towards focus points") {
    const double focus[] = {0.0};
    const auto pts = graded_partition(1e-9, 1.0, focus, 4, 3);
    CHECK(pts.front() == 1e-9);
    CHECK(pts.back() == 1.0);
    CHECK(std::is_sorted(pts.begin(), pts.end()));
    // cells adjacent to the focus are as fine as its distance
    CHECK(pts[1] - pts[0] < 2e-9);

    const double inside[] = {0.5};
    const auto q = graded_partition(0.0, 1.0, inside, 2, 2, 1e-6);
    CHECK(std::find(q.begin(), q.end(), 0.5) != q.end());
    CHECK(std::adjacent_find(q.begin(), q.end()) == q.end());
}
