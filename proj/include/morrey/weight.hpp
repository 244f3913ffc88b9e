#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "morrey/core.hpp"

namespace morrey {

/// Local integrability class of a weight near its singular points.
enum class Integrability {
    integrable,      ///< every power singularity has exponent > -n
    boundary,        ///< some exponent equals -n exactly (logarithmic blow-up)
    non_integrable,  ///< some exponent is below -n
};

/// Symbolic weight w >= 0 on R^n, closed under real powers.
///
/// Products are kept in a normal form: nested products are flattened, unit
/// factors dropped, and power factors sharing a center merged, so two
/// weights that are equal as functions through exponent arithmetic also have
/// equal representations.
class Weight {
public:
    struct Unit {
        friend bool operator==(const Unit&, const Unit&) = default;
    };

    /// |x - a|^nu.
    struct Power {
        Point a;
        double nu = 0.0;
        friend bool operator==(const Power&, const Power&) = default;
    };

    /// (piecewise-linear interpolant of samples (x_i, y_i))^exponent, one-dimensional.
    /// Constant extrapolation outside [x_0, x_last].
    struct Tabulated {
        std::vector<double> x;
        std::vector<double> y;
        double exponent = 1.0;
        friend bool operator==(const Tabulated&, const Tabulated&) = default;
    };

    struct Product {
        std::vector<Weight> factors;
        friend bool operator==(const Product&, const Product&) = default;
    };

    using Repr = std::variant<Unit, Power, Tabulated, Product>;

    Weight() = default;

    static Weight unit();
    static Weight power(Point a, double nu);
    static Weight power(double a, double nu) { return power(Point{a, 0.0}, nu); }
    /// Throws InvalidArgument unless x is strictly increasing and all y > 0.
    static Weight tabulated(std::vector<double> x, std::vector<double> y);
    static Weight constant(double c);
    static Weight product(std::vector<Weight> factors);

    const Repr& repr() const { return repr_; }
    bool is_unit() const { return std::holds_alternative<Unit>(repr_); }
    const Power* as_power() const { return std::get_if<Power>(&repr_); }

    /// Pointwise real power w^s. pow(Power{a, nu}, s) = Power{a, s nu}.
    Weight pow(double s) const;

    double operator()(const Point& q) const;
    double operator()(double x) const { return (*this)(Point{x, 0.0}); }

    /// Centers of the power factors with their (merged) exponents.
    std::vector<Power> power_factors() const;
    /// Non-power part as a list of tabulated factors (empty for pure power weights).
    std::vector<Tabulated> tabulated_factors() const;
    /// Points where the weight may be singular or non-smooth (power centers).
    std::vector<Point> singular_points() const;

    /// Product of the non-power factors when all of them are constant, else nullopt.
    std::optional<double> constant_cofactor() const;

    Integrability integrability(int dim) const;

    /// Throws InvalidArgument if the weight cannot be used in dimension dim.
    void validate(int dim) const;

    std::string describe() const;

    friend bool operator==(const Weight&, const Weight&) = default;

private:
    explicit Weight(Repr r) : repr_(std::move(r)) {}
    Repr repr_ = Unit{};
};

/// w_* = w^{-(1-lambda)/(lambda+p-1)}. The result may fail local integrability;
/// check integrability() on it (boundary exponents are flagged, not thrown).
Weight dual_weight(const Weight& w, const MorreyParams& params);

}  // namespace morrey
