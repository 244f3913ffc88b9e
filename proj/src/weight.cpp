#include "morrey/weight.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace morrey {

namespace {

constexpr double kExponentTol = 1e-12;

bool all_equal(const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

double interpolate(const Weight::Tabulated& t, double x) {
    const auto& xs = t.x;
    const auto& ys = t.y;
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
    const double s = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return ys[i] + s * (ys[i + 1] - ys[i]);
}

// Flatten and merge factors into the product normal form.
Weight::Repr normalize(std::vector<Weight> factors) {
    std::vector<Weight::Power> powers;
    std::vector<Weight::Tabulated> tables;
    double constant = 1.0;

    auto absorb = [&](const auto& self, const Weight& f) -> void {
        std::visit(
            [&](const auto& r) {
                using T = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<T, Weight::Unit>) {
                } else if constexpr (std::is_same_v<T, Weight::Power>) {
                    auto it = std::find_if(powers.begin(), powers.end(),
                                           [&](const Weight::Power& q) { return q.a == r.a; });
                    if (it == powers.end())
                        powers.push_back(r);
                    else
                        it->nu += r.nu;
                } else if constexpr (std::is_same_v<T, Weight::Tabulated>) {
                    if (all_equal(r.y))
                        constant *= std::pow(r.y.front(), r.exponent);
                    else
                        tables.push_back(r);
                } else {
                    for (const Weight& g : r.factors) self(self, g);
                }
            },
            f.repr());
    };
    for (const Weight& f : factors) absorb(absorb, f);

    std::erase_if(powers, [](const Weight::Power& q) { return q.nu == 0.0; });
    std::sort(powers.begin(), powers.end(),
              [](const Weight::Power& l, const Weight::Power& r) { return l.a < r.a; });

    std::vector<Weight> out;
    for (const auto& q : powers) out.push_back(Weight::power(q.a, q.nu));
    for (auto& t : tables) {
        Weight::Tabulated copy = t;
        Weight w = Weight::tabulated(copy.x, copy.y).pow(copy.exponent);
        out.push_back(std::move(w));
    }
    if (constant != 1.0) out.push_back(Weight::constant(constant));

    if (out.empty()) return Weight::Unit{};
    if (out.size() == 1) return out.front().repr();
    return Weight::Product{std::move(out)};
}

}  // namespace

Weight Weight::unit() { return Weight(Unit{}); }

Weight Weight::power(Point a, double nu) {
    if (!std::isfinite(nu) || !std::isfinite(a.x) || !std::isfinite(a.y))
        throw InvalidArgument("power weight needs a finite center and exponent");
    return Weight(Power{a, nu});
}

Weight Weight::tabulated(std::vector<double> x, std::vector<double> y) {
    if (x.empty() || x.size() != y.size())
        throw InvalidArgument("tabulated weight needs matching, non-empty x and y samples");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) throw InvalidArgument("tabulated weight abscissae must be strictly increasing");
    for (double v : y)
        if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument("tabulated weight samples must be positive");
    return Weight(Tabulated{std::move(x), std::move(y), 1.0});
}

Weight Weight::constant(double c) { return tabulated({0.0}, {c}); }

Weight Weight::product(std::vector<Weight> factors) { return Weight(normalize(std::move(factors))); }

Weight Weight::pow(double s) const {
    if (!std::isfinite(s)) throw InvalidArgument("weight power must be finite");
    return std::visit(
        [s](const auto& r) -> Weight {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, Unit>) {
                return Weight::unit();
            } else if constexpr (std::is_same_v<T, Power>) {
                return Weight(Power{r.a, r.nu * s});
            } else if constexpr (std::is_same_v<T, Tabulated>) {
                Tabulated t = r;
                t.exponent *= s;
                return Weight(std::move(t));
            } else {
                std::vector<Weight> f;
                f.reserve(r.factors.size());
                for (const Weight& g : r.factors) f.push_back(g.pow(s));
                return Weight::product(std::move(f));
            }
        },
        repr_);
}

double Weight::operator()(const Point& q) const {
    return std::visit(
        [&q](const auto& r) -> double {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, Unit>) {
                return 1.0;
            } else if constexpr (std::is_same_v<T, Power>) {
                const double d = std::hypot(q.x - r.a.x, q.y - r.a.y);
                return std::pow(d, r.nu);
            } else if constexpr (std::is_same_v<T, Tabulated>) {
                return std::pow(interpolate(r, q.x), r.exponent);
            } else {
                double v = 1.0;
                for (const Weight& g : r.factors) v *= g(q);
                return v;
            }
        },
        repr_);
}

std::vector<Weight::Power> Weight::power_factors() const {
    std::vector<Power> out;
    if (const auto* pw = std::get_if<Power>(&repr_)) {
        out.push_back(*pw);
    } else if (const auto* pr = std::get_if<Product>(&repr_)) {
        for (const Weight& g : pr->factors)
            if (const auto* q = std::get_if<Power>(&g.repr_)) out.push_back(*q);
    }
    return out;
}

std::vector<Weight::Tabulated> Weight::tabulated_factors() const {
    std::vector<Tabulated> out;
    if (const auto* t = std::get_if<Tabulated>(&repr_)) {
        out.push_back(*t);
    } else if (const auto* pr = std::get_if<Product>(&repr_)) {
        for (const Weight& g : pr->factors)
            if (const auto* q = std::get_if<Tabulated>(&g.repr_)) out.push_back(*q);
    }
    return out;
}

std::vector<Point> Weight::singular_points() const {
    std::vector<Point> out;
    for (const auto& q : power_factors()) out.push_back(q.a);
    return out;
}

std::optional<double> Weight::constant_cofactor() const {
    double c = 1.0;
    for (const auto& t : tabulated_factors()) {
        if (!all_equal(t.y)) return std::nullopt;
        c *= std::pow(t.y.front(), t.exponent);
    }
    return c;
}

Integrability Weight::integrability(int dim) const {
    Integrability worst = Integrability::integrable;
    for (const auto& q : power_factors()) {
        const double gap = q.nu + dim;
        if (std::abs(gap) <= kExponentTol * std::max(1.0, std::abs(q.nu))) {
            if (worst == Integrability::integrable) worst = Integrability::boundary;
        } else if (gap < 0.0) {
            worst = Integrability::non_integrable;
        }
    }
    return worst;
}

void Weight::validate(int dim) const {
    if (dim != 1 && dim != 2) throw InvalidArgument("weights are supported in dimension 1 or 2 only");
    if (dim == 2 && !tabulated_factors().empty())
        throw InvalidArgument("tabulated weights are one-dimensional");
    for (const auto& q : power_factors()) {
        if (dim == 1 && q.a.y != 0.0) throw InvalidArgument("one-dimensional power weight center must have y = 0");
    }
    switch (integrability(dim)) {
        case Integrability::integrable:
            break;
        case Integrability::boundary:
            throw InvalidArgument("power weight exponent nu = -n is not locally integrable");
        case Integrability::non_integrable:
            throw InvalidArgument("power weight exponent nu < -n is not locally integrable");
    }
}

std::string Weight::describe() const {
    std::ostringstream os;
    os.precision(17);
    std::visit(
        [&os](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, Unit>) {
                os << "1";
            } else if constexpr (std::is_same_v<T, Power>) {
                os << "|x-(" << r.a.x << "," << r.a.y << ")|^" << r.nu;
            } else if constexpr (std::is_same_v<T, Tabulated>) {
                os << "tab[" << r.x.size() << "]^" << r.exponent;
            } else {
                for (std::size_t i = 0; i < r.factors.size(); ++i) {
                    if (i) os << " * ";
                    os << r.factors[i].describe();
                }
            }
        },
        repr_);
    return os.str();
}

Weight dual_weight(const Weight& w, const MorreyParams& params) {
    return w.pow(dual_exponent(params));
}

}  // namespace morrey
