#include "morrey/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "morrey/cli/report_io.hpp"
#include "morrey/errors.hpp"

namespace morrey::cli {

namespace {

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

// 1-based line and column of a byte offset
std::string position(const std::string& text, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path, "expected an object");
}

}  // namespace

double read_number(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        double v = 0.0;
        const char* first = s.data();
        const char* last = s.data() + s.size();
        if (first != last && *first == '+') ++first;
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last || s.empty())
            throw ConfigError(path, "expected a decimal number, got \"" + s + "\"");
        if (!std::isfinite(v)) throw ConfigError(path, "expected a finite number");
        return v;
    }
    throw ConfigError(path, "expected a number");
}

int read_int(const json& j, const std::string& path) {
    const double v = read_number(j, path);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(path, "expected an integer");
    return static_cast<int>(v);
}

bool read_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) throw ConfigError(path, "expected true or false");
    return j.get<bool>();
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
    expect_object(obj, path);
    auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(join(path, key), "missing required field");
    return *it;
}

std::optional<double> opt_number(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) return std::nullopt;
    return read_number(obj.at(key), join(path, key));
}

std::optional<int> opt_int(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) return std::nullopt;
    return read_int(obj.at(key), join(path, key));
}

std::vector<double> read_number_list(const json& j, const std::string& path) {
    if (!j.is_array()) throw ConfigError(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_number(j[i], index(path, i)));
    return out;
}

Point parse_point(const json& j, const std::string& path, int dim) {
    if (j.is_array()) {
        const auto v = read_number_list(j, path);
        if (static_cast<int>(v.size()) != dim)
            throw ConfigError(path, "expected " + std::to_string(dim) + " coordinates");
        return dim == 1 ? Point{v[0], 0.0} : Point{v[0], v[1]};
    }
    if (dim != 1) throw ConfigError(path, "expected a coordinate array [x, y]");
    return Point{read_number(j, path), 0.0};
}

Ball parse_ball(const json& j, const std::string& path, int dim) {
    expect_object(j, path);
    Ball b{parse_point(require(j, "center", path), join(path, "center"), dim),
           read_number(require(j, "radius", path), join(path, "radius"))};
    if (!(b.radius > 0.0)) throw ConfigError(join(path, "radius"), "must be positive");
    return b;
}

StepFunction parse_step(const json& j, const std::string& path) {
    expect_object(j, path);
    const auto bp = read_number_list(require(j, "breakpoints", path), join(path, "breakpoints"));
    const auto vals = read_number_list(require(j, "values", path), join(path, "values"));
    try {
        return StepFunction(bp, vals);
    } catch (const InvalidArgument& e) {
        throw ConfigError(path, e.what());
    }
}

Weight parse_weight(const json& j, const std::string& path, int dim) {
    expect_object(j, path);
    const json& type = require(j, "type", path);
    if (!type.is_string()) throw ConfigError(join(path, "type"), "expected a string");
    const std::string t = type.get<std::string>();
    if (t == "unit") return Weight::unit();
    if (t == "power") {
        const Point a = j.contains("a") ? parse_point(j.at("a"), join(path, "a"), dim) : Point{};
        const double nu = read_number(require(j, "nu", path), join(path, "nu"));
        if (!(nu > -dim))
            throw ConfigError(join(path, "nu"), "power exponent must exceed -n = " + std::to_string(-dim) +
                                                    " for local integrability");
        return Weight::power(a, nu);
    }
    if (t == "constant") {
        const double c = read_number(require(j, "c", path), join(path, "c"));
        if (!(c > 0.0)) throw ConfigError(join(path, "c"), "must be positive");
        return Weight::constant(c);
    }
    if (t == "tabulated") {
        if (dim != 1) throw ConfigError(path, "tabulated weights are one-dimensional");
        auto x = read_number_list(require(j, "x", path), join(path, "x"));
        auto y = read_number_list(require(j, "y", path), join(path, "y"));
        try {
            return Weight::tabulated(std::move(x), std::move(y));
        } catch (const InvalidArgument& e) {
            throw ConfigError(path, e.what());
        }
    }
    if (t == "product") {
        const json& fs = require(j, "factors", path);
        if (!fs.is_array() || fs.empty()) throw ConfigError(join(path, "factors"), "expected a non-empty array");
        std::vector<Weight> factors;
        for (std::size_t i = 0; i < fs.size(); ++i)
            factors.push_back(parse_weight(fs[i], index(join(path, "factors"), i), dim));
        Weight w = Weight::product(std::move(factors));
        try {
            w.validate(dim);
        } catch (const InvalidArgument& e) {
            throw ConfigError(path, e.what());
        }
        return w;
    }
    throw ConfigError(join(path, "type"), "unknown weight type \"" + t + "\" (unit, power, constant, tabulated, product)");
}

BallFamily apply_family(BallFamily base, const json& o, const std::string& path) {
    if (!o.is_null()) expect_object(o, path);
    if (auto v = opt_int(o, "center_count", path)) base.center_count = *v;
    if (auto v = opt_int(o, "radius_count", path)) base.radius_count = *v;
    if (auto v = opt_int(o, "refine_rounds", path)) base.refine_rounds = *v;
    if (auto v = opt_number(o, "radius_min", path)) base.radius_min = *v;
    if (auto v = opt_number(o, "radius_max", path)) base.radius_max = *v;
    if (auto v = opt_number(o, "max_radius_cap", path)) base.max_radius_cap = *v;
    if (o.is_object() && o.contains("center_box")) {
        const std::string bp = join(path, "center_box");
        const json& box = o.at("center_box");
        base.center_box.lo = parse_point(require(box, "lo", bp), join(bp, "lo"), base.dim);
        base.center_box.hi = parse_point(require(box, "hi", bp), join(bp, "hi"), base.dim);
    }
    if (o.is_object() && o.contains("seeds")) {
        const json& s = o.at("seeds");
        if (!s.is_array()) throw ConfigError(join(path, "seeds"), "expected an array of points");
        std::vector<Point> pts;
        for (std::size_t i = 0; i < s.size(); ++i) pts.push_back(parse_point(s[i], index(join(path, "seeds"), i), base.dim));
        base.add_seeds(pts);
    }
    if (base.refine_rounds < 0) throw ConfigError(join(path, "refine_rounds"), "must be non-negative");
    try {
        base.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(path, e.what());
    }
    return base;
}

GridShape parse_shape(const json& o, const std::string& path, GridShape base) {
    if (o.is_null()) return base;
    expect_object(o, path);
    if (auto v = opt_int(o, "center_count", path)) base.center_count = *v;
    if (auto v = opt_int(o, "radius_count", path)) base.radius_count = *v;
    if (auto v = opt_int(o, "refine_rounds", path)) base.refine_rounds = *v;
    if (auto v = opt_number(o, "rmin_ratio", path)) base.rmin_ratio = *v;
    if (base.center_count < 2) throw ConfigError(join(path, "center_count"), "must be at least 2");
    if (base.radius_count < 2) throw ConfigError(join(path, "radius_count"), "must be at least 2");
    if (base.refine_rounds < 0) throw ConfigError(join(path, "refine_rounds"), "must be non-negative");
    if (!(base.rmin_ratio > 0.0 && base.rmin_ratio < 1.0)) throw ConfigError(join(path, "rmin_ratio"), "must lie in (0, 1)");
    return base;
}

Config parse_config(const std::string& text) {
    Config c;
    try {
        c.raw = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", "invalid JSON at " + position(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
    }
    expect_object(c.raw, "config");
    for (const auto& [key, _] : c.raw.items())
        if (key != "params" && key != "weight" && key != "family" && key != "experiment")
            throw ConfigError(key, "unknown section (expected params, weight, family, experiment)");

    const json& p = require(c.raw, "params", "");
    expect_object(p, "params");
    c.params.p = read_number(require(p, "p", "params"), "params.p");
    c.params.lambda = p.contains("lambda") ? read_number(p.at("lambda"), "params.lambda") : 0.0;
    c.params.n = p.contains("n") ? read_int(p.at("n"), "params.n") : 1;
    if (!(c.params.p >= 1.0)) throw ConfigError("params.p", "must be at least 1");
    if (!(c.params.lambda >= 0.0 && c.params.lambda < 1.0)) throw ConfigError("params.lambda", "must lie in [0, 1)");
    if (c.params.n != 1 && c.params.n != 2) throw ConfigError("params.n", "must be 1 or 2");

    if (c.raw.contains("weight")) {
        c.weight = parse_weight(c.raw.at("weight"), "weight", c.params.n);
        c.weight_spec = to_json(*c.weight);
    }
    if (c.raw.contains("family")) {
        c.family = c.raw.at("family");
        expect_object(c.family, "family");
    }
    if (c.raw.contains("experiment")) {
        c.experiment = c.raw.at("experiment");
        expect_object(c.experiment, "experiment");
    } else {
        c.experiment = json::object();
    }
    return c;
}

Config load_config(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigError("", "cannot open config file " + file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

json to_json(const MorreyParams& p) { return json{{"p", p.p}, {"lambda", p.lambda}, {"n", p.n}}; }

json to_json(const Point& q, int dim) {
    if (dim == 1) return num(q.x);
    return json::array({num(q.x), num(q.y)});
}

json to_json(const Ball& b, int dim) { return json{{"center", to_json(b.center, dim)}, {"radius", num(b.radius)}}; }

json to_json(const Weight& w) {
    return std::visit(
        [](const auto& r) -> json {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, Weight::Unit>) {
                return json{{"type", "unit"}};
            } else if constexpr (std::is_same_v<T, Weight::Power>) {
                return json{{"type", "power"}, {"a", json::array({num(r.a.x), num(r.a.y)})}, {"nu", num(r.nu)}};
            } else if constexpr (std::is_same_v<T, Weight::Tabulated>) {
                json x = json::array(), y = json::array();
                for (double v : r.x) x.push_back(num(v));
                for (double v : r.y) y.push_back(num(v));
                return json{{"type", "tabulated"}, {"x", x}, {"y", y}, {"exponent", num(r.exponent)}};
            } else {
                json fs = json::array();
                for (const Weight& f : r.factors) fs.push_back(to_json(f));
                return json{{"type", "product"}, {"factors", fs}};
            }
        },
        w.repr());
}

json to_json(const BallFamily& f) {
    json seeds = json::array();
    for (const Point& s : f.seeds) seeds.push_back(to_json(s, f.dim));
    return json{{"dim", f.dim},
                {"center_box", {{"lo", to_json(f.center_box.lo, f.dim)}, {"hi", to_json(f.center_box.hi, f.dim)}}},
                {"center_count", f.center_count},
                {"radius_min", num(f.radius_min)},
                {"radius_max", num(f.radius_max)},
                {"radius_count", f.radius_count},
                {"refine_rounds", f.refine_rounds},
                {"max_radius_cap", f.max_radius_cap ? num(*f.max_radius_cap) : json(nullptr)},
                {"seeds", seeds}};
}

json to_json(const GridShape& s) {
    return json{{"center_count", s.center_count},
                {"radius_count", s.radius_count},
                {"rmin_ratio", num(s.rmin_ratio)},
                {"refine_rounds", s.refine_rounds}};
}

}  // namespace morrey::cli
