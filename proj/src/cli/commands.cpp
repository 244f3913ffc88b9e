#include "morrey/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>

#include "morrey/cli/config.hpp"
#include "morrey/cli/report_io.hpp"
#include "morrey/cli/svg.hpp"
#include "morrey/errors.hpp"
#include "morrey/hilbert.hpp"
#include "morrey/morrey_norm.hpp"
#include "morrey/muckenhoupt.hpp"

namespace morrey::cli {

namespace {

struct Output {
    json result;
    json experiment;  ///< resolved experiment section
    std::vector<std::pair<std::string, std::string>> files;
    bool unexpected_divergence = false;
    std::string summary;
};

using Handler = std::function<Output(const Config&, const SupOptions&)>;

const Weight& need_weight(const Config& c) {
    if (!c.weight) throw ConfigError("weight", "missing required section");
    return *c.weight;
}

bool expect_bounded(const json& exp, bool fallback) {
    if (!exp.contains("expect_bounded")) return fallback;
    return read_bool(exp.at("expect_bounded"), "experiment.expect_bounded");
}

void need_1d(const Config& c, const std::string& what) {
    if (c.params.n != 1) throw ConfigError("params.n", what + " is one-dimensional");
}

// snap a grid value to 12 significant digits so 0.1-steps print as written
double snap(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

std::string trace_csv(const FunctionalReport& r) {
    std::string s = csv_row({"round", "value"});
    for (std::size_t i = 0; i < r.refine_trace.size(); ++i)
        s += csv_row({std::to_string(i), format_double(r.refine_trace[i])});
    return s;
}

std::string verdict(const FunctionalReport& r) {
    return format_double(r.value) + (r.diverging ? " (diverging)" : "");
}

Output cmd_norm(const Config& c, const SupOptions& opt) {
    const Weight& w = need_weight(c);
    const json& exp = c.experiment;
    const json& target = require(exp, "target", "experiment");
    Output o;
    FunctionalReport rep;
    if (target.contains("ball")) {
        const Ball b = parse_ball(target.at("ball"), "experiment.target.ball", c.params.n);
        const BallFamily fam = apply_family(family_for_ball(b, GridShape::standard(), c.params.n), c.family, "family");
        rep = char_norm_weighted(c.params, w, b, fam, opt);
        o.experiment["target"] = {{"ball", to_json(b, c.params.n)}};
        o.result["unweighted_closed_form"] = num(char_norm_unweighted(c.params, b));
    } else if (target.contains("step")) {
        need_1d(c, "a step-function target");
        const StepFunction f = parse_step(target.at("step"), "experiment.target.step");
        BallFamily base = family_for_support(f.is_zero() ? Interval{-1.0, 1.0} : f.support(), GridShape::standard());
        std::vector<Point> pts;
        for (double b : f.breakpoints()) pts.push_back({b, 0.0});
        base.add_seeds(pts);
        rep = morrey_norm_step(c.params, w, f, apply_family(base, c.family, "family"), opt);
        json bp = json::array(), vals = json::array();
        for (double v : f.breakpoints()) bp.push_back(num(v));
        for (double v : f.values()) vals.push_back(num(v));
        o.experiment["target"] = {{"step", {{"breakpoints", bp}, {"values", vals}}}};
    } else {
        throw ConfigError("experiment.target", "expected \"ball\" or \"step\"");
    }
    const bool trace = exp.contains("trace_csv") ? read_bool(exp.at("trace_csv"), "experiment.trace_csv") : true;
    const bool expect = expect_bounded(exp, false);
    o.experiment["trace_csv"] = trace;
    o.experiment["expect_bounded"] = expect;
    o.result["report"] = to_json(rep);
    if (trace) o.files.push_back({"norm_trace.csv", trace_csv(rep)});
    o.unexpected_divergence = expect && rep.diverging;
    o.summary = "norm = " + verdict(rep);
    return o;
}

Output cmd_admissible(const Config& c, const SupOptions& opt) {
    const Weight& w = need_weight(c);
    const json& exp = c.experiment;
    const Ball probe = parse_ball(require(exp, "probe", "experiment"), "experiment.probe", c.params.n);
    const BallFamily fam = apply_family(family_for_ball(probe, GridShape::standard(), c.params.n), c.family, "family");
    const AdmissibilityReport rep = admissible(c.params, w, probe, fam, opt);
    const bool expect = expect_bounded(exp, false);
    Output o;
    o.experiment = {{"probe", to_json(probe, c.params.n)}, {"expect_bounded", expect}};
    o.result = {{"condition_1", to_json(rep.condition_1)},
                {"condition_2", to_json(rep.condition_2)},
                {"dual_weight", to_json(dual_weight(w, c.params))},
                {"admissible", rep.admissible}};
    o.unexpected_divergence = expect && !rep.admissible;
    o.summary = std::string("admissible = ") + (rep.admissible ? "true" : "false");
    return o;
}

BallFamily default_box_family(int dim, int center_count, int radius_count, int refine_rounds) {
    BallFamily f;
    f.dim = dim;
    f.center_box = Box{{-1.0, dim == 1 ? 0.0 : -1.0}, {1.0, dim == 1 ? 0.0 : 1.0}};
    f.center_count = center_count;
    f.radius_min = 1e-4;
    f.radius_max = 1.0;
    f.radius_count = radius_count;
    f.refine_rounds = refine_rounds;
    return f;
}

Output cmd_apconst(const Config& c, const SupOptions& opt) {
    const Weight& w = need_weight(c);
    if (!(c.params.p > 1.0)) throw ConfigError("params.p", "the A_p constant needs p > 1");
    const int n = c.params.n;
    const BallFamily fam = apply_family(default_box_family(n, n == 1 ? 129 : 33, n == 1 ? 64 : 24, 3), c.family, "family");
    const FunctionalReport rep = ap_constant(c.params.p, w, fam, opt);
    const bool expect = expect_bounded(c.experiment, false);
    Output o;
    o.experiment = {{"expect_bounded", expect}};
    o.result = {{"report", to_json(rep)}};
    o.files.push_back({"apconst_trace.csv", trace_csv(rep)});
    o.unexpected_divergence = expect && rep.diverging;
    o.summary = "A_p constant = " + verdict(rep);
    return o;
}

Output cmd_aplconst(const Config& c, const SupOptions& opt) {
    const Weight& w = need_weight(c);
    beta(c.params);
    const BallFamily fam = apply_family(default_box_family(c.params.n, 33, 16, 1), c.family, "family");
    const GridShape inner =
        parse_shape(c.experiment.contains("inner") ? c.experiment.at("inner") : json(), "experiment.inner", GridShape::inner());
    const FunctionalReport rep = apl_constant(c.params, w, fam, inner, opt);
    const bool expect = expect_bounded(c.experiment, false);
    Output o;
    o.experiment = {{"inner", to_json(inner)}, {"expect_bounded", expect}};
    o.result = {{"report", to_json(rep)}, {"beta", num(beta(c.params))}, {"dual_weight", to_json(dual_weight(w, c.params))}};
    o.files.push_back({"aplconst_trace.csv", trace_csv(rep)});
    o.unexpected_divergence = expect && rep.diverging;
    o.summary = "A_{p,lambda} constant = " + verdict(rep);
    return o;
}

Output cmd_necessity(const Config& c, const SupOptions& opt) {
    const Weight& w = need_weight(c);
    need_1d(c, "the necessity functional");
    beta(c.params);
    const double k = read_number(require(c.experiment, "k", "experiment"), "experiment.k");
    if (!(k >= 1.0)) throw ConfigError("experiment.k", "must be at least 1");
    const BallFamily fam = apply_family(necessity_family(w), c.family, "family");
    if (fam.max_radius_cap && *fam.max_radius_cap > 0.5)
        throw ConfigError("family.max_radius_cap", "intervals must have length at most 1 (cap <= 0.5)");
    const GridShape inner =
        parse_shape(c.experiment.contains("inner") ? c.experiment.at("inner") : json(), "experiment.inner", GridShape::inner());
    const NecessityReport rep = necessity_functional(c.params, w, fam, k, inner, opt);
    const bool expect = expect_bounded(c.experiment, false);
    Output o;
    o.experiment = {{"k", num(k)}, {"inner", to_json(inner)}, {"expect_bounded", expect}};
    o.result = {{"k_hypothesis", num(rep.k_hypothesis)},
                {"bound_2k", num(rep.bound_2k)},
                {"functional_value", to_json(rep.functional_value)},
                {"satisfied", rep.satisfied},
                {"admissibility_failures", rep.admissibility_failures}};
    o.unexpected_divergence = expect && rep.functional_value.diverging;
    o.summary = "necessity functional = " + verdict(rep.functional_value) +
                (rep.satisfied ? ", satisfied" : ", not satisfied") + " for k = " + format_double(k);
    return o;
}

std::vector<double> parse_radii(const json& j, const std::string& path) {
    if (j.is_array()) return read_number_list(j, path);
    const double from = read_number(require(j, "from", path), path + ".from");
    const double to = read_number(require(j, "to", path), path + ".to");
    const int count = read_int(require(j, "count", path), path + ".count");
    if (!(from > 0.0) || !(to > from)) throw ConfigError(path, "need 0 < from < to");
    if (count < 2) throw ConfigError(path + ".count", "must be at least 2");
    std::vector<double> r;
    for (int i = 0; i < count; ++i) r.push_back(snap(from * std::pow(to / from, static_cast<double>(i) / (count - 1))));
    return r;
}

Output cmd_expfit(const Config& c, const SupOptions& opt) {
    const Weight& w = need_weight(c);
    if (!w.as_power()) throw ConfigError("weight.type", "expfit needs a power weight");
    const std::vector<double> radii = parse_radii(require(c.experiment, "radii", "experiment"), "experiment.radii");
    const GridShape shape =
        parse_shape(c.experiment.contains("grid") ? c.experiment.at("grid") : json(), "experiment.grid", GridShape::standard());
    Output o;
    json rj = json::array();
    for (double r : radii) rj.push_back(num(r));
    o.experiment = {{"radii", rj}, {"grid", to_json(shape)}};
    ExponentFit fit;
    try {
        fit = exponent_fit(c.params, w, radii, shape, opt);
    } catch (const InvalidArgument& e) {
        throw ConfigError("experiment.radii", e.what());
    } catch (const AdmissibilityFailure& e) {
        o.result = {{"error", e.what()}};
        o.unexpected_divergence = true;
        o.summary = std::string("expfit: ") + e.what();
        return o;
    }
    json pts = json::array();
    std::string csv = csv_row({"radius", "norm"});
    for (std::size_t i = 0; i < fit.radii.size(); ++i) {
        pts.push_back({{"radius", num(fit.radii[i])}, {"norm", num(fit.norms[i])}});
        csv += csv_row({format_double(fit.radii[i]), format_double(fit.norms[i])});
    }
    o.result = {{"slope", num(fit.slope)},     {"intercept", num(fit.intercept)}, {"residual", num(fit.residual)},
                {"theory", num(fit.theory)},   {"warning", fit.warning},          {"points", pts}};
    o.files.push_back({"expfit.csv", csv});
    o.summary = "slope = " + format_double(fit.slope) + ", theory = " + format_double(fit.theory);
    return o;
}

std::vector<double> parse_nu_grid(const json& j, const std::string& path) {
    std::vector<double> nus;
    if (j.is_array()) {
        nus = read_number_list(j, path);
    } else if (j.is_object()) {
        const double from = read_number(require(j, "from", path), path + ".from");
        const double to = read_number(require(j, "to", path), path + ".to");
        const double step = read_number(require(j, "step", path), path + ".step");
        if (!(step > 0.0)) throw ConfigError(path + ".step", "must be positive");
        if (to < from) throw ConfigError(path, "empty grid (to < from)");
        const long count = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
        if (count > 100000) throw ConfigError(path, "grid too large");
        for (long i = 0; i < count; ++i) nus.push_back(snap(from + static_cast<double>(i) * step));
    } else {
        throw ConfigError(path, "expected an array or {from, to, step}");
    }
    if (nus.empty()) throw ConfigError(path, "empty grid");
    return nus;
}

Output cmd_sweep(const Config& c, const SupOptions& opt) {
    need_1d(c, "the sweep");
    beta(c.params);
    const json& exp = c.experiment;
    const std::vector<double> nus = parse_nu_grid(require(exp, "nu", "experiment"), "experiment.nu");
    SlidingFamily fam;
    if (auto v = opt_number(exp, "a", "experiment")) fam.a = *v;
    if (auto v = opt_number(exp, "length", "experiment")) fam.length = *v;
    if (auto v = opt_number(exp, "first_gap", "experiment")) fam.first_gap = *v;
    if (auto v = opt_number(exp, "gap_ratio", "experiment")) fam.gap_ratio = *v;
    if (auto v = opt_int(exp, "steps", "experiment")) fam.steps = *v;
    try {
        fam.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError("experiment", e.what());
    }
    WitnessOptions wo;
    if (auto v = opt_int(exp, "step_resolution", "experiment")) wo.step_resolution = *v;
    if (auto v = opt_int(exp, "cells_per_decade", "experiment")) wo.cells_per_decade = *v;
    if (auto v = opt_int(exp, "center_count", "experiment")) wo.center_count = *v;
    if (auto v = opt_int(exp, "radii_per_decade", "experiment")) wo.radii_per_decade = *v;
    if (auto v = opt_int(exp, "refine_rounds", "experiment")) wo.refine_rounds = *v;
    if (wo.step_resolution < 1) throw ConfigError("experiment.step_resolution", "must be positive");
    if (wo.cells_per_decade < 1) throw ConfigError("experiment.cells_per_decade", "must be positive");
    if (wo.center_count < 2) throw ConfigError("experiment.center_count", "must be at least 2");
    if (wo.radii_per_decade < 1) throw ConfigError("experiment.radii_per_decade", "must be positive");
    if (wo.refine_rounds < 0) throw ConfigError("experiment.refine_rounds", "must be non-negative");
    const bool expect = expect_bounded(exp, true);

    const SweepResult res = necessity_sweep(c.params, nus, fam, wo, opt);

    const double lo = c.params.lambda - 1.0, hi = c.params.lambda + c.params.p - 1.0;
    std::string csv = csv_row({"nu", "family_step", "opnorm_lb", "diverging"});
    for (const auto& r : res.rows)
        csv += csv_row({format_double(r.nu), std::to_string(r.family_step), format_double(r.opnorm_lb),
                        r.diverging ? "true" : "false"});
    json per_nu = json::array();
    std::size_t inside_flags = 0;
    for (std::size_t i = 0; i < nus.size(); ++i) {
        const bool inside = nus[i] > lo && nus[i] < hi;
        if (inside && res.growth[i] == Growth::diverging) ++inside_flags;
        per_nu.push_back({{"nu", num(nus[i])}, {"growth", to_string(res.growth[i])}, {"inside_interval", inside}});
    }
    json nj = json::array();
    for (double v : nus) nj.push_back(num(v));
    Output o;
    o.experiment = {{"nu", nj},
                    {"a", num(fam.a)},
                    {"length", num(fam.length)},
                    {"first_gap", num(fam.first_gap)},
                    {"gap_ratio", num(fam.gap_ratio)},
                    {"steps", fam.steps},
                    {"step_resolution", wo.step_resolution},
                    {"cells_per_decade", wo.cells_per_decade},
                    {"center_count", wo.center_count},
                    {"radii_per_decade", wo.radii_per_decade},
                    {"refine_rounds", wo.refine_rounds},
                    {"expect_bounded", expect}};
    o.result = {{"interval", {num(lo), num(hi)}},
                {"per_nu", per_nu},
                {"rows", res.rows.size()},
                {"warnings", res.warnings}};
    o.files.push_back({"sweep.csv", csv});
    o.files.push_back({"sweep.svg", sweep_svg(res, c.params, fam.steps)});
    o.unexpected_divergence = expect && inside_flags > 0;
    o.summary = std::to_string(res.rows.size()) + " rows, " + std::to_string(inside_flags) +
                " nu inside the interval flagged diverging";
    return o;
}

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> h{
        {"norm", cmd_norm},           {"sweep", cmd_sweep},         {"admissible", cmd_admissible},
        {"apconst", cmd_apconst},     {"aplconst", cmd_aplconst},   {"necessity", cmd_necessity},
        {"expfit", cmd_expfit},
    };
    return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"norm", "sweep", "admissible", "apconst", "aplconst", "necessity", "expfit"};
    return names;
}

int run(const RunOptions& ro, std::ostream& out, std::ostream& err) {
    const auto& hs = handlers();
    const auto it = hs.find(ro.command);
    if (it == hs.end()) {
        err << "error: unknown command \"" << ro.command << "\"\n";
        return kValidation;
    }
    SupOptions opt;
    opt.threads = std::max(1, ro.threads);
    try {
        const Config cfg = load_config(ro.config_file);
        Output o = it->second(cfg, opt);
        json config = {{"params", to_json(cfg.params)}, {"experiment", o.experiment}};
        if (cfg.weight) config["weight"] = cfg.weight_spec;
        if (!cfg.family.is_null()) config["family"] = cfg.family;
        const json report = {{"tool", kToolName},
                             {"version", kToolVersion},
                             {"command", ro.command},
                             {"config", config},
                             {"result", o.result}};
        write_file(ro.out_dir, ro.command + ".json", dump(report));
        for (const auto& [name, content] : o.files) write_file(ro.out_dir, name, content);
        out << ro.command << ": " << o.summary << "\n";
        if (o.unexpected_divergence) {
            err << "divergence detected where boundedness was expected\n";
            return kUnexpectedDivergence;
        }
        return kOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kValidation;
    } catch (const InvalidArgument& e) {
        err << "invalid input: " << e.what() << "\n";
        return kValidation;
    } catch (const DegenerateParameters& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

}  // namespace morrey::cli
