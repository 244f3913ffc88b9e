// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
// Usage: acceptance <morrey-lab binary> <configs dir> <scratch dir>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "morrey/hilbert.hpp"
#include "morrey/morrey_norm.hpp"
#include "morrey/muckenhoupt.hpp"
#include "oracles.hpp"

using namespace morrey;
namespace fs = std::filesystem;

namespace {

// Tolerances.
constexpr double kClosedFormRel = 0.02;
constexpr double kClosedFormExcess = 1e-8;
constexpr double kSlopeAbs = 0.02;
constexpr double kHilbertAbs = 1e-6;
constexpr double kAdjacentAbs = 1e-9;
constexpr double kReductionRel = 1e-6;
constexpr double kBoundedFactor = 3.0;
constexpr double kDivergingFactor = 10.0;
constexpr double kSeparatedRel = 0.05;

int failures = 0;

void report(int id, bool ok, const std::string& what, const std::string& detail) {
    std::printf("%s [%d] %s: %s\n", ok ? "PASS" : "FAIL", id, what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double v, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

double span_factor(const std::vector<double>& v) {
    double lo = v.front(), hi = v.front();
    for (double x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return hi / lo;
}

void closed_form() {
    const Ball b0{{0.0, 0.0}, 1.0};
    bool ok = true;
    double worst_rel = 0.0, worst_excess = -1.0;
    for (double p : {1.0, 2.0, 4.0})
        for (double lambda : {0.0, 0.3, 0.7}) {
            const MorreyParams pr{p, lambda, 1};
            const double exact = std::pow(2.0, (1.0 - lambda) / p);
            const double est = char_norm_weighted(pr, Weight::unit(), b0).value;
            worst_rel = std::max(worst_rel, std::abs(est - exact) / exact);
            worst_excess = std::max(worst_excess, est - exact);
            ok = ok && std::abs(est - exact) <= kClosedFormRel * exact && est - exact <= kClosedFormExcess;
        }
    report(1, ok, "closed-form norm of the unit indicator",
           "max rel err " + fmt(worst_rel) + ", max excess " + fmt(worst_excess));
}

void scaling_exponent() {
    const auto radii = oracle::logspace(1e-2, 1.0, 9);
    const auto a = exponent_fit({2.0, 0.4, 1}, Weight::power(0.0, 0.3), radii);
    const auto b = exponent_fit({1.0, 0.0, 1}, Weight::power(0.0, 1.0), radii);
    const bool ok = std::abs(a.slope - 0.45) <= kSlopeAbs && std::abs(b.slope - 2.0) <= kSlopeAbs;
    report(2, ok, "scaling exponent", "slope(2,0.4,0.3) = " + fmt(a.slope) + " (want 0.45), slope(1,0,1) = " +
                                          fmt(b.slope) + " (want 2)");
}

void admissibility_boundary() {
    const MorreyParams pr{2.0, 0.3, 1};
    const Ball probe{{0.0, 0.0}, 1.0};
    const BallFamily fam = family_for_ball(probe, GridShape::standard(), 1);
    const std::map<double, bool> expected{{-0.9, false}, {-0.5, true}, {1.1, true}, {1.5, false}};
    bool ok = true;
    std::string detail;
    for (const auto& [nu, want] : expected) {
        const bool got = admissible(pr, Weight::power(0.0, nu), probe, fam).admissible;
        ok = ok && got == want;
        detail += "nu=" + fmt(nu) + ":" + (got ? "admissible " : "inadmissible ");
    }
    report(3, ok, "admissibility boundary", detail);
}

void hilbert_exactness() {
    std::mt19937_64 rng(20240601);
    std::uniform_int_distribution<int> cells(1, 6);
    std::uniform_real_distribution<double> gap(0.05, 0.6), val(-3.0, 3.0);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        std::vector<double> b{gap(rng) - 1.0};
        std::vector<double> v;
        const int n = cells(rng);
        for (int i = 0; i < n; ++i) {
            b.push_back(b.back() + gap(rng));
            v.push_back(val(rng));
        }
        const StepFunction f(b, v);
        std::uniform_real_distribution<double> xd(b.front() - 1.0, b.back() + 1.0);
        int done = 0;
        while (done < 100) {
            const double x = xd(rng);
            bool far = true;
            for (double t : b) far = far && std::abs(t - x) >= 0.01;
            if (!far) continue;
            ++done;
            worst = std::max(worst, std::abs(hilbert_step(f, x) - oracle::hilbert_pv(b, v, x, 400000, 0.005)));
        }
    }
    report(4, worst <= kHilbertAbs, "Hilbert transform vs principal-value quadrature",
           "1000 points, max |diff| " + fmt(worst));
}

void adjacent_interval_bound() {
    const double sharp = std::log(2.0) / std::numbers::pi;
    double worst = 0.0, least = 1e300;
    for (double L : {0.01, 0.1, 1.0})
        for (Side s : {Side::left, Side::right}) {
            const double m = adjacent_bound(AdjacentPair::from_prime({0.0, L}, s));
            worst = std::max(worst, std::abs(m - sharp));
            least = std::min(least, m);
        }
    const bool ok = worst <= kAdjacentAbs && std::numbers::pi * least > 0.5;
    report(5, ok, "adjacent-interval bound",
           "max |min - ln2/pi| " + fmt(worst) + ", pi*min " + fmt(std::numbers::pi * least, 9));
}

void lambda_zero_reduction() {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> c_d(-1.0, 1.0), r_d(0.01, 1.0);
    const MorreyParams pr{2.0, 0.0, 1};
    double worst = 0.0;
    for (const Weight& w : {Weight::unit(), Weight::power(0.0, 0.5)})
        for (int i = 0; i < 20; ++i) {
            const Ball B{{c_d(rng), 0.0}, r_d(rng)};
            const double apl = apl_functional(pr, w, B);
            const double ref = std::sqrt(ap_functional(2.0, w, B));
            worst = std::max(worst, std::abs(apl - ref) / ref);
        }
    report(6, worst <= kReductionRel, "lambda = 0 reduction to A_p", "40 balls, max rel diff " + fmt(worst));
}

struct SweepCheck {
    bool ok = true;
    std::string detail;
    std::map<double, double> max_lb;
};

SweepCheck sweep_and_necessity(const MorreyParams& pr, const std::vector<double>& bounded,
                               const std::vector<double>& diverging) {
    SweepCheck out;
    std::vector<double> nus = bounded;
    nus.insert(nus.end(), diverging.begin(), diverging.end());
    const SlidingFamily family;
    const SweepResult sweep = necessity_sweep(pr, nus, family);
    for (std::size_t i = 0; i < nus.size(); ++i) {
        std::vector<double> lb;
        for (const auto& row : sweep.rows)
            if (row.nu == nus[i]) lb.push_back(row.opnorm_lb);
        const bool want_div = i >= bounded.size();
        const double factor = std::isinf(lb.back()) ? INFINITY : lb.back() / lb.front();
        const bool sweep_ok = want_div ? factor >= kDivergingFactor : span_factor(lb) <= kBoundedFactor;
        const Weight w = Weight::power(0.0, nus[i]);
        const auto nec = necessity_functional(pr, w, necessity_family(w), 1.0);
        const bool flag = nec.functional_value.diverging;
        out.ok = out.ok && sweep_ok && flag == want_div;
        out.max_lb[nus[i]] = *std::max_element(lb.begin(), lb.end());
        out.detail += "nu=" + fmt(nus[i]) + " growth x" + fmt(want_div ? factor : span_factor(lb), 3) +
                      (flag ? " flagged; " : " unflagged; ");
    }
    return out;
}

SweepCheck observed;

void necessity() {
    observed = sweep_and_necessity({2.0, 0.3, 1}, {-0.5, 0.0, 0.3, 0.5, 1.0}, {-0.9, 1.5});
    const SweepCheck control = sweep_and_necessity({2.0, 0.0, 1}, {-0.5, 0.0, 0.5}, {1.5});
    // nu = -1 is the lower end of the classical interval: not a weight at all
    const SweepResult edge = necessity_sweep({2.0, 0.0, 1}, {-1.0}, SlidingFamily{});
    const bool edge_ok = edge.growth.front() == Growth::diverging;
    report(7, observed.ok && control.ok && edge_ok, "necessity sweep and functional co-occurrence",
           "lambda=0.3: " + observed.detail + "lambda=0 control: " + control.detail +
               "nu=-1 " + to_string(edge.growth.front()));
}

void lemma_ratio() {
    const MorreyParams pr{2.0, 0.3, 1};
    const Weight w = Weight::power(0.0, 0.3);
    const double lb = observed.max_lb.count(0.3) ? observed.max_lb.at(0.3) : 0.0;
    const double k = std::max(1.0, lb);
    const auto straddle = adjacent_norm_ratio(pr, w, AdjacentPair::from_prime({-0.25, 0.25}, Side::right), k);
    const auto far = adjacent_norm_ratio(pr, w, AdjacentPair::from_prime({10.0, 10.5}, Side::right), k);
    const bool ok = straddle.within && std::abs(far.ratio - 1.0) <= kSeparatedRel;
    report(8, ok, "adjacent norm ratio",
           "observed lower bound " + fmt(lb) + ", k = " + fmt(k) + ", straddling ratio " + fmt(straddle.ratio) + " in [" + fmt(1.0 / (2.0 * k)) + ", " +
               fmt(2.0 * k) + "], separated ratio " + fmt(far.ratio));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void determinism(const std::string& exe, const fs::path& configs, const fs::path& scratch) {
    const std::vector<std::pair<std::string, std::string>> runs{
        {"norm", "norm_unit.json"},          {"admissible", "admissible_power.json"},
        {"apconst", "apconst_power.json"},   {"aplconst", "aplconst_unit.json"},
        {"necessity", "necessity_power.json"}, {"expfit", "expfit_power.json"},
        {"sweep", "sweep_lambda03.json"}};
    bool ok = true;
    std::string detail;
    for (const auto& [cmd, file] : runs) {
        std::string outputs[2];
        for (int t = 0; t < 2; ++t) {
            const int threads = t == 0 ? 1 : 8;
            const fs::path dir = scratch / (cmd + "_t" + std::to_string(threads));
            fs::remove_all(dir);
            const std::string line = "\"" + exe + "\" " + cmd + " --config \"" + (configs / file).string() +
                                     "\" --out \"" + dir.string() + "\" --threads " + std::to_string(threads) +
                                     " > /dev/null 2>&1";
            const int rc = std::system(line.c_str());
            if (rc != 0) ok = false;
            if (!fs::exists(dir)) continue;
            for (const auto& entry : fs::directory_iterator(dir))
                outputs[t] += entry.path().filename().string() + "\n" + slurp(entry.path());
        }
        const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
        ok = ok && same;
        detail += cmd + (same ? ":identical " : ":DIFFERENT ");
    }
    report(9, ok, "byte-identical reports for --threads 1 and 8", detail);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 4) {
        std::fprintf(stderr, "usage: acceptance <morrey-lab> <configs dir> <scratch dir>\n");
        return 2;
    }
    closed_form();
    scaling_exponent();
    admissibility_boundary();
    hilbert_exactness();
    adjacent_interval_bound();
    lambda_zero_reduction();
    necessity();
    lemma_ratio();
    determinism(argv[1], argv[2], argv[3]);
    std::printf("%s: %d failing criteria\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
