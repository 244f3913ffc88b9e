#include "morrey/search.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace morrey {

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers =
        std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = count * w / workers;
        const std::size_t end = count * (w + 1) / workers;
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinRelativeRadius = 1e-10;

struct Best {
    double value = -kInf;
    Ball ball;
    bool set = false;

    void offer(double v, const Ball& b) {
        if (!set || v > value || (v == value && lexicographically_less(b, ball))) {
            value = v;
            ball = b;
            set = true;
        }
    }
};

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> v;
    if (count < 2 || !(hi > lo)) {
        v.push_back(0.5 * (lo + hi));
        return v;
    }
    for (int i = 0; i < count; ++i) v.push_back(lo + (hi - lo) * i / (count - 1));
    v.back() = hi;
    return v;
}

std::vector<double> logspace(double lo, double hi, int count) {
    std::vector<double> v;
    if (count < 2 || !(hi > lo)) {
        v.push_back(hi);
        return v;
    }
    const double step = std::log(hi / lo) / (count - 1);
    for (int i = 0; i < count; ++i) v.push_back(lo * std::exp(step * i));
    v.front() = lo;
    v.back() = hi;
    return v;
}

class Searcher {
public:
    Searcher(const BallFamily& fam, const BallFunctional& f, const SupOptions& opt)
        : fam_(fam), f_(f), opt_(opt) {}

    FunctionalReport run() {
        fam_.validate();
        FunctionalReport rep;
        rep.family = fam_;

        // base grid
        std::vector<Point> centers = fam_.grid_centers();
        for (const Point& s : fam_.seeds) centers.push_back(s);
        evaluate(centers, fam_.radii());
        rep.refine_trace.push_back(current());

        // zoom rounds around the current maximiser
        const double hx0 = 0.5 * (fam_.center_box.hi.x - fam_.center_box.lo.x);
        const double hy0 = 0.5 * (fam_.center_box.hi.y - fam_.center_box.lo.y);
        const double rmin = fam_.radius_min;
        const double rmax = fam_.effective_radius_max();
        const double span0 = std::log(rmax / rmin);
        double shrink = 1.0;
        for (int t = 1; t <= fam_.refine_rounds; ++t) {
            shrink /= opt_.zoom_factor;
            const Ball c = best_.ball;
            const auto rs = logspace(std::max(rmin, c.radius * std::exp(-0.5 * span0 * shrink)),
                                     std::min(rmax, c.radius * std::exp(0.5 * span0 * shrink)),
                                     fam_.radius_count);
            evaluate(local_centers(c.center, hx0 * shrink, hy0 * shrink, fam_.center_count), rs);
            rep.refine_trace.push_back(current());
        }

        // divergence probe below radius_min
        const DivergencePolicy& dp = opt_.divergence;
        const double factor = std::exp2(-dp.halvings_per_round);
        double r_hi = rmin;
        for (int k = 1; k <= dp.probe_rounds; ++k) {
            const double r_lo = r_hi * factor;
            const Ball c = best_.ball;
            const int per_axis = fam_.dim == 1 ? fam_.center_count : std::min(fam_.center_count, 17);
            std::vector<Point> pc = local_centers(c.center, 2.0 * r_hi, 2.0 * r_hi, per_axis);
            for (const Point& s : fam_.seeds) pc.push_back(s);
            evaluate(pc, logspace(r_lo, r_hi, fam_.radius_count));
            rep.refine_trace.push_back(current());
            r_hi = r_lo;
        }

        rep.value = current();
        rep.argmax = best_.ball;
        rep.nonfinite_evaluations = nonfinite_;
        rep.evaluations = evaluations_;
        rep.diverging = nonfinite_ > 0 || probe_growth(rep.refine_trace, dp);
        return rep;
    }

private:
    double current() const { return best_.set ? best_.value : 0.0; }

    static bool probe_growth(const std::vector<double>& trace, const DivergencePolicy& dp) {
        if (dp.probe_rounds < 2 || trace.size() < 3) return false;
        const std::size_t n = trace.size();
        auto ratio = [](double prev, double next) {
            if (!(prev > 0.0)) return next > 0.0 ? kInf : 1.0;
            return next / prev;
        };
        return ratio(trace[n - 3], trace[n - 2]) >= dp.growth_threshold &&
               ratio(trace[n - 2], trace[n - 1]) >= dp.growth_threshold;
    }

    std::vector<Point> local_centers(const Point& c, double hx, double hy, int count) const {
        const auto& box = fam_.center_box;
        std::vector<Point> out;
        const auto xs = linspace(std::max(box.lo.x, c.x - hx), std::min(box.hi.x, c.x + hx), count);
        if (fam_.dim == 1) {
            for (double x : xs) out.push_back({x, 0.0});
        } else {
            const auto ys = linspace(std::max(box.lo.y, c.y - hy), std::min(box.hi.y, c.y + hy), count);
            for (double x : xs)
                for (double y : ys) out.push_back({x, y});
        }
        out.push_back(c);
        return out;
    }

    bool resolvable(const Ball& b) const {
        const double scale = fam_.dim == 1 ? std::abs(b.center.x) : std::max(std::abs(b.center.x), std::abs(b.center.y));
        return b.radius >= kMinRelativeRadius * scale;
    }

    void evaluate(const std::vector<Point>& centers, const std::vector<double>& radii) {
        const std::size_t nr = radii.size();
        const std::size_t total = centers.size() * nr;
        std::vector<double> values(total);
        std::vector<char> skip(total, 0);
        parallel_for(total, opt_.threads, [&](std::size_t i) {
            const Ball b{centers[i / nr], radii[i % nr]};
            if (!resolvable(b)) {
                skip[i] = 1;
                return;
            }
            values[i] = call(b);
        });
        for (std::size_t i = 0; i < total; ++i) {
            if (skip[i]) continue;
            ++evaluations_;
            if (!std::isfinite(values[i])) ++nonfinite_;
            best_.offer(values[i], Ball{centers[i / nr], radii[i % nr]});
        }
    }

    double call(const Ball& b) const {
        double v;
        try {
            v = f_(b);
        } catch (const NonIntegrable&) {
            return kInf;
        } catch (const AdmissibilityFailure&) {
            return kInf;
        }
        if (std::isnan(v)) throw Error("ball functional returned NaN");
        return v;
    }

    const BallFamily& fam_;
    const BallFunctional& f_;
    const SupOptions& opt_;
    Best best_;
    std::size_t nonfinite_ = 0;
    std::size_t evaluations_ = 0;
};

}  // namespace

FunctionalReport maximize(const BallFamily& fam, const BallFunctional& f, const SupOptions& opt) {
    return Searcher(fam, f, opt).run();
}

}  // namespace morrey
