#include "morrey/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "morrey/cli/report_io.hpp"

namespace morrey::cli {

namespace {

constexpr double kWidth = 720, kHeight = 440;
constexpr double kLeft = 70, kRight = 150, kTop = 30, kBottom = 50;
constexpr const char* kColors[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"};

std::string f(double v) {
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << v;
    return os.str();
}

}  // namespace

std::string sweep_svg(const SweepResult& sweep, const MorreyParams& params, int steps) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& r : sweep.rows) {
        xmin = std::min(xmin, r.nu);
        xmax = std::max(xmax, r.nu);
        if (std::isfinite(r.opnorm_lb) && r.opnorm_lb > 0.0) {
            ymin = std::min(ymin, std::log10(r.opnorm_lb));
            ymax = std::max(ymax, std::log10(r.opnorm_lb));
        }
    }
    const double g1 = params.lambda - 1.0, g2 = params.lambda + params.p - 1.0;
    xmin = std::min({xmin, g1, g2});
    xmax = std::max({xmax, g1, g2});
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!std::isfinite(ymin)) ymin = 0.0, ymax = 1.0;
    ymin = std::floor(ymin);
    ymax = std::max(std::ceil(ymax), ymin + 1.0);

    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto X = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * pw; };
    auto Y = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << kHeight
       << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes and ticks
    os << "<rect x=\"" << f(kLeft) << "\" y=\"" << f(kTop) << "\" width=\"" << f(pw) << "\" height=\"" << f(ph)
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int e = static_cast<int>(ymin); e <= static_cast<int>(ymax); ++e) {
        os << "<line x1=\"" << f(kLeft - 4) << "\" y1=\"" << f(Y(e)) << "\" x2=\"" << f(kLeft) << "\" y2=\"" << f(Y(e))
           << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << f(kLeft - 8) << "\" y=\"" << f(Y(e) + 4) << "\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
    const int xticks = 8;
    for (int i = 0; i <= xticks; ++i) {
        const double x = xmin + (xmax - xmin) * i / xticks;
        os << "<line x1=\"" << f(X(x)) << "\" y1=\"" << f(kTop + ph) << "\" x2=\"" << f(X(x)) << "\" y2=\""
           << f(kTop + ph + 4) << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << f(X(x)) << "\" y=\"" << f(kTop + ph + 18) << "\" text-anchor=\"middle\">" << f(x)
           << "</text>\n";
    }
    os << "<text x=\"" << f(kLeft + pw / 2) << "\" y=\"" << f(kHeight - 10) << "\" text-anchor=\"middle\">nu</text>\n"
       << "<text x=\"16\" y=\"" << f(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << f(kTop + ph / 2) << ")\">operator norm lower bound</text>\n";

    // guides
    for (const double g : {g1, g2}) {
        os << "<line x1=\"" << f(X(g)) << "\" y1=\"" << f(kTop) << "\" x2=\"" << f(X(g)) << "\" y2=\"" << f(kTop + ph)
           << "\" stroke=\"gray\" stroke-dasharray=\"5,4\"/>\n"
           << "<text x=\"" << f(X(g) + 3) << "\" y=\"" << f(kTop + 12) << "\" fill=\"gray\">" << format_double(g)
           << "</text>\n";
    }

    // one polyline per family step
    for (int s = 0; s < steps; ++s) {
        const char* color = kColors[s % 8];
        std::ostringstream pts;
        std::ostringstream marks;
        for (const auto& r : sweep.rows) {
            if (r.family_step != s) continue;
            if (std::isfinite(r.opnorm_lb) && r.opnorm_lb > 0.0) {
                pts << f(X(r.nu)) << ',' << f(Y(std::log10(r.opnorm_lb))) << ' ';
            } else if (std::isinf(r.opnorm_lb)) {
                marks << "<circle cx=\"" << f(X(r.nu)) << "\" cy=\"" << f(kTop) << "\" r=\"3\" fill=\"" << color
                      << "\"/>\n";
            }
        }
        std::string p = pts.str();
        if (!p.empty()) {
            p.pop_back();
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << p << "\"/>\n";
        }
        os << marks.str();
        const double ly = kTop + 14 + 18 * s;
        os << "<line x1=\"" << f(kWidth - kRight + 12) << "\" y1=\"" << f(ly) << "\" x2=\"" << f(kWidth - kRight + 36)
           << "\" y2=\"" << f(ly) << "\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n"
           << "<text x=\"" << f(kWidth - kRight + 42) << "\" y=\"" << f(ly + 4) << "\">step " << s << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace morrey::cli
