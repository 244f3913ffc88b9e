#pragma once

#include <string>

#include "morrey/hilbert.hpp"

namespace morrey::cli {

/// SVG 1.1 line plot of log10(opnorm_lb) against nu, one polyline per family
/// step, with dashed vertical guides at lambda - 1 and lambda + p - 1.
/// Non-finite values are drawn as markers on the top edge.
std::string sweep_svg(const SweepResult& sweep, const MorreyParams& params, int steps);

}  // namespace morrey::cli
