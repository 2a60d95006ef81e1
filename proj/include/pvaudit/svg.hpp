// Deterministic SVG rendering of a p-value plot: fixed 640x480 canvas, fixed
// element order, fixed coordinate formatting, no timestamps, so identical
// series produce byte-identical files fit for golden-file comparison.
#pragma once

#include "pvaudit/pplot.hpp"

#include <string>

namespace pvaudit {

// Rank on x (1..N), p on y ([0,1]), the 45-degree reference line through
// (0,0)-(N+1,1), a horizontal rule at p = 0.05, one filled circle per entry.
std::string render_pvalue_plot_svg(const PValueSeries& series);

// Filesystem-safe name for an outcome label: lowercase, runs of anything but
// [a-z0-9] collapse to single hyphens ("all-cause mortality" becomes
// "all-cause-mortality").
std::string slugify(const std::string& label);

}  // namespace pvaudit
