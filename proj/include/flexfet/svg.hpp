#pragma once

// Self-contained SVG line charts of a Table. Axes go logarithmic when the data
// are positive and span more than a decade.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "flexfet/table.hpp"

namespace flexfet {

namespace detail {

struct Axis {
    double lo = 0, hi = 1;
    bool log = false;
    double map(double v, double a, double b) const {
        const double t = log ? (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo)) : (v - lo) / (hi - lo);
        return a + t * (b - a);
    }
};

inline Axis fit_axis(const std::vector<double>& values) {
    Axis ax;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    bool positive = true;
    for (double v : values) {
        if (!std::isfinite(v)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        positive = positive && v > 0;
    }
    if (!std::isfinite(lo)) return ax;
    ax.log = positive && hi / lo > 10.0;
    if (hi == lo) {
        const double pad = lo == 0 ? 1.0 : 0.05 * std::abs(lo);
        lo -= pad;
        hi += pad;
        ax.log = false;
    }
    ax.lo = lo;
    ax.hi = hi;
    return ax;
}

inline std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

} // namespace detail

inline std::string render_svg(const Table& t) {
    constexpr double W = 720, H = 440, left = 90, right = 230, top = 30, bottom = 60;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

    std::vector<std::size_t> cols;
    for (std::size_t i = 1; i < t.columns.size(); ++i)
        if (t.plotted.empty() || std::find(t.plotted.begin(), t.plotted.end(), t.columns[i]) != t.plotted.end())
            cols.push_back(i);

    std::vector<double> xs, ys;
    for (const auto& r : t.rows) {
        xs.push_back(r[0]);
        for (auto c : cols) ys.push_back(r[c]);
    }
    const auto ax = detail::fit_axis(xs);
    const auto ay = detail::fit_axis(ys);

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"440\" font-family=\"sans-serif\" "
         "font-size=\"11\">\n";
    s += "<rect width=\"720\" height=\"440\" fill=\"white\"/>\n";
    s += "<text x=\"" + detail::fmt("%.1f", left) + "\" y=\"18\" font-size=\"13\">" + t.name + "</text>\n";
    s += "<rect x=\"" + detail::fmt("%.1f", left) + "\" y=\"" + detail::fmt("%.1f", top) + "\" width=\"" +
         detail::fmt("%.1f", W - left - right) + "\" height=\"" + detail::fmt("%.1f", H - top - bottom) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
    // Tick labels at the ends of each axis.
    s += "<text x=\"" + detail::fmt("%.1f", left) + "\" y=\"" + detail::fmt("%.1f", H - bottom + 16) + "\">" +
         detail::fmt("%.3g", ax.lo) + "</text>\n";
    s += "<text x=\"" + detail::fmt("%.1f", W - right) + "\" y=\"" + detail::fmt("%.1f", H - bottom + 16) +
         "\" text-anchor=\"end\">" + detail::fmt("%.3g", ax.hi) + "</text>\n";
    s += "<text x=\"" + detail::fmt("%.1f", left - 6) + "\" y=\"" + detail::fmt("%.1f", H - bottom) +
         "\" text-anchor=\"end\">" + detail::fmt("%.4g", ay.lo) + "</text>\n";
    s += "<text x=\"" + detail::fmt("%.1f", left - 6) + "\" y=\"" + detail::fmt("%.1f", top + 10) +
         "\" text-anchor=\"end\">" + detail::fmt("%.4g", ay.hi) + "</text>\n";
    s += "<text x=\"" + detail::fmt("%.1f", (left + W - right) / 2) + "\" y=\"" + detail::fmt("%.1f", H - 20) +
         "\" text-anchor=\"middle\">" + t.columns[0] + (ax.log ? " (log)" : "") + "</text>\n";
    if (ay.log)
        s += "<text x=\"12\" y=\"" + detail::fmt("%.1f", (top + H - bottom) / 2) + "\">(log)</text>\n";

    for (std::size_t n = 0; n < cols.size(); ++n) {
        const char* colour = palette[n % std::size(palette)];
        std::string points;
        for (const auto& r : t.rows) {
            const double x = r[0], y = r[cols[n]];
            if (!std::isfinite(y) || (ay.log && y <= 0)) continue;
            points += detail::fmt("%.2f", ax.map(x, left, W - right)) + "," +
                      detail::fmt("%.2f", ay.map(y, H - bottom, top)) + " ";
        }
        s += "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" + std::string(colour) + "\" points=\"" +
             points + "\"/>\n";
        s += "<text x=\"" + detail::fmt("%.1f", W - right + 10) + "\" y=\"" + detail::fmt("%.1f", top + 14 * (n + 1)) +
             "\" fill=\"" + colour + "\">" + t.columns[cols[n]] + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace flexfet
