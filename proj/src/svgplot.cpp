#include "fairorder/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fairorder/metrics.hpp"

namespace fairorder {

namespace {

constexpr double kWidth = 720, kHeight = 460;
constexpr double kLeft = 70, kRight = 24, kTop = 40, kBottom = 56;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) { return format_double(v); }

std::string tick_label(double v) {
    double rounded = std::round(v * 1e6) / 1e6;  // trim tick arithmetic noise
    return format_double(rounded == 0.0 ? 0.0 : rounded);
}

}  // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, bool log_x,
                           const std::vector<PlotSeries>& series) {
    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = 0.0, y_max = -std::numeric_limits<double>::infinity();
    for (const PlotSeries& s : series)
        for (auto [x, y] : s.points) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    if (!(x_min < x_max)) x_max = x_min + 1.0;
    if (!(y_min < y_max)) y_max = y_min + 1.0;
    y_max += (y_max - y_min) * 0.05;

    auto xt = [&](double x) {
        double lo = log_x ? std::log10(x_min) : x_min;
        double hi = log_x ? std::log10(x_max) : x_max;
        double v = log_x ? std::log10(x) : x;
        return kLeft + (v - lo) / (hi - lo) * (kWidth - kLeft - kRight);
    };
    auto yt = [&](double y) {
        return kHeight - kBottom - (y - y_min) / (y_max - y_min) * (kHeight - kTop - kBottom);
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
           "\" height=\"" + num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " +
           num(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" + title + "</text>\n";

    // Axes
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kHeight - kBottom) +
           "\" x2=\"" + num(kWidth - kRight) + "\" y2=\"" + num(kHeight - kBottom) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" +
           num(kLeft) + "\" y2=\"" + num(kHeight - kBottom) + "\" stroke=\"black\"/>\n";

    // X ticks: decades when logarithmic, six even steps otherwise.
    std::vector<double> x_ticks;
    if (log_x) {
        int lo = static_cast<int>(std::ceil(std::log10(x_min) - 1e-9));
        int hi = static_cast<int>(std::floor(std::log10(x_max) + 1e-9));
        for (int e = lo; e <= hi; ++e) x_ticks.push_back(std::pow(10.0, e));
    } else {
        for (int i = 0; i <= 5; ++i) x_ticks.push_back(x_min + (x_max - x_min) * i / 5.0);
    }
    for (double x : x_ticks) {
        svg += "<line x1=\"" + num(xt(x)) + "\" y1=\"" + num(kHeight - kBottom) +
               "\" x2=\"" + num(xt(x)) + "\" y2=\"" + num(kHeight - kBottom + 5) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(xt(x)) + "\" y=\"" + num(kHeight - kBottom + 18) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" +
               tick_label(x) + "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        double y = y_min + (y_max - y_min) * i / 5.0;
        svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(yt(y)) + "\" x2=\"" +
               num(kLeft) + "\" y2=\"" + num(yt(y)) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(yt(y) + 4) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" +
               tick_label(y) + "</text>\n";
    }
    svg += "<text x=\"" + num((kLeft + kWidth - kRight) / 2) + "\" y=\"" +
           num(kHeight - 14) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">" + x_label + "</text>\n";
    svg += "<text x=\"16\" y=\"" + num((kTop + kHeight - kBottom) / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " + num((kTop + kHeight - kBottom) / 2) +
           ")\">" + y_label + "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::string points;
        for (auto [x, y] : series[s].points)
            points += num(xt(x)) + "," + num(yt(y)) + " ";
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.6\" points=\"" + points + "\"/>\n";
        double ly = kTop + 8 + 16 * static_cast<double>(s);
        svg += "<rect x=\"" + num(kWidth - kRight - 170) + "\" y=\"" + num(ly - 9) +
               "\" width=\"10\" height=\"10\" fill=\"" + color + "\"/>\n";
        svg += "<text x=\"" + num(kWidth - kRight - 155) + "\" y=\"" + num(ly) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + series[s].label +
               "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace fairorder
