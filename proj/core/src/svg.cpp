#include "ltswave/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace ltswave {

namespace {

constexpr double width = 720.0, height = 480.0;
constexpr double ml = 80.0, mr = 30.0, mt = 40.0, mb = 60.0;

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Axis {
    double lo = 0.0, hi = 1.0;
    bool log = false;

    double to_unit(double v) const {
        double a = log ? std::log10(lo) : lo;
        double b = log ? std::log10(hi) : hi;
        double x = log ? std::log10(v) : v;
        return (x - a) / (b - a);
    }

    std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            int e0 = int(std::floor(std::log10(lo)));
            int e1 = int(std::ceil(std::log10(hi)));
            for (int e = e0; e <= e1; ++e) {
                double v = std::pow(10.0, e);
                if (v >= lo * 0.999 && v <= hi * 1.001) out.push_back(v);
            }
            if (out.size() < 2) {
                out = {lo, hi};
            }
        } else {
            double span = hi - lo;
            double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
            if (span / step > 8.0) step *= 2.0;
            if (span / step > 8.0) step *= 2.5;
            double v = std::ceil(lo / step) * step;
            for (; v <= hi + 1e-12 * span; v += step) out.push_back(v);
        }
        return out;
    }
};

Axis fit_axis(const PlotSpec& spec, bool is_x) {
    Axis ax;
    ax.log = is_x ? spec.log_x : spec.log_y;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const PlotSeries& s : spec.series) {
        const auto& vals = is_x ? s.x : s.y;
        for (double v : vals) {
            if (ax.log && !(v > 0.0)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (!(lo <= hi)) {
        lo = ax.log ? 0.1 : 0.0;
        hi = 1.0;
    }
    if (lo == hi) {
        lo = ax.log ? lo / 2.0 : lo - 1.0;
        hi = ax.log ? hi * 2.0 : hi + 1.0;
    }
    if (ax.log) {
        lo /= 1.2;
        hi *= 1.2;
    } else {
        double pad = 0.05 * (hi - lo);
        lo -= pad;
        hi += pad;
    }
    ax.lo = lo;
    ax.hi = hi;
    return ax;
}

}  // namespace

void write_svg_plot(const std::string& path, const PlotSpec& spec) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open plot file: " + path);

    Axis xa = fit_axis(spec, true);
    Axis ya = fit_axis(spec, false);
    double pw = width - ml - mr, ph = height - mt - mb;
    auto px = [&](double v) { return ml + xa.to_unit(v) * pw; };
    auto py = [&](double v) { return mt + (1.0 - ya.to_unit(v)) * ph; };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (double v : xa.ticks()) {
        double x = px(v);
        out << "<line x1=\"" << fmt(x) << "\" y1=\"" << mt << "\" x2=\""
            << fmt(x) << "\" y2=\"" << mt + ph
            << "\" stroke=\"#dddddd\"/>\n<text x=\"" << fmt(x) << "\" y=\""
            << mt + ph + 20 << "\" font-size=\"12\" text-anchor=\"middle\">"
            << fmt(v) << "</text>\n";
    }
    for (double v : ya.ticks()) {
        double y = py(v);
        out << "<line x1=\"" << ml << "\" y1=\"" << fmt(y) << "\" x2=\""
            << ml + pw << "\" y2=\"" << fmt(y)
            << "\" stroke=\"#dddddd\"/>\n<text x=\"" << ml - 8 << "\" y=\""
            << fmt(y + 4) << "\" font-size=\"12\" text-anchor=\"end\">"
            << fmt(v) << "</text>\n";
    }
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

    int color = 0;
    for (const PlotSeries& s : spec.series) {
        const char* stroke = palette[color % 6];
        out << "<polyline fill=\"none\" stroke=\"" << stroke
            << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if ((xa.log && !(s.x[i] > 0)) || (ya.log && !(s.y[i] > 0)))
                continue;
            out << fmt(px(s.x[i])) << "," << fmt(py(s.y[i])) << " ";
        }
        out << "\"/>\n";
        if (spec.markers) {
            for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
                if ((xa.log && !(s.x[i] > 0)) || (ya.log && !(s.y[i] > 0)))
                    continue;
                out << "<circle cx=\"" << fmt(px(s.x[i])) << "\" cy=\""
                    << fmt(py(s.y[i])) << "\" r=\"3\" fill=\"" << stroke
                    << "\"/>\n";
            }
        }
        if (!s.label.empty()) {
            double lx = ml + pw - 150.0, ly = mt + 18.0 + 18.0 * color;
            out << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly - 4)
                << "\" x2=\"" << fmt(lx + 24) << "\" y2=\"" << fmt(ly - 4)
                << "\" stroke=\"" << stroke
                << "\" stroke-width=\"2\"/>\n<text x=\"" << fmt(lx + 30)
                << "\" y=\"" << fmt(ly) << "\" font-size=\"12\">" << s.label
                << "</text>\n";
        }
        ++color;
    }

    out << "<text x=\"" << width / 2 << "\" y=\"22\" font-size=\"15\" "
        << "text-anchor=\"middle\">" << spec.title << "</text>\n"
        << "<text x=\"" << width / 2 << "\" y=\"" << height - 14
        << "\" font-size=\"13\" text-anchor=\"middle\">" << spec.x_label
        << "</text>\n"
        << "<text x=\"18\" y=\"" << height / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 "
        << "18 " << height / 2 << ")\">" << spec.y_label << "</text>\n"
        << "</svg>\n";
    if (!out.good()) throw std::runtime_error("failed writing plot: " + path);
}

}  // namespace ltswave
