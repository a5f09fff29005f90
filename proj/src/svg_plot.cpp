#include "swts/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace swts {

namespace {

constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2",
                                   "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    bool log = false;

    [[nodiscard]] double map(double v) const {
        if (log) return (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo));
        return (v - lo) / (hi - lo);
    }

    [[nodiscard]] std::vector<double> ticks() const {
        std::vector<double> out;
        if (log) {
            for (double d = std::floor(std::log10(lo)); d <= std::ceil(std::log10(hi)); d += 1.0) {
                const double v = std::pow(10.0, d);
                if (v >= lo * (1 - 1e-12) && v <= hi * (1 + 1e-12)) out.push_back(v);
            }
            return out;
        }
        const double raw = (hi - lo) / 5.0;
        const double mag = std::pow(10.0, std::floor(std::log10(raw)));
        double step = mag;
        for (double m : {1.0, 2.0, 5.0, 10.0}) {
            step = m * mag;
            if (step >= raw) break;
        }
        for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) {
            out.push_back(std::fabs(v) < 1e-12 * step ? 0.0 : v);
        }
        return out;
    }
};

Axis fit_axis(const std::vector<double>& values, bool log) {
    Axis a;
    a.log = log;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double v : values) {
        if (!std::isfinite(v) || (log && v <= 0.0)) continue;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (!std::isfinite(lo)) {
        lo = log ? 1.0 : 0.0;
        hi = log ? 10.0 : 1.0;
    }
    if (log) {
        lo = std::pow(10.0, std::floor(std::log10(lo)));
        hi = std::pow(10.0, std::ceil(std::log10(hi)));
        if (hi <= lo) hi = lo * 10.0;
    } else {
        if (hi <= lo) {
            hi = lo + 1.0;
        } else {
            const double pad = 0.05 * (hi - lo);
            hi += pad;
            if (lo > 0.0 && lo - pad < 0.0) {
                lo = 0.0;
            } else if (lo != 0.0) {
                lo -= pad;
            }
        }
    }
    a.lo = lo;
    a.hi = hi;
    return a;
}

}  // namespace

std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series) {
    const double left = 80;
    const double right = 20;
    const double top = 40;
    const double bottom = 60;
    const double pw = spec.width - left - right;
    const double ph = spec.height - top - bottom;

    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& s : series) {
        xs.insert(xs.end(), s.x.begin(), s.x.end());
        for (std::size_t k = 0; k < s.y.size(); ++k) {
            ys.push_back(s.y[k]);
            if (s.band) {
                ys.push_back(s.y[k] + (*s.band)[k]);
                ys.push_back(s.y[k] - (*s.band)[k]);
            }
        }
    }
    const Axis ax = fit_axis(xs, spec.log_x);
    const Axis ay = fit_axis(ys, spec.log_y);
    auto px = [&](double x) { return left + ax.map(x) * pw; };
    auto py = [&](double y) {
        if (spec.log_y && y <= 0.0) y = ay.lo;
        return top + (1.0 - ay.map(y)) * ph;
    };
    auto usable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!spec.log_x || x > 0.0) && (!spec.log_y || y > 0.0);
    };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(left + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(spec.title) << "</text>\n";

    for (double t : ax.ticks()) {
        const double x = px(t);
        o << "<line x1=\"" << num(x) << "\" y1=\"" << num(top) << "\" x2=\"" << num(x) << "\" y2=\"" << num(top + ph)
          << "\" stroke=\"#e6e6e6\"/>\n";
        o << "<text x=\"" << num(x) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">"
          << tick_label(t) << "</text>\n";
    }
    for (double t : ay.ticks()) {
        const double y = py(t);
        o << "<line x1=\"" << num(left) << "\" y1=\"" << num(y) << "\" x2=\"" << num(left + pw) << "\" y2=\""
          << num(y) << "\" stroke=\"#e6e6e6\"/>\n";
        o << "<text x=\"" << num(left - 6) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << tick_label(t)
          << "</text>\n";
    }
    o << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    o << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(spec.height - 16.0)
      << "\" text-anchor=\"middle\">" << escape(spec.x_label) << "</text>\n";
    o << "<text transform=\"translate(18," << num(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(spec.y_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const PlotSeries& s = series[si];
        const char* color = palette[si % std::size(palette)];
        if (s.band) {
            std::ostringstream upper;
            std::ostringstream lower;
            std::vector<std::string> lower_pts;
            for (std::size_t k = 0; k < s.x.size(); ++k) {
                if (!usable(s.x[k], s.y[k])) continue;
                upper << num(px(s.x[k])) << ',' << num(py(s.y[k] + (*s.band)[k])) << ' ';
                lower_pts.push_back(num(px(s.x[k])) + "," + num(py(s.y[k] - (*s.band)[k])));
            }
            std::reverse(lower_pts.begin(), lower_pts.end());
            for (const auto& p : lower_pts) lower << p << ' ';
            o << "<polygon points=\"" << upper.str() << lower.str() << "\" fill=\"" << color
              << "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
        }
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            if (usable(s.x[k], s.y[k])) o << num(px(s.x[k])) << ',' << num(py(s.y[k])) << ' ';
        }
        o << "\"/>\n";
        if (s.markers) {
            for (std::size_t k = 0; k < s.x.size(); ++k) {
                if (!usable(s.x[k], s.y[k])) continue;
                o << "<circle cx=\"" << num(px(s.x[k])) << "\" cy=\"" << num(py(s.y[k])) << "\" r=\"3\" fill=\""
                  << color << "\"/>\n";
            }
        }
        const double ly = top + 14 + 16.0 * static_cast<double>(si);
        o << "<line x1=\"" << num(left + 10) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(left + 30)
          << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << num(left + 36) << "\" y=\"" << num(ly) << "\">" << escape(s.label) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

}  // namespace swts
