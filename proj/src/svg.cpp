#include "efnz/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "efnz/error.hpp"

namespace efnz {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    void expand(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    static Range of(const std::vector<const std::vector<double>*>& arrays) {
        Range r{HUGE_VAL, -HUGE_VAL};
        for (const auto* a : arrays) {
            for (double v : *a) r.expand(v);
        }
        if (!(r.lo < r.hi)) {
            r.lo -= 1.0;
            r.hi += 1.0;
        }
        return r;
    }
};

// Round outward to sensible tick bounds.
std::vector<double> ticks(const Range& r, int count) {
    double span = r.hi - r.lo;
    double raw = span / count;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (mag * m >= raw) {
            step = mag * m;
            break;
        }
    }
    std::vector<double> out;
    double first = std::ceil(r.lo / step) * step;
    for (double v = first; v <= r.hi + 1e-12 * span; v += step) out.push_back(v);
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
    out << content;
}

}  // namespace

void render_line_chart(const std::filesystem::path& path, const std::string& title,
                       const std::string& x_label, const std::string& y_label,
                       const std::vector<SvgSeries>& series) {
    const double width = 720, height = 440;
    const double left = 70, right = 30, top = 40, bottom = 55;
    const double pw = width - left - right, ph = height - top - bottom;

    std::vector<const std::vector<double>*> xs, ys;
    for (const auto& s : series) {
        xs.push_back(&s.x);
        ys.push_back(&s.y);
    }
    Range xr = Range::of(xs), yr = Range::of(ys);
    auto px = [&](double v) { return left + (v - xr.lo) / (xr.hi - xr.lo) * pw; };
    auto py = [&](double v) { return top + ph - (v - yr.lo) / (yr.hi - yr.lo) * ph; };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(width / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         title + "</text>\n";
    for (double tx : ticks(xr, 8)) {
        double x = px(tx);
        s += "<line x1=\"" + num(x) + "\" y1=\"" + num(top) + "\" x2=\"" + num(x) + "\" y2=\"" +
             num(top + ph) + "\" stroke=\"#dddddd\"/>\n";
        s += "<text x=\"" + num(x) + "\" y=\"" + num(top + ph + 16) +
             "\" text-anchor=\"middle\">" + num(tx) + "</text>\n";
    }
    for (double ty : ticks(yr, 6)) {
        double y = py(ty);
        s += "<line x1=\"" + num(left) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left + pw) +
             "\" y2=\"" + num(y) + "\" stroke=\"#dddddd\"/>\n";
        s += "<text x=\"" + num(left - 6) + "\" y=\"" + num(y + 4) +
             "\" text-anchor=\"end\">" + num(ty) + "</text>\n";
    }
    s += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(pw) +
         "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"#333333\"/>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& sr = series[k];
        std::string pts;
        for (std::size_t i = 0; i < sr.x.size(); ++i) {
            pts += num(px(sr.x[i])) + "," + num(py(sr.y[i])) + " ";
        }
        s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
             kPalette[k % 6] + "\" stroke-width=\"1.7\"/>\n";
        double ly = top + 14 + 16 * static_cast<double>(k);
        s += "<line x1=\"" + num(left + pw - 130) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
             num(left + pw - 110) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" +
             kPalette[k % 6] + "\" stroke-width=\"2\"/>\n";
        s += "<text x=\"" + num(left + pw - 104) + "\" y=\"" + num(ly) + "\">" + sr.label +
             "</text>\n";
    }
    s += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(height - 12) +
         "\" text-anchor=\"middle\">" + x_label + "</text>\n";
    s += "<text x=\"16\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num(top + ph / 2) + ")\">" + y_label + "</text>\n";
    s += "</svg>\n";
    write_file(path, s);
}

void render_histograms(const std::filesystem::path& path, const std::string& title,
                       const std::string& x_label,
                       const std::vector<SvgHistogram>& histograms) {
    const double width = 720, panel_h = 260;
    const double left = 70, right = 30, top = 40, bottom = 50;
    double height = top + panel_h * static_cast<double>(histograms.size()) + bottom;

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" +
         num(height) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(width / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         title + "</text>\n";

    for (std::size_t p = 0; p < histograms.size(); ++p) {
        const auto& h = histograms[p];
        if (h.bin_edges.size() != h.counts.size() + 1) {
            throw ConfigError("histogram needs bins+1 edges");
        }
        double py0 = top + panel_h * static_cast<double>(p);
        double ph = panel_h - 45;
        double pw = width - left - right;
        double peak = 1.0;
        for (double c : h.counts) peak = std::max(peak, c);
        double xlo = h.bin_edges.front(), xhi = h.bin_edges.back();
        auto px = [&](double v) { return left + (v - xlo) / (xhi - xlo) * pw; };
        for (std::size_t b = 0; b < h.counts.size(); ++b) {
            double x0 = px(h.bin_edges[b]);
            double x1 = px(h.bin_edges[b + 1]);
            double bh = h.counts[b] / peak * ph;
            s += "<rect x=\"" + num(x0 + 1) + "\" y=\"" + num(py0 + ph - bh) + "\" width=\"" +
                 num(x1 - x0 - 2) + "\" height=\"" + num(bh) + "\" fill=\"" +
                 kPalette[p % 6] + "\" fill-opacity=\"0.75\"/>\n";
        }
        s += "<rect x=\"" + num(left) + "\" y=\"" + num(py0) + "\" width=\"" + num(pw) +
             "\" height=\"" + num(ph) + "\" fill=\"none\" stroke=\"#333333\"/>\n";
        for (double tx : ticks(Range{xlo, xhi}, 9)) {
            s += "<text x=\"" + num(px(tx)) + "\" y=\"" + num(py0 + ph + 16) +
                 "\" text-anchor=\"middle\">" + num(tx) + "</text>\n";
        }
        s += "<text x=\"" + num(left + 8) + "\" y=\"" + num(py0 + 16) + "\">" + h.label +
             "</text>\n";
    }
    s += "<text x=\"" + num(left + (width - left - right) / 2) + "\" y=\"" + num(height - 14) +
         "\" text-anchor=\"middle\">" + x_label + "</text>\n";
    s += "</svg>\n";
    write_file(path, s);
}

}  // namespace efnz
