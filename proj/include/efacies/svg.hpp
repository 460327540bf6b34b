#pragma once

#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "efacies/csv.hpp"

namespace efacies::svg {

inline std::string escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
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

inline std::string num(double v) { return format_sig(v, 6); }

/// Affine map from a data interval onto a pixel interval (either may be reversed).
struct LinearScale {
    double d0 = 0, d1 = 1;
    double r0 = 0, r1 = 1;

    double operator()(double v) const {
        if (d1 == d0) return (r0 + r1) / 2;
        return r0 + (v - d0) / (d1 - d0) * (r1 - r0);
    }
};

/// Roughly `target` round-numbered ticks covering [lo, hi].
inline std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
    std::vector<double> ticks;
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        ticks.push_back(lo);
        return ticks;
    }
    const double raw = (hi - lo) / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    const double step = (norm < 1.5 ? 1 : norm < 3 ? 2 : norm < 7 ? 5 : 10) * mag;
    for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
        ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
    }
    return ticks;
}

inline const std::vector<std::string>& palette() {
    // Cleanest facies first: sand yellows through to shale greys/greens.
    static const std::vector<std::string> colors{"#e8c547", "#d08c2f", "#7fa05a", "#3f6f5a", "#5b5b7a",
                                                 "#a05a5a", "#5a8fa0", "#8f5aa0", "#a0a05a", "#444444"};
    return colors;
}

inline const std::string& color(std::size_t i) { return palette()[i % palette().size()]; }

class Document {
  public:
    Document(double width, double height) : width_(width), height_(height) {}

    double width() const { return width_; }
    double height() const { return height_; }

    void open_group(std::string_view attrs = {}) {
        body_ << "<g";
        if (!attrs.empty()) body_ << ' ' << attrs;
        body_ << ">\n";
    }
    void close_group() { body_ << "</g>\n"; }

    void rect(double x, double y, double w, double h, std::string_view fill, std::string_view extra = {}) {
        body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w) << "\" height=\""
              << num(h) << "\" fill=\"" << fill << "\"";
        if (!extra.empty()) body_ << ' ' << extra;
        body_ << "/>\n";
    }

    void line(double x1, double y1, double x2, double y2, std::string_view stroke, double width = 1,
              std::string_view extra = {}) {
        body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2) << "\" y2=\""
              << num(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width) << "\"";
        if (!extra.empty()) body_ << ' ' << extra;
        body_ << "/>\n";
    }

    void circle(double cx, double cy, double r, std::string_view fill, double opacity = 1) {
        body_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r) << "\" fill=\""
              << fill << "\"";
        if (opacity < 1) body_ << " fill-opacity=\"" << num(opacity) << "\"";
        body_ << "/>\n";
    }

    /// Open polyline through (x, y) pairs; a NaN coordinate breaks the line.
    void polyline(const std::vector<double>& xs, const std::vector<double>& ys, std::string_view stroke,
                  double width = 1) {
        std::string d;
        bool pen = false;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (std::isnan(xs[i]) || std::isnan(ys[i])) {
                pen = false;
                continue;
            }
            d += (pen ? "L" : "M") + num(xs[i]) + "," + num(ys[i]) + " ";
            pen = true;
        }
        if (d.empty()) return;
        path(d, "none", stroke, width);
    }

    void path(std::string_view d, std::string_view fill, std::string_view stroke, double width = 1,
              std::string_view extra = {}) {
        body_ << "<path d=\"" << d << "\" fill=\"" << fill << "\" stroke=\"" << stroke << "\" stroke-width=\""
              << num(width) << "\"";
        if (!extra.empty()) body_ << ' ' << extra;
        body_ << "/>\n";
    }

    void text(double x, double y, std::string_view content, std::string_view extra = {}) {
        body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-family=\"sans-serif\" font-size=\"11\"";
        if (!extra.empty()) body_ << ' ' << extra;
        body_ << '>' << escape(content) << "</text>\n";
    }

    std::string str() const {
        std::ostringstream out;
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_) << "\" height=\"" << num(height_)
            << "\" viewBox=\"0 0 " << num(width_) << ' ' << num(height_) << "\">\n"
            << "<rect x=\"0\" y=\"0\" width=\"" << num(width_) << "\" height=\"" << num(height_)
            << "\" fill=\"white\"/>\n"
            << body_.str() << "</svg>\n";
        return out.str();
    }

  private:
    double width_;
    double height_;
    std::ostringstream body_;
};

/// Frame plus ticks for a plot area. Tick labels carry `class="<axis>-tick"`.
inline void axes(Document& doc, const LinearScale& sx, const LinearScale& sy, std::string_view x_label,
                 std::string_view y_label, std::string_view y_class = "y-tick") {
    const double left = std::min(sx.r0, sx.r1), right = std::max(sx.r0, sx.r1);
    const double top = std::min(sy.r0, sy.r1), bottom = std::max(sy.r0, sy.r1);
    doc.rect(left, top, right - left, bottom - top, "none", "stroke=\"#333\"");
    for (double t : nice_ticks(std::min(sx.d0, sx.d1), std::max(sx.d0, sx.d1))) {
        const double x = sx(t);
        doc.line(x, bottom, x, bottom + 4, "#333");
        doc.text(x, bottom + 16, format_sig(t, 4), "class=\"x-tick\" text-anchor=\"middle\"");
    }
    for (double t : nice_ticks(std::min(sy.d0, sy.d1), std::max(sy.d0, sy.d1))) {
        const double y = sy(t);
        doc.line(left - 4, y, left, y, "#333");
        doc.text(left - 6, y + 4, format_sig(t, 5), "class=\"" + std::string(y_class) + "\" text-anchor=\"end\"");
    }
    doc.text((left + right) / 2, bottom + 34, x_label, "text-anchor=\"middle\"");
    doc.text(left - 52, (top + bottom) / 2, y_label,
             "text-anchor=\"middle\" transform=\"rotate(-90 " + num(left - 52) + " " + num((top + bottom) / 2) + ")\"");
}

}  // namespace efacies::svg
