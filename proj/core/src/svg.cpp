#include "cavgate/svg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "cavgate/csv.hpp"
#include "cavgate/errors.hpp"

namespace cavgate {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 540;
constexpr int kMarginL = 70, kMarginR = 90, kMarginT = 40, kMarginB = 50;

struct Rgb {
    double r, g, b;
};

// Viridis-like perceptual ramp.
const Rgb kRamp[5] = {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}};

std::string color_at(double t) {
    t = std::clamp(t, 0.0, 1.0);
    const double x = t * 4.0;
    const int i = std::min(3, static_cast<int>(x));
    const double f = x - i;
    const auto mix = [&](double a, double b) { return a + (b - a) * f; };
    std::ostringstream ss;
    ss << "rgb(" << static_cast<int>(mix(kRamp[i].r, kRamp[i + 1].r)) << ','
       << static_cast<int>(mix(kRamp[i].g, kRamp[i + 1].g)) << ','
       << static_cast<int>(mix(kRamp[i].b, kRamp[i + 1].b)) << ')';
    return ss.str();
}

double axis_pos(double v, double lo, double hi, bool log) {
    if (log) return (std::log(v) - std::log(lo)) / (std::log(hi) - std::log(lo));
    return (v - lo) / (hi - lo);
}

int require_column(const CsvTable& t, const std::string& name) {
    const int c = t.column(name);
    if (c < 0) throw Error("CSV has no column '" + name + "'");
    return c;
}

std::string header(const std::string& title) {
    std::ostringstream ss;
    ss << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
       << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";
    return ss.str();
}

std::string axis_labels(const std::string& xl, const std::string& yl, double x0, double x1,
                        double y0, double y1) {
    std::ostringstream ss;
    ss << "<text x=\"" << (kMarginL + (kWidth - kMarginL - kMarginR) / 2) << "\" y=\""
       << kHeight - 12 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       << "font-size=\"13\">" << xl << "</text>\n"
       << "<text x=\"18\" y=\"" << (kMarginT + (kHeight - kMarginT - kMarginB) / 2)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
       << "transform=\"rotate(-90 18 " << (kMarginT + (kHeight - kMarginT - kMarginB) / 2)
       << ")\">" << yl << "</text>\n";
    const auto tick = [&](double px, double py, double v, bool xaxis) {
        ss << "<text x=\"" << px << "\" y=\"" << py << "\" text-anchor=\""
           << (xaxis ? "middle" : "end") << "\" font-family=\"sans-serif\" font-size=\"11\">"
           << format_g15(v).substr(0, 9) << "</text>\n";
    };
    tick(kMarginL, kHeight - kMarginB + 16, x0, true);
    tick(kWidth - kMarginR, kHeight - kMarginB + 16, x1, true);
    tick(kMarginL - 6, kHeight - kMarginB, y0, false);
    tick(kMarginL - 6, kMarginT + 10, y1, false);
    return ss.str();
}

} // namespace

std::string svg_heatmap_from_csv(const std::string& csv_text, const std::string& x_column,
                                 const std::string& y_column, const std::string& value_column,
                                 bool log_x, bool log_y, const std::string& title) {
    const CsvTable t = CsvTable::parse(csv_text);
    const int cx = require_column(t, x_column);
    const int cy = require_column(t, y_column);
    const int cv = require_column(t, value_column);

    std::vector<double> xs, ys;
    for (const auto& r : t.rows) {
        xs.push_back(r[cx]);
        ys.push_back(r[cy]);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    if (xs.empty() || ys.empty()) throw Error("heatmap needs a non-empty table");

    double vmin = t.rows.front()[cv], vmax = vmin;
    for (const auto& r : t.rows) {
        vmin = std::min(vmin, r[cv]);
        vmax = std::max(vmax, r[cv]);
    }
    if (vmax == vmin) vmax = vmin + 1.0;

    std::map<double, int> xi, yi;
    for (std::size_t i = 0; i < xs.size(); ++i) xi[xs[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < ys.size(); ++i) yi[ys[i]] = static_cast<int>(i);

    const double pw = kWidth - kMarginL - kMarginR;
    const double ph = kHeight - kMarginT - kMarginB;
    const double cw = pw / static_cast<double>(xs.size());
    const double ch = ph / static_cast<double>(ys.size());

    std::ostringstream ss;
    ss << header(title);
    for (const auto& r : t.rows) {
        const int ix = xi[r[cx]];
        const int iy = yi[r[cy]];
        const double px = kMarginL + cw * ix;
        const double py = kMarginT + ph - ch * (iy + 1);
        ss << "<rect x=\"" << px << "\" y=\"" << py << "\" width=\"" << cw + 0.5
           << "\" height=\"" << ch + 0.5 << "\" fill=\""
           << color_at((r[cv] - vmin) / (vmax - vmin)) << "\"/>\n";
    }
    // color bar
    for (int i = 0; i < 100; ++i) {
        const double py = kMarginT + ph * (1.0 - (i + 1) / 100.0);
        ss << "<rect x=\"" << kWidth - kMarginR + 24 << "\" y=\"" << py << "\" width=\"16\""
           << " height=\"" << ph / 100.0 + 0.5 << "\" fill=\"" << color_at(i / 99.0) << "\"/>\n";
    }
    ss << "<text x=\"" << kWidth - kMarginR + 44 << "\" y=\"" << kMarginT + 10
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << format_g15(vmax).substr(0, 8)
       << "</text>\n"
       << "<text x=\"" << kWidth - kMarginR + 44 << "\" y=\"" << kMarginT + ph
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << format_g15(vmin).substr(0, 8)
       << "</text>\n";
    ss << axis_labels(x_column, y_column, xs.front(), xs.back(), ys.front(), ys.back());
    (void)log_x;
    (void)log_y;
    ss << "</svg>\n";
    return ss.str();
}

std::string svg_lineplot_from_csv(const std::string& csv_text, const std::string& x_column,
                                  const std::vector<std::string>& y_columns, bool log_x,
                                  bool log_y, const std::string& title) {
    const CsvTable t = CsvTable::parse(csv_text);
    const int cx = require_column(t, x_column);
    std::vector<int> cys;
    for (const auto& n : y_columns) cys.push_back(require_column(t, n));
    if (t.rows.empty()) throw Error("line plot needs a non-empty table");

    double x0 = t.rows.front()[cx], x1 = x0;
    double y0 = t.rows.front()[cys[0]], y1 = y0;
    for (const auto& r : t.rows) {
        x0 = std::min(x0, r[cx]);
        x1 = std::max(x1, r[cx]);
        for (int c : cys) {
            y0 = std::min(y0, r[c]);
            y1 = std::max(y1, r[c]);
        }
    }
    if (x1 == x0) x1 = x0 + 1.0;
    if (y1 == y0) y1 = y0 + 1.0;

    const double pw = kWidth - kMarginL - kMarginR;
    const double ph = kHeight - kMarginT - kMarginB;
    const char* palette[4] = {"#c22", "#26c", "#181", "#b60"};

    std::ostringstream ss;
    ss << header(title);
    ss << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << pw
       << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#999\"/>\n";
    for (std::size_t s = 0; s < cys.size(); ++s) {
        ss << "<polyline fill=\"none\" stroke=\"" << palette[s % 4]
           << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& r : t.rows) {
            const double fx = axis_pos(r[cx], x0, x1, log_x);
            const double fy = axis_pos(r[cys[s]], y0, y1, log_y);
            ss << kMarginL + fx * pw << ',' << kMarginT + (1.0 - fy) * ph << ' ';
        }
        ss << "\"/>\n";
        ss << "<text x=\"" << kWidth - kMarginR + 8 << "\" y=\"" << kMarginT + 16 + 16 * s
           << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"" << palette[s % 4] << "\">"
           << y_columns[s] << "</text>\n";
    }
    ss << axis_labels(x_column, "", x0, x1, y0, y1);
    ss << "</svg>\n";
    return ss.str();
}

} // namespace cavgate
