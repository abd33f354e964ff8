#ifndef CENTSEL_HARNESS_PLOT_HPP
#define CENTSEL_HARNESS_PLOT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "centsel/error.hpp"
#include "centsel/harness/csv.hpp"

namespace centsel::harness {

enum class PlotKind { Rates, Profile };

namespace svg {

inline const std::vector<std::string>& palette() {
    static const std::vector<std::string> p{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                            "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
    return p;
}

inline std::string escape(const std::string& s) {
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

inline std::string num(double x) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(2);
    s << x;
    return s.str();
}

inline std::string tick_label(double x) {
    std::ostringstream s;
    s << x;
    return s.str();
}

}  // namespace svg

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;  ///< sorted by x
};

/// Groups a results or rates CSV into rate-vs-m series.
inline std::vector<Series> rate_series(const CsvTable& t) {
    const bool per_trial = t.has_column("correct") && !t.has_column("rate");
    std::vector<std::string> keys;
    std::map<std::string, std::map<double, std::pair<double, double>>> acc;  // label -> m -> (sum, count)
    const std::size_t cm = t.column("m");
    const std::size_t cf = t.column("filter");
    const std::size_t cp = t.column("p");
    const std::size_t cv = t.column(per_trial ? "correct" : "rate");
    std::map<std::string, int> distinct_p;
    std::map<std::string, int> distinct_f;
    for (const auto& r : t.rows) {
        distinct_p[r[cp]] = 1;
        distinct_f[r[cf]] = 1;
    }
    for (const auto& r : t.rows) {
        std::string label;
        if (distinct_f.size() > 1 || distinct_p.size() == 1) label = r[cf];
        if (distinct_p.size() > 1) label += (label.empty() ? "" : ", ") + std::string("p=") + r[cp];
        if (!acc.contains(label)) keys.push_back(label);
        const double m = parse_double(r[cm]);
        if (!std::isfinite(m)) continue;
        auto& cell = acc[label][m];
        cell.first += parse_double(r[cv]);
        cell.second += 1.0;
    }
    std::vector<Series> out;
    for (const auto& key : keys) {
        Series s{key, {}};
        for (const auto& [m, c] : acc[key]) s.points.emplace_back(m, c.first / c.second);
        out.push_back(std::move(s));
    }
    return out;
}

/// Line chart of selection rate against m with a legend; empty axes for no data.
inline std::string render_rates_svg(const std::vector<Series>& series, const std::string& title = "Selection rate") {
    constexpr double W = 640, H = 420, L = 70, R = 170, T = 40, B = 60;
    double xmin = 0, xmax = 1;
    bool any = false;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (!any) {
                xmin = xmax = x;
                any = true;
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1;
    const double pw = W - L - R;
    const double ph = H - T - B;
    auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * pw; };
    auto sy = [&](double y) { return T + (1.0 - y) * ph; };
    using svg::num;

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << ' ' << H << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << num(L + pw / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"16\">" << svg::escape(title) << "</text>\n";
    o << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
    o << "<line x1=\"" << num(L) << "\" y1=\"" << num(T + ph) << "\" x2=\"" << num(L + pw) << "\" y2=\"" << num(T + ph)
      << "\"/>\n";
    o << "<line x1=\"" << num(L) << "\" y1=\"" << num(T) << "\" x2=\"" << num(L) << "\" y2=\"" << num(T + ph) << "\"/>\n";
    o << "</g>\n";
    o << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double y = i / 5.0;
        o << "<line x1=\"" << num(L - 4) << "\" y1=\"" << num(sy(y)) << "\" x2=\"" << num(L) << "\" y2=\"" << num(sy(y))
          << "\" stroke=\"black\"/>";
        o << "<text x=\"" << num(L - 8) << "\" y=\"" << num(sy(y) + 4) << "\" text-anchor=\"end\">"
          << svg::tick_label(y) << "</text>\n";
    }
    if (any) {
        for (int i = 0; i <= 4; ++i) {
            const double x = xmin + (xmax - xmin) * i / 4.0;
            o << "<line x1=\"" << num(sx(x)) << "\" y1=\"" << num(T + ph) << "\" x2=\"" << num(sx(x)) << "\" y2=\""
              << num(T + ph + 4) << "\" stroke=\"black\"/>";
            o << "<text x=\"" << num(sx(x)) << "\" y=\"" << num(T + ph + 18) << "\" text-anchor=\"middle\">"
              << svg::tick_label(std::round(x)) << "</text>\n";
        }
    }
    o << "</g>\n";
    o << "<text x=\"" << num(L + pw / 2) << "\" y=\"" << num(H - 15)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">m (samples)</text>\n";
    o << "<text x=\"18\" y=\"" << num(T + ph / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\" transform=\"rotate(-90 18 " << num(T + ph / 2) << ")\">rate of optimal selection</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const std::string& color = svg::palette()[i % svg::palette().size()];
        o << "<g class=\"series\" data-label=\"" << svg::escape(s.label) << "\">\n";
        if (!s.points.empty()) {
            o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
            for (std::size_t j = 0; j < s.points.size(); ++j) {
                if (j) o << ' ';
                o << num(sx(s.points[j].first)) << ',' << num(sy(s.points[j].second));
            }
            o << "\"/>\n";
            for (const auto& [x, y] : s.points) {
                o << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y)) << "\" r=\"3\" fill=\"" << color
                  << "\"/>\n";
            }
        }
        o << "</g>\n";
        const double ly = T + 10 + 20.0 * static_cast<double>(i);
        o << "<g class=\"legend\"><line x1=\"" << num(W - R + 15) << "\" y1=\"" << num(ly) << "\" x2=\""
          << num(W - R + 40) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
        o << "<text x=\"" << num(W - R + 46) << "\" y=\"" << num(ly + 4)
          << "\" font-family=\"sans-serif\" font-size=\"12\">" << svg::escape(s.label) << "</text></g>\n";
    }
    o << "</svg>\n";
    return o.str();
}

struct ProfilePanel {
    std::string label;
    std::vector<double> values;  ///< centrality by node
    double reference = 0.0;
};

inline std::vector<ProfilePanel> profile_panels(const CsvTable& t) {
    std::vector<ProfilePanel> out;
    const std::size_t cp = t.column("p");
    const std::size_t cn = t.column("node");
    const std::size_t cc = t.column("centrality");
    const std::size_t cr = t.column("reference");
    std::map<std::string, std::size_t> index;
    for (const auto& r : t.rows) {
        auto it = index.find(r[cp]);
        if (it == index.end()) {
            it = index.emplace(r[cp], out.size()).first;
            out.push_back({"p=" + r[cp], {}, parse_double(r[cr])});
        }
        auto& panel = out[it->second];
        const auto node = static_cast<std::size_t>(parse_double(r[cn]));
        if (panel.values.size() <= node) panel.values.resize(node + 1, 0.0);
        panel.values[node] = parse_double(r[cc]);
    }
    return out;
}

/**
 * Circular centrality profiles: nodes sit on a circle in index order and
 * each node's centrality is drawn as a radial offset. The dashed red circle
 * is the constant 1/sqrt(n) reference.
 */
inline std::string render_profile_svg(const std::vector<ProfilePanel>& panels) {
    constexpr double P = 260;  // panel size
    constexpr double base = 60;
    constexpr double span = 60;
    const double width = std::max<double>(P, P * static_cast<double>(panels.size()));
    double vmax = 0.0;
    for (const auto& p : panels) {
        for (double v : p.values) vmax = std::max(vmax, v);
        vmax = std::max(vmax, p.reference);
    }
    if (vmax <= 0.0) vmax = 1.0;
    using svg::num;
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << P + 30 << "\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const auto& p = panels[i];
        const double cx = P * (static_cast<double>(i) + 0.5);
        const double cy = P / 2 + 20;
        o << "<g class=\"panel\" data-label=\"" << svg::escape(p.label) << "\">\n";
        o << "<text x=\"" << num(cx) << "\" y=\"16\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          << "font-size=\"13\">" << svg::escape(p.label) << "</text>\n";
        o << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(base)
          << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
        o << "<circle class=\"reference\" cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\""
          << num(base + span * p.reference / vmax) << "\" fill=\"none\" stroke=\"red\" stroke-dasharray=\"4 3\"/>\n";
        if (!p.values.empty()) {
            o << "<polygon fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" points=\"";
            const double nn = static_cast<double>(p.values.size());
            for (std::size_t v = 0; v < p.values.size(); ++v) {
                const double theta = 2.0 * std::numbers::pi * static_cast<double>(v) / nn;
                const double rad = base + span * p.values[v] / vmax;
                if (v) o << ' ';
                o << num(cx + rad * std::cos(theta)) << ',' << num(cy + rad * std::sin(theta));
            }
            o << "\"/>\n";
        }
        o << "</g>\n";
    }
    o << "</svg>\n";
    return o.str();
}

inline std::string render_plot(const CsvTable& t, PlotKind kind) {
    return kind == PlotKind::Rates ? render_rates_svg(rate_series(t)) : render_profile_svg(profile_panels(t));
}

inline void save_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
    out << text;
    if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

}  // namespace centsel::harness

#endif  // CENTSEL_HARNESS_PLOT_HPP
