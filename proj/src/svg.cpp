#include "covlab/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace covlab {

namespace {

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
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

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

const char* strategy_color(Strategy s) {
    switch (s) {
        case Strategy::bidding: return "#9467bd";
        case Strategy::dss: return "#8c564b";
        case Strategy::ga: return "#1f77b4";
        case Strategy::gaussian: return "#d62728";
        case Strategy::uniform: return "#2ca02c";
    }
    return "#000000";
}

void write_file(const std::string& content, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open SVG for writing: " + path.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("failed writing SVG: " + path.string());
}

}  // namespace

std::string plot_svg(const SweepResult& result, const PlotOptions& options) {
    const auto means = strategy_means(result);
    if (means.empty()) throw std::invalid_argument("plot: sweep result holds no rows");

    int max_n = 0;
    for (const auto& [s, by_n] : means)
        for (const auto& [n, mean] : by_n) max_n = std::max(max_n, n);
    for (const auto& [label, points] : options.references)
        for (const auto& [n, pct] : points) max_n = std::max(max_n, n);

    const double left = 70.0, right = 24.0, top = 44.0, bottom = 56.0;
    const double w = options.width, h = options.height;
    const double pw = w - left - right;
    const double ph = h - top - bottom;
    auto px = [&](double n) {
        return max_n > 0 ? left + n / max_n * pw : left + pw / 2.0;
    };
    auto py = [&](double pct) { return top + (1.0 - pct / 100.0) * ph; };

    std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + num(w) + "\" height=\"" + num(h) +
           "\" fill=\"#ffffff\"/>\n";
    svg += "<text x=\"" + num(w / 2.0) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"monospace\" font-size=\"15\">" +
           xml_escape(options.title) + "</text>\n";

    // y grid and labels, 0..100% in steps of 20
    for (int pct = 0; pct <= 100; pct += 20) {
        const double y = py(pct);
        svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(y) + "\" x2=\"" + num(left + pw) +
               "\" y2=\"" + num(y) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + num(left - 8.0) + "\" y=\"" + num(y + 4.0) +
               "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">" +
               std::to_string(pct) + "</text>\n";
    }
    // x ticks, five intervals
    for (int t = 0; t <= 5; ++t) {
        const double n = max_n * t / 5.0;
        const double x = px(n);
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(x) +
               "\" y2=\"" + num(top + ph + 5.0) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        char label[32];
        std::snprintf(label, sizeof label, "%.0f", n);
        svg += "<text x=\"" + num(x) + "\" y=\"" + num(top + ph + 20.0) +
               "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\">" + label +
               "</text>\n";
    }
    // axes
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) +
           "\" y2=\"" + num(top + ph) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(left + pw) +
           "\" y2=\"" + num(top + ph) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + num(left + pw / 2.0) + "\" y=\"" + num(h - 14.0) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">nodes</text>\n";
    svg += "<text x=\"18\" y=\"" + num(top + ph / 2.0) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\" "
           "transform=\"rotate(-90 18 " +
           num(top + ph / 2.0) + ")\">coverage (%)</text>\n";

    double legend_y = top + 14.0;
    const double legend_x = left + 12.0;
    auto legend_entry = [&](const std::string& label, const std::string& color, bool hollow) {
        if (hollow)
            svg += "<circle cx=\"" + num(legend_x + 9.0) + "\" cy=\"" + num(legend_y - 4.0) +
                   "\" r=\"4\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
        else
            svg += "<line x1=\"" + num(legend_x) + "\" y1=\"" + num(legend_y - 4.0) + "\" x2=\"" +
                   num(legend_x + 18.0) + "\" y2=\"" + num(legend_y - 4.0) + "\" stroke=\"" +
                   color + "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num(legend_x + 24.0) + "\" y=\"" + num(legend_y) +
               "\" font-family=\"monospace\" font-size=\"12\">" + xml_escape(label) +
               "</text>\n";
        legend_y += 16.0;
    };

    for (const auto& [s, by_n] : means) {
        const std::string color = strategy_color(s);
        std::string points;
        for (const auto& [n, mean] : by_n) {
            if (!points.empty()) points += ' ';
            points += num(px(n)) + "," + num(py(mean * 100.0));
        }
        svg += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" + color +
               "\" stroke-width=\"2\"/>\n";
        for (const auto& [n, mean] : by_n)
            svg += "<circle cx=\"" + num(px(n)) + "\" cy=\"" + num(py(mean * 100.0)) +
                   "\" r=\"3\" fill=\"" + color + "\"/>\n";
        legend_entry(to_string(s), color, false);
    }

    const char* reference_grays[] = {"#333333", "#777777", "#aaaaaa"};
    std::size_t gray = 0;
    for (const auto& [label, points] : options.references) {
        const std::string color = reference_grays[gray % 3];
        ++gray;
        for (const auto& [n, pct] : points)
            svg += "<circle cx=\"" + num(px(n)) + "\" cy=\"" + num(py(pct)) +
                   "\" r=\"4\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
        legend_entry(label, color, true);
    }

    svg += "</svg>\n";
    return svg;
}

void emit_plot(const SweepResult& result, const std::filesystem::path& path,
               const PlotOptions& options) {
    write_file(plot_svg(result, options), path);
}

std::string snapshot_svg(const Deployment& dep, const SnapshotOptions& options) {
    dep.field.validate();
    if (!(options.scale > 0.0)) throw std::invalid_argument("snapshot: scale must be positive");

    double max_r = 0.0;
    for (const Sensor& s : dep.sensors) max_r = std::max(max_r, s.sensing_radius);
    const double margin = max_r + 2.0;
    const double scale = options.scale;
    const double w = (dep.field.width + 2.0 * margin) * scale;
    const double h = (dep.field.height + 2.0 * margin) * scale;
    auto sx = [&](double x) { return (margin + x) * scale; };
    auto sy = [&](double y) { return (margin + dep.field.height - y) * scale; };

    std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + num(w) + "\" height=\"" + num(h) +
           "\" fill=\"#ffffff\"/>\n";
    svg += "<rect x=\"" + num(sx(0.0)) + "\" y=\"" + num(sy(dep.field.height)) + "\" width=\"" +
           num(dep.field.width * scale) + "\" height=\"" + num(dep.field.height * scale) +
           "\" fill=\"#fafafa\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    if (options.draw_subareas && !dep.sensors.empty()) {
        const SubareaGrid grid = partition(dep.field, static_cast<int>(dep.sensors.size()),
                                           options.target_per_subarea);
        for (const Rect& cell : grid.cells)
            svg += "<rect x=\"" + num(sx(cell.x0)) + "\" y=\"" + num(sy(cell.y1)) +
                   "\" width=\"" + num(cell.width() * scale) + "\" height=\"" +
                   num(cell.height() * scale) +
                   "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"0.8\"/>\n";
    }

    for (const Sensor& s : dep.sensors) {
        svg += "<circle cx=\"" + num(sx(s.pos.x)) + "\" cy=\"" + num(sy(s.pos.y)) + "\" r=\"" +
               num(s.sensing_radius * scale) +
               "\" fill=\"#1f77b4\" fill-opacity=\"0.18\" stroke=\"#1f77b4\" "
               "stroke-width=\"1\"/>\n";
        svg += "<circle cx=\"" + num(sx(s.pos.x)) + "\" cy=\"" + num(sy(s.pos.y)) +
               "\" r=\"2\" fill=\"#1f77b4\"/>\n";
    }

    svg += "</svg>\n";
    return svg;
}

void deployment_snapshot(const Deployment& dep, const std::filesystem::path& path,
                         const SnapshotOptions& options) {
    write_file(snapshot_svg(dep, options), path);
}

}  // namespace covlab
