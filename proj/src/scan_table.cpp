#include "becfiber/scan_table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace becfiber {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<bool> row_failure_flags(const ScanTable& table) {
    std::vector<bool> failed(table.rows.size(), false);
    for (const auto& e : table.errors)
        if (e.row < failed.size()) failed[e.row] = true;
    return failed;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string to_csv(const ScanTable& table) {
    std::string out;
    for (const auto& [key, value] : table.metadata)
        out += "# " + key + " = " + value + "\n";
    for (const auto& e : table.errors)
        out += "# error row " + std::to_string(e.row) + ": " + e.message + "\n";

    const bool with_status = table.has_errors();
    const auto failed = row_failure_flags(table);

    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ",";
        out += table.columns[c];
    }
    if (with_status) out += ",status";
    out += "\n";

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ",";
            out += format_number(row[c]);
        }
        if (with_status) out += failed[r] ? ",1" : ",0";
        out += "\n";
    }
    return out;
}

std::string to_json(const ScanTable& table) {
    ordered_json j;
    ordered_json config = ordered_json::object();
    for (const auto& [key, value] : table.metadata) config[key] = value;
    j["config"] = config;
    j["columns"] = table.columns;

    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) {
        ordered_json jr = ordered_json::array();
        for (double v : row) {
            if (std::isnan(v))
                jr.push_back(nullptr);  // JSON has no NaN literal
            else
                jr.push_back(v);
        }
        rows.push_back(jr);
    }
    j["rows"] = rows;

    ordered_json errors = ordered_json::array();
    for (const auto& e : table.errors)
        errors.push_back({{"row", e.row}, {"message", e.message}});
    j["errors"] = errors;
    return j.dump(2) + "\n";
}

ScanTable from_json(const std::string& text) {
    const auto j = ordered_json::parse(text);
    ScanTable table;
    if (j.contains("config"))
        for (const auto& [key, value] : j.at("config").items())
            table.metadata.emplace_back(key, value.get<std::string>());
    table.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& jr : j.at("rows")) {
        std::vector<double> row;
        row.reserve(jr.size());
        for (const auto& v : jr)
            row.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                      : v.get<double>());
        table.rows.push_back(std::move(row));
    }
    if (j.contains("errors"))
        for (const auto& je : j.at("errors"))
            table.errors.push_back(
                {je.at("row").get<std::size_t>(), je.at("message").get<std::string>()});
    return table;
}

std::string to_svg(const ScanTable& table, const ChartOptions& options) {
    const int margin_left = 70, margin_right = 20, margin_top = 40, margin_bottom = 50;
    const double plot_w = options.width - margin_left - margin_right;
    const double plot_h = options.height - margin_top - margin_bottom;

    std::vector<std::pair<double, double>> points;
    for (const auto& row : table.rows) {
        if (options.x_column >= row.size() || options.y_column >= row.size()) continue;
        const double x = row[options.x_column], y = row[options.y_column];
        if (std::isnan(x) || std::isnan(y)) continue;
        points.emplace_back(x, y);
    }
    if (points.empty()) throw std::invalid_argument("to_svg: no plottable rows");

    double x_min = points.front().first, x_max = x_min;
    double y_min = points.front().second, y_max = y_min;
    for (const auto& [x, y] : points) {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
    }
    if (options.reference_line) {
        y_min = std::min(y_min, *options.reference_line);
        y_max = std::max(y_max, *options.reference_line);
    }
    if (x_max == x_min) x_max = x_min + 1.0;
    if (y_max == y_min) y_max = y_min + 1.0;
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    auto px = [&](double x) { return margin_left + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return margin_top + (y_max - y) / (y_max - y_min) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
           std::to_string(options.width) + "\" height=\"" + std::to_string(options.height) +
           "\" viewBox=\"0 0 " + std::to_string(options.width) + " " +
           std::to_string(options.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty())
        svg += "<text x=\"" + format_number(options.width / 2.0) +
               "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" + options.title +
               "</text>\n";

    // axes
    svg += "<line x1=\"" + format_number(px(x_min)) + "\" y1=\"" + format_number(py(y_min)) +
           "\" x2=\"" + format_number(px(x_max)) + "\" y2=\"" + format_number(py(y_min)) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + format_number(px(x_min)) + "\" y1=\"" + format_number(py(y_min)) +
           "\" x2=\"" + format_number(px(x_min)) + "\" y2=\"" + format_number(py(y_max)) +
           "\" stroke=\"black\"/>\n";

    const int n_ticks = 6;
    for (int i = 0; i < n_ticks; ++i) {
        const double fx = x_min + (x_max - x_min) * i / (n_ticks - 1);
        const double fy = y_min + (y_max - y_min) * i / (n_ticks - 1);
        svg += "<line x1=\"" + format_number(px(fx)) + "\" y1=\"" + format_number(py(y_min)) +
               "\" x2=\"" + format_number(px(fx)) + "\" y2=\"" +
               format_number(py(y_min) + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + format_number(px(fx)) + "\" y=\"" +
               format_number(py(y_min) + 20) + "\" text-anchor=\"middle\" font-size=\"11\">" +
               tick_label(fx) + "</text>\n";
        svg += "<line x1=\"" + format_number(px(x_min) - 5) + "\" y1=\"" +
               format_number(py(fy)) + "\" x2=\"" + format_number(px(x_min)) + "\" y2=\"" +
               format_number(py(fy)) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + format_number(px(x_min) - 8) + "\" y=\"" +
               format_number(py(fy) + 4) + "\" text-anchor=\"end\" font-size=\"11\">" +
               tick_label(fy) + "</text>\n";
    }
    svg += "<text x=\"" + format_number(margin_left + plot_w / 2.0) + "\" y=\"" +
           format_number(options.height - 10.0) +
           "\" text-anchor=\"middle\" font-size=\"13\">" + options.x_label + "</text>\n";
    svg += "<text x=\"16\" y=\"" + format_number(margin_top + plot_h / 2.0) +
           "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " +
           format_number(margin_top + plot_h / 2.0) + ")\">" + options.y_label + "</text>\n";

    if (options.reference_line) {
        const double ry = py(*options.reference_line);
        svg += "<line x1=\"" + format_number(px(x_min)) + "\" y1=\"" + format_number(ry) +
               "\" x2=\"" + format_number(px(x_max)) + "\" y2=\"" + format_number(ry) +
               "\" stroke=\"firebrick\" stroke-dasharray=\"7,5\"/>\n";
        if (!options.reference_label.empty())
            svg += "<text x=\"" + format_number(px(x_max) - 6) + "\" y=\"" +
                   format_number(ry - 6) +
                   "\" text-anchor=\"end\" font-size=\"12\" fill=\"firebrick\">" +
                   options.reference_label + "</text>\n";
    }

    svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : points)
        svg += format_number(px(x)) + "," + format_number(py(y)) + " ";
    svg += "\"/>\n</svg>\n";
    return svg;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed to write output file: " + path);
}

}  // namespace becfiber
