// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#include "stochwave/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>

#include "stochwave/errors.hpp"

namespace stochwave {
namespace {

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c",
                                                 "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string short_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

}  // namespace

std::string format_number(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string StudyReport::csv_header() const
{
    std::string h;
    for (const auto& p : param_names)
        h += p + ",";
    if (has_metric)
        h += "metric,";
    h += "estimate,std_error,n_paths";
    return h;
}

void write_csv(std::ostream& os, const StudyReport& report)
{
    os << report.csv_header() << '\n';
    for (const auto& row : report.rows)
    {
        for (double p : row.params)
            os << format_number(p) << ',';
        if (report.has_metric)
            os << row.metric << ',';
        os << format_number(row.estimate) << ',' << format_number(row.std_error) << ','
           << row.n_paths << '\n';
    }
}

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace)
{
    os << "t,energy,lyapunov,l2_u,h1_u,l2_v,pairing_running\n";
    for (const auto& r : trace)
    {
        os << format_number(r.t) << ',' << format_number(r.energy) << ','
           << format_number(r.lyapunov) << ',' << format_number(r.l2_u) << ','
           << format_number(r.h1_u) << ',' << format_number(r.l2_v) << ','
           << format_number(r.pairing_running) << '\n';
    }
}

void write_svg(std::ostream& os, const PlotSpec& plot)
{
    constexpr double width = 640, height = 420;
    constexpr double left = 70, right = 160, top = 40, bottom = 50;
    const double pw = width - left - right;
    const double ph = height - top - bottom;

    auto tx = [&](double x) { return plot.log_x ? std::log10(x) : x; };
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
    double y0 = x0, y1 = -x0;
    for (const auto& s : plot.series)
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
        {
            double x = tx(s.x[i]);
            if (!std::isfinite(x) || !std::isfinite(s.y[i]))
                continue;
            x0 = std::min(x0, x);
            x1 = std::max(x1, x);
            y0 = std::min(y0, s.y[i]);
            y1 = std::max(y1, s.y[i]);
        }
    if (!std::isfinite(x0))
    {
        x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    }
    if (x1 == x0)
        x1 = x0 + 1;
    if (y1 == y0)
    {
        y0 -= 0.5 * std::max(1.0, std::abs(y0));
        y1 += 0.5 * std::max(1.0, std::abs(y1));
    }
    auto px = [&](double x) { return left + (tx(x) - x0) / (x1 - x0) * pw; };
    auto py = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << escape_xml(plot.title) << "</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top + ph << "\" x2=\"" << left + pw
       << "\" y2=\"" << top + ph << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
       << top + ph << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t)
    {
        double fx = x0 + (x1 - x0) * t / 4.0;
        double fy = y0 + (y1 - y0) * t / 4.0;
        double sx = left + pw * t / 4.0;
        double sy = top + ph * (1.0 - t / 4.0);
        os << "<text x=\"" << sx << "\" y=\"" << top + ph + 16 << "\" text-anchor=\"middle\">"
           << (plot.log_x ? "1e" + short_number(fx) : short_number(fx)) << "</text>\n";
        os << "<text x=\"" << left - 6 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\">"
           << short_number(fy) << "</text>\n";
    }
    os << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 10
       << "\" text-anchor=\"middle\">" << escape_xml(plot.x_label) << "</text>\n";
    os << "<text x=\"16\" y=\"" << top + ph / 2 << "\" transform=\"rotate(-90 16 "
       << top + ph / 2 << ")\" text-anchor=\"middle\">" << escape_xml(plot.y_label)
       << "</text>\n";

    for (std::size_t si = 0; si < plot.series.size(); ++si)
    {
        const auto& s = plot.series[si];
        const char* color = kPalette[si % kPalette.size()];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
        {
            if (!std::isfinite(tx(s.x[i])) || !std::isfinite(s.y[i]))
                continue;
            os << short_number(px(s.x[i])) << ',' << short_number(py(s.y[i])) << ' ';
        }
        os << "\"/>\n";
        double ly = top + 14 + 18.0 * static_cast<double>(si);
        os << "<line x1=\"" << left + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\""
           << left + pw + 32 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << left + pw + 38 << "\" y=\"" << ly << "\">" << escape_xml(s.label)
           << "</text>\n";
    }
    os << "</svg>\n";
}

PlotSpec plot_for(const StudyReport& report)
{
    PlotSpec plot;
    plot.title = report.name;
    plot.y_label = "estimate";
    if (report.param_names.empty())
        return plot;

    // Group by metric (if any) and by every parameter but the last; the last
    // parameter is the x axis.
    const std::size_t xi = report.param_names.size() - 1;
    plot.x_label = report.param_names[xi];
    std::map<std::string, std::size_t> index;
    for (const auto& row : report.rows)
    {
        std::string label = report.has_metric ? row.metric : std::string{};
        for (std::size_t p = 0; p < xi; ++p)
            label += (label.empty() ? "" : " ") + report.param_names[p] + "=" + short_number(row.params[p]);
        if (label.empty())
            label = report.name;
        auto [it, inserted] = index.emplace(label, plot.series.size());
        if (inserted)
            plot.series.push_back({label, {}, {}});
        plot.series[it->second].x.push_back(row.params[xi]);
        plot.series[it->second].y.push_back(row.estimate);
    }
    bool positive = !report.rows.empty();
    for (const auto& row : report.rows)
        positive = positive && row.params[xi] > 0;
    plot.log_x = positive && report.param_names[xi].find("lambda") != std::string::npos;
    return plot;
}

void write_report_files(const std::filesystem::path& dir, const StudyReport& report)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory '" + dir.string() + "'");

    auto csv_path = dir / (report.name + ".csv");
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv)
        throw IoError("cannot write '" + csv_path.string() + "'");
    write_csv(csv, report);

    auto svg_path = dir / (report.name + ".svg");
    std::ofstream svg(svg_path, std::ios::binary);
    if (!svg)
        throw IoError("cannot write '" + svg_path.string() + "'");
    write_svg(svg, plot_for(report));
}

}  // namespace stochwave
