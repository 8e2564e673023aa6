// Copyright 2026 The stochwave Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "stochwave/wave_solver.hpp"

namespace stochwave {

struct ReportRow {
    std::vector<double> params;  //!< one value per StudyReport::param_names
    std::string metric;          //!< only written when the report has a metric column
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;     //!< paths that contributed (blown-up paths excluded)
    std::size_t n_failed = 0;
    bool flagged() const noexcept { return n_failed > 0; }
};

/*!
 * Table of Monte Carlo estimates. CSV layout:
 *   <param_names...>[,metric],estimate,std_error,n_paths
 */
struct StudyReport {
    std::string name;
    std::vector<std::string> param_names;
    bool has_metric = false;
    std::vector<ReportRow> rows;

    std::string csv_header() const;
};

//! Numbers are written with %.17g so equal reports give identical bytes.
void write_csv(std::ostream& os, const StudyReport& report);
void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& trace);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    std::vector<PlotSeries> series;
};

//! Minimal standalone SVG line plot: axes, one polyline per series, legend.
void write_svg(std::ostream& os, const PlotSpec& plot);

//! Default plot for a study report (one series per leading parameter value or metric).
PlotSpec plot_for(const StudyReport& report);

//! Writes `<dir>/<name>.csv` and `<dir>/<name>.svg`. \throws IoError.
void write_report_files(const std::filesystem::path& dir, const StudyReport& report);

std::string format_number(double x);

}  // namespace stochwave
