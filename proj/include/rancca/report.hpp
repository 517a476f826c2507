#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rancca/cca.hpp"
#include "rancca/simulator.hpp"

namespace rancca {

/// Square correlation table. The first row/column belongs to a canonical
/// variate ("U1" or "V1"), the rest to original variables; symmetric with a
/// unit diagonal.
struct CorrelationTable {
    std::vector<std::string> labels;
    Eigen::MatrixXd values;

    std::size_t size() const { return labels.size(); }
};

/// The four first-pair correlation tables plus the headline correlation.
///
///   x_within: [U1 | X variables]   y_within: [V1 | Y variables]
///   y_cross:  [U1 | Y variables]   x_cross:  [V1 | X variables]
///
/// Cross tables repeat the variable-variable block of their within
/// counterpart; their first row is rho1 times the within first row (the
/// cross-loading identity), which build_report guarantees to 1e-8.
struct LoadingsReport {
    double rho1 = 0.0;
    std::vector<double> canonical_correlations;
    CorrelationTable x_within;
    CorrelationTable y_within;
    CorrelationTable y_cross;
    CorrelationTable x_cross;
    std::size_t discarded_pairs = 0;
};

enum class TableId { XWithin = 1, YWithin = 2, YCross = 3, XCross = 4 };

/// Assemble the report from a fitted model and the dataset it was fitted
/// on. Throws ShapeError when the shapes disagree.
LoadingsReport build_report(const CcaModel& model, const PairedDataset& data);

/// Canonical JSON: stable key order, 5-decimal values matching the text
/// tables plus full-precision duplicates under "raw". Byte-identical across
/// runs for identical inputs.
std::string render_json(const LoadingsReport& report);

/// Inverse of render_json (reads the full-precision "raw" values).
LoadingsReport parse_report_json(const std::string& text);

/// One table as CSV: header line plus one line per row, full precision.
std::string render_table_csv(const LoadingsReport& report, TableId table);

/// One table as aligned fixed-width text: header line plus one line per row.
std::string render_table_text(const LoadingsReport& report, TableId table);

/// Whole report as human-readable text (headline, then the four tables).
std::string render_text(const LoadingsReport& report);

enum class CellRole { Coverage, Capacity };

std::string to_string(CellRole role);

/// Plot-ready time series of one KPI for one cell.
struct PlotSeries {
    std::string name;
    CellRole role = CellRole::Coverage;
    std::vector<std::int64_t> timestamps;
    std::vector<double> values;
};

/// One series per (cell, kpi) combination, coverage first.
/// Throws NameError on an unknown KPI.
std::vector<PlotSeries> export_plot_series(const SectorTrace& trace,
                                           const std::vector<std::string>& kpis);

/// CSV body of one series: "timestamp,value" header plus data lines.
std::string plot_series_csv(const PlotSeries& series);

} // namespace rancca
