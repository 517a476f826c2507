#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "rancca/errors.hpp"

namespace rancca {

/// Data category of a KPI column: configuration, performance, or inventory
/// management.
enum class Category { CM, PM, IM };

std::string to_string(Category category);
Category category_from_string(const std::string& text);

struct KpiColumn {
    std::string name;
    Category category = Category::PM;
    std::string unit; // free text: percent, Mbit/s, watts, count, ...
    std::vector<double> values;
};

/// Timestamp-indexed matrix of named KPI columns for one cell.
///
/// Timestamps are integer epoch-hours (the ingestion grain is one hour) and
/// strictly increasing; gaps are allowed, e.g. after aligning frames with
/// partially overlapping coverage. Immutable after construction.
class KpiFrame {
public:
    KpiFrame(std::string cell_id,
             std::vector<std::int64_t> timestamps,
             std::vector<KpiColumn> columns);

    const std::string& cell_id() const { return cell_id_; }
    const std::vector<std::int64_t>& timestamps() const { return timestamps_; }
    const std::vector<KpiColumn>& columns() const { return columns_; }

    std::size_t rows() const { return timestamps_.size(); }
    std::size_t kpi_count() const { return columns_.size(); }

    bool has_column(const std::string& name) const;
    /// Throws NameError when no column carries `name`.
    const KpiColumn& column(const std::string& name) const;

    /// Values of the requested columns, in request order, as rows x names.
    Eigen::MatrixXd matrix(const std::vector<std::string>& names) const;

private:
    std::string cell_id_;
    std::vector<std::int64_t> timestamps_;
    std::vector<KpiColumn> columns_;
};

struct ColumnStats {
    double mean = 0.0;
    double stddev = 0.0; // population (1/M) convention, always > 0
};

/// Per-column mean/stddev that produced a standardized block.
struct StandardizationRecord {
    std::vector<ColumnStats> columns;

    std::size_t size() const { return columns.size(); }
};

/// Restrict every frame to the intersection of their timestamp sets.
/// Column data is untouched apart from the row selection.
/// Throws AlignmentError when the intersection is empty.
std::vector<KpiFrame> align(const std::vector<KpiFrame>& frames);

/// Column-wise standardization to mean 0, stddev 1 (population convention).
/// `labels`, when given, name columns in error messages.
/// Throws ShapeError for fewer than 2 rows and DegenerateColumnError for a
/// zero-variance column.
std::pair<Eigen::MatrixXd, StandardizationRecord> standardize(
    const Eigen::MatrixXd& values,
    const std::vector<std::string>& labels = {});

/// Apply an existing record: (x - mean) / stddev per column.
Eigen::MatrixXd apply_standardization(const Eigen::MatrixXd& values,
                                      const StandardizationRecord& record);

} // namespace rancca
