#pragma once

#include <filesystem>
#include <string>

#include "rancca/kpi_frame.hpp"

namespace rancca {

/// Load one cell's KPI time series from CSV.
///
/// Expected layout (see docs/formats.md):
///   timestamp,<kpi_name>,...          header, mandatory
///   #category,PM,CM,...               optional metadata row
///   #unit,percent,Mbit/s,...          optional metadata row
///   <epoch-hour>,<value>,...          data rows
///
/// Throws ParseError for structural problems (ragged rows, non-numeric or
/// empty cells, missing header), OrderError for non-monotonic timestamps,
/// IoError when the file cannot be read.
KpiFrame load_csv(const std::filesystem::path& path, const std::string& cell_id);

/// Inverse of load_csv: values written with 17 significant digits so the
/// round-trip reproduces every double exactly. Throws IoError.
void save_csv(const KpiFrame& frame, const std::filesystem::path& path);

} // namespace rancca
