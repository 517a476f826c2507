#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rancca/kpi_frame.hpp"

namespace rancca {

/// How the two blocks were assembled: one row per timestamp with two cells
/// of the same sector (CrossCell), or one row per cell with time-aggregated
/// variables (CrossVariable).
enum class Arrangement { CrossVariable, CrossCell };

enum class Aggregator { Mean, Sum, Last };

std::string to_string(Arrangement arrangement);
std::string to_string(Aggregator aggregator);
Aggregator aggregator_from_string(const std::string& text);

struct Provenance {
    std::vector<std::string> cell_ids;
    std::int64_t start_hour = 0; // inclusive; 0/0 when rows are cells
    std::int64_t end_hour = 0;
};

/// Aligned X (M x p) and Y (M x q) blocks with labels and the
/// standardization that produced them. Blocks are ordered so p <= q; when a
/// caller supplies p > q the blocks are swapped and `swapped()` reports it.
class PairedDataset {
public:
    /// Validates invariants, enforces p <= q (swapping when needed) and
    /// optionally standardizes both blocks in place.
    static PairedDataset from_matrices(Eigen::MatrixXd x,
                                       Eigen::MatrixXd y,
                                       std::vector<std::string> x_labels,
                                       std::vector<std::string> y_labels,
                                       Arrangement arrangement,
                                       bool standardize_blocks,
                                       Provenance provenance = {});

    const Eigen::MatrixXd& x() const { return x_; }
    const Eigen::MatrixXd& y() const { return y_; }
    const std::vector<std::string>& x_labels() const { return x_labels_; }
    const std::vector<std::string>& y_labels() const { return y_labels_; }

    std::size_t rows() const { return static_cast<std::size_t>(x_.rows()); }
    std::size_t p() const { return static_cast<std::size_t>(x_.cols()); }
    std::size_t q() const { return static_cast<std::size_t>(y_.cols()); }

    Arrangement arrangement() const { return arrangement_; }
    bool standardized() const { return standardized_; }
    bool swapped() const { return swapped_; }
    const StandardizationRecord& x_record() const { return x_record_; }
    const StandardizationRecord& y_record() const { return y_record_; }
    const Provenance& provenance() const { return provenance_; }

private:
    PairedDataset() = default;

    Eigen::MatrixXd x_, y_;
    std::vector<std::string> x_labels_, y_labels_;
    Arrangement arrangement_ = Arrangement::CrossCell;
    bool standardized_ = false;
    bool swapped_ = false;
    StandardizationRecord x_record_, y_record_;
    Provenance provenance_;
};

/// Same sector, two cells, shared timestamps: align the frames, pull the
/// requested KPI columns and standardize both blocks.
PairedDataset pair_cross_cell(const KpiFrame& frame_x,
                              const KpiFrame& frame_y,
                              const std::vector<std::string>& x_kpis,
                              const std::vector<std::string>& y_kpis);

/// One row per cell (sorted by cell id), entries are the chosen
/// time-aggregate of each cell's KPI. Needs at least two frames.
PairedDataset pair_cross_variable(const std::vector<KpiFrame>& frames,
                                  const std::vector<std::string>& x_kpis,
                                  const std::vector<std::string>& y_kpis,
                                  Aggregator aggregator);

} // namespace rancca
