#pragma once

#include <unistd.h>

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "rancca/kpi_frame.hpp"
#include "rancca/splitmix.hpp"

namespace test_support {

inline Eigen::MatrixXd random_matrix(rancca::SplitMix64& rng, Eigen::Index rows,
                                     Eigen::Index cols) {
    Eigen::MatrixXd out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = rng.next_normal();
    }
    return out;
}

/// Two blocks sharing a latent factor structure, so canonical correlations
/// are well away from both 0 and the degenerate 1.
inline std::pair<Eigen::MatrixXd, Eigen::MatrixXd> correlated_blocks(
    std::uint64_t seed, Eigen::Index rows, Eigen::Index p, Eigen::Index q,
    double noise = 0.6) {
    rancca::SplitMix64 rng(seed);
    const Eigen::Index k = std::min(p, q);
    const Eigen::MatrixXd latent = random_matrix(rng, rows, k);
    const Eigen::MatrixXd mix_x = random_matrix(rng, k, p);
    const Eigen::MatrixXd mix_y = random_matrix(rng, k, q);
    const Eigen::MatrixXd x = latent * mix_x + noise * random_matrix(rng, rows, p);
    const Eigen::MatrixXd y = latent * mix_y + noise * random_matrix(rng, rows, q);
    return {x, y};
}

inline std::vector<std::string> sequential_labels(const char* stem, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(stem) + std::to_string(i));
    return out;
}

inline rancca::KpiFrame make_frame(const std::string& cell_id, std::int64_t first_hour,
                                   std::size_t hours, std::uint64_t seed,
                                   const std::vector<std::string>& kpis) {
    rancca::SplitMix64 rng(seed);
    std::vector<std::int64_t> timestamps(hours);
    for (std::size_t i = 0; i < hours; ++i) timestamps[i] = first_hour + std::int64_t(i);
    std::vector<rancca::KpiColumn> columns;
    for (const auto& name : kpis) {
        rancca::KpiColumn col{name, rancca::Category::PM, "unit", {}};
        col.values.reserve(hours);
        for (std::size_t i = 0; i < hours; ++i) col.values.push_back(10.0 + rng.next_normal());
        columns.push_back(std::move(col));
    }
    return rancca::KpiFrame(cell_id, std::move(timestamps), std::move(columns));
}

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = std::filesystem::temp_directory_path() /
                ("rancca_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace test_support
