#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "rancca/kpi_frame.hpp"

namespace rancca {

/// Thresholds of the capacity-cell shutdown feature. The cell is shut down
/// in an hour when the summed DL PRB usage of both cells is below the DL
/// threshold, the UL sum is below the UL threshold, and the capacity cell's
/// user count is below the user threshold.
struct ShutdownPolicy {
    double dl_prb_threshold = 30.0;  // percent, (0, 100]
    double ul_prb_threshold = 26.0;  // percent, (0, 100]
    std::uint32_t user_threshold = 8;
};

/// Peak/trough percent levels of a diurnal PRB usage curve.
struct DiurnalShape {
    double peak = 0.0;
    double trough = 0.0;
};

/// Everything the synthetic sector generator needs. Deterministic: the same
/// config (seed included) always produces the same trace, bit for bit.
struct SimConfig {
    std::uint64_t seed = 42;
    std::size_t hours = 168; // one week at hourly grain

    DiurnalShape cov_dl{65.0, 8.0};
    DiurnalShape cov_ul{45.0, 5.0};
    DiurnalShape cap_dl{50.0, 4.0};
    DiurnalShape cap_ul{35.0, 3.0};

    double noise_stddev = 2.0;      // percent, on every PRB load
    double users_per_prb = 0.25;    // users per percent of DL PRB usage
    double tx_power_active_w = 40.0;
    double tx_power_shutdown_w = 0.0;
    double throughput_offset_mbps = 2.0;
    double throughput_per_prb_mbps = 0.9;
    double throughput_noise_stddev_mbps = 1.5;

    ShutdownPolicy policy;

    /// Throws ConfigError on any out-of-range field.
    void validate() const;
};

/// Pre-shutdown offered PRB loads, recorded so the shutdown trigger can be
/// re-evaluated after the fact (the published KPI columns reflect the
/// post-shutdown state).
struct OfferedLoad {
    std::vector<double> cov_dl, cov_ul, cap_dl, cap_ul;
};

/// One simulated week of a coverage/capacity cell pair.
struct SectorTrace {
    KpiFrame coverage;
    KpiFrame capacity;
    std::vector<bool> shutdown_mask;
    OfferedLoad offered;
};

/// KPI column names every simulated frame carries, in order.
inline constexpr const char* kSimKpiNames[] = {
    "dl_prb", "ul_prb", "throughput", "avg_users", "unavailable_time", "max_dl_tx_power",
};

/// Generate the sector trace. Per hour: diurnal sinusoid (period 24 h,
/// trough at hour 3) plus Gaussian noise gives the offered loads; the
/// three-condition trigger is evaluated on those; on shutdown hours the
/// capacity cell's load moves onto the coverage cell (clipped at 100) and
/// the capacity cell reports zero users/throughput, 60 min unavailability
/// and the shutdown TX power.
SectorTrace simulate(const SimConfig& config);

/// Re-evaluate the shutdown trigger on recorded offered loads. simulate()
/// guarantees derive_shutdown_mask(config, trace.offered) == trace.shutdown_mask.
std::vector<bool> derive_shutdown_mask(const SimConfig& config, const OfferedLoad& offered);

/// Write coverage.csv and capacity.csv under `dir` (created when missing)
/// and return the two paths. Throws IoError.
std::pair<std::filesystem::path, std::filesystem::path> export_trace(
    const SectorTrace& trace, const std::filesystem::path& dir);

/// Parse a key=value config file ('#' comments allowed); keys missing from
/// the file keep their defaults. Throws ConfigError on a missing/unreadable
/// file, unknown keys, bad values, or an invalid resulting config.
SimConfig load_sim_config(const std::filesystem::path& path);

/// Serialize a config in the same key=value format load_sim_config reads.
std::string render_sim_config(const SimConfig& config);

} // namespace rancca
