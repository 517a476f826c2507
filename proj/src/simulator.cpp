#include "rancca/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "rancca/csv_io.hpp"
#include "rancca/splitmix.hpp"

namespace rancca {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kTroughHour = 3.0;

void check_shape(const DiurnalShape& shape, const char* name) {
    if (!(shape.peak > shape.trough) || !(shape.trough >= 0.0)) {
        throw ConfigError(std::string(name) + ": need peak > trough >= 0, got peak=" +
                          std::to_string(shape.peak) + " trough=" + std::to_string(shape.trough));
    }
}

double diurnal(const DiurnalShape& shape, std::size_t hour) {
    const double mid = 0.5 * (shape.peak + shape.trough);
    const double amp = 0.5 * (shape.peak - shape.trough);
    return mid - amp * std::cos(kTwoPi * (static_cast<double>(hour) - kTroughHour) / 24.0);
}

double clip_percent(double value) { return std::clamp(value, 0.0, 100.0); }

double round_half_up(double value) { return std::floor(value + 0.5); }

bool trigger(const SimConfig& config, double cov_dl, double cov_ul, double cap_dl, double cap_ul) {
    const double users_cap = round_half_up(config.users_per_prb * cap_dl);
    return (cap_dl + cov_dl < config.policy.dl_prb_threshold) &&
           (cap_ul + cov_ul < config.policy.ul_prb_threshold) &&
           (users_cap < static_cast<double>(config.policy.user_threshold));
}

KpiFrame make_frame(std::string cell_id,
                    std::vector<std::int64_t> timestamps,
                    std::vector<double> dl_prb,
                    std::vector<double> ul_prb,
                    std::vector<double> throughput,
                    std::vector<double> avg_users,
                    std::vector<double> unavailable,
                    std::vector<double> tx_power) {
    std::vector<KpiColumn> cols;
    cols.push_back({"dl_prb", Category::PM, "percent", std::move(dl_prb)});
    cols.push_back({"ul_prb", Category::PM, "percent", std::move(ul_prb)});
    cols.push_back({"throughput", Category::PM, "Mbit/s", std::move(throughput)});
    cols.push_back({"avg_users", Category::PM, "count", std::move(avg_users)});
    cols.push_back({"unavailable_time", Category::PM, "minutes-per-hour", std::move(unavailable)});
    cols.push_back({"max_dl_tx_power", Category::PM, "watts", std::move(tx_power)});
    return KpiFrame(std::move(cell_id), std::move(timestamps), std::move(cols));
}

} // namespace

void SimConfig::validate() const {
    if (hours < 24) {
        throw ConfigError("hours must be at least 24, got " + std::to_string(hours));
    }
    check_shape(cov_dl, "cov_dl");
    check_shape(cov_ul, "cov_ul");
    check_shape(cap_dl, "cap_dl");
    check_shape(cap_ul, "cap_ul");
    if (noise_stddev < 0.0) throw ConfigError("noise_stddev must be nonnegative");
    if (users_per_prb < 0.0) throw ConfigError("users_per_prb must be nonnegative");
    if (tx_power_active_w < 0.0 || tx_power_shutdown_w < 0.0) {
        throw ConfigError("TX power levels must be nonnegative");
    }
    if (throughput_noise_stddev_mbps < 0.0) {
        throw ConfigError("throughput_noise_stddev_mbps must be nonnegative");
    }
    const auto check_threshold = [](double value, const char* name) {
        if (!(value > 0.0) || value > 100.0) {
            throw ConfigError(std::string(name) + " must be in (0, 100], got " +
                              std::to_string(value));
        }
    };
    check_threshold(policy.dl_prb_threshold, "dl_prb_threshold");
    check_threshold(policy.ul_prb_threshold, "ul_prb_threshold");
}

SectorTrace simulate(const SimConfig& config) {
    config.validate();

    const std::size_t hours = config.hours;
    SplitMix64 rng(config.seed);

    OfferedLoad offered;
    offered.cov_dl.resize(hours);
    offered.cov_ul.resize(hours);
    offered.cap_dl.resize(hours);
    offered.cap_ul.resize(hours);

    std::vector<bool> mask(hours);
    std::vector<std::int64_t> timestamps(hours);

    std::vector<double> cov_dl(hours), cov_ul(hours), cov_tp(hours), cov_users(hours),
        cov_unavail(hours), cov_tx(hours);
    std::vector<double> cap_dl(hours), cap_ul(hours), cap_tp(hours), cap_users(hours),
        cap_unavail(hours), cap_tx(hours);

    for (std::size_t h = 0; h < hours; ++h) {
        timestamps[h] = static_cast<std::int64_t>(h);

        // Six draws per hour in fixed order (docs/formats.md): coverage DL,
        // coverage UL, capacity DL, capacity UL, coverage throughput,
        // capacity throughput.
        const double n_cov_dl = rng.next_normal();
        const double n_cov_ul = rng.next_normal();
        const double n_cap_dl = rng.next_normal();
        const double n_cap_ul = rng.next_normal();
        const double n_tp_cov = rng.next_normal();
        const double n_tp_cap = rng.next_normal();

        offered.cov_dl[h] = clip_percent(diurnal(config.cov_dl, h) + config.noise_stddev * n_cov_dl);
        offered.cov_ul[h] = clip_percent(diurnal(config.cov_ul, h) + config.noise_stddev * n_cov_ul);
        offered.cap_dl[h] = clip_percent(diurnal(config.cap_dl, h) + config.noise_stddev * n_cap_dl);
        offered.cap_ul[h] = clip_percent(diurnal(config.cap_ul, h) + config.noise_stddev * n_cap_ul);

        const bool shut = trigger(config, offered.cov_dl[h], offered.cov_ul[h],
                                  offered.cap_dl[h], offered.cap_ul[h]);
        mask[h] = shut;

        if (shut) {
            // Handover: the capacity cell's offered load lands on the
            // coverage cell, clipped to keep percent semantics.
            cov_dl[h] = std::min(100.0, offered.cov_dl[h] + offered.cap_dl[h]);
            cov_ul[h] = std::min(100.0, offered.cov_ul[h] + offered.cap_ul[h]);
            cap_dl[h] = 0.0;
            cap_ul[h] = 0.0;
            cap_users[h] = 0.0;
            cap_tp[h] = 0.0;
            cap_unavail[h] = 60.0;
            cap_tx[h] = config.tx_power_shutdown_w;
        } else {
            cov_dl[h] = offered.cov_dl[h];
            cov_ul[h] = offered.cov_ul[h];
            cap_dl[h] = offered.cap_dl[h];
            cap_ul[h] = offered.cap_ul[h];
            cap_users[h] = round_half_up(config.users_per_prb * cap_dl[h]);
            cap_tp[h] = std::max(0.0, config.throughput_offset_mbps +
                                          config.throughput_per_prb_mbps * cap_dl[h] +
                                          config.throughput_noise_stddev_mbps * n_tp_cap);
            cap_unavail[h] = 0.0;
            cap_tx[h] = config.tx_power_active_w;
        }

        cov_users[h] = round_half_up(config.users_per_prb * cov_dl[h]);
        cov_tp[h] = std::max(0.0, config.throughput_offset_mbps +
                                      config.throughput_per_prb_mbps * cov_dl[h] +
                                      config.throughput_noise_stddev_mbps * n_tp_cov);
        cov_unavail[h] = 0.0;
        cov_tx[h] = config.tx_power_active_w;
    }

    KpiFrame coverage = make_frame("coverage", timestamps, std::move(cov_dl), std::move(cov_ul),
                                   std::move(cov_tp), std::move(cov_users),
                                   std::move(cov_unavail), std::move(cov_tx));
    KpiFrame capacity = make_frame("capacity", timestamps, std::move(cap_dl), std::move(cap_ul),
                                   std::move(cap_tp), std::move(cap_users),
                                   std::move(cap_unavail), std::move(cap_tx));

    return SectorTrace{std::move(coverage), std::move(capacity), std::move(mask),
                       std::move(offered)};
}

std::vector<bool> derive_shutdown_mask(const SimConfig& config, const OfferedLoad& offered) {
    const std::size_t hours = offered.cov_dl.size();
    if (offered.cov_ul.size() != hours || offered.cap_dl.size() != hours ||
        offered.cap_ul.size() != hours) {
        throw ShapeError("offered load vectors have mismatched lengths");
    }
    std::vector<bool> mask(hours);
    for (std::size_t h = 0; h < hours; ++h) {
        mask[h] = trigger(config, offered.cov_dl[h], offered.cov_ul[h], offered.cap_dl[h],
                          offered.cap_ul[h]);
    }
    return mask;
}

std::pair<std::filesystem::path, std::filesystem::path> export_trace(
    const SectorTrace& trace, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
    }
    const auto coverage_path = dir / "coverage.csv";
    const auto capacity_path = dir / "capacity.csv";
    save_csv(trace.coverage, coverage_path);
    save_csv(trace.capacity, capacity_path);
    return {coverage_path, capacity_path};
}

namespace {

std::string trim(const std::string& text) {
    const auto first = text.find_first_not_of(" \t");
    if (first == std::string::npos) return "";
    const auto last = text.find_last_not_of(" \t");
    return text.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& value, const std::string& key, std::size_t line_no) {
    T out{};
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || value.empty()) {
        throw ConfigError("line " + std::to_string(line_no) + ": bad value '" + value +
                          "' for key '" + key + "'");
    }
    return out;
}

} // namespace

SimConfig load_sim_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path.string() + "'");
    }

    SimConfig config;
    const std::map<std::string, std::function<void(const std::string&, std::size_t)>> setters = {
        {"seed", [&](const std::string& v, std::size_t n) { config.seed = parse_number<std::uint64_t>(v, "seed", n); }},
        {"hours", [&](const std::string& v, std::size_t n) { config.hours = parse_number<std::uint64_t>(v, "hours", n); }},
        {"cov_dl_peak", [&](const std::string& v, std::size_t n) { config.cov_dl.peak = parse_number<double>(v, "cov_dl_peak", n); }},
        {"cov_dl_trough", [&](const std::string& v, std::size_t n) { config.cov_dl.trough = parse_number<double>(v, "cov_dl_trough", n); }},
        {"cov_ul_peak", [&](const std::string& v, std::size_t n) { config.cov_ul.peak = parse_number<double>(v, "cov_ul_peak", n); }},
        {"cov_ul_trough", [&](const std::string& v, std::size_t n) { config.cov_ul.trough = parse_number<double>(v, "cov_ul_trough", n); }},
        {"cap_dl_peak", [&](const std::string& v, std::size_t n) { config.cap_dl.peak = parse_number<double>(v, "cap_dl_peak", n); }},
        {"cap_dl_trough", [&](const std::string& v, std::size_t n) { config.cap_dl.trough = parse_number<double>(v, "cap_dl_trough", n); }},
        {"cap_ul_peak", [&](const std::string& v, std::size_t n) { config.cap_ul.peak = parse_number<double>(v, "cap_ul_peak", n); }},
        {"cap_ul_trough", [&](const std::string& v, std::size_t n) { config.cap_ul.trough = parse_number<double>(v, "cap_ul_trough", n); }},
        {"noise_stddev", [&](const std::string& v, std::size_t n) { config.noise_stddev = parse_number<double>(v, "noise_stddev", n); }},
        {"users_per_prb", [&](const std::string& v, std::size_t n) { config.users_per_prb = parse_number<double>(v, "users_per_prb", n); }},
        {"tx_power_active_w", [&](const std::string& v, std::size_t n) { config.tx_power_active_w = parse_number<double>(v, "tx_power_active_w", n); }},
        {"tx_power_shutdown_w", [&](const std::string& v, std::size_t n) { config.tx_power_shutdown_w = parse_number<double>(v, "tx_power_shutdown_w", n); }},
        {"throughput_offset_mbps", [&](const std::string& v, std::size_t n) { config.throughput_offset_mbps = parse_number<double>(v, "throughput_offset_mbps", n); }},
        {"throughput_per_prb_mbps", [&](const std::string& v, std::size_t n) { config.throughput_per_prb_mbps = parse_number<double>(v, "throughput_per_prb_mbps", n); }},
        {"throughput_noise_stddev_mbps", [&](const std::string& v, std::size_t n) { config.throughput_noise_stddev_mbps = parse_number<double>(v, "throughput_noise_stddev_mbps", n); }},
        {"dl_prb_threshold", [&](const std::string& v, std::size_t n) { config.policy.dl_prb_threshold = parse_number<double>(v, "dl_prb_threshold", n); }},
        {"ul_prb_threshold", [&](const std::string& v, std::size_t n) { config.policy.ul_prb_threshold = parse_number<double>(v, "ul_prb_threshold", n); }},
        {"user_threshold", [&](const std::string& v, std::size_t n) { config.policy.user_threshold = parse_number<std::uint32_t>(v, "user_threshold", n); }},
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key=value, got '" +
                              stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        it->second(value, line_no);
    }

    config.validate();
    return config;
}

std::string render_sim_config(const SimConfig& config) {
    std::ostringstream out;
    char buf[64];
    const auto put = [&](const char* key, double value) {
        std::snprintf(buf, sizeof(buf), "%.17g", value);
        out << key << '=' << buf << '\n';
    };
    out << "seed=" << config.seed << '\n';
    out << "hours=" << config.hours << '\n';
    put("cov_dl_peak", config.cov_dl.peak);
    put("cov_dl_trough", config.cov_dl.trough);
    put("cov_ul_peak", config.cov_ul.peak);
    put("cov_ul_trough", config.cov_ul.trough);
    put("cap_dl_peak", config.cap_dl.peak);
    put("cap_dl_trough", config.cap_dl.trough);
    put("cap_ul_peak", config.cap_ul.peak);
    put("cap_ul_trough", config.cap_ul.trough);
    put("noise_stddev", config.noise_stddev);
    put("users_per_prb", config.users_per_prb);
    put("tx_power_active_w", config.tx_power_active_w);
    put("tx_power_shutdown_w", config.tx_power_shutdown_w);
    put("throughput_offset_mbps", config.throughput_offset_mbps);
    put("throughput_per_prb_mbps", config.throughput_per_prb_mbps);
    put("throughput_noise_stddev_mbps", config.throughput_noise_stddev_mbps);
    put("dl_prb_threshold", config.policy.dl_prb_threshold);
    put("ul_prb_threshold", config.policy.ul_prb_threshold);
    out << "user_threshold=" << config.policy.user_threshold << '\n';
    return out.str();
}

} // namespace rancca
