#pragma once

#include <cstdint>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "core/sim_engine.hpp"

namespace v2x {

inline constexpr const char* kReceptionsCsvHeader =
    "time_s,tx_id,rx_id,distance_m,pathloss_db,obstacle_loss_db,rx_power_dbm,culled,delivered";
inline constexpr const char* kBenchCsvHeader =
    "scenario,vehicle_count,map_side_m,worker_count,repetition,wall_time_s,"
    "links_considered,links_culled,obstacle_tests";

// Shortest round-trip decimal for a double; "inf"/"-inf" at the infinities,
// empty string for NaN (unset CSV fields).
std::string format_csv_double(double value);

// Streams one CSV row per link result. Values are written with shortest
// round-trip formatting, so byte-identical files mean bit-identical results.
class ReceptionsCsvWriter final : public LinkSink {
public:
    explicit ReceptionsCsvWriter(const std::string& path);
    explicit ReceptionsCsvWriter(std::ostream& out);

    void on_result(double time_s, const LinkResult& result) override;
    std::uint64_t rows_written() const noexcept { return rows_; }

private:
    std::ofstream file_;
    std::ostream* out_;
    std::uint64_t rows_ = 0;
    std::vector<char> buffer_;
};

// One benchmark measurement point.
struct BenchRecord {
    std::string scenario;
    int vehicle_count = 0;
    double map_side_m = 0.0;
    int worker_count = 1;
    int repetition = 1;
    double wall_time_s = 0.0;
    std::uint64_t links_considered = 0;
    std::uint64_t links_culled = 0;
    std::uint64_t obstacle_tests = 0;
};

// Appends records one at a time and flushes after each row, so an aborted
// sweep still leaves every completed point on disk.
class BenchCsvWriter {
public:
    explicit BenchCsvWriter(const std::string& path);
    explicit BenchCsvWriter(std::ostream& out);

    void append(const BenchRecord& record);

private:
    std::ofstream file_;
    std::ostream* out_;
};

// Machine-readable run description: full resolved config echo, counters,
// wall time and its measurement scope.
void write_run_metadata(const RunReport& report, std::ostream& out);
void write_run_metadata_file(const RunReport& report, const std::string& path);

} // namespace v2x
