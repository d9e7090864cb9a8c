#include "core/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "core/error.hpp"
#include "core/version.hpp"

namespace v2x {

std::string format_csv_double(double value) {
    if (std::isnan(value)) return {};
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

namespace {

std::string format_time(double time_s) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", time_s);
    return buf;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        fail(ErrorCode::io, "cannot open output file \"" + path + "\"");
    return out;
}

} // namespace

ReceptionsCsvWriter::ReceptionsCsvWriter(const std::string& path)
    : buffer_(1 << 20) {
    file_ = open_output(path);
    file_.rdbuf()->pubsetbuf(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    out_ = &file_;
    *out_ << kReceptionsCsvHeader << '\n';
}

ReceptionsCsvWriter::ReceptionsCsvWriter(std::ostream& out) : out_(&out) {
    *out_ << kReceptionsCsvHeader << '\n';
}

void ReceptionsCsvWriter::on_result(double time_s, const LinkResult& r) {
    *out_ << format_time(time_s) << ',' << r.tx_id << ',' << r.rx_id << ','
          << format_csv_double(r.distance_m) << ',' << format_csv_double(r.pathloss_db) << ','
          << format_csv_double(r.obstacle_loss_db) << ',' << format_csv_double(r.rx_power_dbm)
          << ',' << (r.culled ? '1' : '0') << ',' << (r.delivered ? '1' : '0') << '\n';
    ++rows_;
    if (!*out_)
        fail(ErrorCode::io, "write failure on receptions CSV");
}

BenchCsvWriter::BenchCsvWriter(const std::string& path) {
    file_ = open_output(path);
    out_ = &file_;
    *out_ << kBenchCsvHeader << '\n' << std::flush;
}

BenchCsvWriter::BenchCsvWriter(std::ostream& out) : out_(&out) {
    *out_ << kBenchCsvHeader << '\n' << std::flush;
}

void BenchCsvWriter::append(const BenchRecord& r) {
    *out_ << r.scenario << ',' << r.vehicle_count << ',' << format_csv_double(r.map_side_m) << ','
          << r.worker_count << ',' << r.repetition << ',' << format_csv_double(r.wall_time_s)
          << ',' << r.links_considered << ',' << r.links_culled << ',' << r.obstacle_tests
          << '\n'
          << std::flush;
    if (!*out_)
        fail(ErrorCode::io, "write failure on bench CSV");
}

void write_run_metadata(const RunReport& report, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["version"] = kVersionString;

    nlohmann::ordered_json config;
    for (const auto& [key, value] : config_echo(report.config)) config[key] = value;
    doc["config"] = std::move(config);

    doc["stats"] = {{"links_considered", report.stats.links_considered},
                    {"links_culled", report.stats.links_culled},
                    {"obstacle_tests", report.stats.obstacle_tests},
                    {"intersections_found", report.stats.intersections_found}};
    doc["transmissions"] = report.transmissions;
    doc["link_results"] = report.link_results;
    doc["wall_time_s"] = report.wall_time_s;
    doc["timing_scope"] =
        "engine loop: mobility stepping and link evaluation; scenario load and CSV writing excluded";

    out << doc.dump(2) << '\n';
}

void write_run_metadata_file(const RunReport& report, const std::string& path) {
    std::ofstream out = open_output(path);
    write_run_metadata(report, out);
    if (!out)
        fail(ErrorCode::io, "write failure on \"" + path + "\"");
}

} // namespace v2x
