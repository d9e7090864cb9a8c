#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "core/config.hpp"
#include "core/error.hpp"
#include "core/report.hpp"
#include "core/sim_engine.hpp"
#include "core/sweep.hpp"

using namespace v2x;

TEST_CASE("defaults are the built-in scenario") {
    const SimConfig cfg;
    CHECK(cfg.radio.tx_power_dbm == 25.0);
    CHECK(cfg.radio.antenna_gain_tx_dbi == 9.0);
    CHECK(cfg.radio.antenna_gain_rx_dbi == 9.0);
    CHECK(cfg.radio.system_loss_db == 3.0);
    CHECK(cfg.radio.rx_sensitivity_dbm == -93.0);
    CHECK(cfg.radio.carrier_frequency_hz == 5.9e9);
    CHECK(cfg.radio.bandwidth_hz == 10e6);
    CHECK(cfg.radio.pathloss_exponent == 2.4);
    CHECK(cfg.radio.distance_boundary_m == 1000.0);
    CHECK(cfg.radio.message_length_bytes == 140);
    CHECK(cfg.radio.beacon_interval_s == 0.1);
    CHECK(cfg.sim_duration_s == 100.0);
    CHECK(cfg.grid.map_side_m == 2000.0);
    CHECK(cfg.grid.vehicle_count == 100);
    CHECK(cfg.pool.worker_count == 1);
    CHECK(cfg.loss_model == LossModel::dielectric);
    CHECK(cfg.mobility_source == MobilitySource::grid);
    CHECK_FALSE(cfg.beacon_jitter);
}

TEST_CASE("set/get round trip") {
    SimConfig cfg;
    set_config_value(cfg, "worker_count", "4");
    CHECK(cfg.pool.worker_count == 4);
    CHECK(get_config_value(cfg, "worker_count") == "4");

    set_config_value(cfg, "distance_boundary_m", "inf");
    CHECK(std::isinf(cfg.radio.distance_boundary_m));

    set_config_value(cfg, "loss_model", "ideal");
    CHECK(cfg.loss_model == LossModel::ideal);

    set_config_value(cfg, "seed", "18446744073709551615"); // full u64 range
    CHECK(cfg.seed == 18446744073709551615ull);

    set_config_value(cfg, "map_side_m", "2300");
    CHECK(cfg.grid.map_side_m == 2300.0);

    for (const std::string& key : config_keys())
        CHECK_NOTHROW(get_config_value(cfg, key));
}

TEST_CASE("invalid keys and values are rejected") {
    SimConfig cfg;
    CHECK_THROWS_AS(set_config_value(cfg, "no_such_key", "1"), Error);
    CHECK_THROWS_AS(set_config_value(cfg, "worker_count", "0"), Error);
    CHECK_THROWS_AS(set_config_value(cfg, "worker_count", "four"), Error);
    CHECK_THROWS_AS(set_config_value(cfg, "sim_duration_s", "10x"), Error);
    CHECK_THROWS_AS(set_config_value(cfg, "loss_model", "perfect"), Error);
    CHECK_THROWS_AS(set_config_value(cfg, "seed", "-1"), Error);
    CHECK_THROWS_AS(set_config_value(cfg, "vehicle_count", "-5"), Error);
}

TEST_CASE("config files: comments, precedence, line numbers") {
    SimConfig cfg;
    const auto keys = load_config_string(cfg, "# scenario\n"
                                              "vehicle_count = 25\n"
                                              "\n"
                                              "  worker_count = 4 \n"
                                              "loss_model=ideal\n");
    CHECK(cfg.grid.vehicle_count == 25);
    CHECK(cfg.pool.worker_count == 4);
    CHECK(cfg.loss_model == LossModel::ideal);
    CHECK(keys.count("vehicle_count") == 1);
    CHECK(keys.count("worker_count") == 1);
    CHECK(keys.size() == 3);

    // Flag-style override after the file wins.
    set_config_value(cfg, "worker_count", "10");
    CHECK(cfg.pool.worker_count == 10);

    try {
        load_config_string(cfg, "vehicle_count = 5\nbogus line\n");
        FAIL("expected config error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("trace/grid conflicts") {
    SimConfig cfg;
    set_config_value(cfg, "mobility_source", "trace");
    set_config_value(cfg, "trace_file", "trace.csv");
    CHECK_NOTHROW(validate_config_conflicts(cfg, {"mobility_source", "trace_file"}));

    // Explicit grid-only key alongside a trace source is a conflict.
    CHECK_THROWS_AS(
        validate_config_conflicts(cfg, {"mobility_source", "trace_file", "vehicle_count"}),
        Error);

    // Trace source without a trace file is invalid.
    SimConfig no_file;
    set_config_value(no_file, "mobility_source", "trace");
    CHECK_THROWS_AS(validate_config_conflicts(no_file, {"mobility_source"}), Error);

    // Grid source with a trace file is invalid.
    SimConfig stray;
    set_config_value(stray, "trace_file", "trace.csv");
    CHECK_THROWS_AS(validate_config_conflicts(stray, {"trace_file"}), Error);
}

TEST_CASE("echo reproduces the config exactly") {
    SimConfig cfg;
    set_config_value(cfg, "vehicle_count", "33");
    set_config_value(cfg, "map_side_m", "1700");
    set_config_value(cfg, "pathloss_exponent", "2.75");
    set_config_value(cfg, "seed", "123456789");

    SimConfig replayed;
    for (const auto& [key, value] : config_echo(cfg))
        if (!value.empty()) set_config_value(replayed, key, value);

    CHECK(config_echo(replayed) == config_echo(cfg));
}

TEST_CASE("csv double formatting") {
    CHECK(format_csv_double(0.0) == "0");
    CHECK(format_csv_double(1000.0) == "1000");
    CHECK(format_csv_double(std::numeric_limits<double>::quiet_NaN()).empty());
    CHECK(format_csv_double(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_csv_double(-std::numeric_limits<double>::infinity()) == "-inf");

    // Shortest representation still round-trips exactly.
    const double value = 119.86482345472626;
    CHECK(std::stod(format_csv_double(value)) == value);
}

TEST_CASE("receptions CSV layout") {
    std::ostringstream out;
    ReceptionsCsvWriter writer(out);

    LinkResult delivered{3, 7, 141.5, 100.25, 0.0, -60.5, true, false};
    writer.on_result(0.1, delivered);

    LinkResult culled{3, 8, 1500.0, std::numeric_limits<double>::quiet_NaN(),
                      std::numeric_limits<double>::quiet_NaN(),
                      std::numeric_limits<double>::quiet_NaN(), false, true};
    writer.on_result(0.1, culled);

    LinkResult blocked{3, 9, 400.0, 110.0, std::numeric_limits<double>::infinity(),
                       -std::numeric_limits<double>::infinity(), false, false};
    writer.on_result(0.2, blocked);

    const std::string text = out.str();
    std::istringstream lines(text);
    std::string line;

    std::getline(lines, line);
    CHECK(line == "time_s,tx_id,rx_id,distance_m,pathloss_db,obstacle_loss_db,rx_power_dbm,"
                  "culled,delivered");
    std::getline(lines, line);
    CHECK(line == "0.100000,3,7,141.5,100.25,0,-60.5,0,1");
    std::getline(lines, line);
    CHECK(line == "0.100000,3,8,1500,,,,1,0");
    std::getline(lines, line);
    CHECK(line == "0.200000,3,9,400,110,inf,-inf,0,0");
    CHECK(writer.rows_written() == 3);
}

TEST_CASE("bench CSV layout") {
    std::ostringstream out;
    BenchCsvWriter writer(out);
    writer.append({"vehicles=25", 25, 2000.0, 4, 2, 1.25, 100, 40, 6400});

    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "scenario,vehicle_count,map_side_m,worker_count,repetition,wall_time_s,"
                  "links_considered,links_culled,obstacle_tests");
    std::getline(lines, line);
    CHECK(line == "vehicles=25,25,2000,4,2,1.25,100,40,6400");
}

TEST_CASE("empty run yields a header-only CSV") {
    std::ostringstream out;
    ReceptionsCsvWriter writer(out);
    CHECK(out.str() == std::string(kReceptionsCsvHeader) + "\n");
}

TEST_CASE("run metadata echoes the full config") {
    SimConfig cfg;
    cfg.sim_duration_s = 0.2;
    cfg.grid.map_side_m = 300.0;
    cfg.grid.vehicle_count = 3;
    NullSink sink;
    const RunReport report = run_simulation(cfg, sink);

    std::ostringstream out;
    write_run_metadata(report, out);
    const nlohmann::json doc = nlohmann::json::parse(out.str());

    CHECK(doc.contains("version"));
    CHECK(doc["config"]["vehicle_count"] == "3");
    CHECK(doc["config"]["map_side_m"] == "300");
    CHECK(doc["stats"]["links_considered"].get<std::uint64_t>() ==
          report.stats.links_considered);
    CHECK(doc["transmissions"].get<std::uint64_t>() == report.transmissions);
    CHECK(doc["wall_time_s"].get<double>() > 0.0);
    CHECK(doc.contains("timing_scope"));

    // The echo is sufficient to rebuild the config.
    SimConfig rebuilt;
    for (const auto& [key, value] : doc["config"].items())
        if (!value.get<std::string>().empty())
            set_config_value(rebuilt, key, value.get<std::string>());
    CHECK(config_echo(rebuilt) == config_echo(cfg));
}

TEST_CASE("sweep spec parsing") {
    const SweepSpec spec = SweepSpec::from_string("variable = vehicles\n"
                                                  "values = 25,50,75,100\n"
                                                  "threads = 1,4,10\n"
                                                  "repetitions = 2\n");
    CHECK(spec.variable == SweepSpec::Variable::vehicles);
    CHECK(spec.values == std::vector<double>{25, 50, 75, 100});
    CHECK(spec.thread_counts == std::vector<int>{1, 4, 10});
    CHECK(spec.repetitions == 2);

    CHECK(SweepSpec::from_string("variable = map_side\nvalues = 800,1100\n").repetitions == 3);

    CHECK_THROWS_AS(SweepSpec::from_string("values = 1,2\n"), Error);              // no variable
    CHECK_THROWS_AS(SweepSpec::from_string("variable = vehicles\n"), Error);       // no values
    CHECK_THROWS_AS(SweepSpec::from_string("variable = vehicles\nvalues = 4,2\n"), Error);
    CHECK_THROWS_AS(SweepSpec::from_string("variable = vehicles\nvalues = 2,2\n"), Error);
    CHECK_THROWS_AS(SweepSpec::from_string("variable = threads\nvalues = 1,4\nthreads = 2\n"),
                    Error);
    CHECK_THROWS_AS(SweepSpec::from_string("variable = vehicles\nvalues = 1,2\nbogus = 1\n"),
                    Error);
    CHECK_THROWS_AS(
        SweepSpec::from_string("variable = vehicles\nvalues = 1,2\nrepetitions = 0\n"), Error);
}

TEST_CASE("sweeps run every value x thread x repetition") {
    SweepSpec spec;
    spec.variable = SweepSpec::Variable::vehicles;
    spec.values = {2, 4};
    spec.thread_counts = {1, 2};
    spec.repetitions = 2;

    SimConfig base;
    base.sim_duration_s = 0.3;
    base.grid.map_side_m = 300.0;
    base.seed = 21;

    std::vector<BenchRecord> streamed;
    const std::vector<BenchRecord> records =
        run_sweep(spec, base, [&streamed](const BenchRecord& r) { streamed.push_back(r); });

    REQUIRE(records.size() == 8);
    CHECK(streamed.size() == 8);

    // Value-major, then workers, then repetitions.
    CHECK(records[0].scenario == "vehicles=2");
    CHECK(records[0].vehicle_count == 2);
    CHECK(records[0].worker_count == 1);
    CHECK(records[0].repetition == 1);
    CHECK(records[1].repetition == 2);
    CHECK(records[2].worker_count == 2);
    CHECK(records[4].vehicle_count == 4);

    // Same seed: only timing varies between repetitions and worker counts.
    CHECK(records[0].links_considered == records[1].links_considered);
    CHECK(records[0].obstacle_tests == records[2].obstacle_tests);
    CHECK(records[0].links_culled == records[3].links_culled);
    for (const BenchRecord& r : records) {
        CHECK(r.wall_time_s > 0.0);
        CHECK(r.map_side_m == 300.0);
    }

    // Thread sweeps take the worker count from the swept value.
    SweepSpec threads;
    threads.variable = SweepSpec::Variable::threads;
    threads.values = {1, 2};
    threads.repetitions = 1;
    const auto by_thread = run_sweep(threads, base, nullptr);
    REQUIRE(by_thread.size() == 2);
    CHECK(by_thread[0].worker_count == 1);
    CHECK(by_thread[1].worker_count == 2);
    CHECK(by_thread[0].links_considered == by_thread[1].links_considered);
}
