#pragma once

#include <functional>
#include <string>
#include <vector>

#include "core/config.hpp"
#include "core/report.hpp"

namespace v2x {

// Benchmark sweep over one scenario variable, optionally crossed with a list
// of worker counts, repeated with an identical seed so only timing varies.
//
// Spec file (flat key = value):
//   variable    = vehicles | map_side | threads
//   values      = 25,50,75,100            (strictly increasing)
//   threads     = 1,4,10                  (optional axis; not with variable=threads)
//   repetitions = 3                       (optional, default 3)
//   config      = base.cfg                (optional, resolved relative to the spec file)
struct SweepSpec {
    enum class Variable { vehicles, map_side, threads };

    Variable variable = Variable::vehicles;
    std::vector<double> values;
    std::vector<int> thread_counts;
    int repetitions = 3;
    std::string config_path;

    static SweepSpec from_file(const std::string& path);
    static SweepSpec from_string(std::string_view text, const std::string& base_dir = {});

    void validate() const;
    static const char* variable_name(Variable v);
};

using BenchRecordCallback = std::function<void(const BenchRecord&)>;

// Runs every (value x worker_count x repetition) combination strictly
// serially, invoking the callback after each run so partial results survive
// an aborted sweep. A run failure propagates after the callback has seen all
// completed records.
std::vector<BenchRecord> run_sweep(const SweepSpec& spec, const SimConfig& base,
                                   const BenchRecordCallback& on_record);

} // namespace v2x
