#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "udw/qfi.hpp"

namespace udw {

enum class Spacing { Linear, Log };

// One grid axis: either an evenly spaced range (count >= 2) or an explicit
// value list.  Valid names: theta, phi, tau, a, beta, w.
struct AxisSpec {
    std::string name;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    Spacing spacing = Spacing::Linear;
    std::vector<double> values;  // explicit points; overrides start/stop/count

    std::vector<double> points() const;
};

struct SweepConfig {
    std::string target;  // figure id or empty for a free-form grid
    ParamLabel param = ParamLabel::Phi;
    std::vector<QfiMethod> methods = {QfiMethod::ClosedForm};
    std::vector<AxisSpec> axes;
    std::map<std::string, double> fixed;
    bool allow_large_w = false;  // lift the |w| <= 0.2 validity guard
};

struct SweepRecord {
    std::vector<double> coordinates;
    std::vector<double> results;  // parallel to methods; NaN on failure
    std::string error;            // empty when the point evaluated cleanly
    double wall_time = 0.0;       // seconds; diagnostic only, never serialized
};

struct SweepTable {
    std::vector<std::string> axis_names;
    std::vector<std::string> value_columns;
    std::vector<SweepRecord> records;

    // Largest per-row relative spread across methods (0 if < 2 methods).
    double max_method_spread() const;
};

// Cartesian-product evaluation, row-major over axes in declaration order.
// Per-point failures are recorded in the row, never aborting the sweep.
// Points are evaluated by a worker pool (capped by QFI_DETECTOR_THREADS)
// and gathered in deterministic order.
SweepTable run_grid(const SweepConfig& cfg);

// Named figure presets (201 points per swept axis).
SweepTable run_figure(const std::string& id);
SweepConfig figure_config(const std::string& id);
std::vector<std::string> figure_ids();

void write_csv(const SweepTable& table, std::ostream& os);
void write_jsonl(const SweepTable& table, std::ostream& os);
void write_gnuplot(const SweepTable& table, std::ostream& os);

}  // namespace udw
