#include <doctest.h>

#include "udw/errors.hpp"
#include "udw/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

using namespace udw;

namespace {
constexpr double kPi = std::numbers::pi;

SweepConfig small_config() {
    SweepConfig cfg;
    cfg.param = ParamLabel::Phi;
    cfg.axes = {{"theta", 0.2, 2.8, 5, Spacing::Linear, {}}};
    cfg.fixed = {{"tau", 1.0}, {"a", kPi}, {"w", 0.01}};
    return cfg;
}
}

TEST_SUITE("sweep") {

TEST_CASE("axis point generation") {
    const AxisSpec lin{"tau", 0.0, 1.0, 5, Spacing::Linear, {}};
    const auto lp = lin.points();
    REQUIRE(lp.size() == 5);
    CHECK(lp.front() == 0.0);
    CHECK(lp.back() == 1.0);
    CHECK(lp[2] == doctest::Approx(0.5).epsilon(1e-15));

    const AxisSpec lg{"a", 0.1, 10.0, 3, Spacing::Log, {}};
    const auto gp = lg.points();
    CHECK(gp[1] == doctest::Approx(1.0).epsilon(1e-12));

    const AxisSpec explicit_axis{"w", 0, 0, 0, Spacing::Linear, {0.3, 0.1}};
    CHECK(explicit_axis.points() == std::vector<double>{0.3, 0.1});
}

TEST_CASE("cardinality and row-major ordering") {
    SweepConfig cfg;
    cfg.axes = {{"theta", 0, 0, 0, Spacing::Linear, {0.5, 1.5}},
                {"tau", 0, 0, 0, Spacing::Linear, {1.0, 2.0, 3.0}}};
    cfg.fixed = {{"a", kPi}, {"w", 0.01}};
    const SweepTable table = run_grid(cfg);
    REQUIRE(table.records.size() == 6);
    // last axis varies fastest
    CHECK(table.records[0].coordinates == std::vector<double>{0.5, 1.0});
    CHECK(table.records[1].coordinates == std::vector<double>{0.5, 2.0});
    CHECK(table.records[3].coordinates == std::vector<double>{1.5, 1.0});
    for (const auto& rec : table.records) CHECK(rec.error.empty());
}

TEST_CASE("per-point failures are isolated") {
    SweepConfig cfg;
    cfg.axes = {{"a", 0, 0, 0, Spacing::Linear, {0.0, kPi}}};  // a = 0 is invalid
    cfg.fixed = {{"theta", 1.0}, {"tau", 1.0}, {"w", 0.01}};
    const SweepTable table = run_grid(cfg);
    REQUIRE(table.records.size() == 2);
    CHECK(!table.records[0].error.empty());
    CHECK(std::isnan(table.records[0].results[0]));
    CHECK(table.records[1].error.empty());
    CHECK(std::isfinite(table.records[1].results[0]));
}

TEST_CASE("configuration validation") {
    CHECK_THROWS_AS(run_grid(SweepConfig{}), ConfigInvalid);

    SweepConfig dup = small_config();
    dup.axes.push_back(dup.axes[0]);
    CHECK_THROWS_AS(run_grid(dup), ConfigInvalid);

    SweepConfig unknown = small_config();
    unknown.axes[0].name = "zeta";
    CHECK_THROWS_AS(run_grid(unknown), ConfigInvalid);

    SweepConfig both = small_config();
    both.fixed["beta"] = 2.0;
    CHECK_THROWS_AS(run_grid(both), ConfigInvalid);

    SweepConfig neither = small_config();
    neither.fixed.erase("a");
    CHECK_THROWS_AS(run_grid(neither), ConfigInvalid);

    SweepConfig fast = small_config();
    fast.fixed["w"] = 0.5;  // outside the truncation validity
    CHECK_THROWS_AS(run_grid(fast), ConfigInvalid);
    fast.allow_large_w = true;
    CHECK_NOTHROW(run_grid(fast));

    SweepConfig bad_log = small_config();
    bad_log.axes[0] = {"a", 0.0, 10.0, 5, Spacing::Log, {}};
    bad_log.fixed.erase("a");
    CHECK_THROWS_AS(run_grid(bad_log), ConfigInvalid);
}

TEST_CASE("determinism: identical config, byte-identical output") {
    SweepConfig cfg = small_config();
    cfg.methods = {QfiMethod::ClosedForm, QfiMethod::BlochDerivative};
    std::ostringstream a, b;
    write_csv(run_grid(cfg), a);
    write_csv(run_grid(cfg), b);
    CHECK(a.str() == b.str());
    CHECK(run_grid(cfg).max_method_spread() <= 1e-12);
}

TEST_CASE("output formats") {
    SweepConfig cfg;
    cfg.axes = {{"theta", 0, 0, 0, Spacing::Linear, {0.5, 1.0}}};
    cfg.fixed = {{"tau", 1.0}, {"a", kPi}, {"w", 0.01}};
    const SweepTable table = run_grid(cfg);

    std::ostringstream csv;
    write_csv(table, csv);
    CHECK(csv.str().rfind("theta,phi_closed-form\n", 0) == 0);
    CHECK(csv.str().find("0.5,") != std::string::npos);

    std::ostringstream jsonl;
    write_jsonl(table, jsonl);
    CHECK(jsonl.str().find("\"coordinates\":{\"theta\":0.5}") != std::string::npos);

    std::ostringstream gp;
    write_gnuplot(table, gp);
    CHECK(gp.str().rfind("# theta phi_closed-form\n", 0) == 0);
}

TEST_CASE("figure presets") {
    const auto ids = figure_ids();
    CHECK(ids.size() == 11);
    for (const auto& id : ids) CHECK_NOTHROW(figure_config(id));
    CHECK_THROWS_AS(figure_config("fig99"), UnknownFigure);

    const SweepConfig f1a = figure_config("fig1a");
    CHECK(f1a.param == ParamLabel::Phi);
    CHECK(f1a.axes[0].count == 201);
    CHECK(f1a.fixed.at("w") == 0.01);

    // maximum of F_phi sits at theta = pi/2 for each curve
    const SweepTable t = run_figure("fig1a");
    REQUIRE(t.records.size() == 201 * 3);
    double best = -1.0, best_theta = 0.0;
    for (const auto& rec : t.records) {
        if (rec.coordinates[1] != 1.0) continue;  // tau = 1 curve
        if (rec.results[0] > best) {
            best = rec.results[0];
            best_theta = rec.coordinates[0];
        }
    }
    CHECK(best_theta == doctest::Approx(kPi / 2).epsilon(1e-10));
}

TEST_CASE("an 11x11x11 closed-form grid is fast") {
    SweepConfig cfg;
    cfg.axes = {{"theta", 0.1, 3.0, 11, Spacing::Linear, {}},
                {"tau", 0.1, 4.0, 11, Spacing::Linear, {}},
                {"a", 0.5, 20.0, 11, Spacing::Linear, {}}};
    cfg.fixed = {{"w", 0.01}};
    const auto t0 = std::chrono::steady_clock::now();
    const SweepTable table = run_grid(cfg);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(table.records.size() == 11 * 11 * 11);
    // baseline well under 1 s; regression bound at 3x
    CHECK(secs < 3.0);
}

TEST_CASE("worker cap from the environment is honored") {
    setenv("QFI_DETECTOR_THREADS", "1", 1);
    SweepConfig cfg = small_config();
    std::ostringstream capped;
    write_csv(run_grid(cfg), capped);
    unsetenv("QFI_DETECTOR_THREADS");
    std::ostringstream free_run;
    write_csv(run_grid(cfg), free_run);
    CHECK(capped.str() == free_run.str());
}

}
