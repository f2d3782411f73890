#include "udw/sweep.hpp"

#include "udw/errors.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <set>
#include <thread>

namespace udw {

namespace {

constexpr double kPi = std::numbers::pi;
const std::array<const char*, 6> kParamNames = {"theta", "phi", "tau", "a", "beta", "w"};

bool known_param(const std::string& name) {
    return std::find(kParamNames.begin(), kParamNames.end(), name) != kParamNames.end();
}

// A fully pinned evaluation point assembled from axes + fixed values.
QfiPoint make_point(const std::map<std::string, double>& vals) {
    QfiPoint pt;
    pt.theta = vals.count("theta") ? vals.at("theta") : 0.0;
    pt.phi = vals.count("phi") ? vals.at("phi") : 0.0;
    pt.tau = vals.count("tau") ? vals.at("tau") : 0.0;
    pt.w = vals.count("w") ? vals.at("w") : 0.0;
    if (vals.count("beta")) {
        pt.a = 2.0 * kPi / vals.at("beta");
    } else if (vals.count("a")) {
        pt.a = vals.at("a");
    }
    return pt;
}

int worker_count(std::size_t n_points) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* cap = std::getenv("QFI_DETECTOR_THREADS")) {
        const long v = std::strtol(cap, nullptr, 10);
        if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(1, n_points)));
}

void format_number(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::vector<double> AxisSpec::points() const {
    if (!values.empty()) return values;
    std::vector<double> pts(count);
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        if (spacing == Spacing::Linear) {
            pts[i] = start + (stop - start) * t;
        } else {
            pts[i] = start * std::pow(stop / start, t);
        }
    }
    return pts;
}

double SweepTable::max_method_spread() const {
    double worst = 0.0;
    for (const auto& rec : records) {
        if (!rec.error.empty() || rec.results.size() < 2) continue;
        const auto [lo, hi] = std::minmax_element(rec.results.begin(), rec.results.end());
        const double scale = std::max(std::abs(*hi), 1e-12);
        worst = std::max(worst, (*hi - *lo) / scale);
    }
    return worst;
}

SweepTable run_grid(const SweepConfig& cfg) {
    if (cfg.axes.empty()) throw ConfigInvalid("sweep: at least one axis is required");
    if (cfg.methods.empty()) throw ConfigInvalid("sweep: at least one method is required");

    std::set<std::string> seen;
    for (const auto& ax : cfg.axes) {
        if (!known_param(ax.name)) throw ConfigInvalid("sweep: unknown axis '" + ax.name + "'");
        if (!seen.insert(ax.name).second)
            throw ConfigInvalid("sweep: duplicate axis '" + ax.name + "'");
        if (ax.values.empty()) {
            if (ax.count < 2) throw ConfigInvalid("sweep: axis '" + ax.name + "' needs count >= 2");
            if (ax.spacing == Spacing::Log && !(ax.start > 0.0 && ax.stop > 0.0))
                throw ConfigInvalid("sweep: log axis '" + ax.name + "' needs positive endpoints");
        }
    }
    for (const auto& [name, value] : cfg.fixed) {
        if (!known_param(name)) throw ConfigInvalid("sweep: unknown fixed parameter '" + name + "'");
        if (seen.count(name))
            throw ConfigInvalid("sweep: parameter '" + name + "' is both axis and fixed");
        (void)value;
    }
    const bool has_a = seen.count("a") || cfg.fixed.count("a");
    const bool has_beta = seen.count("beta") || cfg.fixed.count("beta");
    if (has_a && has_beta) throw ConfigInvalid("sweep: specify either 'a' or 'beta', not both");
    if (!has_a && !has_beta) throw ConfigInvalid("sweep: an 'a' or 'beta' value is required");
    if (!cfg.allow_large_w) {
        auto check_w = [](double w) {
            if (std::abs(w) > 0.2)
                throw ConfigInvalid(
                    "sweep: |w| > 0.2 is outside the validity of the w^2 expansion "
                    "(pass allow_large_w to override)");
        };
        if (cfg.fixed.count("w")) check_w(cfg.fixed.at("w"));
        for (const auto& ax : cfg.axes) {
            if (ax.name != "w") continue;
            for (double v : ax.points()) check_w(v);
        }
    }

    SweepTable table;
    std::vector<std::vector<double>> axis_points;
    std::size_t n_rows = 1;
    for (const auto& ax : cfg.axes) {
        table.axis_names.push_back(ax.name);
        axis_points.push_back(ax.points());
        n_rows *= axis_points.back().size();
    }
    for (QfiMethod m : cfg.methods) {
        table.value_columns.push_back(std::string(to_string(cfg.param)) + "_" + to_string(m));
    }
    table.records.resize(n_rows);

    auto evaluate_row = [&](std::size_t row) {
        SweepRecord& rec = table.records[row];
        const auto t0 = std::chrono::steady_clock::now();
        std::map<std::string, double> vals = cfg.fixed;
        std::size_t rem = row;
        rec.coordinates.resize(cfg.axes.size());
        for (std::size_t k = cfg.axes.size(); k-- > 0;) {
            const auto& pts = axis_points[k];
            const double v = pts[rem % pts.size()];
            rem /= pts.size();
            rec.coordinates[k] = v;
            vals[cfg.axes[k].name] = v;
        }
        rec.results.assign(cfg.methods.size(), std::numeric_limits<double>::quiet_NaN());
        try {
            const QfiPoint pt = make_point(vals);
            for (std::size_t m = 0; m < cfg.methods.size(); ++m) {
                rec.results[m] = qfi_evaluate(cfg.param, cfg.methods[m], pt).fisher;
            }
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
        rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    const int n_workers = worker_count(n_rows);
    if (n_workers <= 1) {
        for (std::size_t row = 0; row < n_rows; ++row) evaluate_row(row);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int wkr = 0; wkr < n_workers; ++wkr) {
            pool.emplace_back([&, wkr] {
                for (std::size_t row = wkr; row < n_rows; row += n_workers) evaluate_row(row);
            });
        }
        for (auto& t : pool) t.join();
    }
    return table;
}

SweepConfig figure_config(const std::string& id) {
    const double pi = kPi;
    auto lin = [](std::string name, double a, double b) {
        return AxisSpec{std::move(name), a, b, 201, Spacing::Linear, {}};
    };
    auto curves = [](std::string name, std::vector<double> vals) {
        return AxisSpec{std::move(name), 0, 0, 0, Spacing::Linear, std::move(vals)};
    };

    SweepConfig cfg;
    cfg.target = id;
    if (id == "fig1a") {
        cfg.param = ParamLabel::Phi;
        cfg.axes = {lin("theta", 0.0, pi), curves("tau", {1, 2, 3})};
        cfg.fixed = {{"a", pi}, {"w", 0.01}};
    } else if (id == "fig1b") {
        cfg.param = ParamLabel::Phi;
        cfg.axes = {lin("tau", 0.0, 5.0), curves("theta", {pi / 2, pi / 3, pi / 6})};
        cfg.fixed = {{"a", pi}, {"w", 0.01}};
    } else if (id == "fig2") {
        cfg.param = ParamLabel::Phi;
        cfg.axes = {lin("a", 0.5, 50.0), curves("tau", {1, 2, 3})};
        cfg.fixed = {{"theta", pi / 2}, {"w", 0.01}};
    } else if (id == "fig3") {
        cfg.param = ParamLabel::Phi;
        cfg.axes = {lin("w", 0.0, 0.1)};
        cfg.fixed = {{"theta", pi / 2}, {"tau", 1.0}, {"a", pi}};
    } else if (id == "fig4a") {
        cfg.param = ParamLabel::Theta;
        cfg.axes = {lin("theta", -pi, pi), curves("tau", {1, 2, 3})};
        cfg.fixed = {{"a", pi}, {"w", 0.01}};
    } else if (id == "fig4b") {
        cfg.param = ParamLabel::Theta;
        cfg.axes = {lin("tau", 0.0, 5.0), curves("theta", {0.0, pi / 3, pi / 2})};
        cfg.fixed = {{"a", pi}, {"w", 0.01}};
    } else if (id == "fig5") {
        cfg.param = ParamLabel::Beta;
        cfg.axes = {lin("theta", 0.0, 2.0 * pi), curves("tau", {10, 5, 1})};
        cfg.fixed = {{"beta", 10.0}, {"w", 0.01}};
        cfg.methods = {QfiMethod::BlochDerivative};
    } else if (id == "fig6a") {
        cfg.param = ParamLabel::Beta;
        cfg.axes = {lin("tau", 0.0, 50.0), curves("beta", {1, 2, 3})};
        cfg.fixed = {{"theta", pi}, {"w", 0.01}};
        cfg.methods = {QfiMethod::BlochDerivative};
    } else if (id == "fig6b") {
        cfg.param = ParamLabel::Beta;
        cfg.axes = {lin("tau", 0.0, 50.0), curves("theta", {pi, 2 * pi / 3, pi / 2})};
        cfg.fixed = {{"beta", 10.0}, {"w", 0.01}};
        cfg.methods = {QfiMethod::BlochDerivative};
    } else if (id == "fig7") {
        cfg.param = ParamLabel::Theta;
        cfg.axes = {lin("w", 0.0, 0.1)};
        cfg.fixed = {{"theta", 0.0}, {"tau", 1.0}, {"a", pi}};
    } else if (id == "fig8") {
        cfg.param = ParamLabel::Beta;
        cfg.axes = {lin("w", 0.0, 0.1)};
        cfg.fixed = {{"theta", pi}, {"tau", 1.0}, {"beta", 1.0}};
        cfg.methods = {QfiMethod::BlochDerivative};
    } else {
        throw UnknownFigure("unknown figure id '" + id + "'");
    }
    return cfg;
}

SweepTable run_figure(const std::string& id) { return run_grid(figure_config(id)); }

std::vector<std::string> figure_ids() {
    return {"fig1a", "fig1b", "fig2", "fig3", "fig4a", "fig4b",
            "fig5",  "fig6a", "fig6b", "fig7", "fig8"};
}

void write_csv(const SweepTable& table, std::ostream& os) {
    std::string line;
    for (std::size_t i = 0; i < table.axis_names.size(); ++i) {
        if (i) line += ',';
        line += table.axis_names[i];
    }
    for (const auto& col : table.value_columns) {
        line += ',';
        line += col;
    }
    line += '\n';
    os << line;
    for (const auto& rec : table.records) {
        line.clear();
        for (std::size_t i = 0; i < rec.coordinates.size(); ++i) {
            if (i) line += ',';
            format_number(line, rec.coordinates[i]);
        }
        for (double v : rec.results) {
            line += ',';
            format_number(line, v);
        }
        line += '\n';
        os << line;
    }
}

void write_jsonl(const SweepTable& table, std::ostream& os) {
    std::string line;
    for (const auto& rec : table.records) {
        line = "{\"coordinates\":{";
        for (std::size_t i = 0; i < rec.coordinates.size(); ++i) {
            if (i) line += ',';
            line += '"';
            line += table.axis_names[i];
            line += "\":";
            format_number(line, rec.coordinates[i]);
        }
        line += "},\"results\":{";
        for (std::size_t i = 0; i < rec.results.size(); ++i) {
            if (i) line += ',';
            line += '"';
            line += table.value_columns[i];
            line += "\":";
            if (std::isnan(rec.results[i])) {
                line += "null";
            } else {
                format_number(line, rec.results[i]);
            }
        }
        line += '}';
        if (!rec.error.empty()) {
            line += ",\"error\":\"" + json_escape(rec.error) + '"';
        }
        line += "}\n";
        os << line;
    }
}

void write_gnuplot(const SweepTable& table, std::ostream& os) {
    std::string line = "#";
    for (const auto& name : table.axis_names) {
        line += ' ';
        line += name;
    }
    for (const auto& col : table.value_columns) {
        line += ' ';
        line += col;
    }
    line += '\n';
    os << line;
    for (const auto& rec : table.records) {
        line.clear();
        for (std::size_t i = 0; i < rec.coordinates.size(); ++i) {
            if (i) line += ' ';
            format_number(line, rec.coordinates[i]);
        }
        for (double v : rec.results) {
            line += ' ';
            format_number(line, v);
        }
        line += '\n';
        os << line;
    }
}

}  // namespace udw
