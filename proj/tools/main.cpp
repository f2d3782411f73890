// Command-line front end: rate coefficients, Bloch evolution, quantum Fisher
// information, figure-preset sweeps, free-form grids, and the verification
// suites.  All physical inputs are dimensionless rescaled quantities
// (omega0 = gamma0 = 1) unless --raw-units is given.

#include <CLI11.hpp>
#include <json.hpp>

#include "udw/errors.hpp"
#include "udw/qfi.hpp"
#include "udw/sweep.hpp"
#include "udw/verify.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

bool g_json_errors = false;

void emit_error(const std::string& type, const std::string& message) {
    if (g_json_errors) {
        json err = {{"error", message}, {"type", type}};
        std::cerr << err.dump() << "\n";
    } else {
        std::cerr << "error: " << message << "\n";
    }
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct RawUnits {
    bool enabled = false;
    double omega0 = 1.0;
    double mu = 0.1;

    // Converts a raw (a, tau) pair into rescaled units and reports it.
    void convert(double& a, double& tau) const {
        if (!enabled) return;
        const udw::DetectorParams p(omega0, mu);
        const double a_resc = a / omega0;
        const double tau_resc = p.gamma0() * tau;
        std::cout << "raw units: omega0=" << num(omega0) << " mu=" << num(mu)
                  << " gamma0=" << num(p.gamma0()) << "; a=" << num(a) << " -> a~=" << num(a_resc)
                  << ", tau=" << num(tau) << " -> tau~=" << num(tau_resc) << "\n";
        a = a_resc;
        tau = tau_resc;
    }
};

udw::QfiMethod parse_method(const std::string& s) {
    if (s == "closed-form") return udw::QfiMethod::ClosedForm;
    if (s == "bloch-derivative") return udw::QfiMethod::BlochDerivative;
    if (s == "sld-oracle") return udw::QfiMethod::SldOracle;
    throw udw::ConfigInvalid("unknown method '" + s + "'");
}

udw::ParamLabel parse_param(const std::string& s) {
    if (s == "theta") return udw::ParamLabel::Theta;
    if (s == "phi") return udw::ParamLabel::Phi;
    if (s == "beta") return udw::ParamLabel::Beta;
    throw udw::ConfigInvalid("unknown parameter '" + s + "'");
}

void print_rates(const std::string& label, const udw::RateCoefficients& rc) {
    std::cout << label << ": gamma_plus=" << num(rc.gamma_plus)
              << " gamma_minus=" << num(rc.gamma_minus) << " gamma_z=" << num(rc.gamma_z)
              << " A=" << num(rc.A()) << " B=" << num(rc.B()) << "\n";
}

void write_table(const udw::SweepTable& table, const std::string& path,
                 const std::string& format) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!path.empty() && path != "-") {
        file.open(path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
        os = &file;
    }
    if (format == "csv") udw::write_csv(table, *os);
    else if (format == "jsonl") udw::write_jsonl(table, *os);
    else if (format == "gnuplot") udw::write_gnuplot(table, *os);
    else throw udw::ConfigInvalid("unknown format '" + format + "'");
}

udw::SweepConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw udw::ConfigInvalid("cannot read config file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw udw::ConfigInvalid(std::string("config parse error: ") + e.what());
    }
    if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != 1)
        throw udw::ConfigInvalid("config must declare schema_version 1");

    udw::SweepConfig cfg;
    cfg.param = parse_param(doc.value("param", "phi"));
    if (doc.contains("methods")) {
        cfg.methods.clear();
        for (const auto& m : doc["methods"]) cfg.methods.push_back(parse_method(m));
    }
    if (!doc.contains("axes") || !doc["axes"].is_array())
        throw udw::ConfigInvalid("config needs an 'axes' array");
    for (const auto& ax : doc["axes"]) {
        udw::AxisSpec spec;
        spec.name = ax.value("name", "");
        if (ax.contains("values")) {
            spec.values = ax["values"].get<std::vector<double>>();
        } else {
            spec.start = ax.value("start", 0.0);
            spec.stop = ax.value("stop", 0.0);
            spec.count = ax.value("count", 0);
            const std::string sp = ax.value("spacing", "linear");
            if (sp == "linear") spec.spacing = udw::Spacing::Linear;
            else if (sp == "log") spec.spacing = udw::Spacing::Log;
            else throw udw::ConfigInvalid("axis spacing must be 'linear' or 'log'");
        }
        cfg.axes.push_back(std::move(spec));
    }
    if (doc.contains("fixed")) {
        for (const auto& [key, value] : doc["fixed"].items())
            cfg.fixed[key] = value.get<double>();
    }
    cfg.allow_large_w = doc.value("allow_large_w", false);
    return cfg;
}

int run(int argc, char** argv) {
    CLI::App app{"Unruh-DeWitt detector dynamics and quantum Fisher information"};
    app.require_subcommand(1);
    app.fallthrough();  // lets --json appear after the subcommand as well
    app.add_flag("--json", g_json_errors, "emit machine-readable errors on stderr");

    RawUnits raw;

    // --- rates ---
    auto* rates_cmd = app.add_subcommand("rates", "Lindblad rate coefficients");
    std::string traj_kind = "uniform";
    double r_a = 1.0, r_w = 0.0, r_omega0 = 1.0, r_mu = 0.1;
    bool r_numeric = false;
    rates_cmd->add_option("--trajectory", traj_kind,
                          "inertial | uniform | drifted | nonrel | ultrarel")
        ->check(CLI::IsMember({"inertial", "uniform", "drifted", "nonrel", "ultrarel"}));
    rates_cmd->add_option("--a", r_a, "proper acceleration");
    rates_cmd->add_option("--w", r_w, "four-velocity drift component");
    rates_cmd->add_option("--omega0", r_omega0, "detector level spacing");
    rates_cmd->add_option("--mu", r_mu, "coupling constant");
    rates_cmd->add_flag("--numeric", r_numeric, "also run the quadrature route and compare");

    // --- evolve ---
    auto* evolve_cmd = app.add_subcommand("evolve", "Bloch-vector evolution");
    double e_theta = 0.0, e_phi = 0.0, e_tau = 0.0, e_w = 0.0;
    std::optional<double> e_a, e_beta;
    evolve_cmd->add_option("--theta", e_theta, "initial weight parameter")->required();
    evolve_cmd->add_option("--phi", e_phi, "initial phase parameter");
    evolve_cmd->add_option("--tau", e_tau, "rescaled proper time")->required();
    evolve_cmd->add_option("--a", e_a, "rescaled acceleration (omit for inertial)");
    evolve_cmd->add_option("--beta", e_beta, "inverse Unruh temperature 2 pi / a");
    evolve_cmd->add_option("--w", e_w, "four-velocity drift component");
    evolve_cmd->add_flag("--raw-units", raw.enabled, "inputs a, tau in raw units");
    evolve_cmd->add_option("--omega0", raw.omega0, "level spacing (raw-units mode)");
    evolve_cmd->add_option("--mu", raw.mu, "coupling constant (raw-units mode)");

    // --- qfi ---
    auto* qfi_cmd = app.add_subcommand("qfi", "quantum Fisher information");
    std::string q_param = "phi";
    std::vector<std::string> q_methods;
    double q_theta = 0.0, q_phi = 0.0, q_tau = 0.0, q_w = 0.0;
    std::optional<double> q_a, q_beta;
    qfi_cmd->add_option("--param", q_param, "theta | phi | beta")
        ->check(CLI::IsMember({"theta", "phi", "beta"}))
        ->required();
    qfi_cmd->add_option("--method", q_methods,
                        "closed-form | bloch-derivative | sld-oracle (repeatable)");
    qfi_cmd->add_option("--theta", q_theta, "initial weight parameter")->required();
    qfi_cmd->add_option("--phi", q_phi, "initial phase parameter");
    qfi_cmd->add_option("--tau", q_tau, "rescaled proper time")->required();
    qfi_cmd->add_option("--a", q_a, "rescaled acceleration");
    qfi_cmd->add_option("--beta", q_beta, "inverse Unruh temperature 2 pi / a");
    qfi_cmd->add_option("--w", q_w, "four-velocity drift component");
    qfi_cmd->add_flag("--raw-units", raw.enabled, "inputs a, tau in raw units");
    qfi_cmd->add_option("--omega0", raw.omega0, "level spacing (raw-units mode)");
    qfi_cmd->add_option("--mu", raw.mu, "coupling constant (raw-units mode)");

    // --- figure ---
    auto* figure_cmd = app.add_subcommand("figure", "write a named figure preset");
    std::string f_id, f_out, f_format = "csv";
    figure_cmd->add_option("id", f_id, "figure identifier (fig1a .. fig8)")->required();
    figure_cmd->add_option("--out", f_out, "output path ('-' for stdout)");
    figure_cmd->add_option("--format", f_format, "csv | jsonl | gnuplot");

    // --- sweep ---
    auto* sweep_cmd = app.add_subcommand("sweep", "free-form parameter grid");
    std::string s_config, s_out, s_format = "csv", s_param;
    bool s_allow_large_w = false;
    sweep_cmd->add_option("--config", s_config, "JSON sweep description (schema_version 1)")
        ->required();
    sweep_cmd->add_option("--out", s_out, "output path ('-' for stdout)");
    sweep_cmd->add_option("--format", s_format, "csv | jsonl | gnuplot");
    sweep_cmd->add_option("--param", s_param, "override the estimated parameter");
    sweep_cmd->add_flag("--allow-large-w", s_allow_large_w,
                        "lift the |w| <= 0.2 validity guard");

    // --- verify ---
    auto* verify_cmd = app.add_subcommand("verify", "run the verification suites");
    std::vector<std::string> v_suites;
    verify_cmd->add_option("--suite", v_suites, "suite name (repeatable; default all)")
        ->check(CLI::IsMember(udw::suite_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;  // usage error
    }

    if (*rates_cmd) {
        const udw::DetectorParams p(r_omega0, r_mu);
        udw::Trajectory traj = udw::Trajectory::inertial(r_w);
        if (traj_kind == "uniform") traj = udw::Trajectory::uniform_acceleration(r_a);
        else if (traj_kind == "drifted") traj = udw::Trajectory::drifted(r_a, r_w);
        else if (traj_kind == "nonrel") traj = udw::Trajectory::drifted_nonrel_expansion(r_a, r_w);
        else if (traj_kind == "ultrarel") traj = udw::Trajectory::drifted_ultrarel(r_a, r_w);

        udw::RateCoefficients analytic;
        if (traj_kind == "inertial") analytic = udw::rates_inertial(p);
        else if (traj_kind == "ultrarel") analytic = udw::rates_ultrarel(p, r_a, r_w);
        else analytic = udw::rates_nonrel(p, r_a, r_w);
        const char* analytic_label =
            traj_kind == "drifted" ? "analytic (w^2 truncation)" : "analytic";
        print_rates(analytic_label, analytic);

        if (r_numeric) {
            const udw::NumericRates nr = udw::rates_numeric(traj, p, {});
            print_rates("numeric", nr.rates);
            std::cout << "error_estimate=" << num(nr.error_estimate)
                      << " tail_bound=" << num(nr.tail_bound) << "\n";
            auto rel = [](double x, double y) {
                return std::abs(x - y) / std::max({std::abs(x), std::abs(y), 1e-300});
            };
            std::cout << "relative difference: gamma_plus="
                      << num(rel(analytic.gamma_plus, nr.rates.gamma_plus))
                      << " gamma_minus=" << num(rel(analytic.gamma_minus, nr.rates.gamma_minus))
                      << " A=" << num(rel(analytic.A(), nr.rates.A())) << "\n";
        }
        return 0;
    }

    if (*evolve_cmd) {
        if (e_a && e_beta) throw udw::ConfigInvalid("give either --a or --beta, not both");
        double a = e_a ? *e_a : (e_beta ? 2.0 * kPi / *e_beta : 0.0);
        raw.convert(a, e_tau);
        const double h = (e_a || e_beta) ? udw::decay_factor(a, e_w) : 1.0;
        const udw::BlochState s = udw::bloch_rescaled(e_theta, e_phi, e_tau, h);
        std::cout << "decay factor h=" << num(h) << "\n";
        std::cout << "w1=" << num(s.w1) << " w2=" << num(s.w2) << " w3=" << num(s.w3)
                  << " |w|=" << num(s.norm()) << "\n";
        return 0;
    }

    if (*qfi_cmd) {
        if (!q_a && !q_beta) throw udw::ConfigInvalid("--a or --beta is required");
        if (q_a && q_beta) throw udw::ConfigInvalid("give either --a or --beta, not both");
        double a = q_a ? *q_a : 2.0 * kPi / *q_beta;
        raw.convert(a, q_tau);
        const udw::ParamLabel param = parse_param(q_param);
        std::vector<udw::QfiMethod> methods;
        for (const auto& m : q_methods) methods.push_back(parse_method(m));
        if (methods.empty()) {
            methods = {udw::QfiMethod::ClosedForm, udw::QfiMethod::BlochDerivative,
                       udw::QfiMethod::SldOracle};
            if (param == udw::ParamLabel::Beta)
                methods = {udw::QfiMethod::BlochDerivative, udw::QfiMethod::SldOracle};
        }
        const udw::QfiPoint pt{q_theta, q_phi, q_tau, a, q_w};
        for (udw::QfiMethod m : methods) {
            const udw::QfiResult res = udw::qfi_evaluate(param, m, pt);
            std::cout << to_string(param) << "=" << num(res.value)
                      << " fisher=" << num(res.fisher) << " method=" << to_string(m)
                      << " derivative_norm=" << num(res.derivative_norm) << "\n";
        }
        return 0;
    }

    if (*figure_cmd) {
        write_table(udw::run_figure(f_id), f_out, f_format);
        return 0;
    }

    if (*sweep_cmd) {
        udw::SweepConfig cfg = load_sweep_config(s_config);
        if (!s_param.empty()) cfg.param = parse_param(s_param);
        if (s_allow_large_w) cfg.allow_large_w = true;
        write_table(udw::run_grid(cfg), s_out, s_format);
        return 0;
    }

    if (*verify_cmd) {
        if (v_suites.empty()) v_suites = udw::suite_names();
        bool all_passed = true;
        for (const auto& name : v_suites) {
            const udw::SuiteResult res = udw::run_suite(name);
            std::printf("%-12s %s (%.2fs)\n", name.c_str(), res.passed ? "PASS" : "FAIL",
                        res.seconds);
            if (!res.passed) {
                std::cout << res.detail;
                all_passed = false;
            }
        }
        return all_passed ? 0 : 1;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const udw::ConfigInvalid& e) {
        emit_error("ConfigInvalid", e.what());
        return 2;
    } catch (const udw::UnknownFigure& e) {
        emit_error("UnknownFigure", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        emit_error("InvalidArgument", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("RuntimeError", e.what());
        return 1;
    }
}
