#include "udw/verify.hpp"

#include "udw/errors.hpp"
#include "udw/qfi.hpp"
#include "udw/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

namespace udw {

namespace {

constexpr double kPi = std::numbers::pi;

// Accumulates failed checks; a suite passes iff no check fired.
struct Checker {
    std::ostringstream log;
    int failures = 0;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        ++failures;
        log << "  FAIL " << what << "\n";
    }

    void require_close(double got, double want, double tol, const std::string& what) {
        const double diff = std::abs(got - want);
        if (diff <= tol) return;
        ++failures;
        log << "  FAIL " << what << ": got " << got << ", want " << want << " (diff " << diff
            << " > " << tol << ")\n";
    }

    void require_rel(double got, double want, double tol, const std::string& what) {
        const double scale = std::max(std::abs(want), 1e-300);
        require_close(got, want, tol * scale, what);
    }
};

// gamma0 = 1 in these detector params, so lab time equals rescaled time
// and the inertial rates are A = 1, B = -1.
DetectorParams unit_gamma0_params() { return DetectorParams(1.0, std::sqrt(2.0 * kPi)); }

double max_component_diff(const BlochState& x, const BlochState& y) {
    return std::max({std::abs(x.w1 - y.w1), std::abs(x.w2 - y.w2), std::abs(x.w3 - y.w3)});
}

// --- suite: inertial -------------------------------------------------------

void suite_inertial(Checker& ck) {
    const DetectorParams p = unit_gamma0_params();
    const RateCoefficients rc = rates_inertial(p);
    ck.require_close(rc.A(), 1.0, 1e-15, "inertial A = gamma0");
    ck.require_close(rc.B(), -1.0, 1e-15, "inertial B = -gamma0");
    // The Bloch equations are linear, so d omega / d theta solves the
    // homogeneous system from the rotated initial vector (theta + pi/2);
    // likewise for phi with an extra sin(theta) scale.  That gives the
    // ODE-route derivatives without finite differencing.
    const RateCoefficients homogeneous{0.5, 0.5, 0.0};
    const std::vector<double> thetas = {0.0, 0.4, 0.9, kPi / 2, 2.2, 3.0};
    const std::vector<double> phis = {0.0, 1.1, 2.7, 5.5};
    const std::vector<double> taus = {0.0, 0.3, 1.0, 2.5};
    for (double th : thetas) {
        for (double tau : taus) {
            const double E = std::exp(-tau);
            ck.require_close(qfi_theta_closed_h(th, tau, 1.0), E, 1e-12,
                             "closed F_theta = e^{-tau}");
            ck.require_close(qfi_phi_closed_h(th, tau, 1.0), std::sin(th) * std::sin(th) * E,
                             1e-12, "closed F_phi = sin^2 e^{-tau}");
            for (double ph : phis) {
                const InitialState init{th, ph};
                const BlochState ode = evolve_ode(init, rc, p, tau);
                const BlochState closed = bloch_rescaled(th, ph, tau, 1.0);
                ck.require(max_component_diff(ode, closed) <= 1e-8, "ODE vs closed Bloch state");

                const BlochState dth =
                    evolve_ode(InitialState{th + kPi / 2, ph}, homogeneous, p, tau);
                const BlochState dph_raw =
                    evolve_ode(InitialState{kPi / 2, ph + kPi / 2}, homogeneous, p, tau);
                const double s = std::sin(th);
                const double f_theta = qfi_bloch(ode, {dth.w1, dth.w2, dth.w3});
                const double f_phi = qfi_bloch(ode, {s * dph_raw.w1, s * dph_raw.w2, 0.0});
                ck.require_close(f_theta, E, 1e-8, "ODE-route F_theta");
                ck.require_close(f_phi, s * s * E, 1e-8, "ODE-route F_phi");
            }
        }
    }
}

// --- suite: thermality -----------------------------------------------------

void suite_thermality(Checker& ck) {
    const DetectorParams p(1.0, 0.1);
    const double mu2 = p.mu * p.mu;
    for (double a : {0.5, 1.0, kPi, 10.0}) {
        const NumericRates nr = rates_numeric(Trajectory::uniform_acceleration(a), p, {});
        std::ostringstream tag;
        tag << "a=" << a;
        ck.require_rel(nr.rates.gamma_plus, mu2 * planck_factor(1.0, a), 1e-3,
                       "numeric gamma_+ vs Planck factor, " + tag.str());
        ck.require_rel(nr.rates.gamma_minus, mu2 * planck_factor_stimulated(1.0, a), 1e-3,
                       "numeric gamma_- vs stimulated Planck factor, " + tag.str());
        ck.require_rel(nr.rates.gamma_plus / nr.rates.gamma_minus, std::exp(-2.0 * kPi / a),
                       1e-3, "detailed balance gamma_+/gamma_-, " + tag.str());
    }
}

// --- suite: expansion ------------------------------------------------------

void suite_expansion(Checker& ck) {
    const DetectorParams p(1.0, 0.1);
    auto truncation_error = [&](double w) {
        const NumericRates nr = rates_numeric(Trajectory::drifted(1.0, w), p, {});
        const double d = std::abs(nr.rates.A() - rates_nonrel(p, 1.0, w).A());
        ck.require(d > 10.0 * nr.error_estimate,
                   "w^4 truncation term resolved above quadrature error");
        return d;
    };
    const double d_big = truncation_error(0.05);
    const double d_small = truncation_error(0.025);
    // Halving w must shrink the difference by 2^4 = 16, within a factor 2.
    const double ratio = d_big / d_small;
    ck.require(ratio > 8.0 && ratio < 32.0,
               "truncation error ratio " + std::to_string(ratio) + " in [8, 32]");
}

// --- suite: routes ---------------------------------------------------------

const std::vector<double> kGridTheta = {0.3, 0.8, 1.3, 2.0, 2.8};
const std::vector<double> kGridTau = {0.2, 0.7, 1.3, 2.1, 3.0};
const std::vector<double> kGridA = {0.7, 1.5, kPi, 6.0, 12.0};
const std::vector<double> kGridW = {0.0, 0.05, 0.1};

void suite_routes(Checker& ck) {
    for (double th : kGridTheta)
        for (double tau : kGridTau)
            for (double a : kGridA)
                for (double w : kGridW) {
                    QfiPoint pt{th, 0.0, tau, a, w};
                    std::ostringstream tag;
                    tag << "(theta=" << th << ", tau=" << tau << ", a=" << a << ", w=" << w
                        << ")";
                    auto spread = [&](ParamLabel param, std::vector<QfiMethod> ms) {
                        double lo = 1e300, hi = -1e300;
                        for (QfiMethod m : ms) {
                            const double f = qfi_evaluate(param, m, pt).fisher;
                            lo = std::min(lo, f);
                            hi = std::max(hi, f);
                        }
                        ck.require(hi - lo <= 1e-6 * std::max(std::abs(hi), 1e-12),
                                   std::string("route spread for ") + to_string(param) + " at " +
                                       tag.str());
                    };
                    spread(ParamLabel::Phi, {QfiMethod::ClosedForm, QfiMethod::BlochDerivative,
                                             QfiMethod::SldOracle});
                    spread(ParamLabel::Theta, {QfiMethod::ClosedForm, QfiMethod::BlochDerivative,
                                               QfiMethod::SldOracle});
                    spread(ParamLabel::Beta,
                           {QfiMethod::BlochDerivative, QfiMethod::SldOracle});
                }
}

// --- suite: figures --------------------------------------------------------

void suite_figures(Checker& ck) {
    // Symmetry axes: F_phi about theta = pi/2, F_theta about theta = 0,
    // F_beta about theta = pi.
    for (double d : {0.2, 0.6, 1.0, 1.4}) {
        for (double tau : {1.0, 2.0}) {
            const double fp1 = qfi_phi_closed(kPi / 2 - d, tau, kPi, 0.01);
            const double fp2 = qfi_phi_closed(kPi / 2 + d, tau, kPi, 0.01);
            ck.require_close(fp1, fp2, 1e-12, "F_phi symmetric about theta = pi/2");
            const double ft1 = qfi_theta_closed(d, tau, kPi, 0.01);
            const double ft2 = qfi_theta_closed(-d, tau, kPi, 0.01);
            ck.require_close(ft1, ft2, 1e-12, "F_theta symmetric about theta = 0");
            const double fb1 = qfi_beta(kPi - d, 0.0, tau, 10.0, 0.01);
            const double fb2 = qfi_beta(kPi + d, 0.0, tau, 10.0, 0.01);
            ck.require_close(fb1, fb2, 1e-12, "F_beta symmetric about theta = pi");
        }
    }

    // Degradation with acceleration: strictly decreasing, negligible by a = 50.
    {
        double prev_phi = 2.0, prev_theta = 2.0, last_phi = 0.0, last_theta = 0.0;
        bool mono = true;
        for (int i = 0; i <= 25; ++i) {
            const double a = 0.5 + (50.0 - 0.5) * i / 25.0;
            last_phi = qfi_phi_closed(kPi / 2, 1.0, a, 0.01);
            last_theta = qfi_theta_closed(0.0, 1.0, a, 0.01);
            mono = mono && last_phi < prev_phi && last_theta < prev_theta;
            prev_phi = last_phi;
            prev_theta = last_theta;
        }
        ck.require(mono, "F_phi and F_theta strictly decreasing in a");
        ck.require(last_phi < 1e-3, "F_phi below 1e-3 at a = 50");
        ck.require(last_theta < 1e-3, "F_theta below 1e-3 at a = 50");
    }

    // Drift enhancement: strictly increasing in w on [0, 0.1].
    {
        double pp = -1.0, pt = -1.0, pb = -1.0;
        bool mono = true;
        for (int i = 0; i <= 20; ++i) {
            const double w = 0.1 * i / 20.0;
            const double fp = qfi_phi_closed(kPi / 2, 1.0, kPi, w);
            const double ft = qfi_theta_closed(0.0, 1.0, kPi, w);
            const double fb = qfi_beta(kPi, 0.0, 1.0, 1.0, w);
            mono = mono && fp > pp && ft > pt && fb > pb;
            pp = fp;
            pt = ft;
            pb = fb;
        }
        ck.require(mono, "F_phi, F_theta, F_beta strictly increasing in w");
    }

    // Long-time plateau of F_beta is theta-independent at beta = 10.
    {
        const double f1 = qfi_beta(kPi, 0.0, 50.0, 10.0, 0.01);
        const double f2 = qfi_beta(2.0 * kPi / 3, 0.0, 50.0, 10.0, 0.01);
        const double f3 = qfi_beta(kPi / 2, 0.0, 50.0, 10.0, 0.01);
        ck.require_rel(f2, f1, 0.01, "F_beta plateau theta = 2pi/3 vs pi");
        ck.require_rel(f3, f1, 0.01, "F_beta plateau theta = pi/2 vs pi");
    }

    // beta = 1 curve: interior maximum, then a nonzero plateau.
    {
        std::vector<double> f;
        for (int i = 0; i <= 100; ++i) f.push_back(qfi_beta(kPi, 0.0, 0.5 * i, 1.0, 0.01));
        const auto it = std::max_element(f.begin(), f.end());
        const std::size_t imax = static_cast<std::size_t>(it - f.begin());
        ck.require(imax > 0 && imax < f.size() - 1, "F_beta(beta=1) has an interior maximum");
        ck.require(f.back() > 0.01, "F_beta(beta=1) plateau above 0.01 at tau = 50");
        ck.require(*it > f.back(), "F_beta(beta=1) maximum exceeds the plateau");
    }
}

// --- suite: ultrarel -------------------------------------------------------

void suite_ultrarel(Checker& ck) {
    for (double th : {0.0, kPi / 3, kPi / 2, 2.5}) {
        const auto [ft, fp] = qfi_ultrarel(th);
        ck.require_close(ft, 1.0, 0.0, "qfi_ultrarel F_theta exactly 1");
        ck.require_close(fp, std::sin(th) * std::sin(th), 0.0,
                         "qfi_ultrarel F_phi exactly sin^2");
    }

    const DetectorParams p(1.0, 0.1);
    const RateCoefficients limit = rates_ultrarel_limit(p);
    ck.require(limit.A() == 0.0 && limit.B() == 0.0, "w -> infinity limit A = B = 0");

    // Closed-system evolution: QFI stays pinned at the tau = 0 values.
    for (double tau : {0.0, 10.0, 100.0}) {
        for (double th : {0.7, kPi / 2, 2.9}) {
            const BlochState s = evolve_closed_form(InitialState{th, 0.4}, limit, p, tau);
            ck.require_close(s.norm(), 1.0, 1e-12, "unitary evolution conserves |omega|");
            ck.require_close(s.w3, std::cos(th), 1e-12, "unitary evolution fixes omega_3");
            const BlochState dth = evolve_closed_form(InitialState{th + kPi / 2, 0.4}, limit,
                                                      p, tau);
            const BlochState dph = evolve_closed_form(InitialState{kPi / 2, 0.4 + kPi / 2},
                                                      limit, p, tau);
            const double sn = std::sin(th);
            ck.require_close(qfi_bloch(s, {dth.w1, dth.w2, dth.w3}), 1.0, 1e-12,
                             "evolved F_theta = 1 for all tau");
            ck.require_close(qfi_bloch(s, {sn * dph.w1, sn * dph.w2, 0.0}), sn * sn, 1e-12,
                             "evolved F_phi = sin^2 for all tau");
        }
    }

    const RateCoefficients r10 = rates_ultrarel(p, kPi, 10.0);
    const RateCoefficients r1 = rates_ultrarel(p, kPi, 1.0);
    ck.require_rel(r10.A(), 2.0897605614129661861e-7, 1e-12,
                   "ultra-relativistic A at (a=pi, w=10)");
    ck.require_rel(r10.A() * 1e4, r1.A(), 1e-12, "A carries the exact 1/w^4 factor");
    ck.require_rel(r10.B() * 1e4, r1.B(), 1e-12, "B carries the exact 1/w^4 factor");
}

// --- suite: derivatives ----------------------------------------------------

void suite_derivatives(Checker& ck) {
    for (double th : kGridTheta)
        for (double tau : kGridTau)
            for (double a : kGridA)
                for (double w : kGridW) {
                    const double beta = 2.0 * kPi / a;
                    const auto an = dbloch_dbeta(th, 0.7, tau, beta, w);
                    const auto fd = dbloch_dbeta_fd(th, 0.7, tau, beta, w);
                    double diff = 0.0;
                    for (int i = 0; i < 3; ++i)
                        diff = std::max(diff, std::abs(an[i] - fd[i]));
                    std::ostringstream tag;
                    tag << "d omega / d beta at (theta=" << th << ", tau=" << tau
                        << ", a=" << a << ", w=" << w << "): diff " << diff;
                    ck.require(diff <= 1e-6, tag.str());
                }
}

// --- suite: determinism ----------------------------------------------------

void suite_determinism(Checker& ck) {
    for (const std::string id : {"fig1a", "fig8"}) {
        std::ostringstream first, second;
        write_csv(run_figure(id), first);
        write_csv(run_figure(id), second);
        ck.require(first.str() == second.str(), "byte-identical CSV for repeated " + id);
        ck.require(run_figure(id).max_method_spread() <= 1e-6,
                   "method columns agree within 1e-6 for " + id);
    }
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"inertial", "thermality", "expansion", "routes",
            "figures",  "ultrarel",   "derivatives", "determinism"};
}

SuiteResult run_suite(const std::string& name) {
    Checker ck;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        if (name == "inertial") suite_inertial(ck);
        else if (name == "thermality") suite_thermality(ck);
        else if (name == "expansion") suite_expansion(ck);
        else if (name == "routes") suite_routes(ck);
        else if (name == "figures") suite_figures(ck);
        else if (name == "ultrarel") suite_ultrarel(ck);
        else if (name == "derivatives") suite_derivatives(ck);
        else if (name == "determinism") suite_determinism(ck);
        else throw ConfigInvalid("verify: unknown suite '" + name + "'");
    } catch (const ConfigInvalid&) {
        throw;
    } catch (const std::exception& e) {
        ++ck.failures;
        ck.log << "  FAIL unexpected exception: " << e.what() << "\n";
    }
    SuiteResult res;
    res.name = name;
    res.passed = ck.failures == 0;
    res.detail = ck.log.str();
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<SuiteResult> run_all_suites() {
    std::vector<SuiteResult> out;
    for (const auto& name : suite_names()) out.push_back(run_suite(name));
    return out;
}

}  // namespace udw
