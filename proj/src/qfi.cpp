#include "udw/qfi.hpp"

#include "udw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace udw {

namespace {

constexpr double kPurityBand = 1e-9;       // pure/mixed branch threshold on |w|
constexpr double kBranchGuard = 1e-6;      // max |w . dw| tolerated on the sphere
constexpr double kEigenFloor = 1e-12;      // li + lj cutoff in the SLD sum
constexpr double kNegativityFloor = -1e-10;

double dot(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

std::array<double, 3> to_array(const BlochState& s) { return {s.w1, s.w2, s.w3}; }

std::array<double, 3> dbloch_dtheta(double theta, double phi, double tau, double h) {
    const double half = std::exp(-0.5 * h * tau);
    const double full = std::exp(-h * tau);
    return {std::cos(theta) * std::cos(tau + phi) * half,
            std::cos(theta) * std::sin(tau + phi) * half, -std::sin(theta) * full};
}

std::array<double, 3> dbloch_dphi(double theta, double phi, double tau, double h) {
    const double half = std::exp(-0.5 * h * tau);
    return {-std::sin(theta) * std::sin(tau + phi) * half,
            std::sin(theta) * std::cos(tau + phi) * half, 0.0};
}

double sld_fisher_once(const std::function<Eigen::Matrix2cd(double)>& rho_of_X, double X,
                       double step) {
    const Eigen::Matrix2cd drho = (rho_of_X(X + step) - rho_of_X(X - step)) / (2.0 * step);
    const Eigen::Matrix2cd rho = rho_of_X(X);

    if ((rho - rho.adjoint()).norm() > 1e-10)
        throw NonPhysicalDensity("qfi_sld: density matrix not Hermitian");
    if (std::abs(rho.trace().real() - 1.0) > 1e-9)
        throw NonPhysicalDensity("qfi_sld: density matrix trace != 1");

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
    const auto& lam = es.eigenvalues();
    const auto& vec = es.eigenvectors();
    for (int i = 0; i < 2; ++i) {
        if (lam(i) < kNegativityFloor) {
            std::ostringstream msg;
            msg << "qfi_sld: negative eigenvalue " << lam(i);
            throw NonPhysicalDensity(msg.str());
        }
    }
    double fisher = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const double s = lam(i) + lam(j);
            if (s > kEigenFloor) {
                const std::complex<double> elem = vec.col(i).adjoint() * drho * vec.col(j);
                fisher += 2.0 * std::norm(elem) / s;
            }
        }
    }
    return fisher;
}

}  // namespace

const char* to_string(ParamLabel p) {
    switch (p) {
        case ParamLabel::Theta: return "theta";
        case ParamLabel::Phi: return "phi";
        case ParamLabel::Beta: return "beta";
    }
    return "?";
}

const char* to_string(QfiMethod m) {
    switch (m) {
        case QfiMethod::ClosedForm: return "closed-form";
        case QfiMethod::BlochDerivative: return "bloch-derivative";
        case QfiMethod::SldOracle: return "sld-oracle";
    }
    return "?";
}

double qfi_bloch(const BlochState& omega, const std::array<double, 3>& domega) {
    const double n = omega.norm();
    if (n > 1.0 + 1e-9) throw std::invalid_argument("qfi_bloch: |omega| > 1");
    const auto w = to_array(omega);
    const double d2 = dot(domega, domega);
    const double wd = dot(w, domega);
    if (n >= 1.0 - kPurityBand) {
        if (std::abs(wd) > kBranchGuard) {
            std::ostringstream msg;
            msg << "qfi_bloch: pure state with w.dw = " << wd << " moving off the sphere";
            throw BranchAmbiguity(msg.str());
        }
        return d2;
    }
    return d2 + wd * wd / (1.0 - n * n);
}

Eigen::Matrix2cd density_matrix(const BlochState& w) {
    Eigen::Matrix2cd rho;
    rho << 0.5 * (1.0 + w.w3), 0.5 * std::complex<double>(w.w1, -w.w2),
        0.5 * std::complex<double>(w.w1, w.w2), 0.5 * (1.0 - w.w3);
    return rho;
}

double qfi_sld(const std::function<Eigen::Matrix2cd(double)>& rho_of_X, double X,
               double fd_step) {
    if (!(fd_step > 0.0)) throw std::invalid_argument("qfi_sld: fd_step must be > 0");
    const double coarse = sld_fisher_once(rho_of_X, X, fd_step);
    const double fine = sld_fisher_once(rho_of_X, X, 0.5 * fd_step);
    const double diff = std::abs(fine - coarse);
    if (diff > 1e-6 * std::max(std::abs(fine), 1e-8)) {
        std::ostringstream msg;
        msg << "qfi_sld: fisher changed by " << diff << " when halving fd_step " << fd_step;
        throw DerivativeUnstable(msg.str());
    }
    return fine;
}

BlochState bloch_rescaled(double theta, double phi, double tau_resc, double h) {
    return propagate(InitialState{theta, phi}.bloch(), h, -1.0, 1.0, tau_resc);
}

std::array<double, 3> dbloch_dh(double theta, double phi, double tau, double h) {
    const BlochState om = bloch_rescaled(theta, phi, tau, h);
    const double E = std::exp(-h * tau);
    // d/dh [cos(theta) E - (1 - E)/h]
    const double d3 = -tau * std::cos(theta) * E + (1.0 - E) / (h * h) - tau * E / h;
    return {-0.5 * tau * om.w1, -0.5 * tau * om.w2, d3};
}

double qfi_phi_closed_h(double theta, double tau, double h) {
    const double s = std::sin(theta);
    return s * s * std::exp(-h * tau);
}

double qfi_phi_closed(double theta, double tau, double a_resc, double w) {
    return qfi_phi_closed_h(theta, tau, decay_factor(a_resc, w));
}

double qfi_theta_closed_h(double theta, double tau, double h) {
    if (tau < 0.0) throw std::invalid_argument("qfi_theta_closed: tau must be >= 0");
    const double E = std::exp(-h * tau);
    const double c = std::cos(theta);
    const double s2 = std::sin(theta) * std::sin(theta);
    if (1.0 - E < 1e-14) return 1.0;  // initial pure state
    const double w3 = c * E - (1.0 - E) / h;
    const double purity = 1.0 - s2 * E - w3 * w3;  // 1 - |w|^2
    if (purity <= 0.0) {
        std::ostringstream msg;
        msg << "qfi_theta_closed: purity denominator " << purity << " <= 0 at theta=" << theta
            << " tau=" << tau << " h=" << h;
        throw FormulaDomainError(msg.str());
    }
    const double m = 1.0 + h * c;
    return c * c * E + s2 * E * E + s2 * E * E * (1.0 - E) * (1.0 - E) * m * m / (h * h * purity);
}

double qfi_theta_closed(double theta, double tau, double a_resc, double w) {
    return qfi_theta_closed_h(theta, tau, decay_factor(a_resc, w));
}

std::array<double, 3> dbloch_dbeta(double theta, double phi, double tau, double beta,
                                   double w) {
    const double h = decay_factor(2.0 * std::numbers::pi / beta, w);
    const double hp = decay_factor_dbeta(beta, w);
    auto d = dbloch_dh(theta, phi, tau, h);
    for (double& x : d) x *= hp;
    return d;
}

std::array<double, 3> dbloch_dbeta_fd(double theta, double phi, double tau, double beta,
                                      double w, double step0) {
    if (step0 <= 0.0) step0 = 1e-5 * std::max(1.0, std::abs(beta));
    step0 = std::min(step0, 0.25 * beta);
    auto omega_of = [&](double b) {
        return bloch_rescaled(theta, phi, tau, decay_factor(2.0 * std::numbers::pi / b, w));
    };
    auto central = [&](double s) {
        const BlochState p = omega_of(beta + s), m = omega_of(beta - s);
        return std::array<double, 3>{(p.w1 - m.w1) / (2.0 * s), (p.w2 - m.w2) / (2.0 * s),
                                     (p.w3 - m.w3) / (2.0 * s)};
    };
    // Two halvings + Richardson: O(s^2) and O(s^4) terms removed.
    const auto d0 = central(step0), d1 = central(0.5 * step0), d2 = central(0.25 * step0);
    std::array<double, 3> r1, r2, out;
    for (int i = 0; i < 3; ++i) {
        r1[i] = (4.0 * d1[i] - d0[i]) / 3.0;
        r2[i] = (4.0 * d2[i] - d1[i]) / 3.0;
        out[i] = r2[i] + (r2[i] - r1[i]) / 15.0;
    }
    return out;
}

double qfi_beta(double theta, double phi, double tau, double beta, double w, double fd_step) {
    if (!(beta > 0.0)) throw std::invalid_argument("qfi_beta: beta must be > 0");
    const double h = decay_factor(2.0 * std::numbers::pi / beta, w);
    const auto analytic = dbloch_dbeta(theta, phi, tau, beta, w);
    const auto fd = dbloch_dbeta_fd(theta, phi, tau, beta, w, fd_step);
    double max_diff = 0.0, max_comp = 0.0;
    for (int i = 0; i < 3; ++i) {
        max_diff = std::max(max_diff, std::abs(analytic[i] - fd[i]));
        max_comp = std::max(max_comp, std::abs(analytic[i]));
    }
    if (max_diff > 1e-6 * std::max(1.0, max_comp)) {
        std::ostringstream msg;
        msg << "qfi_beta: chain-rule and finite-difference derivatives differ by " << max_diff;
        throw DerivativeUnstable(msg.str());
    }
    return qfi_bloch(bloch_rescaled(theta, phi, tau, h), analytic);
}

std::pair<double, double> qfi_ultrarel(double theta) {
    const double s = std::sin(theta);
    return {1.0, s * s};
}

QfiResult qfi_evaluate(ParamLabel param, QfiMethod method, const QfiPoint& pt) {
    QfiResult res;
    res.param = param;
    res.method = method;
    const double h = decay_factor(pt.a, pt.w);

    switch (param) {
        case ParamLabel::Theta: {
            res.value = pt.theta;
            if (method == QfiMethod::ClosedForm) {
                res.fisher = qfi_theta_closed_h(pt.theta, pt.tau, h);
            } else if (method == QfiMethod::BlochDerivative) {
                const auto d = dbloch_dtheta(pt.theta, pt.phi, pt.tau, h);
                res.derivative_norm = dot(d, d);
                res.fisher = qfi_bloch(bloch_rescaled(pt.theta, pt.phi, pt.tau, h), d);
            } else {
                res.fisher = qfi_sld(
                    [&](double x) {
                        return density_matrix(bloch_rescaled(x, pt.phi, pt.tau, h));
                    },
                    pt.theta, 1e-5 * std::max(1.0, std::abs(pt.theta)));
            }
            break;
        }
        case ParamLabel::Phi: {
            res.value = pt.phi;
            if (method == QfiMethod::ClosedForm) {
                res.fisher = qfi_phi_closed_h(pt.theta, pt.tau, h);
            } else if (method == QfiMethod::BlochDerivative) {
                const auto d = dbloch_dphi(pt.theta, pt.phi, pt.tau, h);
                res.derivative_norm = dot(d, d);
                res.fisher = qfi_bloch(bloch_rescaled(pt.theta, pt.phi, pt.tau, h), d);
            } else {
                res.fisher = qfi_sld(
                    [&](double x) {
                        return density_matrix(bloch_rescaled(pt.theta, x, pt.tau, h));
                    },
                    pt.phi, 1e-5 * std::max(1.0, std::abs(pt.phi)));
            }
            break;
        }
        case ParamLabel::Beta: {
            const double beta = pt.beta();
            res.value = beta;
            if (method == QfiMethod::SldOracle) {
                res.fisher = qfi_sld(
                    [&](double b) {
                        return density_matrix(bloch_rescaled(
                            pt.theta, pt.phi, pt.tau,
                            decay_factor(2.0 * std::numbers::pi / b, pt.w)));
                    },
                    beta, 1e-5 * std::max(1.0, beta));
            } else {
                // No printable closed form exists; the analytic chain rule is
                // the primary route for both method tags.
                const auto d = dbloch_dbeta(pt.theta, pt.phi, pt.tau, beta, pt.w);
                res.derivative_norm = dot(d, d);
                res.fisher = qfi_beta(pt.theta, pt.phi, pt.tau, beta, pt.w);
            }
            break;
        }
    }
    return res;
}

}  // namespace udw
