#pragma once

#include <array>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>

#include <Eigen/Dense>

#include "udw/dynamics.hpp"

namespace udw {

enum class ParamLabel { Theta, Phi, Beta };
enum class QfiMethod { ClosedForm, BlochDerivative, SldOracle };

const char* to_string(ParamLabel p);
const char* to_string(QfiMethod m);

struct QfiResult {
    ParamLabel param;
    double value = 0.0;         // the parameter's value at the evaluation point
    double fisher = 0.0;
    QfiMethod method = QfiMethod::ClosedForm;
    double derivative_norm = 0.0;  // diagnostic |d omega / d X|^2
};

// Fisher information from a Bloch vector and its parameter derivative:
//   F = |dw|^2 + (w . dw)^2 / (1 - |w|^2)        for |w| < 1 - 1e-9
//   F = |dw|^2                                   on the sphere, if w . dw ~ 0
// Throws BranchAmbiguity for a pure state whose derivative moves it off the
// sphere (|w . dw| > 1e-6).
double qfi_bloch(const BlochState& omega, const std::array<double, 3>& domega);

// Qubit density matrix (I + w . sigma) / 2.
Eigen::Matrix2cd density_matrix(const BlochState& omega);

// Spectral SLD formula on a density-matrix-valued curve:
// d rho by central finite difference, then
//   F = sum_{ij : li + lj > 1e-12} 2 |<i| d rho |j>|^2 / (li + lj).
// Evaluated at fd_step and fd_step/2; throws DerivativeUnstable if the two
// differ by more than 1e-6 relative.
double qfi_sld(const std::function<Eigen::Matrix2cd(double)>& rho_of_X, double X,
               double fd_step);

// --- rescaled units: omega0 = 1, gamma0 = 1; time is tau~ = gamma0 tau,
// --- acceleration a~ = a / omega0, and the whole evolution is a function
// --- of the decay factor h (A = h, B = -1 in these units).

BlochState bloch_rescaled(double theta, double phi, double tau_resc, double h);
std::array<double, 3> dbloch_dh(double theta, double phi, double tau_resc, double h);

// F_phi = sin^2(theta) e^{-h tau}.
double qfi_phi_closed_h(double theta, double tau_resc, double h);
double qfi_phi_closed(double theta, double tau_resc, double a_resc, double w);

// Closed form for F_theta, algebraically equal to the Bloch-derivative
// route on the evolved family.  Throws FormulaDomainError if the purity
// denominator is non-positive away from the tau = 0 pure point.
double qfi_theta_closed_h(double theta, double tau_resc, double h);
double qfi_theta_closed(double theta, double tau_resc, double a_resc, double w);

// Derivative of the evolved Bloch vector with respect to beta = 2 pi / a~,
// by the analytic chain rule through h(beta) and by Richardson-improved
// central finite differences (step0, two halvings).
std::array<double, 3> dbloch_dbeta(double theta, double phi, double tau_resc, double beta,
                                   double w);
std::array<double, 3> dbloch_dbeta_fd(double theta, double phi, double tau_resc, double beta,
                                      double w, double step0 = 0.0);

// F_beta via the analytic chain-rule derivative, cross-checked against the
// finite-difference derivative (DerivativeUnstable if they disagree).
double qfi_beta(double theta, double phi, double tau_resc, double beta, double w,
                double fd_step = 0.0);

// Ultra-relativistic exact limit: (F_theta, F_phi) = (1, sin^2 theta), any tau.
std::pair<double, double> qfi_ultrarel(double theta);

// Uniform evaluation entry point used by sweeps and the CLI.
struct QfiPoint {
    double theta = 0.0;
    double phi = 0.0;
    double tau = 0.0;     // rescaled
    double a = 0.0;       // rescaled; beta = 2 pi / a
    double w = 0.0;

    double beta() const { return 2.0 * std::numbers::pi / a; }
};

QfiResult qfi_evaluate(ParamLabel param, QfiMethod method, const QfiPoint& pt);

}  // namespace udw
