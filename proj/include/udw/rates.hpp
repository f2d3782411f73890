#pragma once

#include <vector>

#include "udw/trajectory.hpp"

namespace udw {

// Two-level detector: level spacing omega0 and (small) coupling mu.
// gamma0 = mu^2 omega0 / (2 pi) is the inertial spontaneous emission rate.
// The effective level spacing Omega equals omega0 (Lamb shift dropped).
struct DetectorParams {
    double omega0;
    double mu;

    DetectorParams(double omega0_, double mu_) : omega0(omega0_), mu(mu_) {
        if (!(omega0 > 0.0)) throw std::invalid_argument("detector: omega0 must be > 0");
        if (mu < 0.0) throw std::invalid_argument("detector: mu must be >= 0");
    }

    double gamma0() const;
    double Omega() const { return omega0; }
};

// Lindblad rate coefficients.  gamma_z is identically zero for this model.
struct RateCoefficients {
    double gamma_plus = 0.0;
    double gamma_minus = 0.0;
    double gamma_z = 0.0;

    double A() const { return gamma_plus + gamma_minus; }
    double B() const { return gamma_plus - gamma_minus; }
};

// Inertial worldline: gamma_+ = 0, gamma_- = gamma0 for any drift w.
RateCoefficients rates_inertial(const DetectorParams& p);

// Drifted acceleration, w^2 truncation:
//   A = gamma0 [ coth(pi omega0 / a) - (4 pi / omega0) f(a) w^2 ],  B = -gamma0.
// Overflow-safe for a << omega0.  Documented validity |w| <= 0.2.
RateCoefficients rates_nonrel(const DetectorParams& p, double a, double w);

// Ultra-relativistic scaling form: the w = 0 rates carry an overall 1/w^4.
RateCoefficients rates_ultrarel(const DetectorParams& p, double a, double w);

// Exact w -> infinity limit: A = B = 0 (closed-system evolution).
RateCoefficients rates_ultrarel_limit(const DetectorParams& p);

// Quadrature controls for the numeric Fourier-transform route.
// window = 0 selects the default: 40/alpha for accelerated worldlines,
// 1000/omega0 for the inertial one.  The eps schedule is taken relative to
// 1/alpha (or 1/omega0 for inertial); empty selects {1e-2, 5e-3, 2.5e-3}.
struct QuadratureSpec {
    double window = 0.0;
    std::vector<double> eps_schedule;
    double rel_tol = 1e-6;
    int max_subdivisions = 48;

    void validate() const;
};

struct NumericRates {
    RateCoefficients rates;
    double error_estimate = 0.0;  // extrapolation residual + tail bound, absolute
    double tail_bound = 0.0;
};

// Rates by direct quadrature of the correlation function:
//   gamma_+/mu^2 = integral e^{-i omega0 dtau} G(dtau - i eps) ddtau   (absorption)
//   gamma_-/mu^2 = integral e^{+i omega0 dtau} G(dtau - i eps) ddtau   (emission)
// evaluated for a decreasing eps schedule and extrapolated to eps = 0.
// The finite-eps values are first multiplied by e^{-+ omega0 eps}: shifting
// the integration contour shows the eps dependence of each channel is
// exactly that factor, so the 3-point Richardson step then only has to
// remove residual window effects.  The channel pairing above was calibrated
// once against the w = 0 Planck factors and is fixed.
NumericRates rates_numeric(const Trajectory& traj, const DetectorParams& p,
                           const QuadratureSpec& quad);

// -- stable scalar helpers (shared with the qfi module) --

// coth(x/2) = 1 + 2/expm1(x), finite and monotone for all x > 0.
double coth_half(double x);

// Planck factor G0(omega0) = (omega0/2pi) / (e^{2 pi omega0/a} - 1) and its
// stimulated counterpart G0(-omega0) = (omega0/2pi) e^x / (e^x - 1).
double planck_factor(double omega0, double a);
double planck_factor_stimulated(double omega0, double a);

// Drift correction f(a) entering the w^2 term of the rates.
double drift_rate_correction(double omega0, double a);

// Dimensionless decay factor h(a~) = coth(pi/a~) - 4 pi f(a~) w^2 with
// omega0 = 1 (rescaled units), and its derivative with respect to
// beta = 2 pi / a~.
double decay_factor(double a_resc, double w);
double decay_factor_dbeta(double beta, double w);

}  // namespace udw
