#include "udw/rates.hpp"

#include "udw/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

namespace udw {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

// Adaptive Simpson with the usual 1/15 Richardson correction per split.
class SimpsonIntegrator {
public:
    SimpsonIntegrator(const std::function<cplx(double)>& f, double tol, int max_depth)
        : f_(f), tol_(tol), max_depth_(max_depth) {}

    cplx integrate(double a, double b) {
        const double m = 0.5 * (a + b);
        const cplx fa = f_(a), fm = f_(m), fb = f_(b);
        return recurse(a, b, fa, fm, fb, simpson(fa, fm, fb, b - a), tol_, max_depth_);
    }

private:
    static cplx simpson(cplx fa, cplx fm, cplx fb, double h) {
        return (h / 6.0) * (fa + 4.0 * fm + fb);
    }

    cplx recurse(double a, double b, cplx fa, cplx fm, cplx fb, cplx whole, double tol,
                 int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        const cplx flm = f_(lm), frm = f_(rm);
        const cplx left = simpson(fa, flm, fm, m - a);
        const cplx right = simpson(fm, frm, fb, b - m);
        const cplx sum = left + right;
        if (depth <= 0 || std::abs(sum - whole) < 15.0 * tol) {
            return sum + (sum - whole) / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }

    const std::function<cplx(double)>& f_;
    double tol_;
    int max_depth_;
};

// Integrate f over [lo, hi], pre-split into sub-panels no wider than span
// so the initial Simpson stencil cannot straddle several oscillation periods.
cplx integrate_panel(const std::function<cplx(double)>& f, double lo, double hi, double span,
                     double tol, int max_depth) {
    const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / span)));
    SimpsonIntegrator quad(f, tol / n, max_depth);
    cplx total = 0.0;
    for (int i = 0; i < n; ++i) {
        const double a = lo + (hi - lo) * i / n;
        const double b = lo + (hi - lo) * (i + 1) / n;
        total += quad.integrate(a, b);
    }
    return total;
}

// Lagrange extrapolation of (x_k, y_k) to x = 0.
double extrapolate_to_zero(const std::vector<double>& x, const std::vector<double>& y) {
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double w = 1.0;
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (j != i) w *= x[j] / (x[j] - x[i]);
        }
        v += w * y[i];
    }
    return v;
}

}  // namespace

double DetectorParams::gamma0() const { return mu * mu * omega0 / (2.0 * kPi); }

double coth_half(double x) {
    // expm1 saturates to +inf for large x, giving the correct limit 1.
    return 1.0 + 2.0 / std::expm1(x);
}

double planck_factor(double omega0, double a) {
    const double x = 2.0 * kPi * omega0 / a;
    return (omega0 / (2.0 * kPi)) / std::expm1(x);
}

double planck_factor_stimulated(double omega0, double a) {
    const double x = 2.0 * kPi * omega0 / a;
    return (omega0 / (2.0 * kPi)) * (1.0 + 1.0 / std::expm1(x));
}

double drift_rate_correction(double omega0, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("drift_rate_correction: a must be > 0");
    const double x = 2.0 * kPi * omega0 / a;
    // e^x / (e^x - 1)^2 = 1 / (4 sinh^2(x/2)); underflows cleanly to 0.
    const double s = std::sinh(0.5 * x);
    const double q = 1.0 / (4.0 * s * s);
    if (!std::isfinite(q) || q == 0.0) return 0.0;
    const double r = omega0 / a;
    const double g = 2.0 + 9.0 * r * r - 2.0 * kPi * r * (1.0 + r * r) * coth_half(x);
    return (a / 6.0) * q * g;
}

double decay_factor(double a_resc, double w) {
    if (!(a_resc > 0.0)) throw std::invalid_argument("decay_factor: a must be > 0");
    const double x = 2.0 * kPi / a_resc;
    return coth_half(x) - 4.0 * kPi * drift_rate_correction(1.0, a_resc) * w * w;
}

double decay_factor_dbeta(double beta, double w) {
    if (!(beta > 0.0)) throw std::invalid_argument("decay_factor_dbeta: beta must be > 0");
    const double s = std::sinh(0.5 * beta);
    double inv_s2 = 1.0 / (s * s);
    if (!std::isfinite(inv_s2)) inv_s2 = 0.0;
    const double dcoth = -0.5 * inv_s2;
    if (inv_s2 == 0.0) return dcoth;  // w^2 term underflows with it

    // f as a function of beta: f = pi g / (12 beta sinh^2(beta/2)) with
    // g = 2 + 9 beta^2/(4 pi^2) - beta (1 + beta^2/(4 pi^2)) coth(beta/2).
    const double c = coth_half(beta);
    const double b2 = beta * beta / (4.0 * kPi * kPi);
    const double g = 2.0 + 9.0 * b2 - beta * (1.0 + b2) * c;
    const double gp = 9.0 * beta / (2.0 * kPi * kPi) - (1.0 + 3.0 * b2) * c +
                      0.5 * beta * (1.0 + b2) * inv_s2;
    const double fp = kPi * inv_s2 / (12.0 * beta) * (gp - g * (1.0 / beta + c));
    return dcoth - 4.0 * kPi * w * w * fp;
}

RateCoefficients rates_inertial(const DetectorParams& p) {
    return {0.0, p.gamma0(), 0.0};
}

RateCoefficients rates_nonrel(const DetectorParams& p, double a, double w) {
    if (!(a > 0.0)) throw std::invalid_argument("rates_nonrel: a must be > 0");
    const double mu2 = p.mu * p.mu;
    const double fw2 = drift_rate_correction(p.omega0, a) * w * w;
    return {mu2 * (planck_factor(p.omega0, a) - fw2),
            mu2 * (planck_factor_stimulated(p.omega0, a) - fw2), 0.0};
}

RateCoefficients rates_ultrarel(const DetectorParams& p, double a, double w) {
    if (!(a > 0.0)) throw std::invalid_argument("rates_ultrarel: a must be > 0");
    if (!(w > 0.0)) throw std::invalid_argument("rates_ultrarel: w must be > 0");
    const double mu2 = p.mu * p.mu;
    const double w4 = w * w * w * w;
    return {mu2 * planck_factor(p.omega0, a) / w4,
            mu2 * planck_factor_stimulated(p.omega0, a) / w4, 0.0};
}

RateCoefficients rates_ultrarel_limit(const DetectorParams&) { return {0.0, 0.0, 0.0}; }

void QuadratureSpec::validate() const {
    if (window < 0.0) throw std::invalid_argument("quadrature: window must be >= 0");
    if (!(rel_tol > 0.0 && rel_tol < 1.0))
        throw std::invalid_argument("quadrature: rel_tol must be in (0, 1)");
    if (max_subdivisions < 4) throw std::invalid_argument("quadrature: max_subdivisions < 4");
    double prev = std::numeric_limits<double>::infinity();
    for (double e : eps_schedule) {
        if (!(e > 0.0 && e < prev))
            throw std::invalid_argument("quadrature: eps schedule must be strictly decreasing > 0");
        prev = e;
    }
}

NumericRates rates_numeric(const Trajectory& traj, const DetectorParams& p,
                           const QuadratureSpec& quad) {
    quad.validate();
    const bool accelerated = traj.accelerated();
    const double omega = p.omega0;
    // Scale of the integrand's support: alpha for exponentially decaying
    // kernels, omega0 for the algebraic inertial one.
    const double scale = accelerated ? traj.alpha() : omega;

    const double T = quad.window > 0.0 ? quad.window : (accelerated ? 40.0 / scale : 1000.0 / omega);
    std::vector<double> eps;
    if (!quad.eps_schedule.empty()) {
        eps = quad.eps_schedule;
    } else {
        eps = {1e-2 / scale, 5e-3 / scale, 2.5e-3 / scale};
    }

    const double value_scale = omega / (2.0 * kPi);  // gamma0 / mu^2
    const double abs_tol = quad.rel_tol * value_scale;

    // Tail of the truncated window.
    double tail_bound;
    if (accelerated) {
        const double alpha = traj.alpha();
        tail_bound = 4.0 * alpha / (kPi * kPi) * std::exp(-alpha * T);
        if (traj.kind == TrajectoryKind::DriftedAccelerationUltraRel)
            tail_bound /= std::pow(traj.w, 4);
    } else {
        // After the by-parts correction below, the remainder is O(1/(w^2 T^3)).
        tail_bound = 1.0 / (kPi * kPi * omega * omega * T * T * T);
    }
    if (tail_bound > abs_tol) {
        std::ostringstream msg;
        msg << "rates_numeric: window T=" << T << " leaves tail bound " << tail_bound
            << " above tolerance " << abs_tol;
        throw WindowTooSmall(msg.str());
    }

    const double osc_span = 0.5 * kPi / omega;  // quarter period of the phase factor

    NumericRates out;
    double* channels[2] = {&out.rates.gamma_plus, &out.rates.gamma_minus};
    double worst_residual = 0.0;

    for (int ch = 0; ch < 2; ++ch) {
        // sign = +1: e^{-i omega dtau} (absorption), -1: e^{+i omega dtau} (emission)
        const double sign = (ch == 0) ? 1.0 : -1.0;
        std::vector<double> values;
        values.reserve(eps.size());
        for (double e : eps) {
            const Epsilon reg(e);
            std::function<cplx(double)> integrand = [&](double t) {
                return wightman(traj, t, reg) * std::exp(cplx(0.0, -sign * omega * t));
            };
            const double delta = 10.0 * e;
            const double panel_tol = abs_tol / 30.0;
            cplx I = integrate_panel(integrand, -T, -delta, osc_span, panel_tol,
                                     quad.max_subdivisions);
            // Central panel: near-pole mass ~ 1/eps^2, doubled depth.
            I += integrate_panel(integrand, -delta, delta, delta, panel_tol,
                                 2 * quad.max_subdivisions);
            I += integrate_panel(integrand, delta, T, osc_span, panel_tol,
                                 quad.max_subdivisions);
            double re = I.real();
            if (!accelerated) {
                // Leading surviving tail term of 2 * int_T^inf cos(w t) Re G dt
                // after two integrations by parts (even in the phase sign).
                re += std::sin(omega * T) / (2.0 * kPi * kPi * omega * T * T);
            }
            // Contour shift: the exact eps dependence of this channel is
            // e^{+sign * omega * eps}; remove it before extrapolating.
            values.push_back(re * std::exp(-sign * omega * e));
        }
        const double v0 = extrapolate_to_zero(eps, values);
        double residual = 0.0;
        for (double v : values) residual = std::max(residual, std::abs(v - v0));
        worst_residual = std::max(worst_residual, residual);
        *channels[ch] = p.mu * p.mu * v0;
    }

    out.tail_bound = tail_bound * p.mu * p.mu;
    out.error_estimate = worst_residual * p.mu * p.mu + out.tail_bound;
    if (worst_residual > 10.0 * abs_tol) {
        std::ostringstream msg;
        msg << "rates_numeric: extrapolation residual " << worst_residual
            << " above tolerance " << abs_tol;
        throw NonConvergence(msg.str());
    }
    return out;
}

}  // namespace udw
