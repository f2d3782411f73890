#include "udw/dynamics.hpp"

#include "udw/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace udw {

namespace {

// (1 - e^{-At}) / A, with the A -> 0 limit t.
double decay_ramp(double A, double tau) {
    if (std::abs(A * tau) < 1e-8) return tau * (1.0 - 0.5 * A * tau);
    return -std::expm1(-A * tau) / A;
}

using Vec3 = std::array<double, 3>;

Vec3 bloch_rhs(const Vec3& y, double A, double B, double Omega) {
    return {-0.5 * A * y[0] - Omega * y[1], Omega * y[0] - 0.5 * A * y[1], -A * y[2] + B};
}

Vec3 rk4_step(const Vec3& y, double h, double A, double B, double Omega) {
    const Vec3 k1 = bloch_rhs(y, A, B, Omega);
    Vec3 t;
    for (int i = 0; i < 3; ++i) t[i] = y[i] + 0.5 * h * k1[i];
    const Vec3 k2 = bloch_rhs(t, A, B, Omega);
    for (int i = 0; i < 3; ++i) t[i] = y[i] + 0.5 * h * k2[i];
    const Vec3 k3 = bloch_rhs(t, A, B, Omega);
    for (int i = 0; i < 3; ++i) t[i] = y[i] + h * k3[i];
    const Vec3 k4 = bloch_rhs(t, A, B, Omega);
    Vec3 out;
    for (int i = 0; i < 3; ++i)
        out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

}  // namespace

BlochState propagate(const BlochState& init, double A, double B, double Omega, double tau) {
    if (tau < 0.0) throw std::invalid_argument("propagate: tau must be >= 0");
    const double half = std::exp(-0.5 * A * tau);
    const double c = std::cos(Omega * tau), s = std::sin(Omega * tau);
    return {(init.w1 * c - init.w2 * s) * half, (init.w1 * s + init.w2 * c) * half,
            init.w3 * std::exp(-A * tau) + B * decay_ramp(A, tau)};
}

BlochState evolve_closed_form(const InitialState& init, const RateCoefficients& rc,
                              const DetectorParams& p, double tau) {
    return propagate(init.bloch(), rc.A(), rc.B(), p.Omega(), tau);
}

BlochState evolve_ode(const InitialState& init, const RateCoefficients& rc,
                      const DetectorParams& p, double tau, const StepControl& ctrl) {
    if (tau < 0.0) throw std::invalid_argument("evolve_ode: tau must be >= 0");
    const double A = rc.A(), B = rc.B(), Omega = p.Omega();
    const BlochState b0 = init.bloch();
    Vec3 y = {b0.w1, b0.w2, b0.w3};
    if (tau == 0.0) return b0;

    // Shortest dynamical time scale bounds the starting step.
    const double rate = std::max({std::abs(Omega), std::abs(A), 1.0 / tau});
    double h = ctrl.initial_step > 0.0 ? ctrl.initial_step : 0.1 / rate;
    // Below this step size the one-step and two-step paths agree only up to
    // rounding noise, so the proportional error test can never be met.
    const double h_floor = 4.0 * std::numeric_limits<double>::epsilon() * tau;
    double t = 0.0;
    while (t < tau) {
        if (tau - t <= h_floor) break;  // remaining gap is below time resolution
        h = std::min(h, tau - t);
        int halvings = 0;
        for (;;) {
            // Step doubling: one full step vs two half steps, error ~ |d|/15.
            const Vec3 full = rk4_step(y, h, A, B, Omega);
            const Vec3 half1 = rk4_step(y, 0.5 * h, A, B, Omega);
            const Vec3 half2 = rk4_step(half1, 0.5 * h, A, B, Omega);
            double err = 0.0;
            for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(full[i] - half2[i]));
            err /= 15.0;
            const double local_tol = ctrl.tol * std::max(h / tau, 1e-16);
            if (err <= local_tol || h <= h_floor) {
                for (int i = 0; i < 3; ++i) y[i] = half2[i] + (half2[i] - full[i]) / 15.0;
                t += h;
                if (err < 0.03 * local_tol) h *= 2.0;
                break;
            }
            if (++halvings > ctrl.max_halvings)
                throw StepTooLarge("evolve_ode: local error above tolerance at minimal step");
            h *= 0.5;
        }
    }
    return {y[0], y[1], y[2]};
}

}  // namespace udw
