#pragma once

#include <cmath>

#include "udw/rates.hpp"

namespace udw {

struct BlochState {
    double w1 = 0.0;
    double w2 = 0.0;
    double w3 = 0.0;

    double norm() const { return std::sqrt(w1 * w1 + w2 * w2 + w3 * w3); }
    double norm_sq() const { return w1 * w1 + w2 * w2 + w3 * w3; }
};

// Initial detector state: Bloch vector (sin t cos p, sin t sin p, cos t).
// theta = 0 is the excited state.
struct InitialState {
    double theta;
    double phi;

    BlochState bloch() const {
        return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                std::cos(theta)};
    }
};

// General Lindblad propagator acting on an arbitrary Bloch vector:
//   w1' = (w1 cos Ot - w2 sin Ot) e^{-At/2}
//   w2' = (w1 sin Ot + w2 cos Ot) e^{-At/2}
//   w3' = w3 e^{-At} + (B/A)(1 - e^{-At})
// The A -> 0 degenerate branch replaces the last term by its limit B*t
// (series form for |A t| < 1e-8), never dividing by A.
BlochState propagate(const BlochState& init, double A, double B, double Omega, double tau);

// Closed-form evolution of the (theta, phi) initial family.
BlochState evolve_closed_form(const InitialState& init, const RateCoefficients& rc,
                              const DetectorParams& p, double tau);

// Local error target for the adaptive RK4 integrator.
struct StepControl {
    double tol = 1e-10;
    double initial_step = 0.0;  // 0 = auto
    int max_halvings = 40;
};

// Independent oracle: integrates the Bloch equations
//   dw1 = -(A/2) w1 - O w2,  dw2 = O w1 - (A/2) w2,  dw3 = -A w3 + B
// with step-doubling RK4.  Throws StepTooLarge when the local error cannot
// be brought below tolerance within the halving budget.
BlochState evolve_ode(const InitialState& init, const RateCoefficients& rc,
                      const DetectorParams& p, double tau, const StepControl& ctrl = {});

}  // namespace udw
