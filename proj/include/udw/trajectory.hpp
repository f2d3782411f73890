#pragma once

#include <complex>
#include <stdexcept>
#include <cmath>

namespace udw {

enum class TrajectoryKind {
    InertialDrift,                       // straight line, constant velocity
    UniformAcceleration,                 // hyperbolic worldline, w = 0
    DriftedAcceleration,                 // hyperbolic + constant transverse drift
    DriftedAccelerationNonRelExpansion,  // same worldline, correlation truncated at w^2
    DriftedAccelerationUltraRel,         // w -> infinity scaling form (carries 1/w^4)
};

// Detector worldline: proper acceleration a and constant four-velocity
// component w = dy/dtau.  alpha = a / sqrt(1 + w^2) is the Rindler-like
// frequency that sets the decay scale of the correlation function.
struct Trajectory {
    TrajectoryKind kind = TrajectoryKind::InertialDrift;
    double a = 0.0;
    double w = 0.0;

    double alpha() const { return a / std::sqrt(1.0 + w * w); }

    bool accelerated() const { return kind != TrajectoryKind::InertialDrift; }

    static Trajectory inertial(double w) {
        if (w < 0.0) throw std::invalid_argument("trajectory: w must be >= 0");
        return {TrajectoryKind::InertialDrift, 0.0, w};
    }
    static Trajectory uniform_acceleration(double a) {
        require_acceleration(a);
        return {TrajectoryKind::UniformAcceleration, a, 0.0};
    }
    static Trajectory drifted(double a, double w) {
        require_acceleration(a);
        if (w < 0.0) throw std::invalid_argument("trajectory: w must be >= 0");
        return {TrajectoryKind::DriftedAcceleration, a, w};
    }
    static Trajectory drifted_nonrel_expansion(double a, double w) {
        require_acceleration(a);
        return {TrajectoryKind::DriftedAccelerationNonRelExpansion, a, w};
    }
    static Trajectory drifted_ultrarel(double a, double w) {
        require_acceleration(a);
        if (w <= 0.0) throw std::invalid_argument("trajectory: ultra-relativistic form needs w > 0");
        return {TrajectoryKind::DriftedAccelerationUltraRel, a, w};
    }

private:
    static void require_acceleration(double a) {
        if (!(a > 0.0)) throw std::invalid_argument("trajectory: a must be > 0");
    }
};

// Positive regulator of the i*eps prescription; the physical value is the
// limit eps -> 0+.
struct Epsilon {
    double value;
    explicit Epsilon(double v) : value(v) {
        if (!(v > 0.0)) throw std::invalid_argument("epsilon: regulator must be > 0");
    }
};

// Vacuum two-point correlation function of the massless scalar field along
// the worldline, evaluated at complex lag dtau - i*eps.  A single
// prescription is used for every kind: the lag-only expression is evaluated
// at dtau - i*eps (all published variants agree to first order in eps).
std::complex<double> wightman(const Trajectory& traj, double dtau, Epsilon eps);

// Correlation function of the drifted accelerated worldline truncated at
// second order in w.  Documented validity |w| <= 0.2.
std::complex<double> wightman_nonrel_expansion(double a, double w, double dtau, Epsilon eps);

}  // namespace udw
