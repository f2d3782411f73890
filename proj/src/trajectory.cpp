#include "udw/trajectory.hpp"

#include <numbers>

namespace udw {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPiSq = 4.0 * kPi * kPi;

using cplx = std::complex<double>;

// Uniformly accelerated worldline: G = -(a^2/16pi^2) / sinh^2(a u / 2),
// u = dtau - i eps.
cplx uniform_kernel(double a, cplx u) {
    const cplx s = std::sinh(0.5 * a * u);
    return -(a * a / (4.0 * kFourPiSq)) / (s * s);
}

// Drifted accelerated worldline.  Derived from the invariant interval of
// the worldline t = (a/alpha^2) sinh(alpha tau), x = (a/alpha^2) cosh(alpha tau),
// y = w tau:
//   sigma^2 = w^2 u^2 - (4 a^2/alpha^4) sinh^2(alpha u / 2)
//   G = 1/(4 pi^2 sigma^2)
//     = -(alpha^4 / (16 pi^2 a^2)) / [sinh^2(alpha u/2) - (w^2 alpha^4 / 4a^2) u^2].
// The alpha^4/a^2 prefactor makes the short-distance limit -1/(4 pi^2 u^2)
// and the w = 0 reduction to the uniform kernel both exact.
cplx drifted_kernel(double a, double w, cplx u) {
    const double alpha = a / std::sqrt(1.0 + w * w);
    const double al2 = alpha * alpha;
    const cplx s = std::sinh(0.5 * alpha * u);
    const cplx denom = s * s - (w * w * al2 * al2 / (4.0 * a * a)) * u * u;
    return -(al2 * al2 / (4.0 * kFourPiSq * a * a)) / denom;
}

}  // namespace

std::complex<double> wightman(const Trajectory& traj, double dtau, Epsilon eps) {
    const cplx u(dtau, -eps.value);
    switch (traj.kind) {
        case TrajectoryKind::InertialDrift:
            // The straight worldline has Lorentz-invariant interval u^2
            // regardless of w, so the inertial form is w-independent.
            return -1.0 / (kFourPiSq * u * u);
        case TrajectoryKind::UniformAcceleration:
            return uniform_kernel(traj.a, u);
        case TrajectoryKind::DriftedAcceleration:
            return drifted_kernel(traj.a, traj.w, u);
        case TrajectoryKind::DriftedAccelerationNonRelExpansion:
            return wightman_nonrel_expansion(traj.a, traj.w, dtau, eps);
        case TrajectoryKind::DriftedAccelerationUltraRel: {
            const double w4 = traj.w * traj.w * traj.w * traj.w;
            return uniform_kernel(traj.a, u) / w4;
        }
    }
    throw std::logic_error("wightman: unreachable trajectory kind");
}

std::complex<double> wightman_nonrel_expansion(double a, double w, double dtau, Epsilon eps) {
    if (!(a > 0.0)) throw std::invalid_argument("wightman_nonrel_expansion: a must be > 0");
    const cplx u = a * cplx(dtau, -eps.value);
    const cplx s = std::sinh(0.5 * u);
    const cplx s2 = s * s;
    const cplx base = (1.0 - 2.0 * w * w) * (-(a * a / (4.0 * kFourPiSq)) / s2);
    const cplx corr =
        -(a * a / (4.0 * kFourPiSq)) * w * w * (0.25 * u * std::sinh(u) + 0.25 * u * u) / (s2 * s2);
    return base + corr;
}

}  // namespace udw
