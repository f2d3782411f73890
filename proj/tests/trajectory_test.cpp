#include <doctest.h>

#include "udw/trajectory.hpp"

#include <cmath>
#include <complex>
#include <vector>

using namespace udw;
using cplx = std::complex<double>;

namespace {
const std::vector<double> kLags = {0.1, 0.3, 0.7, 1.2, 2.0, 3.5, -0.4, -1.7};
}

TEST_SUITE("trajectory") {

TEST_CASE("golden values from the arbitrary-precision oracle") {
    const Epsilon eps(1e-4);
    const cplx g_unif = wightman(Trajectory::uniform_acceleration(1.0), 1.0, eps);
    CHECK(g_unif.real() == doctest::Approx(-0.023320933817611002593).epsilon(1e-15));
    CHECK(g_unif.imag() == doctest::Approx(-5.0465414979032323118e-6).epsilon(1e-15));

    const cplx g_drift = wightman(Trajectory::drifted(1.0, 0.05), 0.7, eps);
    CHECK(g_drift.real() == doctest::Approx(-0.049634428357815239025).epsilon(1e-15));
    CHECK(g_drift.imag() == doctest::Approx(-1.4755613801139461288e-5).epsilon(1e-15));

    const cplx g_exp = wightman_nonrel_expansion(std::acos(-1.0), 0.01, 2.0, eps);
    CHECK(g_exp.real() == doctest::Approx(-0.00046866674187631886263).epsilon(1e-15));
    CHECK(g_exp.imag() == doctest::Approx(-1.4778047431554108279e-7).epsilon(1e-15));
}

TEST_CASE("w = 0 drifted kernel reduces to the uniform one") {
    const Epsilon eps(1e-3);
    for (double a : {0.5, 1.0, 3.0}) {
        const Trajectory drifted = Trajectory::drifted(a, 0.0);
        const Trajectory uniform = Trajectory::uniform_acceleration(a);
        for (double dt : kLags) {
            const cplx d = wightman(drifted, dt, eps);
            const cplx u = wightman(uniform, dt, eps);
            CHECK(std::abs(d - u) <= 1e-15 * std::abs(u));
        }
    }
}

TEST_CASE("inertial correlation is independent of the drift") {
    const Epsilon eps(1e-3);
    for (double dt : kLags) {
        const cplx g0 = wightman(Trajectory::inertial(0.0), dt, eps);
        const cplx g5 = wightman(Trajectory::inertial(5.0), dt, eps);
        CHECK(g0 == g5);
        // and matches the flat-space form directly
        const cplx u(dt, -eps.value);
        const double pi2 = std::acos(-1.0) * std::acos(-1.0);
        CHECK(std::abs(g0 - (-1.0 / (4.0 * pi2 * u * u))) <= 1e-15 * std::abs(g0));
    }
}

TEST_CASE("hermiticity: G(-dtau - i eps) = conj G(dtau - i eps)") {
    const Epsilon eps(1e-3);
    for (double dt : {0.2, 0.9, 1.7, 4.0}) {
        for (auto traj : {Trajectory::uniform_acceleration(1.3), Trajectory::inertial(0.0)}) {
            const cplx plus = wightman(traj, dt, eps);
            const cplx minus = wightman(traj, -dt, eps);
            CHECK(std::abs(minus - std::conj(plus)) <= 1e-14 * std::abs(plus));
        }
    }
}

TEST_CASE("accelerated kernels decay exponentially at rate alpha") {
    const Epsilon eps(1e-4);
    for (auto traj : {Trajectory::uniform_acceleration(1.0), Trajectory::drifted(1.0, 0.05),
                      Trajectory::drifted(2.0, 0.1)}) {
        const double alpha = traj.alpha();
        const double t1 = 12.0 / alpha, t2 = 14.0 / alpha;
        const double rate = std::log(std::abs(wightman(traj, t1, eps)) /
                                     std::abs(wightman(traj, t2, eps))) /
                            (t2 - t1);
        CHECK(rate == doctest::Approx(alpha).epsilon(0.05));
    }
}

TEST_CASE("w^2 truncation error scales as w^4") {
    const Epsilon eps(1e-4);
    const double a = 1.0;
    auto rel_err = [&](double w, double dt) {
        const cplx exact = wightman(Trajectory::drifted(a, w), dt, eps);
        const cplx trunc = wightman_nonrel_expansion(a, w, dt, eps);
        return std::abs(trunc - exact) / std::abs(exact);
    };
    const std::vector<double> grid = {0.3, 0.7, 1.2, 2.0};
    double K = 0.0;
    for (double dt : grid) K = std::max(K, rel_err(0.05, dt) / std::pow(0.05, 4));
    for (double dt : grid) {
        // same constant must bound the half-drift error (small slack for
        // higher-order terms)
        CHECK(rel_err(0.025, dt) <= 1.2 * K * std::pow(0.025, 4));
    }
    // and at w = 0 the truncation is exact
    for (double dt : grid) CHECK(rel_err(0.0, dt) <= 1e-15);
}

TEST_CASE("ultra-relativistic kernel is the uniform one scaled by 1/w^4") {
    const Epsilon eps(1e-3);
    const double w = 10.0;
    for (double dt : kLags) {
        const cplx ur = wightman(Trajectory::drifted_ultrarel(1.0, w), dt, eps);
        const cplx u = wightman(Trajectory::uniform_acceleration(1.0), dt, eps);
        CHECK(std::abs(ur - u / std::pow(w, 4)) <= 1e-15 * std::abs(ur));
    }
}

TEST_CASE("alpha invariant and input validation") {
    const Trajectory t = Trajectory::drifted(2.0, 0.3);
    CHECK(t.alpha() == doctest::Approx(2.0 / std::sqrt(1.09)).epsilon(1e-15));
    CHECK(Trajectory::uniform_acceleration(1.5).alpha() == 1.5);

    CHECK_THROWS_AS(Epsilon(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Epsilon(-1e-3), std::invalid_argument);
    CHECK_THROWS_AS(Trajectory::uniform_acceleration(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Trajectory::drifted(-1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(Trajectory::drifted_ultrarel(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(wightman_nonrel_expansion(0.0, 0.01, 1.0, Epsilon(1e-3)),
                    std::invalid_argument);
}

}
