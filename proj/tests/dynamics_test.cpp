#include <doctest.h>

#include "udw/dynamics.hpp"
#include "udw/errors.hpp"

#include <cmath>
#include <numbers>

using namespace udw;

namespace {
constexpr double kPi = std::numbers::pi;
const DetectorParams kP{1.0, 0.1};

double max_diff(const BlochState& x, const BlochState& y) {
    return std::max({std::abs(x.w1 - y.w1), std::abs(x.w2 - y.w2), std::abs(x.w3 - y.w3)});
}
}

TEST_SUITE("dynamics") {

TEST_CASE("tau = 0 returns the initial Bloch vector") {
    const RateCoefficients rc = rates_inertial(kP);
    for (double th : {0.0, 0.8, kPi / 2, 2.9}) {
        for (double ph : {0.0, 1.3, 4.7}) {
            const InitialState init{th, ph};
            const BlochState b = init.bloch();
            CHECK(b.w1 == doctest::Approx(std::sin(th) * std::cos(ph)).epsilon(1e-15));
            CHECK(b.w3 == doctest::Approx(std::cos(th)).epsilon(1e-15));
            CHECK(b.norm() == doctest::Approx(1.0).epsilon(1e-15));
            CHECK(max_diff(evolve_closed_form(init, rc, kP, 0.0), b) == 0.0);
            CHECK(max_diff(evolve_ode(init, rc, kP, 0.0), b) == 0.0);
        }
    }
}

TEST_CASE("unitary limit: A = B = 0 rotates without decay") {
    const RateCoefficients rc{0.0, 0.0, 0.0};
    const InitialState init{1.1, 0.4};
    for (double tau : {1.0, 10.0, 100.0}) {
        const BlochState c = evolve_closed_form(init, rc, kP, tau);
        CHECK(c.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(c.w3 == doctest::Approx(std::cos(1.1)).epsilon(1e-12));
        CHECK(c.w1 == doctest::Approx(std::sin(1.1) * std::cos(tau + 0.4)).epsilon(1e-12));
    }
    const BlochState o = evolve_ode(init, rc, kP, 100.0);
    CHECK(o.norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("theta = pi decouples the transverse components") {
    const RateCoefficients rc = rates_nonrel(kP, 2.0, 0.05);
    const double A = rc.A(), B = rc.B();
    for (double tau : {0.5, 3.0, 20.0}) {
        const BlochState s = evolve_closed_form(InitialState{kPi, 0.9}, rc, kP, tau);
        CHECK(std::abs(s.w1) <= 1e-15);
        CHECK(std::abs(s.w2) <= 1e-15);
        const double expect = -std::exp(-A * tau) + (B / A) * (1.0 - std::exp(-A * tau));
        CHECK(s.w3 == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("closed form matches the ODE oracle on a grid") {
    const RateCoefficients rc{0.3, 0.9, 0.0};  // A = 1.2, B = -0.6
    double worst = 0.0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j)
            for (int k = 0; k < 10; ++k) {
                const InitialState init{0.31 * i, 0.63 * j};
                const double tau = 0.35 * (k + 1);
                worst = std::max(worst, max_diff(evolve_closed_form(init, rc, kP, tau),
                                                 evolve_ode(init, rc, kP, tau)));
            }
    CHECK(worst <= 1e-8);
}

TEST_CASE("semigroup property of the propagator") {
    const double A = 0.8, B = -0.5, Omega = 1.0;
    const BlochState b0 = InitialState{0.7, 1.9}.bloch();
    for (double t1 : {0.3, 1.1}) {
        for (double t2 : {0.6, 2.4}) {
            const BlochState direct = propagate(b0, A, B, Omega, t1 + t2);
            const BlochState composed = propagate(propagate(b0, A, B, Omega, t1), A, B, Omega, t2);
            CHECK(max_diff(direct, composed) <= 1e-12);
        }
    }
}

TEST_CASE("evolution stays inside the Bloch sphere") {
    const RateCoefficients rc = rates_nonrel(kP, kPi, 0.01);
    for (double th = 0.0; th < 2.0 * kPi; th += 0.5)
        for (double tau : {0.1, 1.0, 10.0, 200.0}) {
            CHECK(evolve_closed_form(InitialState{th, 0.3}, rc, kP, tau).norm() <=
                  1.0 + 1e-10);
        }
}

TEST_CASE("A -> 0 branch uses the series limit, never dividing") {
    const RateCoefficients rc{0.0, 1e-13, 0.0};  // A = 1e-13, B = -1e-13
    const BlochState s = evolve_closed_form(InitialState{0.4, 0.0}, rc, kP, 1.0);
    // w3 = cos(theta) e^{-A tau} + B tau (1 - A tau / 2) to leading order
    CHECK(s.w3 == doctest::Approx(std::cos(0.4) - 1e-13).epsilon(1e-12));
    CHECK(std::isfinite(s.w3));
}

TEST_CASE("input validation and step-budget exhaustion") {
    const RateCoefficients rc = rates_inertial(kP);
    CHECK_THROWS_AS(evolve_closed_form(InitialState{0.3, 0.0}, rc, kP, -1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(evolve_ode(InitialState{0.3, 0.0}, rc, kP, -1.0), std::invalid_argument);
    StepControl impossible;
    impossible.tol = 1e-300;
    impossible.initial_step = 10.0;
    impossible.max_halvings = 2;
    CHECK_THROWS_AS(evolve_ode(InitialState{0.3, 0.0}, rc, kP, 10.0, impossible), StepTooLarge);
}

}
