#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "tvc/control.hpp"
#include "tvc/rng.hpp"

using namespace tvc;

TEST_CASE("pid terms combine with hand-computed values", "[control]") {
    PidGains g;  // kp 4, ki 0.5, kd 0.8
    const double dt = 0.02;

    // First update from rest with a 1 degree error:
    // integ = 0.02, raw = 4*1 + 0.5*0.02 + 0.8*(1-0)/0.02 = 44.01 -> clamps to 5.
    PidResult r = pid_step(g, 1.0, 0.0, 0.0, dt);
    CHECK_THAT(r.integrator, Catch::Matchers::WithinAbs(0.02, 1e-15));
    CHECK(r.output_deg == 5.0);

    // Steady error, no derivative kick: raw = 4*1 + 0.5*0.04 = 4.02, inside authority.
    r = pid_step(g, 1.0, 1.0, 0.02, dt);
    CHECK_THAT(r.integrator, Catch::Matchers::WithinAbs(0.04, 1e-15));
    CHECK_THAT(r.output_deg, Catch::Matchers::WithinAbs(4.02, 1e-12));

    // Pure proportional.
    PidGains p;
    p.ki = 0.0;
    p.kd = 0.0;
    r = pid_step(p, 0.5, 0.5, 0.0, dt);
    CHECK_THAT(r.output_deg, Catch::Matchers::WithinAbs(2.0, 1e-15));
}

TEST_CASE("integrator clamps before it contributes", "[control]") {
    PidGains g;
    g.kp = 0.0;
    g.kd = 0.0;
    g.ki = 1.0;
    g.integrator_limit_deg = 2.0;
    double integ = 0.0;
    double prev = 0.0;
    // Persistent large error winds the integrator up only to the limit.
    for (int i = 0; i < 2000; ++i) {
        const PidResult r = pid_step(g, 10.0, prev, integ, 0.02);
        integ = r.integrator;
        prev = 10.0;
        REQUIRE(std::abs(integ) <= 2.0);
    }
    CHECK(integ == 2.0);
    // Output at the wound-up point is ki * limit, not ki * sum of errors.
    CHECK(pid_step(g, 10.0, 10.0, integ, 0.02).output_deg == 2.0);

    // And it unwinds when the error flips.
    const PidResult r = pid_step(g, -10.0, 10.0, integ, 0.02);
    CHECK_THAT(r.integrator, Catch::Matchers::WithinAbs(1.8, 1e-12));
}

TEST_CASE("pid output is odd in its inputs", "[control]") {
    PidGains g;
    TrialRng rng(99);
    for (int i = 0; i < 2000; ++i) {
        const double e = rng.uniform_symmetric(3.0);
        const double pe = rng.uniform_symmetric(3.0);
        const double integ = rng.uniform_symmetric(1.5);
        const PidResult a = pid_step(g, e, pe, integ, 0.02);
        const PidResult b = pid_step(g, -e, -pe, -integ, 0.02);
        REQUIRE(std::abs(a.output_deg + b.output_deg) < 1e-12);
        REQUIRE(std::abs(a.integrator + b.integrator) < 1e-12);
    }
}

TEST_CASE("pid output never leaves the authority band", "[control]") {
    PidGains g;
    TrialRng rng(7);
    for (int i = 0; i < 20000; ++i) {
        const double e = rng.uniform_symmetric(50.0);
        const double pe = rng.uniform_symmetric(50.0);
        const double integ = rng.uniform_symmetric(10.0);
        const PidResult r = pid_step(g, e, pe, integ, 0.02);
        REQUIRE(std::abs(r.output_deg) <= g.output_limit_deg);
        REQUIRE(std::abs(r.integrator) <= g.integrator_limit_deg);
    }
}

TEST_CASE("pid rejects invalid configuration and time step", "[control]") {
    PidGains g;
    CHECK_THROWS_AS(pid_step(g, 1.0, 0.0, 0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(pid_step(g, 1.0, 0.0, 0.0, -0.01), std::domain_error);
    g.output_limit_deg = 0.0;
    CHECK_THROWS_AS(g.validate(), std::domain_error);
    g.output_limit_deg = 5.0;
    g.integrator_limit_deg = -1.0;
    CHECK_THROWS_AS(g.validate(), std::domain_error);
}

TEST_CASE("step profile alternates sign on half periods", "[control]") {
    const CommandProfile p = step_profile(5.0, 1.0, 4);
    REQUIRE(p.steps.size() == 4);
    CHECK(p.steps[0].time_s == 0.0);
    CHECK(p.steps[1].time_s == 0.5);
    CHECK(p.steps[2].time_s == 1.0);
    CHECK(p.steps[3].time_s == 1.5);
    CHECK(p.steps[0].pitch_deg == 5.0);
    CHECK(p.steps[1].pitch_deg == -5.0);
    CHECK(p.steps[2].pitch_deg == 5.0);
    CHECK(p.steps[3].pitch_deg == -5.0);
    for (const auto& s : p.steps) CHECK(s.yaw_deg == 0.0);
    p.validate(5.0);

    CHECK_THROWS_AS(step_profile(6.0, 1.0, 2), std::out_of_range);
    CHECK_THROWS_AS(step_profile(5.0, 0.0, 2), std::domain_error);
    CHECK(step_profile(5.0, 1.0, 0).steps.empty());
}

TEST_CASE("profile lookup holds each command until the next", "[control]") {
    CommandProfile p;
    p.steps = {{0.5, 2.0, -1.0}, {1.0, -2.0, 0.0}};
    p.validate(5.0);

    CHECK(p.at(0.0).pitch_deg == 0.0);   // neutral before the first step
    CHECK(p.at(0.0).yaw_deg == 0.0);
    CHECK(p.at(0.5).pitch_deg == 2.0);   // boundary belongs to the new command
    CHECK(p.at(0.5).yaw_deg == -1.0);
    CHECK(p.at(0.75).pitch_deg == 2.0);
    CHECK(p.at(1.0).pitch_deg == -2.0);
    CHECK(p.at(9.0).pitch_deg == -2.0);  // last command holds forever

    CommandProfile bad;
    bad.steps = {{1.0, 1.0, 0.0}, {1.0, 2.0, 0.0}};
    CHECK_THROWS_AS(bad.validate(5.0), std::domain_error);
    CommandProfile wide;
    wide.steps = {{0.0, 5.5, 0.0}};
    CHECK_THROWS_AS(wide.validate(5.0), std::out_of_range);
}
