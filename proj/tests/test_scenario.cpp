#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <optional>
#include <string>

#include "tvc/config.hpp"
#include "tvc/csv.hpp"
#include "tvc/errors.hpp"
#include "tvc/scenario.hpp"
#include "tvc/servo.hpp"

using namespace tvc;

namespace {

ParseError capture(const std::string& text) {
    try {
        parse_scenario(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a parse error");
    return ParseError("unreachable", 0);
}

}  // namespace

TEST_CASE("a minimal config takes every documented default", "[scenario]") {
    const Scenario sc = parse_scenario("[scenario]\nmode = bench\n");
    CHECK(sc.mode == ScenarioMode::bench);
    CHECK(sc.seed == 1);
    CHECK(sc.t_end_s == 5.0);
    CHECK(sc.dt_s == 1e-3);
    CHECK(sc.servo.time_constant_ms == ServoParams{}.time_constant_ms);
    CHECK(sc.gimbal.amplification == 3.0);
    CHECK(sc.gimbal.max_deflection_deg == 5.0);
    CHECK(sc.rocket.mass_kg == 1.5);
    CHECK(sc.thrust.constant_n == 30.0);
    CHECK(sc.bench.trials == 10);
    CHECK(sc.sampler.frame_rate_hz == 120.0);
    CHECK(sc.control == ControlMode::none);
    CHECK_FALSE(sc.envelope.has_value());
    CHECK(sc.disturbances.empty());
    CHECK(sc.stress.material == "ABS");
}

TEST_CASE("values land in their sections and the pivot stays single-sourced", "[scenario]") {
    const Scenario sc = parse_scenario(
        "[scenario]\n"
        "mode = fly\n"
        "seed = 42\n"
        "t_end_s = 2.5\n"
        "dt_s = 0.0005\n"
        "control_period_s = 0.01\n"
        "output_every = 5\n"
        "\n"
        "[servo]\n"
        "time_constant_ms = 12\n"
        "\n"
        "[gimbal]\n"
        "amplification = 4\n"
        "pivot_to_cg_m = 0.42\n"
        "\n"
        "[rocket]\n"
        "mass_kg = 2\n"
        "inertia = 0.2 0.21 0.004\n"
        "\n"
        "[thrust]\n"
        "constant_n = 25\n"
        "burn_time_s = 2\n"
        "\n"
        "; comment line\n"
        "# another comment\n"
        "[pid]\n"
        "kp = 3.5\n"
        "\n"
        "[initial]\n"
        "pitch_deg = 2\n"
        "\n"
        "[disturbance]\n"
        "start_s = 0.5\n"
        "duration_s = 0.25\n"
        "torque_nm = 0.08 0 0\n"
        "\n"
        "[disturbance]\n"
        "start_s = 1\n"
        "duration_s = 0.1\n"
        "force_n = 0 1.5 0\n"
        "\n"
        "[outputs]\n"
        "csv = flight.csv\n");
    CHECK(sc.mode == ScenarioMode::fly);
    CHECK(sc.seed == 42);
    CHECK(sc.dt_s == 0.0005);
    CHECK(sc.servo.time_constant_ms == 12.0);
    CHECK(sc.gimbal.amplification == 4.0);
    CHECK(sc.rocket.mass_kg == 2.0);
    CHECK(sc.rocket.inertia.y == 0.21);
    CHECK(sc.rocket.pivot_to_cg_m == 0.42);  // mirrored from [gimbal]
    CHECK(sc.thrust.constant_n == 25.0);
    CHECK(sc.control == ControlMode::pid);
    CHECK(sc.gains.kp == 3.5);
    CHECK(sc.gains.ki == 0.5);  // untouched default
    CHECK(sc.initial.pitch_deg == 2.0);
    REQUIRE(sc.disturbances.size() == 2);
    CHECK(sc.disturbances[0].torque_nm.x == 0.08);
    CHECK(sc.disturbances[1].force_n.y == 1.5);
    CHECK(sc.outputs.csv == "flight.csv");
}

TEST_CASE("parse failures name the location", "[scenario]") {
    ParseError e = capture("[scenario]\nmode = bench\n\n[servo]\nbogus_key = 1\n");
    CHECK(e.line() == 5);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("bogus_key"));
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("[servo]"));

    e = capture("[scenario]\nmode = bench\nseed = 1\nseed = 2\n");
    CHECK(e.line() == 4);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("duplicate key 'seed'"));

    e = capture("[scenario]\nmode = bench\n[warp]\n");
    CHECK(e.line() == 3);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("unknown section [warp]"));

    e = capture("[scenario]\nmode = bench\nt_end_s = fast\n");
    CHECK(e.line() == 3);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("[scenario].t_end_s"));
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("expected a number"));

    e = capture("[scenario]\nmode = bench\nseed = -3\n");
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("unsigned integer"));

    e = capture("[scenario]\nmode bench\n");
    CHECK(e.line() == 2);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("key = value"));

    e = capture("mode = bench\n");
    CHECK(e.line() == 1);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("outside any"));

    e = capture("[scenario\nmode = bench\n");
    CHECK(e.line() == 1);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("']'"));

    e = capture("[scenario]\nmode = bench\n[servo]\n[servo]\n");
    CHECK(e.line() == 4);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("more than once"));

    e = capture("[servo]\ntime_constant_ms = 12\n");
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("missing [scenario]"));

    e = capture("[scenario]\nmode =\n");
    CHECK(e.line() == 2);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("empty value"));

    e = capture("[scenario]\nmode = hover\n");
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("bench|fly|stress|calibrate"));

    e = capture("[scenario]\nseed = 3\n");
    CHECK(e.line() == 1);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("missing required key 'mode'"));

    e = capture("[scenario]\nmode = bench\n[sampler]\ninterpolate_subframe = yes\n");
    CHECK(e.line() == 4);
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("true or false"));

    e = capture("[scenario]\nmode = bench\n[rocket]\ninertia = 1 2\n");
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("three numbers"));
}

TEST_CASE("structural conflicts are rejected", "[scenario]") {
    CHECK_THAT(capture("[scenario]\nmode = fly\n[pid]\nkp = 2\n[profile]\nstep = 0 1 0\n").what(),
               Catch::Matchers::ContainsSubstring("mutually exclusive"));
    CHECK_THAT(
        capture("[scenario]\nmode = fly\n[thrust]\neng_file = m.eng\nconstant_n = 30\n").what(),
        Catch::Matchers::ContainsSubstring("eng_file excludes"));
    CHECK_THAT(capture("[scenario]\nmode = calibrate\n").what(),
               Catch::Matchers::ContainsSubstring("requires [calibrate].input_csv"));
    CHECK_THAT(capture("[scenario]\nmode = fly\n[profile]\nstep = 0 1 0\namplitude_deg = 2\n")
                   .what(),
               Catch::Matchers::ContainsSubstring("not both"));
    CHECK_THAT(capture("[scenario]\nmode = bench\n[bench]\ntrials = 0\n").what(),
               Catch::Matchers::ContainsSubstring("[bench].trials"));
    CHECK_THAT(capture("[scenario]\nmode = fly\n[profile]\nstep = 0 1\n").what(),
               Catch::Matchers::ContainsSubstring("time pitch yaw"));
}

TEST_CASE("profiles come from explicit steps or the generator", "[scenario]") {
    const Scenario explicit_steps = parse_scenario(
        "[scenario]\nmode = fly\n[profile]\nstep = 0 2 0\nstep = 0.5 -2 0.5\n");
    CHECK(explicit_steps.control == ControlMode::profile);
    REQUIRE(explicit_steps.profile.steps.size() == 2);
    CHECK(explicit_steps.profile.steps[1].time_s == 0.5);
    CHECK(explicit_steps.profile.steps[1].pitch_deg == -2.0);
    CHECK(explicit_steps.profile.steps[1].yaw_deg == 0.5);

    const Scenario generated = parse_scenario(
        "[scenario]\nmode = fly\n[profile]\namplitude_deg = 3\nperiod_s = 0.4\ncycles = 4\n");
    REQUIRE(generated.profile.steps.size() == 4);
    CHECK(generated.profile.steps[0].pitch_deg == 3.0);
    CHECK(generated.profile.steps[1].pitch_deg == -3.0);
    CHECK_THAT(generated.profile.steps[3].time_s, Catch::Matchers::WithinAbs(0.6, 1e-15));

    // Generator amplitude is checked against the gimbal authority even when
    // the [gimbal] section comes later in the file.
    const Scenario ordered = parse_scenario(
        "[scenario]\nmode = fly\n[profile]\namplitude_deg = 4\n[gimbal]\n"
        "max_deflection_deg = 4.5\n");
    CHECK(ordered.profile.steps[0].pitch_deg == 4.0);
    CHECK_THROWS_AS(parse_scenario("[scenario]\nmode = fly\n[profile]\namplitude_deg = 4\n"
                                   "[gimbal]\nmax_deflection_deg = 3.5\n"),
                    std::out_of_range);
}

TEST_CASE("canonical printing is a fixpoint of parsing", "[scenario]") {
    const std::string source =
        "[scenario]\n"
        "mode = fly\n"
        "seed = 9\n"
        "t_end_s = 2.5\n"
        "[gimbal]\n"
        "pivot_to_cg_m = 0.35\n"
        "[pid]\n"
        "kp = 3.5\n"
        "[disturbance]\n"
        "start_s = 0.5\n"
        "duration_s = 0.25\n"
        "torque_nm = 0.08 0 0\n"
        "[outputs]\n"
        "csv = flight.csv\n";
    const Scenario sc = parse_scenario(source);
    const std::string p1 = print_scenario(sc);
    const Scenario re = parse_scenario(p1);
    const std::string p2 = print_scenario(re);
    CHECK(p1 == p2);
    CHECK(re.seed == 9);
    CHECK(re.gains.kp == 3.5);
    CHECK(re.rocket.pivot_to_cg_m == 0.35);
    REQUIRE(re.disturbances.size() == 1);
    CHECK(re.disturbances[0].torque_nm.x == 0.08);
    CHECK(re.outputs.csv == "flight.csv");
    CHECK_THAT(p1, Catch::Matchers::ContainsSubstring("[pid]"));
    CHECK_THAT(p1, !Catch::Matchers::ContainsSubstring("[profile]"));

    // Profile and calibrate variants keep their distinguishing sections.
    const Scenario prof = parse_scenario("[scenario]\nmode = fly\n[profile]\nstep = 0 2 0\n");
    const std::string pp = print_scenario(prof);
    CHECK(pp == print_scenario(parse_scenario(pp)));
    CHECK_THAT(pp, Catch::Matchers::ContainsSubstring("step = 0 2 0"));

    const Scenario cal = parse_scenario(
        "[scenario]\nmode = calibrate\n[calibrate]\ninput_csv = runs.csv\n");
    const std::string pc = print_scenario(cal);
    CHECK(pc == print_scenario(parse_scenario(pc)));
    CHECK_THAT(pc, Catch::Matchers::ContainsSubstring("input_csv = runs.csv"));

    // Default bench config round-trips too.
    const std::string pb = print_scenario(parse_scenario("[scenario]\nmode = bench\n"));
    CHECK(pb == print_scenario(parse_scenario(pb)));
}

TEST_CASE("trial CSV bytes are fixed and round-trip", "[scenario]") {
    std::vector<TrialRecord> records(2);
    records[0] = {1, 5.0, 5.125, 42.125, false, {}};
    records[1] = {2, -5.0, -4.875, std::nullopt, true, {}};
    const std::string text = write_trial_csv(records);
    CHECK(text ==
          "trial,commanded_deg,measured_deg,response_ms,failed\n"
          "1,5.0000,5.1250,42.125,0\n"
          "2,-5.0000,-4.8750,,1\n");

    const auto back = parse_trial_csv(text);
    REQUIRE(back.size() == 2);
    CHECK(back[0].trial_index == 1);
    CHECK(back[0].commanded_deg == 5.0);
    CHECK(back[0].measured_steady_deg == 5.125);
    REQUIRE(back[0].response_time_ms.has_value());
    CHECK(*back[0].response_time_ms == 42.125);
    CHECK_FALSE(back[0].failed);
    CHECK_FALSE(back[1].response_time_ms.has_value());
    CHECK(back[1].failed);

    // The stats footer is comment-prefixed, so reading skips it.
    records[1].response_time_ms = 44.125;
    const TrialStats stats = aggregate_stats(records);
    const std::string with_footer = write_trial_csv(records, &stats);
    CHECK_THAT(with_footer, Catch::Matchers::ContainsSubstring("# trials=2"));
    CHECK(parse_trial_csv(with_footer).size() == 2);
}

TEST_CASE("trial CSV ingestion rejects malformed rows", "[scenario]") {
    CHECK_THROWS_AS(parse_trial_csv(""), ParseError);
    CHECK_THROWS_AS(parse_trial_csv("# nothing but comments\n"), ParseError);
    CHECK_THROWS_AS(parse_trial_csv("wrong,header\n1,2,3,4,0\n"), ParseError);
    const std::string head = "trial,commanded_deg,measured_deg,response_ms,failed\n";
    CHECK_THROWS_AS(parse_trial_csv(head + "1,5.0,5.0,42.0\n"), ParseError);
    CHECK_THROWS_AS(parse_trial_csv(head + "x,5.0,5.0,42.0,0\n"), ParseError);
    CHECK_THROWS_AS(parse_trial_csv(head + "1,five,5.0,42.0,0\n"), ParseError);
    CHECK_THROWS_AS(parse_trial_csv(head + "1,5.0,5.0,slow,0\n"), ParseError);
    CHECK_THROWS_AS(parse_trial_csv(head + "1,5.0,5.0,42.0,maybe\n"), ParseError);
    CHECK(parse_trial_csv(head).empty());  // header-only file is a valid empty log
}

TEST_CASE("flight CSV formats one fixed-width row per record", "[scenario]") {
    FlightRecord r;
    r.thrust_n = 30.0;
    const std::string text = write_flight_csv({r});
    CHECK(text ==
          std::string(kFlightCsvHeader) + "\n" +
              "0.0000,0.000000,0.000000,0.000000,0.000000,0.000000,0.000000,"
              "1.000000000,0.000000000,0.000000000,0.000000000,"
              "0.000000,0.000000,0.000000,0.0000,0.0000,0.0000,0.0000,30.0000\n");
}

TEST_CASE("bench scenarios run identically across worker counts", "[scenario]") {
    const std::string cfg =
        "[scenario]\nmode = bench\nseed = 5\n[bench]\ntrials = 16\n"
        "[envelope]\nmean_response_min_ms = 40\nmean_response_max_ms = 49\n"
        "std_response_max_ms = 6\nmax_mean_abs_error_deg = 0.3\nmax_failures = 0\n";
    const Scenario sc = parse_scenario(cfg);
    const ScenarioResult a = run_scenario(sc, 1);
    const ScenarioResult b = run_scenario(sc, 3);
    CHECK(a.summary == b.summary);
    REQUIRE(a.csv.has_value());
    REQUIRE(b.csv.has_value());
    CHECK(*a.csv == *b.csv);
    CHECK(a.envelope_checked);
    CHECK(a.envelope_pass);
    CHECK_THAT(a.summary, Catch::Matchers::ContainsSubstring("[pass]"));
    CHECK_THAT(a.summary, !Catch::Matchers::ContainsSubstring("[FAIL]"));
}

TEST_CASE("an impossible envelope flags the run without throwing", "[scenario]") {
    const Scenario sc = parse_scenario(
        "[scenario]\nmode = bench\nseed = 5\n[bench]\ntrials = 8\n"
        "[envelope]\nmean_response_max_ms = 1\n");
    const ScenarioResult r = run_scenario(sc);
    CHECK(r.envelope_checked);
    CHECK_FALSE(r.envelope_pass);
    CHECK_THAT(r.summary, Catch::Matchers::ContainsSubstring("[FAIL]"));
}

TEST_CASE("stress scenarios print the closed-form numbers", "[scenario]") {
    const ScenarioResult r = run_scenario(parse_scenario("[scenario]\nmode = stress\n"));
    CHECK_THAT(r.summary, Catch::Matchers::ContainsSubstring("0.4736 MPa"));
    CHECK_THAT(r.summary, Catch::Matchers::ContainsSubstring("0.8204 MPa"));
    CHECK_THAT(r.summary, Catch::Matchers::ContainsSubstring("48.76"));
    CHECK_THAT(r.summary, Catch::Matchers::ContainsSubstring("0.01743"));
    CHECK_THAT(r.summary, Catch::Matchers::ContainsSubstring("10.10"));
    CHECK_FALSE(r.csv.has_value());

    const ScenarioResult neutral = run_scenario(
        parse_scenario("[scenario]\nmode = stress\n[stress]\ndeflection_deg = 0\n"));
    CHECK_THAT(neutral.summary, Catch::Matchers::ContainsSubstring("torque margin       inf"));

    const ScenarioResult weak = run_scenario(
        parse_scenario("[scenario]\nmode = stress\n[stress]\nservo_stall_nm = 0.01\n"));
    CHECK_THAT(weak.summary, Catch::Matchers::ContainsSubstring("(no margin)"));
}

TEST_CASE("calibrate scenarios read a trial log from disk", "[scenario]") {
    const std::string path = "calibrate_input_for_tests.csv";
    write_file(path,
               "trial,commanded_deg,measured_deg,response_ms,failed\n"
               "1,5.0,5.1,42.0,0\n"
               "2,-5.0,-4.9,47.0,0\n");
    const Scenario sc = parse_scenario("[scenario]\nmode = calibrate\n[calibrate]\ninput_csv = " +
                                       path + "\n");
    const ScenarioResult r = run_scenario(sc);
    CHECK_THAT(r.summary, Catch::Matchers::ContainsSubstring("2 trials"));
    CHECK_THAT(r.summary, Catch::Matchers::ContainsSubstring("14.8545"));  // 44.5 ms mean
    CHECK_THAT(r.summary, Catch::Matchers::ContainsSubstring("1.1802"));   // jitter from std
    CHECK_THAT(r.summary, Catch::Matchers::ContainsSubstring("0.1000"));   // mean signed error
}

TEST_CASE("fly scenarios report the run and emit the flight log", "[scenario]") {
    const Scenario sc = parse_scenario(
        "[scenario]\nmode = fly\nt_end_s = 1\noutput_every = 100\n[profile]\nstep = 0 2 0\n");
    const ScenarioResult r = run_scenario(sc);
    CHECK_THAT(r.summary, Catch::Matchers::ContainsSubstring("records             11"));
    CHECK_THAT(r.summary, Catch::Matchers::ContainsSubstring("control profile"));
    REQUIRE(r.csv.has_value());
    CHECK(r.csv->rfind(kFlightCsvHeader, 0) == 0);
    CHECK_FALSE(r.envelope_checked);
}

TEST_CASE("missing files surface as I/O errors", "[scenario]") {
    CHECK_THROWS_AS(read_file("definitely_not_present_anywhere.txt"), IoError);
    const Scenario sc = parse_scenario(
        "[scenario]\nmode = fly\n[thrust]\neng_file = missing_motor.eng\n");
    CHECK_THROWS_AS(run_scenario(sc), IoError);
}
