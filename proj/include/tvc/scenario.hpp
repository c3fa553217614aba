#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tvc/bench.hpp"
#include "tvc/config.hpp"
#include "tvc/csv.hpp"
#include "tvc/errors.hpp"
#include "tvc/flight.hpp"
#include "tvc/stress.hpp"
#include "tvc/text.hpp"

// Scenario execution: one entry point that dispatches the four run modes
// and renders deterministic text outputs. File writing stays with the
// caller except for inputs the scenario itself references (.eng curves,
// trial CSVs), which are read here.

namespace tvc {

struct ScenarioResult {
    std::string summary;             // one-screen report, deterministic
    std::optional<std::string> csv;  // payload for the [outputs].csv path
    bool envelope_checked = false;
    bool envelope_pass = true;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failed for '" + path + "'");
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for '" + path + "'");
}

namespace detail {

inline ThrustCurve resolve_curve(const Scenario& sc) {
    if (!sc.thrust.eng_file.empty()) return parse_eng(read_file(sc.thrust.eng_file));
    const double burn = sc.thrust.burn_time_s > 0.0 ? sc.thrust.burn_time_s : sc.t_end_s;
    return constant_curve(sc.thrust.constant_n, burn);
}

inline Quat initial_attitude(const InitialTilt& tilt) {
    const Quat qp = Quat::from_axis_angle({1.0, 0.0, 0.0}, deg_to_rad(tilt.pitch_deg));
    const Quat qy = Quat::from_axis_angle({0.0, 1.0, 0.0}, deg_to_rad(tilt.yaw_deg));
    return (qp * qy).normalized();
}

inline ScenarioResult run_bench(const Scenario& sc, std::size_t workers) {
    const auto records =
        run_trial_batch(sc.bench.trials, sc.servo, sc.gimbal, sc.sampler, sc.seed,
                        sc.bench.config, workers);
    const TrialStats stats = aggregate_stats(records);

    ScenarioResult res;
    res.csv = write_trial_csv(records, &stats);

    std::string s;
    s += "bench: " + num_str(static_cast<std::uint64_t>(stats.trials)) + " trials, seed " +
         num_str(sc.seed) + "\n";
    s += "  command amplitude   " + fixed_str(sc.bench.config.amplitude_deg, 1) +
         " deg (alternating sign)\n";
    s += "  mean response       " + fixed_str(stats.mean_response_ms, 3) + " ms\n";
    s += "  std response        " + fixed_str(stats.std_response_ms, 3) + " ms\n";
    s += "  mean |error|        " + fixed_str(stats.mean_abs_error_deg, 4) + " deg\n";
    s += "  std signed error    " + fixed_str(stats.std_signed_error_deg, 4) + " deg\n";
    s += "  failures (>1 deg)   " + num_str(static_cast<std::uint64_t>(stats.failure_count)) +
         "\n";

    if (sc.envelope) {
        res.envelope_checked = true;
        const BenchEnvelope& e = *sc.envelope;
        const auto check = [&](bool ok, const std::string& label) {
            s += std::string("  [") + (ok ? "pass" : "FAIL") + "] " + label + "\n";
            if (!ok) res.envelope_pass = false;
        };
        check(stats.mean_response_ms >= e.mean_response_min_ms &&
                  stats.mean_response_ms <= e.mean_response_max_ms,
              "mean response in [" + fixed_str(e.mean_response_min_ms, 1) + ", " +
                  fixed_str(e.mean_response_max_ms, 1) + "] ms");
        check(stats.std_response_ms >= e.std_response_min_ms &&
                  stats.std_response_ms <= e.std_response_max_ms,
              "std response in [" + fixed_str(e.std_response_min_ms, 1) + ", " +
                  fixed_str(e.std_response_max_ms, 1) + "] ms");
        check(stats.mean_abs_error_deg <= e.max_mean_abs_error_deg,
              "mean |error| <= " + fixed_str(e.max_mean_abs_error_deg, 2) + " deg");
        check(stats.failure_count <= e.max_failures,
              "failures <= " + num_str(e.max_failures));
    }
    res.summary = s;
    return res;
}

inline ScenarioResult run_fly(const Scenario& sc) {
    const ThrustCurve curve = resolve_curve(sc);

    RigidBodyState initial;
    initial.attitude = initial_attitude(sc.initial);

    FlightConfig fc;
    fc.t_end_s = sc.t_end_s;
    fc.dt_s = sc.dt_s;
    fc.control_period_s = sc.control_period_s;
    fc.output_every = static_cast<std::size_t>(sc.output_every);
    fc.mode = sc.control;
    fc.gains = sc.gains;
    fc.profile = sc.profile;

    const auto records =
        simulate(initial, sc.rocket, sc.servo, sc.gimbal, curve, sc.disturbances, fc);

    double max_pitch = 0.0, max_yaw = 0.0, tail_max_pitch = 0.0;
    for (const auto& r : records) {
        const TiltAngles tilt = body_tilt(r.state.attitude);
        if (std::abs(tilt.pitch_deg) > max_pitch) max_pitch = std::abs(tilt.pitch_deg);
        if (std::abs(tilt.yaw_deg) > max_yaw) max_yaw = std::abs(tilt.yaw_deg);
        if (r.t_s > 2.0 && std::abs(tilt.pitch_deg) > tail_max_pitch)
            tail_max_pitch = std::abs(tilt.pitch_deg);
    }
    const TiltAngles final_tilt = body_tilt(records.back().state.attitude);

    ScenarioResult res;
    res.csv = write_flight_csv(records);
    std::string s;
    s += "fly: " + fixed_str(sc.t_end_s, 2) + " s at dt " + num_str(sc.dt_s) + " s, control " +
         std::string(sc.control == ControlMode::pid
                         ? "pid"
                         : (sc.control == ControlMode::profile ? "profile" : "none")) +
         "\n";
    s += "  records             " + num_str(static_cast<std::uint64_t>(records.size())) + "\n";
    s += "  max |pitch|         " + fixed_str(max_pitch, 3) + " deg\n";
    s += "  max |yaw|           " + fixed_str(max_yaw, 3) + " deg\n";
    s += "  max |pitch| t>2s    " + fixed_str(tail_max_pitch, 3) + " deg\n";
    s += "  final tilt          " + fixed_str(final_tilt.pitch_deg, 3) + " / " +
         fixed_str(final_tilt.yaw_deg, 3) + " deg\n";
    s += "  final altitude      " + fixed_str(records.back().state.position.z, 2) + " m\n";
    res.summary = s;
    return res;
}

inline ScenarioResult run_stress(const Scenario& sc) {
    const MaterialSpec material = find_material(sc.stress.material);
    const PinStressReport pin = pin_stress_report(sc.stress.load, material);
    const double demand = servo_torque_demand(sc.stress.load.axial_load_n,
                                              sc.stress.deflection_deg, sc.gimbal,
                                              sc.stress.friction_torque_nm);
    const double margin = torque_margin(demand, sc.stress.servo_stall_nm);

    ScenarioResult res;
    std::string s;
    s += "stress: " + fixed_str(sc.stress.load.axial_load_n, 1) + " N on " +
         num_str(static_cast<std::uint64_t>(sc.stress.load.load_share_pins)) + " pin(s), " +
         fixed_str(sc.stress.load.pin_diameter_mm, 2) + " mm, " +
         (sc.stress.load.shear_planes == 2 ? "double" : "single") + " shear\n";
    s += "  material            " + material.name + " (yield " +
         fixed_str(material.yield_strength_mpa, 1) + " MPa, density " +
         fixed_str(material.density_g_cm3, 3) + " g/cm3)\n";
    s += "  pin shear           " + fixed_str(pin.shear_mpa, 4) + " MPa\n";
    s += "  von Mises           " + fixed_str(pin.von_mises_mpa, 4) + " MPa\n";
    s += "  safety factor       " + fixed_str(pin.safety_factor, 2) + "\n";
    s += "  torque demand at " + fixed_str(sc.stress.deflection_deg, 1) + " deg  " +
         fixed_str(demand, 5) + " N*m\n";
    if (std::isinf(margin)) {
        s += "  torque margin       inf\n";
    } else {
        s += "  torque margin       " + fixed_str(margin, 2) +
             (margin <= 1.0 ? "  (no margin)" : "") + "\n";
    }
    res.summary = s;
    return res;
}

inline ScenarioResult run_calibrate(const Scenario& sc) {
    const auto records = parse_trial_csv(read_file(sc.calibrate_input_csv));
    const TrialStats stats = aggregate_stats(records);
    const CalibrationResult cal = calibrate_from_records(records);

    ScenarioResult res;
    std::string s;
    s += "calibrate: " + num_str(static_cast<std::uint64_t>(records.size())) +
         " trials from " + sc.calibrate_input_csv + "\n";
    s += "  mean response       " + fixed_str(stats.mean_response_ms, 3) + " ms\n";
    s += "  std response        " + fixed_str(stats.std_response_ms, 3) + " ms\n";
    s += "  time_constant_ms    " + fixed_str(cal.time_constant_ms, 4) + "\n";
    s += "  tau_jitter_sigma_ms " + fixed_str(cal.tau_jitter_sigma_ms, 4) + "\n";
    s += "  bias_mean_deg       " + fixed_str(cal.bias_mean_deg, 4) + "\n";
    s += "  bias_sigma_deg      " + fixed_str(cal.bias_sigma_deg, 4) + "\n";
    res.summary = s;
    return res;
}

}  // namespace detail

inline ScenarioResult run_scenario(const Scenario& sc, std::size_t workers = 1) {
    switch (sc.mode) {
        case ScenarioMode::bench: return detail::run_bench(sc, workers);
        case ScenarioMode::fly: return detail::run_fly(sc);
        case ScenarioMode::stress: return detail::run_stress(sc);
        case ScenarioMode::calibrate: return detail::run_calibrate(sc);
    }
    throw std::domain_error("unreachable scenario mode");
}

}  // namespace tvc
