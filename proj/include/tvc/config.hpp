#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tvc/bench.hpp"
#include "tvc/control.hpp"
#include "tvc/errors.hpp"
#include "tvc/flight.hpp"
#include "tvc/gimbal.hpp"
#include "tvc/servo.hpp"
#include "tvc/stress.hpp"
#include "tvc/text.hpp"

// Scenario config: INI-style sections of `key = value` lines. Full-line
// comments start with '#' or ';'. No inline comments. Unknown sections,
// unknown keys, duplicate keys, and malformed values are errors that name
// the location; every key has a default except [scenario].mode and, in
// calibrate mode, [calibrate].input_csv. [disturbance] may repeat; every
// other section may appear at most once. print_scenario emits the canonical
// form, which re-parses to an equivalent scenario.

namespace tvc {

enum class ScenarioMode { bench, fly, stress, calibrate };

inline const char* mode_name(ScenarioMode m) {
    switch (m) {
        case ScenarioMode::bench: return "bench";
        case ScenarioMode::fly: return "fly";
        case ScenarioMode::stress: return "stress";
        case ScenarioMode::calibrate: return "calibrate";
    }
    return "?";
}

struct ThrustSource {
    double constant_n = 30.0;
    double burn_time_s = 0.0;  // 0 means "until t_end"
    std::string eng_file;      // when set, overrides the constant source
};

struct BenchRun {
    std::uint64_t trials = 10;
    BenchConfig config;
};

struct BenchEnvelope {
    double mean_response_min_ms = 0.0;
    double mean_response_max_ms = 1e9;
    double std_response_min_ms = 0.0;
    double std_response_max_ms = 1e9;
    double max_mean_abs_error_deg = 1e9;
    std::uint64_t max_failures = 0;
};

struct StressInput {
    PinLoadCase load;
    std::string material = "ABS";
    double servo_stall_nm = kMicroServoStallNm;
    double friction_torque_nm = 0.0;
    double deflection_deg = 5.0;
};

struct InitialTilt {
    double pitch_deg = 0.0;
    double yaw_deg = 0.0;
};

struct OutputPaths {
    std::string csv;
    std::string report;
};

struct Scenario {
    ScenarioMode mode = ScenarioMode::bench;
    std::uint64_t seed = 1;
    double t_end_s = 5.0;
    double dt_s = 1e-3;
    double control_period_s = 0.02;
    std::uint64_t output_every = 10;

    ServoParams servo;
    GimbalGeometry gimbal;
    RocketParams rocket;
    ThrustSource thrust;
    SamplerSpec sampler;
    BenchRun bench;
    std::optional<BenchEnvelope> envelope;
    StressInput stress;
    std::string calibrate_input_csv;
    InitialTilt initial;
    ControlMode control = ControlMode::none;
    PidGains gains;
    CommandProfile profile;
    std::vector<Disturbance> disturbances;
    OutputPaths outputs;
};

namespace detail {

struct ConfigLine {
    std::string key;
    std::string value;
    std::size_t line_no = 0;
};

struct ConfigSection {
    std::string name;
    std::size_t line_no = 0;
    std::vector<ConfigLine> lines;
};

inline std::vector<ConfigSection> tokenize_config(std::string_view text) {
    std::vector<ConfigSection> sections;
    std::size_t pos = 0, line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = trim(text.substr(pos, eol - pos));
        const bool last = eol == text.size();
        pos = eol + 1;
        ++line_no;
        if (line.empty() || line.front() == '#' || line.front() == ';') {
            if (last) break;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("section header missing ']'", line_no);
            ConfigSection s;
            s.name = std::string(trim(line.substr(1, line.size() - 2)));
            s.line_no = line_no;
            if (s.name.empty()) throw ParseError("empty section name", line_no);
            sections.push_back(std::move(s));
        } else {
            const std::size_t eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ParseError("expected `key = value`, got '" + std::string(line) + "'",
                                 line_no);
            if (sections.empty())
                throw ParseError("key outside any [section]", line_no);
            ConfigLine cl;
            cl.key = std::string(trim(line.substr(0, eq)));
            cl.value = std::string(trim(line.substr(eq + 1)));
            cl.line_no = line_no;
            if (cl.key.empty()) throw ParseError("empty key", line_no);
            if (cl.value.empty())
                throw ParseError("empty value for key '" + cl.key + "'", line_no);
            sections.back().lines.push_back(std::move(cl));
        }
        if (last) break;
    }
    return sections;
}

// Tracks which keys a section consumed so leftovers can be named.
class SectionReader {
public:
    SectionReader(const ConfigSection& section, bool allow_repeated_keys = false)
        : section_(section) {
        for (const auto& l : section.lines) {
            if (!allow_repeated_keys && seen_.count(l.key))
                throw ParseError("duplicate key '" + l.key + "' in [" + section.name + "]",
                                 l.line_no);
            seen_[l.key] = false;
        }
    }

    bool has(const std::string& key) const { return seen_.count(key) != 0; }

    std::string get_string(const std::string& key) {
        const ConfigLine* l = find(key);
        return l->value;
    }

    double get_double(const std::string& key) {
        const ConfigLine* l = find(key);
        double v = 0.0;
        if (!parse_double(l->value, v))
            throw ParseError("[" + section_.name + "]." + key + ": expected a number, got '" +
                                 l->value + "'",
                             l->line_no);
        return v;
    }

    std::uint64_t get_u64(const std::string& key) {
        const ConfigLine* l = find(key);
        std::uint64_t v = 0;
        if (!parse_u64(l->value, v))
            throw ParseError("[" + section_.name + "]." + key +
                                 ": expected an unsigned integer, got '" + l->value + "'",
                             l->line_no);
        return v;
    }

    bool get_bool(const std::string& key) {
        const ConfigLine* l = find(key);
        if (l->value == "true") return true;
        if (l->value == "false") return false;
        throw ParseError("[" + section_.name + "]." + key + ": expected true or false, got '" +
                             l->value + "'",
                         l->line_no);
    }

    Vec3 get_vec3(const std::string& key) {
        const ConfigLine* l = find(key);
        const auto parts = split_ws(l->value);
        Vec3 v;
        if (parts.size() != 3 || !parse_double(parts[0], v.x) || !parse_double(parts[1], v.y) ||
            !parse_double(parts[2], v.z))
            throw ParseError("[" + section_.name + "]." + key +
                                 ": expected three numbers, got '" + l->value + "'",
                             l->line_no);
        return v;
    }

    template <typename F>
    void for_each(const std::string& key, F&& fn) {
        for (const auto& l : section_.lines) {
            if (l.key != key) continue;
            seen_[l.key] = true;
            fn(l);
        }
    }

    void finish() const {
        for (const auto& l : section_.lines) {
            auto it = seen_.find(l.key);
            if (it != seen_.end() && !it->second)
                throw ParseError("unknown key '" + l.key + "' in [" + section_.name + "]",
                                 l.line_no);
        }
    }

private:
    const ConfigLine* find(const std::string& key) {
        for (const auto& l : section_.lines) {
            if (l.key == key) {
                seen_[l.key] = true;
                return &l;
            }
        }
        throw ParseError("missing required key '" + key + "' in [" + section_.name + "]",
                         section_.line_no);
    }

    const ConfigSection& section_;
    std::map<std::string, bool> seen_;  // key -> consumed
};

inline void read_optional(SectionReader& r, const std::string& key, double& out) {
    if (r.has(key)) out = r.get_double(key);
}

inline void read_optional(SectionReader& r, const std::string& key, bool& out) {
    if (r.has(key)) out = r.get_bool(key);
}

inline void read_optional(SectionReader& r, const std::string& key, std::uint64_t& out) {
    if (r.has(key)) out = r.get_u64(key);
}

inline void read_optional(SectionReader& r, const std::string& key, std::string& out) {
    if (r.has(key)) out = r.get_string(key);
}

}  // namespace detail

inline Scenario parse_scenario(std::string_view text) {
    const auto sections = detail::tokenize_config(text);
    Scenario sc;
    bool have_scenario = false, have_pid = false, have_profile = false;
    bool profile_from_generator = false;
    double gen_amplitude = 5.0, gen_period = 1.0;
    std::uint64_t gen_cycles = 1;
    std::map<std::string, std::size_t> seen_sections;

    for (const auto& section : sections) {
        if (section.name != "disturbance") {
            auto [it, inserted] = seen_sections.emplace(section.name, section.line_no);
            if (!inserted)
                throw ParseError("section [" + section.name + "] appears more than once",
                                 section.line_no);
        }

        if (section.name == "scenario") {
            have_scenario = true;
            detail::SectionReader r(section);
            const std::string mode = r.get_string("mode");
            if (mode == "bench") sc.mode = ScenarioMode::bench;
            else if (mode == "fly") sc.mode = ScenarioMode::fly;
            else if (mode == "stress") sc.mode = ScenarioMode::stress;
            else if (mode == "calibrate") sc.mode = ScenarioMode::calibrate;
            else
                throw ParseError("[scenario].mode: expected bench|fly|stress|calibrate, got '" +
                                     mode + "'",
                                 section.line_no);
            detail::read_optional(r, "seed", sc.seed);
            detail::read_optional(r, "t_end_s", sc.t_end_s);
            detail::read_optional(r, "dt_s", sc.dt_s);
            detail::read_optional(r, "control_period_s", sc.control_period_s);
            detail::read_optional(r, "output_every", sc.output_every);
            r.finish();
        } else if (section.name == "servo") {
            detail::SectionReader r(section);
            detail::read_optional(r, "time_constant_ms", sc.servo.time_constant_ms);
            detail::read_optional(r, "rate_limit_deg_s", sc.servo.rate_limit_deg_s);
            detail::read_optional(r, "max_travel_deg", sc.servo.max_travel_deg);
            detail::read_optional(r, "steady_bias_mean_deg", sc.servo.steady_bias_mean_deg);
            detail::read_optional(r, "steady_bias_sigma_deg", sc.servo.steady_bias_sigma_deg);
            detail::read_optional(r, "tau_jitter_sigma_ms", sc.servo.tau_jitter_sigma_ms);
            r.finish();
        } else if (section.name == "gimbal") {
            detail::SectionReader r(section);
            detail::read_optional(r, "amplification", sc.gimbal.amplification);
            detail::read_optional(r, "max_deflection_deg", sc.gimbal.max_deflection_deg);
            detail::read_optional(r, "pivot_lever_m", sc.gimbal.pivot_lever_m);
            detail::read_optional(r, "pivot_to_cg_m", sc.gimbal.pivot_to_cg_m);
            detail::read_optional(r, "pin_diameter_mm", sc.gimbal.pin_diameter_mm);
            detail::read_optional(r, "inner_mount_diameter_mm",
                                  sc.gimbal.inner_mount_diameter_mm);
            detail::read_optional(r, "outer_frame_diameter_mm",
                                  sc.gimbal.outer_frame_diameter_mm);
            r.finish();
        } else if (section.name == "rocket") {
            detail::SectionReader r(section);
            detail::read_optional(r, "mass_kg", sc.rocket.mass_kg);
            if (r.has("inertia")) sc.rocket.inertia = r.get_vec3("inertia");
            detail::read_optional(r, "drag_coefficient", sc.rocket.drag_coefficient);
            detail::read_optional(r, "reference_area_m2", sc.rocket.reference_area_m2);
            detail::read_optional(r, "gravity_m_s2", sc.rocket.gravity_m_s2);
            detail::read_optional(r, "air_density_kg_m3", sc.rocket.air_density_kg_m3);
            detail::read_optional(r, "linear_mass_burn", sc.rocket.linear_mass_burn);
            r.finish();
        } else if (section.name == "thrust") {
            detail::SectionReader r(section);
            detail::read_optional(r, "constant_n", sc.thrust.constant_n);
            detail::read_optional(r, "burn_time_s", sc.thrust.burn_time_s);
            detail::read_optional(r, "eng_file", sc.thrust.eng_file);
            if (!sc.thrust.eng_file.empty() &&
                (r.has("constant_n") || r.has("burn_time_s")))
                throw ParseError("[thrust]: eng_file excludes constant_n/burn_time_s",
                                 section.line_no);
            r.finish();
        } else if (section.name == "pid") {
            have_pid = true;
            detail::SectionReader r(section);
            detail::read_optional(r, "kp", sc.gains.kp);
            detail::read_optional(r, "ki", sc.gains.ki);
            detail::read_optional(r, "kd", sc.gains.kd);
            detail::read_optional(r, "integrator_limit_deg", sc.gains.integrator_limit_deg);
            detail::read_optional(r, "output_limit_deg", sc.gains.output_limit_deg);
            r.finish();
        } else if (section.name == "profile") {
            have_profile = true;
            detail::SectionReader r(section, true);
            if (r.has("step") && (r.has("amplitude_deg") || r.has("period_s") || r.has("cycles")))
                throw ParseError("[profile]: give explicit step lines or the "
                                 "amplitude/period/cycles generator, not both",
                                 section.line_no);
            if (r.has("step")) {
                r.for_each("step", [&](const detail::ConfigLine& l) {
                    const auto parts = split_ws(l.value);
                    CommandStep s;
                    if (parts.size() != 3 || !parse_double(parts[0], s.time_s) ||
                        !parse_double(parts[1], s.pitch_deg) ||
                        !parse_double(parts[2], s.yaw_deg))
                        throw ParseError(
                            "[profile].step: expected `time pitch yaw`, got '" + l.value + "'",
                            l.line_no);
                    sc.profile.steps.push_back(s);
                });
            } else {
                detail::read_optional(r, "amplitude_deg", gen_amplitude);
                detail::read_optional(r, "period_s", gen_period);
                detail::read_optional(r, "cycles", gen_cycles);
                profile_from_generator = true;
            }
            r.finish();
        } else if (section.name == "initial") {
            detail::SectionReader r(section);
            detail::read_optional(r, "pitch_deg", sc.initial.pitch_deg);
            detail::read_optional(r, "yaw_deg", sc.initial.yaw_deg);
            r.finish();
        } else if (section.name == "sampler") {
            detail::SectionReader r(section);
            detail::read_optional(r, "frame_rate_hz", sc.sampler.frame_rate_hz);
            detail::read_optional(r, "angle_accuracy_deg", sc.sampler.angle_accuracy_deg);
            detail::read_optional(r, "reporting_resolution_deg",
                                  sc.sampler.reporting_resolution_deg);
            detail::read_optional(r, "interpolate_subframe", sc.sampler.interpolate_subframe);
            r.finish();
        } else if (section.name == "bench") {
            detail::SectionReader r(section);
            detail::read_optional(r, "trials", sc.bench.trials);
            detail::read_optional(r, "amplitude_deg", sc.bench.config.amplitude_deg);
            detail::read_optional(r, "duration_s", sc.bench.config.duration_s);
            detail::read_optional(r, "steady_window_s", sc.bench.config.steady_window_s);
            detail::read_optional(r, "dt_s", sc.bench.config.dt_s);
            r.finish();
        } else if (section.name == "envelope") {
            detail::SectionReader r(section);
            BenchEnvelope e;
            detail::read_optional(r, "mean_response_min_ms", e.mean_response_min_ms);
            detail::read_optional(r, "mean_response_max_ms", e.mean_response_max_ms);
            detail::read_optional(r, "std_response_min_ms", e.std_response_min_ms);
            detail::read_optional(r, "std_response_max_ms", e.std_response_max_ms);
            detail::read_optional(r, "max_mean_abs_error_deg", e.max_mean_abs_error_deg);
            detail::read_optional(r, "max_failures", e.max_failures);
            sc.envelope = e;
            r.finish();
        } else if (section.name == "stress") {
            detail::SectionReader r(section);
            detail::read_optional(r, "load_n", sc.stress.load.axial_load_n);
            detail::read_optional(r, "pin_diameter_mm", sc.stress.load.pin_diameter_mm);
            if (r.has("shear_planes"))
                sc.stress.load.shear_planes = static_cast<int>(r.get_u64("shear_planes"));
            if (r.has("load_share_pins"))
                sc.stress.load.load_share_pins = static_cast<int>(r.get_u64("load_share_pins"));
            detail::read_optional(r, "material", sc.stress.material);
            detail::read_optional(r, "servo_stall_nm", sc.stress.servo_stall_nm);
            detail::read_optional(r, "friction_torque_nm", sc.stress.friction_torque_nm);
            detail::read_optional(r, "deflection_deg", sc.stress.deflection_deg);
            r.finish();
        } else if (section.name == "calibrate") {
            detail::SectionReader r(section);
            detail::read_optional(r, "input_csv", sc.calibrate_input_csv);
            r.finish();
        } else if (section.name == "disturbance") {
            detail::SectionReader r(section);
            Disturbance d;
            detail::read_optional(r, "start_s", d.start_s);
            detail::read_optional(r, "duration_s", d.duration_s);
            if (r.has("torque_nm")) d.torque_nm = r.get_vec3("torque_nm");
            if (r.has("force_n")) d.force_n = r.get_vec3("force_n");
            r.finish();
            sc.disturbances.push_back(d);
        } else if (section.name == "outputs") {
            detail::SectionReader r(section);
            detail::read_optional(r, "csv", sc.outputs.csv);
            detail::read_optional(r, "report", sc.outputs.report);
            r.finish();
        } else {
            throw ParseError("unknown section [" + section.name + "]", section.line_no);
        }
    }

    if (!have_scenario) throw ParseError("missing [scenario] section with a mode key", 1);
    if (have_pid && have_profile)
        throw ParseError("[pid] and [profile] are mutually exclusive", 1);
    if (have_pid) sc.control = ControlMode::pid;
    if (have_profile) sc.control = ControlMode::profile;
    if (profile_from_generator)
        sc.profile = step_profile(gen_amplitude, gen_period, gen_cycles,
                                  sc.gimbal.max_deflection_deg);
    if (sc.mode == ScenarioMode::calibrate && sc.calibrate_input_csv.empty())
        throw ParseError("calibrate mode requires [calibrate].input_csv", 1);

    sc.rocket.pivot_to_cg_m = sc.gimbal.pivot_to_cg_m;  // single source of truth
    sc.servo.validate();
    sc.gimbal.validate();
    sc.rocket.validate();
    sc.sampler.validate();
    sc.bench.config.validate();
    if (sc.control == ControlMode::pid) sc.gains.validate();
    if (sc.control == ControlMode::profile)
        sc.profile.validate(sc.gimbal.max_deflection_deg);
    for (const auto& d : sc.disturbances) d.validate();
    sc.stress.load.validate();
    find_material(sc.stress.material);
    if (sc.mode == ScenarioMode::bench && sc.bench.trials < 1)
        throw ParseError("[bench].trials must be >= 1", 1);
    return sc;
}

// Canonical echo: every effective value, fixed section and key order,
// shortest round-trip number forms. parse_scenario(print_scenario(s))
// yields an equivalent scenario.
inline std::string print_scenario(const Scenario& sc) {
    std::string out;
    const auto kv = [&](const char* key, const std::string& value) {
        out += std::string(key) + " = " + value + "\n";
    };
    const auto kvd = [&](const char* key, double v) { kv(key, num_str(v)); };
    const auto kvu = [&](const char* key, std::uint64_t v) { kv(key, num_str(v)); };
    const auto kvb = [&](const char* key, bool v) { kv(key, v ? "true" : "false"); };
    const auto vec = [&](const char* key, const Vec3& v) {
        kv(key, num_str(v.x) + " " + num_str(v.y) + " " + num_str(v.z));
    };

    out += "[scenario]\n";
    kv("mode", mode_name(sc.mode));
    kvu("seed", sc.seed);
    kvd("t_end_s", sc.t_end_s);
    kvd("dt_s", sc.dt_s);
    kvd("control_period_s", sc.control_period_s);
    kvu("output_every", sc.output_every);

    out += "\n[servo]\n";
    kvd("time_constant_ms", sc.servo.time_constant_ms);
    kvd("rate_limit_deg_s", sc.servo.rate_limit_deg_s);
    kvd("max_travel_deg", sc.servo.max_travel_deg);
    kvd("steady_bias_mean_deg", sc.servo.steady_bias_mean_deg);
    kvd("steady_bias_sigma_deg", sc.servo.steady_bias_sigma_deg);
    kvd("tau_jitter_sigma_ms", sc.servo.tau_jitter_sigma_ms);

    out += "\n[gimbal]\n";
    kvd("amplification", sc.gimbal.amplification);
    kvd("max_deflection_deg", sc.gimbal.max_deflection_deg);
    kvd("pivot_lever_m", sc.gimbal.pivot_lever_m);
    kvd("pivot_to_cg_m", sc.gimbal.pivot_to_cg_m);
    kvd("pin_diameter_mm", sc.gimbal.pin_diameter_mm);
    kvd("inner_mount_diameter_mm", sc.gimbal.inner_mount_diameter_mm);
    kvd("outer_frame_diameter_mm", sc.gimbal.outer_frame_diameter_mm);

    out += "\n[rocket]\n";
    kvd("mass_kg", sc.rocket.mass_kg);
    vec("inertia", sc.rocket.inertia);
    kvd("drag_coefficient", sc.rocket.drag_coefficient);
    kvd("reference_area_m2", sc.rocket.reference_area_m2);
    kvd("gravity_m_s2", sc.rocket.gravity_m_s2);
    kvd("air_density_kg_m3", sc.rocket.air_density_kg_m3);
    kvb("linear_mass_burn", sc.rocket.linear_mass_burn);

    out += "\n[thrust]\n";
    if (!sc.thrust.eng_file.empty()) {
        kv("eng_file", sc.thrust.eng_file);
    } else {
        kvd("constant_n", sc.thrust.constant_n);
        kvd("burn_time_s", sc.thrust.burn_time_s);
    }

    if (sc.control == ControlMode::pid) {
        out += "\n[pid]\n";
        kvd("kp", sc.gains.kp);
        kvd("ki", sc.gains.ki);
        kvd("kd", sc.gains.kd);
        kvd("integrator_limit_deg", sc.gains.integrator_limit_deg);
        kvd("output_limit_deg", sc.gains.output_limit_deg);
    } else if (sc.control == ControlMode::profile) {
        out += "\n[profile]\n";
        for (const auto& s : sc.profile.steps)
            kv("step", num_str(s.time_s) + " " + num_str(s.pitch_deg) + " " +
                           num_str(s.yaw_deg));
    }

    out += "\n[initial]\n";
    kvd("pitch_deg", sc.initial.pitch_deg);
    kvd("yaw_deg", sc.initial.yaw_deg);

    out += "\n[sampler]\n";
    kvd("frame_rate_hz", sc.sampler.frame_rate_hz);
    kvd("angle_accuracy_deg", sc.sampler.angle_accuracy_deg);
    kvd("reporting_resolution_deg", sc.sampler.reporting_resolution_deg);
    kvb("interpolate_subframe", sc.sampler.interpolate_subframe);

    out += "\n[bench]\n";
    kvu("trials", sc.bench.trials);
    kvd("amplitude_deg", sc.bench.config.amplitude_deg);
    kvd("duration_s", sc.bench.config.duration_s);
    kvd("steady_window_s", sc.bench.config.steady_window_s);
    kvd("dt_s", sc.bench.config.dt_s);

    if (sc.envelope) {
        out += "\n[envelope]\n";
        kvd("mean_response_min_ms", sc.envelope->mean_response_min_ms);
        kvd("mean_response_max_ms", sc.envelope->mean_response_max_ms);
        kvd("std_response_min_ms", sc.envelope->std_response_min_ms);
        kvd("std_response_max_ms", sc.envelope->std_response_max_ms);
        kvd("max_mean_abs_error_deg", sc.envelope->max_mean_abs_error_deg);
        kvu("max_failures", sc.envelope->max_failures);
    }

    out += "\n[stress]\n";
    kvd("load_n", sc.stress.load.axial_load_n);
    kvd("pin_diameter_mm", sc.stress.load.pin_diameter_mm);
    kvu("shear_planes", static_cast<std::uint64_t>(sc.stress.load.shear_planes));
    kvu("load_share_pins", static_cast<std::uint64_t>(sc.stress.load.load_share_pins));
    kv("material", sc.stress.material);
    kvd("servo_stall_nm", sc.stress.servo_stall_nm);
    kvd("friction_torque_nm", sc.stress.friction_torque_nm);
    kvd("deflection_deg", sc.stress.deflection_deg);

    if (sc.mode == ScenarioMode::calibrate) {
        out += "\n[calibrate]\n";
        kv("input_csv", sc.calibrate_input_csv);
    }

    for (const auto& d : sc.disturbances) {
        out += "\n[disturbance]\n";
        kvd("start_s", d.start_s);
        kvd("duration_s", d.duration_s);
        vec("torque_nm", d.torque_nm);
        vec("force_n", d.force_n);
    }

    if (!sc.outputs.csv.empty() || !sc.outputs.report.empty()) {
        out += "\n[outputs]\n";
        if (!sc.outputs.csv.empty()) kv("csv", sc.outputs.csv);
        if (!sc.outputs.report.empty()) kv("report", sc.outputs.report);
    }
    return out;
}

}  // namespace tvc
